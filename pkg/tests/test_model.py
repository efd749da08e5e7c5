from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _util import multiset_distance, random_params
from nhssh.bands import analytic_bands
from nhssh.errors import ParameterError
from nhssh.model import (BoundaryCondition, bloch_hamiltonian, make_params,
                         parameter_space_hamiltonian, realspace_hamiltonian)

params_st = st.builds(
    make_params,
    t=st.floats(0.2, 3.0),
    delta=st.floats(0.01, 0.99),
    theta=st.floats(-np.pi, np.pi),
    gamma1=st.floats(0.0, 4.0),
    gamma2=st.floats(0.0, 4.0),
)
k_st = st.floats(-np.pi, np.pi)


# hoppings evaluated by hand: t(1 -+ delta cos theta)
@pytest.mark.parametrize("theta, t1, t2", [(np.pi, 1.3, 0.7), (0.5 * np.pi, 1.0, 1.0), (0.0, 0.7, 1.3)])
def test_derived_hoppings(theta, t1, t2):
    p = make_params(1.0, 0.3, theta, 1.0, 1.0)
    assert p.t1 == pytest.approx(t1, abs=1e-15)
    assert p.t2 == pytest.approx(t2, abs=1e-15)


@pytest.mark.parametrize("field, kwargs", [
    ("t", dict(t=0.0)),
    ("t", dict(t=-1.0)),
    ("delta", dict(delta=0.0)),
    ("delta", dict(delta=1.0)),
    ("gamma1", dict(gamma1=-0.1)),
    ("gamma2", dict(gamma2=-1e-9)),
    ("theta", dict(theta=3.2)),
    ("gamma1", dict(gamma1=float("nan"))),
    ("t", dict(t="abc")),
])
def test_validation_names_field(field, kwargs):
    base = dict(t=1.0, delta=0.3, theta=np.pi, gamma1=1.0, gamma2=1.0)
    base.update(kwargs)
    with pytest.raises(ParameterError) as info:
        make_params(**base)
    assert info.value.field == field


def test_params_are_immutable_and_replace_recomputes():
    p = make_params(1.0, 0.3, np.pi, 1.0, 1.0)
    with pytest.raises(AttributeError):
        p.t1 = 2.0
    q = p.replace(theta=0.0)
    assert (q.t1, q.t2) == pytest.approx((0.7, 1.3))


def test_bloch_matrix_entries():
    p = make_params(1.0, 0.3, np.pi, 1.0, 1.0)
    h = bloch_hamiltonian(p, np.pi / 2)
    assert h[0, 3] == pytest.approx(-0.7j, abs=1e-15)
    assert h[3, 0] == pytest.approx(0.7j, abs=1e-15)
    np.testing.assert_allclose(np.diag(h), [1j, -1j, -1j, 1j])
    expected_zero = [(0, 2), (2, 0), (1, 3), (3, 1)]
    for i, j in expected_zero:
        assert h[i, j] == 0


def test_bloch_hermitian_limit_at_k0():
    p = make_params(1.0, 0.3, 0.8 * np.pi, 0.0, 0.0)
    h = bloch_hamiltonian(p, 0.0)
    np.testing.assert_array_equal(h, h.T)
    assert np.all(h.imag == 0)
    assert h[0, 3] == pytest.approx(p.t2)


@given(params_st, k_st)
def test_transpose_flips_momentum(p, k):
    np.testing.assert_allclose(bloch_hamiltonian(p, -k), bloch_hamiltonian(p, k).T, atol=1e-14)


@given(params_st, k_st)
def test_bloch_traceless(p, k):
    assert abs(np.trace(bloch_hamiltonian(p, k))) < 1e-14


@given(params_st, k_st)
def test_bloch_eigenvalues_match_closed_form(p, k):
    num = np.linalg.eigvals(bloch_hamiltonian(p, k))
    # defective points split by ~sqrt(eps); the 1e-9 bound is checked away from them elsewhere
    assert multiset_distance(num, analytic_bands(p, k)) < 1e-6


def test_single_cell_chain():
    p = make_params(1.0, 0.3, np.pi, 0.0, 0.0)
    h = realspace_hamiltonian(p, 1)
    expected = np.array([[0, 1.3, 0, 0], [1.3, 0, 0.7, 0], [0, 0.7, 0, 1.3], [0, 0, 1.3, 0]])
    np.testing.assert_array_equal(h, expected)


def test_two_cell_onsite_pattern():
    g1, g2 = 0.4, 1.1
    h = realspace_hamiltonian(make_params(1.0, 0.3, np.pi, g1, g2), 2)
    np.testing.assert_array_equal(np.diag(h), [1j * g1, -1j * g2, -1j * g1, 1j * g2] * 2)
    bonds = np.diag(h, 1).real
    np.testing.assert_allclose(bonds, [1.3, 0.7] * 3 + [1.3])


@given(params_st, st.integers(1, 6), st.sampled_from(list(BoundaryCondition)))
def test_chain_is_complex_symmetric(p, n, bc):
    h = realspace_hamiltonian(p, n, bc)
    assert np.array_equal(h, h.T)


@given(params_st, st.integers(1, 4))
def test_gamma_zero_gives_hermitian(p, n):
    q = p.replace(gamma1=0.0, gamma2=0.0)
    for m in (bloch_hamiltonian(q, 0.7), realspace_hamiltonian(q, n),
              realspace_hamiltonian(q, n, "periodic"), parameter_space_hamiltonian(q, 0.8, 0.3)):
        np.testing.assert_array_equal(m, m.conj().T)


def _pbc_vs_bloch(p, n_cells):
    chain = np.linalg.eigvals(realspace_hamiltonian(p, n_cells, "periodic"))
    ks = 2 * np.pi * np.arange(n_cells) / n_cells
    bloch = np.concatenate([np.linalg.eigvals(bloch_hamiltonian(p, k)) for k in ks])
    return multiset_distance(chain, bloch)


@pytest.mark.parametrize("n_cells", [1, 2, 3, 5, 8])
def test_periodic_chain_is_union_of_bloch_spectra(n_cells):
    rng = np.random.default_rng(n_cells)
    for _ in range(10):
        assert _pbc_vs_bloch(random_params(rng), n_cells) < 1e-8


def test_periodic_union_single_point():
    assert _pbc_vs_bloch(make_params(1.0, 0.3, 0.3, 0.4, 0.9), 6) < 1e-10


@pytest.mark.parametrize("bad", [0, -1, 1.5, True])
def test_chain_rejects_bad_cell_count(bad):
    with pytest.raises(ParameterError):
        realspace_hamiltonian(make_params(1, 0.3, 0, 1, 1), bad)


@given(params_st, k_st)
def test_parameter_space_on_unit_circle_equals_bloch(p, k):
    z = np.exp(0.5j * k)
    np.testing.assert_allclose(parameter_space_hamiltonian(p, z.real, z.imag), bloch_hamiltonian(p, k),
                               atol=1e-14)


def test_parameter_space_at_one_is_k0():
    p = make_params(1.0, 0.3, 2.0, 0.7, 1.4)
    np.testing.assert_array_equal(parameter_space_hamiltonian(p, 1.0, 0.0), bloch_hamiltonian(p, 0.0))


def test_parameter_space_degeneracy_point():
    p = make_params(1.0, 0.3, np.pi, 0.6, 1.0)
    hx = ((p.t1 ** 2 - 0.6) / p.t2 ** 2) ** 0.25
    w = np.linalg.eigvals(parameter_space_hamiltonian(p, hx, 0.0))
    d = np.abs(w[:, None] - w[None, :]) + np.eye(4) * 10
    assert d.min() < 1e-4
    # the four-digit rounding of hx already opens a ~1.45e-4 splitting (square-root sensitivity)
    w = np.linalg.eigvals(parameter_space_hamiltonian(p, 1.2213, 0.0))
    d = np.abs(w[:, None] - w[None, :]) + np.eye(4) * 10
    assert d.min() < 2e-4
