from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _util import multiset_distance
from nhssh.bands import analytic_bands, spectral_metrics
from nhssh.errors import CriticalPointError, ParameterError, TransitionPointError
from nhssh.model import make_params, parameter_space_hamiltonian
from nhssh.realspace import obc_spectrum
from nhssh.topology import (AxisSpec, Region, classify_phase_point, critical_lines, degeneracy_points,
                            matrix_sign, phase_diagram, quantized_value, region_from_metrics, winding_number,
                            zak_phase)

PI = np.pi


def near(z, target, tol=1e-2):
    d = abs(z - target) % (2 * PI)
    return min(d, 2 * PI - d) < tol


def test_zak_trivial_side(pi_chain):
    assert near(zak_phase(pi_chain(0.6)), 0.0)


def test_zak_nontrivial_side(pi_chain):
    assert near(zak_phase(pi_chain(1.5)), PI)


def test_zak_hermitian_limits():
    assert near(zak_phase(make_params(1.0, 0.3, PI, 0.0, 0.0)), 0.0)
    z = zak_phase(make_params(1.0, 0.3, 0.2 * PI, 0.0, 0.0))
    assert near(z, PI)


def test_hermitian_zak_matches_edge_count():
    # independent route: zero modes of a long open chain
    for theta, expected in [(0.2 * PI, PI), (PI, 0.0)]:
        p = make_params(1.0, 0.3, theta, 0.0, 0.0)
        edges = len(obc_spectrum(p, 100).edge_indices)
        assert (edges == 2) == (expected == PI)
        assert near(zak_phase(p), expected)


def test_zak_errors(pi_chain):
    with pytest.raises(CriticalPointError):
        zak_phase(pi_chain(1.6), 128)  # exceptional point at k = 0
    with pytest.raises(TransitionPointError):
        zak_phase(pi_chain(2.6), 128)  # real gap closed
    with pytest.raises(ParameterError):
        zak_phase(pi_chain(0.6), 32)


def test_matrix_sign_of_diagonal():
    s = matrix_sign(np.diag([2.0, -0.5, 1 + 1j, -3 - 2j])[None])
    np.testing.assert_allclose(s[0], np.diag([1, -1, 1, -1]), atol=1e-12)


def test_quantized_value():
    assert quantized_value(2 * PI - 1e-3) == 0.0
    assert quantized_value(PI + 5e-3) == PI
    assert quantized_value(1.0) is None


@pytest.mark.parametrize("g1, hx", [(0.6, 1.2213), (1.2, 1.0), (1.5, 0.7891)])
def test_degeneracy_points(pi_chain, g1, hx):
    deg = degeneracy_points(pi_chain(g1))
    assert deg.real
    assert sorted(x for x, _ in deg.points) == pytest.approx([-hx, hx], abs=1e-4)
    assert all(y == 0.0 for _, y in deg.points)


def test_degeneracy_points_exactly_on_circle(pi_chain):
    deg = degeneracy_points(pi_chain(1.2))
    assert abs(abs(deg.points[0][0]) - 1.0) < 1e-9


def test_no_real_degeneracy():
    deg = degeneracy_points(make_params(1.0, 0.3, PI, 2.0, 1.0))  # t1^2 = 1.69 < 2
    assert deg.points == [] and not deg.real
    assert winding_number(make_params(1.0, 0.3, PI, 2.0, 1.0)) is None


@pytest.mark.parametrize("g1, w", [(0.6, 0), (1.5, 1)])
def test_winding_examples(pi_chain, g1, w):
    assert winding_number(pi_chain(g1)) == w


def test_winding_on_circle_is_critical(pi_chain):
    with pytest.raises(CriticalPointError):
        winding_number(pi_chain(1.2))


def test_degeneracy_is_a_true_zero_mode(pi_chain):
    p = pi_chain(1.5)
    hx = degeneracy_points(p).points[0][0]
    w = np.linalg.eigvals(parameter_space_hamiltonian(p, hx, 0.0))
    assert np.sort(np.abs(w))[1] < 1e-6


def test_critical_lines_theta_pi():
    cl = critical_lines(1.0, 0.3, PI)
    assert (cl.im_gap_close, cl.re_gap_close, cl.topo_transition) == pytest.approx((2.6, 1.4, 1.2))
    assert cl.topo_satisfiable()
    r = cl.residuals(1.6, 1.0)
    assert r[0] == pytest.approx(0.0, abs=1e-12)


def test_critical_lines_other_angles():
    assert critical_lines(1.0, 0.3, 0.5 * PI).topo_transition == pytest.approx(0.0, abs=1e-15)
    cl = critical_lines(1.0, 0.3, 0.0)
    assert cl.topo_transition == pytest.approx(-1.2)
    assert not cl.topo_satisfiable()


@given(st.floats(-0.5 * PI, 0.5 * PI), st.floats(0.05, 0.9), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
@settings(max_examples=25)
def test_half_range_always_nontrivial(theta, delta, g1, g2):
    p = make_params(1.0, delta, theta, g1, g2)
    try:
        pt = classify_phase_point(p, n_k=101)
    except CriticalPointError:
        return
    assert pt.region is not Region.TRIVIAL


@pytest.mark.parametrize("g1, region", [
    (0.5, Region.TRIVIAL),
    (1.5, Region.REAL_LINE_GAPPED),
    (2.0, Region.COMPLEX),
    (2.6, Region.PARTIAL_RE_ZERO),
    (3.0, Region.ALL_IMAGINARY),
])
def test_classify_examples(pi_chain, g1, region):
    pt = classify_phase_point(pi_chain(g1))
    assert pt.region is region
    assert pt.zak_source == ("continued" if g1 > 2.4 else "direct")


@pytest.mark.parametrize("g1", [1.2, 1.6, 2.4])
def test_classify_critical_nodes_are_boundaries(pi_chain, g1):
    pt = classify_phase_point(pi_chain(g1))
    assert pt.region is Region.BOUNDARY and pt.note


def test_region_from_metrics_needs_quantized_zak(pi_chain):
    m = spectral_metrics(pi_chain(0.5))
    assert region_from_metrics(None, m) is Region.BOUNDARY
    assert region_from_metrics(1.0, m) is Region.BOUNDARY
    assert region_from_metrics(0.0, m) is Region.TRIVIAL


def test_zak_winding_agreement():
    rng = np.random.default_rng(11)
    checked = 0
    for _ in range(150):
        p = make_params(1.0, rng.uniform(0.05, 0.9), rng.uniform(-PI, PI), rng.uniform(0, 2.5), rng.uniform(0, 2.5))
        try:
            w = winding_number(p)
            z = zak_phase(p)
        except CriticalPointError:
            continue
        if w is None:
            continue
        checked += 1
        assert (w == 1) == near(z, PI) and (w == 0) == near(z, 0.0)
    assert checked > 50


def test_refinement_stability():
    rng = np.random.default_rng(5)
    done = 0
    while done < 20:
        p = make_params(1.0, rng.uniform(0.05, 0.9), rng.uniform(-PI, PI), rng.uniform(0, 2.5), rng.uniform(0, 2.5))
        try:
            z1, z2 = zak_phase(p, 128), zak_phase(p, 256)
        except CriticalPointError:
            continue
        done += 1
        d = abs(z1 - z2) % (2 * PI)
        assert min(d, 2 * PI - d) < 1e-3


def test_transition_bracketed_by_scan(pi_chain):
    h = 0.05
    values = {}
    for g1 in np.arange(0.9, 1.5 + 1e-9, h):
        try:
            values[round(g1, 10)] = quantized_value(zak_phase(pi_chain(g1)))
        except CriticalPointError:
            continue
    keys = sorted(values)
    jumps = [(a, b) for a, b in zip(keys, keys[1:]) if values[a] != values[b]]
    assert len(jumps) == 1
    a, b = jumps[0]
    assert values[a] == 0.0 and values[b] == PI
    assert 1.2 - h - 1e-9 <= a and b <= 1.2 + h + 1e-9


@given(st.floats(0.2, 2.0), st.floats(0.05, 0.95), st.floats(-PI, PI), st.floats(0, 3), st.floats(0, 3),
       st.floats(-PI, PI))
def test_substitution_identity(t, delta, theta, g1, g2, k):
    p = make_params(t, delta, theta, g1, g2)
    z = np.exp(0.5j * k)
    e = np.linalg.eigvals(parameter_space_hamiltonian(p, z.real, z.imag))
    tol = 1e-9 if np.min(np.abs(e[:, None] - e[None, :]) + 10 * np.eye(4)) > 1e-4 else 1e-6
    assert multiset_distance(e, analytic_bands(p, k)) < tol


@pytest.fixture(scope="module")
def small_diagram():
    base = make_params(1.0, 0.3, PI, 0.0, 0.0)
    return phase_diagram(base, AxisSpec("gamma1", 0.0, 4.0, 16), AxisSpec("gamma2", 0.0, 4.0, 16),
                         n_k=101, workers=1)


def test_diagram_node_matches_single_point(small_diagram):
    g1 = small_diagram.axis1.values()[5]
    g2 = small_diagram.axis2.values()[3]
    pt = classify_phase_point(make_params(1.0, 0.3, PI, g1, g2), n_k=101)
    node = small_diagram.points[5 * 16 + 3]
    assert node.region is pt.region and node.zak == pt.zak and node.gap_re == pt.gap_re


def test_diagram_independent_of_workers(small_diagram):
    base = make_params(1.0, 0.3, PI, 0.0, 0.0)
    again = phase_diagram(base, small_diagram.axis1, small_diagram.axis2, n_k=101, workers=2)
    np.testing.assert_array_equal(again.region_codes, small_diagram.region_codes)
    np.testing.assert_array_equal(again.gap_re, small_diagram.gap_re)
    assert list(again.rows()) == list(small_diagram.rows())


def test_diagram_csv_rows(small_diagram):
    rows = list(small_diagram.rows())
    assert len(rows) == 256
    assert set(rows[0]) == {"axis1", "axis2", "zak", "winding", "region", "gap_re", "gap_im"}


def test_diagram_rejects_bad_axes():
    base = make_params(1.0, 0.3, PI, 1.0, 1.0)
    with pytest.raises(ParameterError):
        phase_diagram(base, AxisSpec("gamma2", 0, 1, 16), AxisSpec("theta", 0, 1, 16))
    with pytest.raises(ParameterError):
        phase_diagram(base, AxisSpec("gamma1", 0, 1, 8), AxisSpec("gamma2", 0, 1, 16))


def test_symmetry_breaking_only_in_nontrivial_region():
    base = make_params(1.0, 0.3, PI, 0.0, 1.0)
    pd = phase_diagram(base, AxisSpec("theta", -PI, PI, 24), AxisSpec("gamma1", 0.0, 4.0, 24), n_k=201)
    broken = pd.gap_im > 1e-8
    trivial = pd.region_codes == Region.TRIVIAL.code
    assert broken.any() and trivial.any()
    assert not np.any(broken & trivial)


def test_continued_zak_uses_geometric_mean(pi_chain):
    pt = classify_phase_point(pi_chain(3.0))
    g = math.sqrt(3.0)
    assert near(pt.zak, zak_phase(make_params(1.0, 0.3, PI, g, g)), 1e-12)
