"""Command-line driver.

    nhssh <command> [--t T --delta D --theta TH --gamma1 G1 --gamma2 G2]
                    [--config run.json] [--out DIR] [--formats csv,json,svg]

Commands: bands, zak, winding, symmetries, phase-diagram, obc, ldos, sweep.
Model parameters may come from a JSON config file whose keys match the flag
names (``{"t": 1, "delta": 0.3, "theta": "pi", ...}``); flags win over the
file.  Angles accept radians or multiples of pi ("pi", "0.5pi", "-pi/2").

Exit status: 0 on success, 1 on a computational error (an ``error.json``
record is written to the output directory), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bands as bands_mod
from . import realspace, svg, symmetry, topology
from .errors import NHSSHError, ParameterError
from .io import dumps_json, write_csv, write_json
from .model import ModelParams

COMMANDS = ("bands", "zak", "winding", "symmetries", "phase-diagram", "obc", "ldos", "sweep")
PARAM_NAMES = ("t", "delta", "theta", "gamma1", "gamma2")
FORMATS = ("csv", "json", "svg")

DEFAULT_NK = {"bands": 401, "zak": 128, "winding": 128, "symmetries": 64, "phase-diagram": 401}
DEFAULT_NCELLS = {"obc": 100, "ldos": 100, "sweep": 50}
DEFAULT_RANGES = {"gamma1": ("0", "4", "100"), "gamma2": ("0", "4", "100"), "theta": ("-pi", "pi", "100")}
DEFAULT_SWEEP = {"theta": ("-pi", "pi", "201"), "gamma1": ("0", "4", "201")}

# Internal field names that differ from their command-line flag.
_FIELD_FLAGS = {"state_index": "state", "n_cells": "ncells", "n_k": "nk", "n_points": "range"}

_PI_RE = re.compile(r"([+-]?(?:\d+(?:\.\d*)?|\.\d+)?(?:e[+-]?\d+)?)\*?pi(?:/(\d+(?:\.\d*)?))?")


class UsageError(Exception):
    pass


def parse_angle(text) -> float:
    """Radians, or a multiple of pi such as "pi", "0.5pi", "-pi/2"."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    s = str(text).strip().lower().replace(" ", "")
    m = _PI_RE.fullmatch(s)
    if m:
        coef = m.group(1)
        c = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef)
        if c is None:
            c = float(coef)
        div = float(m.group(2)) if m.group(2) else 1.0
        return c * math.pi / div
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: ModelParams
    n_k: int
    n_cells: int
    out: Path
    formats: tuple
    options: dict = field(default_factory=dict)


def _add_common(p: argparse.ArgumentParser, command: str):
    g = p.add_argument_group("model parameters")
    g.add_argument("--t", type=float, help="hopping scale t (> 0)")
    g.add_argument("--delta", type=float, help="modulation strength delta, 0 < delta < 1")
    g.add_argument("--theta", help="phase theta in [-pi, pi]; radians or e.g. 0.5pi")
    g.add_argument("--gamma1", type=float, help="gain/loss strength gamma1 (>= 0)")
    g.add_argument("--gamma2", type=float, help="gain/loss strength gamma2 (>= 0)")
    p.add_argument("--config", help="JSON file with default values for any flag")
    p.add_argument("--out", help="output directory (default: current directory)")
    p.add_argument("--formats", help="comma-separated subset of csv,json,svg (default: all)")
    p.add_argument("--workers", type=int, help="worker processes (default: $NHSSH_WORKERS or CPU count)")
    if command in DEFAULT_NK:
        p.add_argument("--nk", type=int, help=f"momentum grid size (default {DEFAULT_NK[command]})")
    if command in DEFAULT_NCELLS:
        p.add_argument("--ncells", type=int,
                       help=f"number of four-site cells (default {DEFAULT_NCELLS[command]})")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nhssh", description=(
        "Non-Hermitian tetramerized SSH chain: bands, invariants, phase diagrams and edge states."))
    sub = ap.add_subparsers(dest="command", metavar="command")
    sub.required = True
    helps = {
        "bands": "complex band structure on a k-grid",
        "zak": "biorthogonal Zak phase (optionally scanned over gamma1)",
        "winding": "degeneracy points and winding number",
        "symmetries": "symmetry residual table and class label",
        "phase-diagram": "region classification on a 2D parameter grid",
        "obc": "open-chain spectrum, edge states and their LDOS",
        "ldos": "site-resolved density of one open-chain eigenstate",
        "sweep": "open-chain spectra along theta or gamma1",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name], description=helps[name])
        _add_common(p, name)
        if name == "bands":
            p.add_argument("--dimer", action="store_true", default=None,
                           help="also write the two-band Hermitian dispersion (requires gamma1=gamma2=0)")
        if name in ("zak", "winding"):
            p.add_argument("--scan", nargs=3, metavar=("START", "STOP", "COUNT"),
                           help="scan gamma1 over a range")
        if name == "phase-diagram":
            p.add_argument("--axes", help="gamma1,gamma2 (default) or theta,gamma1")
            p.add_argument("--range1", nargs=3, metavar=("START", "STOP", "COUNT"),
                           help="first axis range (default 0 4 100, or -pi pi 100 for theta)")
            p.add_argument("--range2", nargs=3, metavar=("START", "STOP", "COUNT"),
                           help="second axis range (default 0 4 100)")
        if name == "ldos":
            p.add_argument("--state", type=int, help="eigenstate index in ascending real-part order")
        if name == "sweep":
            p.add_argument("--axis", choices=("theta", "gamma1"), help="swept parameter (default theta)")
            p.add_argument("--range", nargs=3, metavar=("START", "STOP", "COUNT"),
                           help="sweep range (default -pi pi 201 for theta, 0 4 201 for gamma1)")
    return ap


def _load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config file {path} must contain a JSON object")
    return data


def _pick(args, cfg, key, default=None):
    v = getattr(args, key, None)
    if v is not None:
        return v
    return cfg.get(key, default)


def _range(spec, flag: str, angle: bool) -> tuple:
    if not isinstance(spec, (list, tuple)) or len(spec) != 3:
        raise UsageError(f"{flag} expects START STOP COUNT")
    conv = parse_angle if angle else float
    try:
        start, stop = conv(spec[0]), conv(spec[1])
        count = int(spec[2])
    except (TypeError, ValueError):
        raise UsageError(f"{flag}: invalid range {spec!r}") from None
    if count < 2:
        raise UsageError(f"{flag}: COUNT must be >= 2, got {count}")
    return start, stop, count


def _protect_negative_angles(argv):
    # argparse reads "-pi" as an option; a leading space marks it as a value
    return [" " + a if a.startswith("-") and _PI_RE.fullmatch(a.lower()) else a for a in argv]


def parse_config(argv=None) -> RunConfig:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = ap.parse_args(_protect_negative_angles(argv))
    try:
        return _resolve(args)
    except UsageError as exc:
        ap.error(str(exc))  # exits with status 2


def _resolve(args) -> RunConfig:
    cfg = _load_config(args.config) if args.config else {}
    unknown = set(cfg) - {"t", "delta", "theta", "gamma1", "gamma2", "nk", "ncells", "out",
                          "formats", "workers", "dimer", "scan", "axes", "range1", "range2",
                          "state", "axis", "range"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    cmd = args.command
    options: dict = {"workers": _pick(args, cfg, "workers")}

    swept: set = set()
    if cmd == "phase-diagram":
        axes = str(_pick(args, cfg, "axes", "gamma1,gamma2")).replace(" ", "").split(",")
        if tuple(axes) not in (("gamma1", "gamma2"), ("theta", "gamma1")):
            raise UsageError(f"--axes must be gamma1,gamma2 or theta,gamma1, got {','.join(axes)}")
        r1 = _range(_pick(args, cfg, "range1", DEFAULT_RANGES[axes[0]]), "--range1", axes[0] == "theta")
        r2 = _range(_pick(args, cfg, "range2", DEFAULT_RANGES[axes[1]]), "--range2", axes[1] == "theta")
        options.update(axes=tuple(axes), range1=r1, range2=r2)
        swept = set(axes)
    elif cmd == "sweep":
        axis = _pick(args, cfg, "axis", "theta")
        if axis not in ("theta", "gamma1"):
            raise UsageError(f"--axis must be theta or gamma1, got {axis!r}")
        options.update(axis=axis, range=_range(_pick(args, cfg, "range", DEFAULT_SWEEP[axis]),
                                               "--range", axis == "theta"))
        swept = {axis}
    elif cmd in ("zak", "winding"):
        scan = _pick(args, cfg, "scan")
        if scan is not None:
            options["scan"] = _range(scan, "--scan", False)
            swept = {"gamma1"}
    elif cmd == "ldos":
        state = _pick(args, cfg, "state")
        if state is None:
            raise UsageError("missing required parameter --state")
        options["state"] = state
    elif cmd == "bands":
        options["dimer"] = bool(_pick(args, cfg, "dimer", False))

    values = {}
    for name in PARAM_NAMES:
        v = _pick(args, cfg, name)
        if v is None:
            if name in swept:
                v = 0.0  # placeholder, replaced at every grid node
            else:
                raise UsageError(f"missing required parameter --{name}")
        values[name] = parse_angle(v) if name == "theta" else v
    if "theta" in swept and cmd == "phase-diagram":
        values["theta"] = options["range1"][0]
    try:
        params = ModelParams(**values)
    except ParameterError as exc:
        raise UsageError(f"--{exc}") from None

    n_k = int(_pick(args, cfg, "nk", DEFAULT_NK.get(cmd, 401)))
    n_cells = int(_pick(args, cfg, "ncells", DEFAULT_NCELLS.get(cmd, 100)))
    if n_k < 2:
        raise UsageError(f"--nk must be >= 2, got {n_k}")
    if n_cells < 1:
        raise UsageError(f"--ncells must be >= 1, got {n_cells}")
    fmts = _pick(args, cfg, "formats", ",".join(FORMATS))
    if isinstance(fmts, str):
        fmts = [f for f in fmts.replace(" ", "").split(",") if f]
    bad = [f for f in fmts if f not in FORMATS]
    if bad or not fmts:
        raise UsageError(f"--formats must be a non-empty subset of csv,json,svg, got {fmts}")
    out = Path(_pick(args, cfg, "out", "."))
    return RunConfig(command=cmd, params=params, n_k=n_k, n_cells=n_cells, out=out,
                     formats=tuple(f for f in FORMATS if f in fmts), options=options)


# ---------------------------------------------------------------- commands


def _want(cfg: RunConfig, fmt: str) -> bool:
    return fmt in cfg.formats


def _run_bands(cfg: RunConfig) -> dict:
    p = cfg.params
    bs = bands_mod.band_sweep(p, cfg.n_k)
    if _want(cfg, "csv"):
        cols = ["k"] + [f"band{n}_{part}" for n in range(1, 5) for part in ("re", "im")] + ["ep_flag"]
        rows = []
        for j, k in enumerate(bs.k_grid):
            row = [k]
            for n in range(4):
                row += [bs.bands[n, j].real, bs.bands[n, j].imag]
            rows.append(row + [bool(bs.flags[j])])
        write_csv(cfg.out / "bands.csv", cols, rows)
    m = bs.metrics
    summary = {
        "params": p.as_dict(), "n_k": cfg.n_k,
        "gap_re": m.gap_re, "gap_re_k": m.gap_re_k, "gap_im": m.gap_im, "gap_im_k": m.gap_im_k,
        "max_abs_re": m.max_abs_re, "max_abs_im": m.max_abs_im,
        "ep_k": [float(k) for k in bs.k_grid[bs.flags]],
        "ambiguous_steps": int(np.sum(bs.ambiguous)),
    }
    if cfg.options.get("dimer"):
        ks = bs.k_grid
        e = bands_mod.analytic_hermitian_bands(p, ks)
        if _want(cfg, "csv"):
            write_csv(cfg.out / "dimer_bands.csv", ["k", "lower", "upper"], zip(ks, e[0], e[1]))
        if _want(cfg, "svg"):
            ax = svg.Axes((-np.pi, np.pi), svg.padded_limits(e), "two-site dispersion", "k", "E")
            ax.line(ks, e[0], svg.PALETTE[0])
            ax.line(ks, e[1], svg.PALETTE[1])
            ax.save(cfg.out / "dimer_bands.svg")
    if _want(cfg, "json"):
        write_json(cfg.out / "bands.json", summary)
    if _want(cfg, "svg"):
        for part, fn in (("re", np.real), ("im", np.imag)):
            vals = fn(bs.bands)
            ax = svg.Axes((-np.pi, np.pi), svg.padded_limits(vals), f"{part} E(k)", "k", f"{part} E")
            for n in range(4):
                ax.line(bs.k_grid, vals[n], svg.PALETTE[n])
            ax.save(cfg.out / f"bands_{part}.svg")
    return summary


def _scan_values(cfg: RunConfig) -> np.ndarray:
    start, stop, count = cfg.options["scan"]
    return np.linspace(start, stop, count)


def _zak_or_none(p: ModelParams, n_k: int):
    try:
        return topology.zak_phase(p, n_k), ""
    except NHSSHError as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _winding_or_none(p: ModelParams):
    try:
        return topology.winding_number(p), ""
    except NHSSHError as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _run_zak(cfg: RunConfig) -> dict:
    p = cfg.params
    if "scan" not in cfg.options:
        z = topology.zak_phase(p, cfg.n_k)
        summary = {"params": p.as_dict(), "n_k": cfg.n_k, "zak": z, "zak_over_pi": z / np.pi}
        if _want(cfg, "json"):
            write_json(cfg.out / "zak.json", summary)
        return summary
    rows = []
    for g in _scan_values(cfg):
        q = p.replace(gamma1=float(g))
        z, err = _zak_or_none(q, cfg.n_k)
        w, werr = _winding_or_none(q)
        rows.append({"gamma1": float(g), "zak": z, "winding": w, "note": "; ".join(x for x in (err, werr) if x)})
    if _want(cfg, "csv"):
        write_csv(cfg.out / "zak_scan.csv", ["gamma1", "zak", "winding", "note"], rows)
    summary = {"params": p.as_dict(), "n_k": cfg.n_k, "scan": rows}
    if _want(cfg, "json"):
        write_json(cfg.out / "zak_scan.json", summary)
    if _want(cfg, "svg"):
        g = [r["gamma1"] for r in rows]
        z = [np.nan if r["zak"] is None else r["zak"] / np.pi for r in rows]
        ax = svg.Axes(svg.padded_limits(g, 0), (-0.1, 1.1), "Zak phase / pi", "gamma1", "Z / pi")
        ax.line(g, z, svg.PALETTE[0])
        ax.save(cfg.out / "zak_scan.svg")
    return {"params": p.as_dict(), "n_k": cfg.n_k, "points": len(rows)}


def _winding_svg(p: ModelParams, path: Path):
    deg = topology.degeneracy_points(p)
    ax = svg.Axes((-1.6, 1.6), (-1.2, 1.2), "degeneracy points", "hx", "hy")
    phi = np.linspace(0, 2 * np.pi, 181)
    ax.line(np.cos(phi), np.sin(phi), "#000000", 1.0)
    if deg.real:
        ax.scatter([x for x, _ in deg.points], [y for _, y in deg.points], svg.PALETTE[1], 4)
    ax.save(path)


def _run_winding(cfg: RunConfig) -> dict:
    p = cfg.params
    if "scan" not in cfg.options:
        deg = topology.degeneracy_points(p)
        w = topology.winding_number(p)
        summary = {"params": p.as_dict(), "winding": w, "degeneracy_points": deg.points,
                   "real_degeneracy": deg.real}
        if _want(cfg, "json"):
            write_json(cfg.out / "winding.json", summary)
        if _want(cfg, "svg"):
            _winding_svg(p, cfg.out / "winding.svg")
        return summary
    rows = []
    for g in _scan_values(cfg):
        q = p.replace(gamma1=float(g))
        deg = topology.degeneracy_points(q)
        w, err = _winding_or_none(q)
        hx = deg.points[0][0] if deg.real else None
        rows.append({"gamma1": float(g), "hx": hx, "winding": w, "note": err})
    if _want(cfg, "csv"):
        write_csv(cfg.out / "winding_scan.csv", ["gamma1", "hx", "winding", "note"], rows)
    if _want(cfg, "json"):
        write_json(cfg.out / "winding_scan.json", {"params": p.as_dict(), "scan": rows})
    if _want(cfg, "svg"):
        g = [r["gamma1"] for r in rows]
        hx = [np.nan if r["hx"] is None else r["hx"] for r in rows]
        ax = svg.Axes(svg.padded_limits(g, 0), svg.padded_limits(hx + [1.0]), "degeneracy point hx",
                      "gamma1", "hx")
        ax.line(g, [1.0] * len(g), "#000000", 1.0)
        ax.line(g, hx, svg.PALETTE[1])
        ax.save(cfg.out / "winding_scan.svg")
    return {"params": p.as_dict(), "points": len(rows)}


def _run_symmetries(cfg: RunConfig) -> dict:
    rep = symmetry.classify(cfg.params, cfg.n_k)
    if _want(cfg, "json"):
        write_json(cfg.out / "symmetries.json", rep.to_dict())
    (cfg.out / "symmetries.txt").write_text(rep.to_text(), encoding="utf-8")
    return rep.to_dict()


PHASE_COLUMNS = ["axis1", "axis2", "zak", "winding", "region", "gap_re", "gap_im"]


def _run_phase_diagram(cfg: RunConfig) -> dict:
    a1, a2 = cfg.options["axes"]
    ax1 = topology.AxisSpec(a1, *cfg.options["range1"])
    ax2 = topology.AxisSpec(a2, *cfg.options["range2"])
    pd = topology.phase_diagram(cfg.params, ax1, ax2, n_k=cfg.n_k, workers=cfg.options.get("workers"))
    rows = list(pd.rows())
    if _want(cfg, "csv"):
        write_csv(cfg.out / "phase_diagram.csv", PHASE_COLUMNS, rows)
    counts: dict = {}
    for pt in pd.points:
        counts[pt.region.value] = counts.get(pt.region.value, 0) + 1
    summary = {
        "params": cfg.params.as_dict(), "n_k": cfg.n_k,
        "axis1": {"name": a1, "start": ax1.start, "stop": ax1.stop, "count": ax1.count},
        "axis2": {"name": a2, "start": ax2.start, "stop": ax2.stop, "count": ax2.count},
        "region_counts": counts,
    }
    if _want(cfg, "json"):
        nodes = [dict(r, zak_source=pt.zak_source, note=pt.note) for r, pt in zip(rows, pd.points)]
        write_json(cfg.out / "phase_diagram.json", dict(summary, nodes=nodes))
    if _want(cfg, "svg"):
        x, y = ax1.values(), ax2.values()
        regions = [[svg.REGION_COLORS[pd.points[i * len(y) + j].region.value] for j in range(len(y))]
                   for i in range(len(x))]
        ax = svg.Axes(svg.padded_limits(x, 0), svg.padded_limits(y, 0), "regions", a1, a2)
        ax.raster(x, y, regions)
        ax.save(cfg.out / "phase_regions.svg")
        for name, grid in (("gap_re", pd.gap_re), ("gap_im", pd.gap_im)):
            vmax = float(np.nanmax(grid)) if grid.size else 1.0
            colors = [[svg.heat_color(grid[i, j], vmax) for j in range(len(y))] for i in range(len(x))]
            ax = svg.Axes(svg.padded_limits(x, 0), svg.padded_limits(y, 0), name, a1, a2)
            ax.raster(x, y, colors)
            ax.save(cfg.out / f"{name}.svg")
    return summary


def _write_ldos(cfg: RunConfig, cs, idx: int):
    prof = realspace.ldos(cs, idx)
    if _want(cfg, "csv"):
        write_csv(cfg.out / f"ldos_state{idx}.csv", ["site", "weight"],
                  ((s + 1, w) for s, w in enumerate(prof.weights)))
    if _want(cfg, "svg"):
        sites = np.arange(1, prof.weights.size + 1)
        ax = svg.Axes((1, prof.weights.size), (0, max(1e-12, float(prof.weights.max())) * 1.05),
                      f"LDOS state {idx}", "site", "weight")
        ax.line(sites, prof.weights, svg.PALETTE[0])
        ax.save(cfg.out / f"ldos_state{idx}.svg")
    return prof


def _run_obc(cfg: RunConfig) -> dict:
    cs = realspace.obc_spectrum(cfg.params, cfg.n_cells)
    iprs = realspace.state_iprs(cs)
    edges = set(cs.edge_indices)
    if _want(cfg, "csv"):
        write_csv(cfg.out / "obc_spectrum.csv", ["state_index", "re_E", "im_E", "is_edge", "ipr"],
                  ([n, e.real, e.imag, n in edges, iprs[n]] for n, e in enumerate(cs.eigenvalues)))
    edge_info = []
    for idx in cs.edge_indices:
        prof = _write_ldos(cfg, cs, idx)
        edge_info.append({"state_index": idx, "energy": prof.energy, "ipr": realspace.ipr(prof),
                          "end_weight_8": prof.end_weight(8)})
    summary = {"params": cfg.params.as_dict(), "n_cells": cfg.n_cells, "residual": cs.residual,
               "edge_method": cs.edge_method, "edge_states": edge_info}
    if _want(cfg, "json"):
        write_json(cfg.out / "obc.json", summary)
    if _want(cfg, "svg"):
        n = np.arange(cs.eigenvalues.size)
        for part, fn in (("re", np.real), ("im", np.imag)):
            vals = fn(cs.eigenvalues)
            ax = svg.Axes((0, max(1, n[-1])), svg.padded_limits(vals), f"{part} E, open chain",
                          "state index", f"{part} E")
            ax.scatter(n, vals, svg.PALETTE[0])
            if edges:
                ax.scatter(sorted(edges), vals[sorted(edges)], svg.PALETTE[1], 3)
            ax.save(cfg.out / f"obc_spectrum_{part}.svg")
    return summary


def _run_ldos(cfg: RunConfig) -> dict:
    cs = realspace.obc_spectrum(cfg.params, cfg.n_cells)
    prof = _write_ldos(cfg, cs, cfg.options["state"])
    summary = {"params": cfg.params.as_dict(), "n_cells": cfg.n_cells, "state_index": prof.state_index,
               "energy": prof.energy, "ipr": realspace.ipr(prof), "end_weight_8": prof.end_weight(8),
               "is_edge": prof.state_index in cs.edge_indices}
    if _want(cfg, "json"):
        write_json(cfg.out / f"ldos_state{prof.state_index}.json", summary)
    return summary


def _run_sweep(cfg: RunConfig) -> dict:
    axis = cfg.options["axis"]
    start, stop, count = cfg.options["range"]
    sw = realspace.spectrum_sweep(cfg.params, axis, start, stop, count, cfg.n_cells,
                                  workers=cfg.options.get("workers"))
    if _want(cfg, "csv"):
        write_csv(cfg.out / "sweep.csv", ["sweep_value", "state_index", "re_E", "im_E", "is_edge"], sw.rows())
    points = [{"sweep_value": pt.value, "edge_method": pt.edge_method,
               "edge_energies": list(pt.edge_energies), "error": pt.error} for pt in sw.points]
    summary = {"params": cfg.params.as_dict(), "axis": axis, "n_cells": cfg.n_cells,
               "failed_points": sum(1 for pt in sw.points if not pt.ok)}
    if _want(cfg, "json"):
        write_json(cfg.out / "sweep.json", dict(summary, points=points))
    if _want(cfg, "svg"):
        scale = np.pi if axis == "theta" else 1.0
        label = "theta / pi" if axis == "theta" else axis
        for part, fn in (("re", np.real), ("im", np.imag)):
            xs, ys, ex, ey = [], [], [], []
            for pt in sw.points:
                if pt.eigenvalues is None:
                    continue
                v = fn(pt.eigenvalues)
                xs += [pt.value / scale] * v.size
                ys += list(v)
                ex += [pt.value / scale] * len(pt.edge_indices)
                ey += list(v[list(pt.edge_indices)])
            ax = svg.Axes(svg.padded_limits(xs, 0), svg.padded_limits(ys), f"{part} E", label, f"{part} E")
            ax.scatter(xs, ys, svg.PALETTE[0], 0.8)
            ax.scatter(ex, ey, svg.PALETTE[1], 1.6)
            ax.save(cfg.out / f"sweep_{part}.svg")
    return summary


_RUNNERS = {
    "bands": _run_bands, "zak": _run_zak, "winding": _run_winding, "symmetries": _run_symmetries,
    "phase-diagram": _run_phase_diagram, "obc": _run_obc, "ldos": _run_ldos, "sweep": _run_sweep,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"nhssh: error: cannot create output directory {cfg.out}: {exc}", file=sys.stderr)
        return 2
    try:
        summary = _RUNNERS[cfg.command](cfg)
    except ParameterError as exc:
        flag = _FIELD_FLAGS.get(exc.field, exc.field)
        print(f"nhssh: error: --{flag}: {exc.message}", file=sys.stderr)
        return 2
    except NHSSHError as exc:
        record = {"command": cfg.command, "params": cfg.params.as_dict(),
                  "error": type(exc).__name__, "message": str(exc)}
        write_json(cfg.out / "error.json", record)
        print(f"nhssh: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(dumps_json(summary))
    return 0


def main(argv=None) -> int:
    cfg = parse_config(argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
