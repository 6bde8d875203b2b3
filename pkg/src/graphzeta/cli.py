"""Command line interface.

Subcommand groups: zeta (compute, zeros, euler-check, functional-check),
cover (build), tower (build, run), l2 (torus, cdf), deitmar (check).
Every run prints a one-line JSON summary to stdout and, whenever files are
written, drops a manifest recording input hashes, tolerances and grid
parameters next to them. Exit codes: 0 success, 1 input error, 2 numeric
or resource error (including failed checks).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .convergence import (
    ConvergenceReport,
    GridSpec,
    deitmar_residual,
    tower_convergence,
    write_convergence_report,
)
from .covers import (
    DEFAULT_SIZE_CAP,
    derived_graph,
    load_tower_spec,
    load_voltages,
)
from .errors import (
    DomainError,
    GraphZetaError,
    InputError,
    NumericError,
    ResourceError,
    UnsupportedError,
)
from .graphs import load_graph, regularity, save_graph, spectrum
from .l2 import L2Zeta, empirical_cdf, l2_zeta_abelian, torus_l2
from .zeta import (
    euler_log_coeffs,
    functional_equation_sides,
    zeta_eval,
    zeta_function,
    zeta_log_coeffs,
    zeta_zeros,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise InputError(f"{self.prog}: {message}")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _hash_inputs(paths: Sequence["str | Path"]) -> dict:
    out = {}
    for p in paths:
        path = Path(p)
        if not path.exists():
            raise InputError(f"input file not found: {path}")
        out[str(p)] = _sha256(path)
    return out


def _write_manifest(target: Path, command: str, inputs: dict, parameters: dict) -> dict:
    doc = {
        "command": command,
        "inputs": inputs,
        "parameters": parameters,
        "version": __version__,
    }
    data = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(data)
    return {
        "manifest": str(target),
        "manifest_sha256": hashlib.sha256(data.encode()).hexdigest(),
    }


def _manifest_for_file(out_file: Path) -> Path:
    return out_file.with_name(out_file.name + ".manifest.json")


def _parse_complex(text: str) -> complex:
    try:
        value = complex(text.replace(" ", ""))
    except ValueError as exc:
        raise InputError(f"cannot parse complex number {text!r}") from exc
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise InputError(f"evaluation point must be finite, got {text!r}")
    return value


def _parse_grid(text: str, q: int) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 4 or parts[0] != "disk":
        raise InputError(
            f"grid must look like disk:<radius>:<resolution>:<margin>, got {text!r}"
        )
    try:
        radius = float(parts[1])
        resolution = int(parts[2])
        margin = float(parts[3])
    except ValueError as exc:
        raise InputError(f"malformed grid {text!r}: {exc}") from exc
    return GridSpec(q=q, radius=radius, resolution=resolution, margin=margin)


def _parse_target(text: str, base, spec_dir: Path) -> tuple[L2Zeta, list[Path]]:
    """Returns the target evaluator and any files it depends on."""
    info = regularity(base)
    if not info.is_regular or info.q is None or info.q < 1:
        raise InputError("targets are defined for regular bases only")
    if text.startswith("constant:"):
        try:
            value = complex(text.split(":", 1)[1])
        except ValueError as exc:
            raise InputError(f"malformed constant target {text!r}") from exc
        target = L2Zeta(
            chi_base=base.euler_characteristic,
            q=info.q,
            evaluate=lambda u, v=value: v,
            description=f"constant {text.split(':', 1)[1]}",
        )
        return target, []
    if text.startswith("torus:"):
        volt_path = Path(text.split(":", 1)[1])
        if not volt_path.is_absolute():
            candidate = spec_dir / volt_path
            volt_path = candidate if candidate.exists() else volt_path
        volt = load_voltages(volt_path)
        if volt.is_finite:
            raise InputError("a torus target needs a free abelian voltage file (rank k)")
        return torus_l2(base, volt), [volt_path]
    raise InputError(
        f"unknown target {text!r}; expected constant:<value> or torus:<voltage-file>"
    )


def _size_cap(args) -> int | None:
    if getattr(args, "size_cap", None) is not None:
        return int(args.size_cap)
    env = os.environ.get("ZETA_SIZE_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"ZETA_SIZE_CAP must be an integer, got {env!r}") from exc
    return None


def _require_regular(g) -> int:
    info = regularity(g)
    if not info.is_regular or info.q is None or info.q < 1:
        raise InputError("this command needs a regular graph with q >= 1")
    return info.q


# ---------------------------------------------------------------------------
# handlers; each returns (summary-dict, exit-code)


def _cmd_zeta_compute(args) -> tuple[dict, int]:
    g = load_graph(args.graph)
    z = zeta_function(g, exact=args.exact)
    info = z.q_info
    summary = {
        "command": "zeta compute",
        "graph": args.graph,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "chi": z.chi,
        "regular": info.is_regular,
        "q": info.q,
        "det_poly_degree": z.det_poly.degree,
        "inputs": _hash_inputs([args.graph]),
    }
    if args.eval is not None:
        u = _parse_complex(args.eval)
        value = zeta_eval(z, u)
        summary["eval"] = {
            "u_re": u.real,
            "u_im": u.imag,
            "value_re": value.real,
            "value_im": value.imag,
        }
    if args.emit is not None:
        out = Path(args.emit)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(z.det_poly.to_list()) + "\n")
        summary["emit"] = args.emit
        summary.update(
            _write_manifest(
                _manifest_for_file(out),
                "zeta compute",
                summary["inputs"],
                {"exact": bool(args.exact)},
            )
        )
    return summary, 0


def _cmd_zeta_zeros(args) -> tuple[dict, int]:
    g = load_graph(args.graph)
    report = zeta_zeros(zeta_function(g))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = ["re,im,multiplicity,dist_to_C"]
    for re, im, mult, dist in report.to_rows():
        lines.append(f"{re!r},{im!r},{mult},{dist!r}")
    out.write_text("\n".join(lines) + "\n")
    summary = {
        "command": "zeta zeros",
        "graph": args.graph,
        "q": report.q,
        "zero_count": sum(z.multiplicity for z in report.zeros),
        "distinct_zeros": len(report.zeros),
        "max_dist_to_C": report.max_distance,
        "out": args.out,
        "inputs": _hash_inputs([args.graph]),
    }
    summary.update(
        _write_manifest(
            _manifest_for_file(out),
            "zeta zeros",
            summary["inputs"],
            {"tol": args.tol, "check_c": bool(args.check_c)},
        )
    )
    code = 0
    if args.check_c:
        ok = report.max_distance <= args.tol
        summary["all_on_C"] = ok
        summary["tol"] = args.tol
        if not ok:
            code = 2
    return summary, code


def _cmd_zeta_euler_check(args) -> tuple[dict, int]:
    g = load_graph(args.graph)
    euler = euler_log_coeffs(g, args.terms)
    closed = zeta_log_coeffs(g, args.terms)
    mismatch = next((m + 1 for m, (a, b) in enumerate(zip(euler, closed)) if a != b), None)
    summary = {
        "command": "zeta euler-check",
        "graph": args.graph,
        "terms": args.terms,
        "match": mismatch is None,
        "first_mismatch": mismatch,
        "inputs": _hash_inputs([args.graph]),
    }
    return summary, 0 if mismatch is None else 2


def _cmd_zeta_functional_check(args) -> tuple[dict, int]:
    g = load_graph(args.graph)
    q = _require_regular(g)
    rng = random.Random(args.seed)
    worst = 0.0
    tested = 0
    while tested < args.points:
        r = 0.1 + 1.4 * rng.random()
        phi = 2.0 * np.pi * rng.random()
        u = complex(r * np.cos(phi), r * np.sin(phi))
        if abs(u) < 0.05 or abs(u * u - 1.0) < 1e-2 or abs(q * q * u * u - 1.0) < 1e-2:
            continue
        lhs, rhs = functional_equation_sides(g, u)
        scale = max(abs(lhs), abs(rhs), 1.0)
        worst = max(worst, abs(lhs - rhs) / scale)
        tested += 1
    ok = worst < args.tol
    summary = {
        "command": "zeta functional-check",
        "graph": args.graph,
        "points": args.points,
        "seed": args.seed,
        "max_relative_residual": worst,
        "tol": args.tol,
        "pass": ok,
        "inputs": _hash_inputs([args.graph]),
    }
    return summary, 0 if ok else 2


def _cmd_cover_build(args) -> tuple[dict, int]:
    base = load_graph(args.base)
    volt = load_voltages(args.voltages)
    if not volt.is_finite:
        raise InputError("cover build needs a finite voltage group (orders)")
    cover = derived_graph(base, volt)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_graph(cover, out)
    inputs = _hash_inputs([args.base, args.voltages])
    summary = {
        "command": "cover build",
        "base": args.base,
        "voltages": args.voltages,
        "out": args.out,
        "vertices": cover.vertex_count,
        "edges": cover.edge_count,
        "connected": cover.is_connected,
        "components": cover.component_count,
        "inputs": inputs,
    }
    summary.update(
        _write_manifest(_manifest_for_file(out), "cover build", inputs, {})
    )
    return summary, 0


def _cmd_tower_build(args) -> tuple[dict, int]:
    tower = load_tower_spec(args.spec, _size_cap(args))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    level_files = []
    for i, level in enumerate(tower.levels, 1):
        path = outdir / f"level_{i:02d}_N{level.index}.json"
        save_graph(level.graph, path)
        level_files.append(str(path))
    doc = {
        "provenance": tower.provenance,
        "indices": list(tower.indices),
        "sizes": [level.graph.vertex_count for level in tower.levels],
        "connected": [level.connected for level in tower.levels],
        "levels": level_files,
    }
    (outdir / "tower.json").write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    inputs = _hash_inputs([args.spec])
    summary = {
        "command": "tower build",
        "spec": args.spec,
        "out": args.out,
        "indices": list(tower.indices),
        "sizes": doc["sizes"],
        "inputs": inputs,
    }
    summary.update(
        _write_manifest(outdir / "manifest.json", "tower build", inputs, {})
    )
    return summary, 0


def _cmd_tower_run(args) -> tuple[dict, int]:
    tower = load_tower_spec(args.spec, _size_cap(args))
    q = _require_regular(tower.base)
    grid = _parse_grid(args.grid, q)
    target, target_files = _parse_target(args.target, tower.base, Path(args.spec).parent)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    report = tower_convergence(tower, target, grid, jobs=jobs)
    outdir = Path(args.out)
    write_convergence_report(report, outdir)
    inputs = _hash_inputs([args.spec] + [str(p) for p in target_files])
    summary = {
        "command": "tower run",
        "spec": args.spec,
        "target": args.target,
        "grid": grid.describe(),
        "levels": [
            {"index": level.index, "sup_error": level.sup_error}
            for level in report.levels
        ],
        "flags": report.summary_dict()["flags"],
        "out": args.out,
        "inputs": inputs,
    }
    summary.update(
        _write_manifest(
            outdir / "manifest.json",
            "tower run",
            inputs,
            {"target": args.target, "grid": grid.describe(), "jobs_independent": True},
        )
    )
    return summary, 0


def _cmd_l2_torus(args) -> tuple[dict, int]:
    base = load_graph(args.base)
    q = _require_regular(base)
    volt = load_voltages(args.voltages)
    if volt.is_finite:
        raise InputError("l2 torus needs a free abelian voltage file (rank k)")
    inputs = _hash_inputs([args.base, args.voltages])
    summary = {
        "command": "l2 torus",
        "base": args.base,
        "voltages": args.voltages,
        "q": q,
        "inputs": inputs,
    }
    if args.eval is None and args.grid is None:
        raise InputError("l2 torus needs --eval or --grid")
    if args.eval is not None:
        u = _parse_complex(args.eval)
        value = l2_zeta_abelian(base, volt, u)
        summary["eval"] = {
            "u_re": u.real,
            "u_im": u.imag,
            "value_re": value.real,
            "value_im": value.imag,
        }
    if args.grid is not None:
        if args.out is None:
            raise InputError("--grid output needs --out <csv>")
        grid = _parse_grid(args.grid, q)
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        lines = ["re,im,value_re,value_im"]
        for u in grid.points:
            value = l2_zeta_abelian(base, volt, u)
            lines.append(f"{u.real!r},{u.imag!r},{value.real!r},{value.imag!r}")
        out.write_text("\n".join(lines) + "\n")
        summary["out"] = args.out
        summary["grid"] = grid.describe()
        summary["points"] = len(grid.points)
        summary.update(
            _write_manifest(
                _manifest_for_file(out),
                "l2 torus",
                inputs,
                {"grid": grid.describe()},
            )
        )
    return summary, 0


def _cmd_l2_cdf(args) -> tuple[dict, int]:
    tower = load_tower_spec(args.spec, _size_cap(args))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    files = []
    masses = []
    for level in tower.levels:
        cdf = empirical_cdf(spectrum(level.graph), level.index)
        path = outdir / f"cdf_N{level.index}.csv"
        lines = ["lambda,F"]
        for lam, val in cdf.to_rows():
            lines.append(f"{lam!r},{val!r}")
        path.write_text("\n".join(lines) + "\n")
        files.append(str(path))
        masses.append(cdf.mass)
    inputs = _hash_inputs([args.spec])
    summary = {
        "command": "l2 cdf",
        "spec": args.spec,
        "indices": list(tower.indices),
        "masses": masses,
        "out": args.out,
        "files": files,
        "inputs": inputs,
    }
    summary.update(_write_manifest(outdir / "manifest.json", "l2 cdf", inputs, {}))
    return summary, 0


def _cmd_deitmar_check(args) -> tuple[dict, int]:
    g = load_graph(args.graph)
    q = _require_regular(g)
    if args.grid is not None:
        grid = _parse_grid(args.grid, q)
    else:
        grid = GridSpec(q=q, radius=0.6 * q**-0.5, resolution=12)
    points = grid.array
    residuals = deitmar_residual(g, points)
    worst = float(np.max(residuals)) if len(points) else 0.0
    ok = worst < args.tol
    summary = {
        "command": "deitmar check",
        "graph": args.graph,
        "points": len(points),
        "grid": grid.describe(),
        "max_residual": worst,
        "tol": args.tol,
        "pass": ok,
        "inputs": _hash_inputs([args.graph]),
    }
    return summary, 0 if ok else 2


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    parser = _Parser(prog="graphzeta", description=__doc__)
    groups = parser.add_subparsers(dest="group")

    zeta = groups.add_parser("zeta", help="finite zeta functions")
    zeta_sub = zeta.add_subparsers(dest="command")

    p = zeta_sub.add_parser("compute", help="determinant polynomial and evaluation")
    p.add_argument("--graph", required=True)
    p.add_argument("--eval", default=None, help="complex evaluation point")
    p.add_argument("--emit", default=None, help="write coefficients to this JSON file")
    p.add_argument("--exact", action="store_true", help="use the exact elimination path")
    p.set_defaults(handler=_cmd_zeta_compute)

    p = zeta_sub.add_parser("zeros", help="all zeros with distance to the set C")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--check-c", action="store_true", dest="check_c")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(handler=_cmd_zeta_zeros)

    p = zeta_sub.add_parser("euler-check", help="Euler product vs closed form, exactly")
    p.add_argument("--graph", required=True)
    p.add_argument("--terms", type=int, default=12)
    p.set_defaults(handler=_cmd_zeta_euler_check)

    p = zeta_sub.add_parser("functional-check", help="functional equation residuals")
    p.add_argument("--graph", required=True)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(handler=_cmd_zeta_functional_check)

    cover = groups.add_parser("cover", help="derived covering graphs")
    cover_sub = cover.add_subparsers(dest="command")

    p = cover_sub.add_parser("build", help="derive a cover from a voltage file")
    p.add_argument("--base", required=True)
    p.add_argument("--voltages", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_cover_build)

    tower = groups.add_parser("tower", help="towers of covers")
    tower_sub = tower.add_subparsers(dest="command")

    p = tower_sub.add_parser("build", help="materialize the levels of a tower spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--size-cap", type=int, default=None, dest="size_cap")
    p.set_defaults(handler=_cmd_tower_build)

    p = tower_sub.add_parser("run", help="normalized zetas against a limit target")
    p.add_argument("--spec", required=True)
    p.add_argument("--target", required=True, help="constant:<value> or torus:<voltage-file>")
    p.add_argument("--grid", required=True, help="disk:<radius>:<resolution>:<margin>")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--size-cap", type=int, default=None, dest="size_cap")
    p.set_defaults(handler=_cmd_tower_run)

    l2 = groups.add_parser("l2", help="L2 zeta data of infinite abelian covers")
    l2_sub = l2.add_subparsers(dest="command")

    p = l2_sub.add_parser("torus", help="torus-quadrature L2 zeta values")
    p.add_argument("--base", required=True)
    p.add_argument("--voltages", required=True)
    p.add_argument("--eval", default=None)
    p.add_argument("--grid", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_l2_torus)

    p = l2_sub.add_parser("cdf", help="empirical spectral distributions of a tower")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--size-cap", type=int, default=None, dest="size_cap")
    p.set_defaults(handler=_cmd_l2_cdf)

    deitmar = groups.add_parser("deitmar", help="finite vs L2 determinant identity")
    deitmar_sub = deitmar.add_subparsers(dest="command")

    p = deitmar_sub.add_parser("check", help="residual of the tree-cover identity")
    p.add_argument("--graph", required=True)
    p.add_argument("--grid", default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=_cmd_deitmar_check)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code instead of raising."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "handler"):
            parser.parse_args(list(argv or []) + ["--help"])
            return 1
        summary, code = args.handler(args)
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except (InputError, DomainError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GraphZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(summary, sort_keys=True))
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
