"""
Command-line front end.

Subcommands
-----------
simulate     node distribution after ``n`` steps (or its running average)
limiting     limiting distribution by a chosen route
closed-form  per-node table of the closed-form correction for a localized start
spectrum     analytic eigenvalues, coin ratios and degeneracy classes
compare      two routes side by side with the per-node difference
tv           total variation distance between two distribution CSVs
reproduce    data behind the published figures

Exit status is 0 on success, 2 for invalid input and 1 for anything else.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import closed_form, metrics, spectral, states, walk_core
from .walk_core import Distribution, WalkState

ROUTES = ("spectral", "series", "closed", "direct", "asymptotic", "simulate")
FIGURES = ("fig1", "fig3", "fig4", "fig5")


class UsageError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def format_distribution(dist: Distribution, fmt: str = "csv", metadata: Optional[dict] = None) -> str:
    """Serialize ``dist`` as CSV (``v,p``) or JSON (``d``, ``probs``, ``metadata``)."""
    metadata = dict(metadata or {})
    if fmt == "csv":
        lines = ["v,p"] + [f"{v},{_fmt(p)}" for v, p in enumerate(dist.probs)]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {"d": dist.d}
        if "v0" in metadata:
            payload["v0"] = metadata.pop("v0")
        payload["probs"] = [float(_fmt(p)) for p in dist.probs]
        payload["metadata"] = metadata
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def emit(dist: Distribution, fmt: str, path: Optional[str], metadata: Optional[dict] = None) -> None:
    """Write a distribution to ``path`` (stdout for ``None`` or ``"-"``)."""
    _write(format_distribution(dist, fmt, metadata), path)


def read_distribution(path: str) -> Distribution:
    """Parse a ``v,p`` CSV or a JSON distribution written by :func:`emit`."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        return Distribution(int(payload["d"]), payload["probs"])
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if not rows or [c.strip() for c in rows[0][:2]] != ["v", "p"]:
        raise UsageError(f"{path}: expected a 'v,p' header")
    probs = {}
    for r in rows[1:]:
        try:
            probs[int(r[0])] = float(r[1])
        except (ValueError, IndexError):
            raise UsageError(f"{path}: bad row {r!r}") from None
    d = len(probs)
    if sorted(probs) != list(range(d)):
        raise UsageError(f"{path}: node labels must be 0..d-1")
    return Distribution(d, [probs[v] for v in range(d)])


# -- state selection -------------------------------------------------------


def _add_state_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--localized", "--v0", dest="v0", type=int, metavar="V0",
                   help="start on node V0 with coin (|0>+i|1>)/sqrt2")
    g.add_argument("--state-file", metavar="PATH", help="load amplitudes from a state file")
    g.add_argument("--superpose", metavar="SPEC", help="eigenvector superposition 'j,k,re,im;...'")


def _initial_state(args) -> WalkState:
    if args.state_file:
        state = states.load_state(args.state_file)
        if args.d is not None and args.d != state.d:
            raise UsageError(f"--d {args.d} does not match state file d={state.d}")
        return state
    if args.d is None:
        raise UsageError("--d is required")
    if args.superpose:
        return states.eigen_superposition(args.d, states.parse_superposition(args.superpose))
    if args.v0 is None:
        raise UsageError("choose an initial state: --localized, --state-file or --superpose")
    return states.localized_state(args.d, args.v0)


def _state_metadata(args) -> dict:
    if args.state_file:
        return {"initial": "state-file", "state_file": str(args.state_file)}
    if args.superpose:
        return {"initial": "superposition", "terms": args.superpose}
    return {"initial": "localized", "v0": args.v0}


def _route_distribution(route: str, state: WalkState, args) -> Distribution:
    if route == "spectral":
        return spectral.limiting_distribution_spectral(state)
    if route == "simulate":
        return walk_core.time_averaged_distribution(state, args.n)
    if route not in ROUTES:
        raise UsageError(f"unknown route {route!r}; choose from {', '.join(ROUTES)}")
    if args.v0 is None or args.state_file or args.superpose:
        raise UsageError(f"route {route!r} is defined only for a --localized start")
    if route == "asymptotic":
        return closed_form.asymptotic_distribution(state.d, args.v0)
    return closed_form.limiting_distribution_localized(state.d, args.v0, route=route)


def _stamp(meta: dict, args) -> dict:
    if getattr(args, "stamp", False):
        meta["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return meta


# -- subcommands -------------------------------------------------------------


def cmd_simulate(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    state = _initial_state(args)
    if args.average:
        dist = walk_core.time_averaged_distribution(state, args.n)
    else:
        dist = walk_core.node_distribution(walk_core.evolve(state, args.n))
    meta = _state_metadata(args) | {"route": "average" if args.average else "instantaneous", "n": args.n}
    emit(dist, args.format, args.out, _stamp(meta, args))
    return 0


def cmd_limiting(args) -> int:
    state = _initial_state(args)
    dist = _route_distribution(args.route, state, args)
    meta = _state_metadata(args) | {"route": args.route}
    if args.route == "simulate":
        meta["n"] = args.n
    emit(dist, args.format, args.out, _stamp(meta, args))
    return 0


def closed_form_table(d: int, v0: int, route: str = "closed") -> str:
    ctx = closed_form.ClosedFormContext.build(d, v0)
    dist = closed_form.limiting_distribution_localized(d, v0, route=route)
    lines = ["v,delta,delta_prime,pi,correction,asymptotic_correction"]
    for v in range(d):
        delta, delta_p = int(ctx.delta[v]), int(ctx.delta_prime[v])
        corr = d * dist.probs[v] - 1.0
        asym = closed_form.asymptotic_correction(delta, delta_p, ctx.xi)
        lines.append(f"{v},{delta},{delta_p},{_fmt(dist.probs[v])},{_fmt(corr)},{_fmt(asym)}")
    return "\n".join(lines) + "\n"


def cmd_closed_form(args) -> int:
    if args.d is None or args.v0 is None:
        raise UsageError("closed-form needs --d and --v0")
    _write(closed_form_table(args.d, args.v0, args.route), args.out)
    return 0


def spectrum_table(d: int) -> str:
    cls = spectral.degeneracy_classes(d)
    lines = ["j,k,re(c),im(c),re(b),im(b),a,class_id"]
    for pair in spectral.eigensystem(d):
        j, k = pair.index.j, pair.index.k
        c, b = pair.eigenvalue, pair.b
        lines.append(
            f"{j},{k},{_fmt(c.real)},{_fmt(c.imag)},{_fmt(b.real)},{_fmt(b.imag)},"
            f"{_fmt(pair.a)},{cls.class_id(j, k)}"
        )
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    if args.d is None:
        raise UsageError("spectrum needs --d")
    _write(spectrum_table(args.d), args.out)
    return 0


def compare_table(p: Distribution, q: Distribution, names: Sequence[str]) -> tuple[str, float, float]:
    diff = np.abs(p.probs - q.probs)
    lines = [f"v,p_{names[0]},p_{names[1]},abs_diff"]
    lines += [f"{v},{_fmt(a)},{_fmt(b)},{_fmt(x)}" for v, (a, b, x) in enumerate(zip(p.probs, q.probs, diff))]
    max_diff, dist = float(diff.max()), metrics.tv(p, q)
    lines.append(f"max_abs_diff,,,{_fmt(max_diff)}")
    lines.append(f"tv,,,{_fmt(dist)}")
    return "\n".join(lines) + "\n", max_diff, dist


def cmd_compare(args) -> int:
    routes = [r.strip() for r in args.routes.split(",") if r.strip()]
    if len(routes) != 2:
        raise UsageError("--routes takes exactly two routes, e.g. spectral,closed")
    state = _initial_state(args)
    p, q = (_route_distribution(r, state, args) for r in routes)
    table, max_diff, dist = compare_table(p, q, routes)
    _write(table, args.out)
    print(f"max_abs_diff={max_diff:.3e} tv={dist:.3e}", file=sys.stderr)
    return 0


def cmd_tv(args) -> int:
    p, q = read_distribution(args.first), read_distribution(args.second)
    print(f"{metrics.tv(p, q):.6f}")
    return 0


# -- figure presets ------------------------------------------------------------

_INFERENCE_NOTE = (
    "cycle length not given in the figure caption; d=24 is the only length for which "
    "the superposed eigenvectors are pairwise degenerate"
)


def _save(outdir: Path, name: str, dist: Distribution, fmt: str, meta: dict) -> Path:
    path = outdir / f"{name}.{fmt}"
    emit(dist, fmt, str(path), meta)
    return path


def _save_meta(outdir: Path, name: str, meta: dict) -> Path:
    path = outdir / f"{name}_meta.json"
    path.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return path


def reproduce(figure: str, outdir: Path, fmt: str = "csv", stamp: bool = False) -> list[Path]:
    """Write the data behind one figure into ``outdir``; returns the written paths."""
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    extra = {"generated": datetime.now(timezone.utc).isoformat(timespec="seconds")} if stamp else {}

    if figure in ("fig1", "fig3"):
        v0, sizes = (5, (24, 26)) if figure == "fig1" else (0, (2000, 2001, 2002))
        summary = {"figure": figure, "v0": v0, "route": "closed", "curves": {}} | extra
        for d in sizes:
            dist = closed_form.limiting_distribution_localized(d, v0)
            written.append(_save(outdir, f"{figure}_d{d}", dist, fmt, {"v0": v0, "route": "closed"}))
            info = {"max_correction": float(d * dist.probs.max() - 1.0)}
            if d % 2 == 0:
                opp = (v0 + d // 2) % d
                info |= {
                    "xi": closed_form.xi(d),
                    "correction_at_v0": float(d * dist.probs[v0] - 1.0),
                    "correction_at_opposite": float(d * dist.probs[opp] - 1.0),
                    "opposite_node": opp,
                }
            summary["curves"][f"d{d}"] = info
        written.append(_save_meta(outdir, figure, summary))

    elif figure in ("fig4", "fig5"):
        d = states.FIGURE_CYCLE_LENGTH
        state = states.fig4_state(d) if figure == "fig4" else states.fig5_state(d)
        initial = walk_core.node_distribution(state)
        limit = spectral.limiting_distribution_spectral(state)
        base = {"d": d, "d_inferred": True, "note": _INFERENCE_NOTE}
        written.append(_save(outdir, f"{figure}_initial", initial, fmt, base | {"route": "initial"}))
        written.append(_save(outdir, f"{figure}_limiting", limit, fmt, base | {"route": "spectral"}))
        summary = {"figure": figure} | base | {
            "tv_initial_from_uniform": metrics.tv_from_uniform(initial),
            "tv_limiting_from_uniform": metrics.tv_from_uniform(limit),
        }
        if figure == "fig4":
            psi, drift = state, 0.0
            for _ in range(200):
                psi = walk_core.step(psi)
                drift = max(drift, float(np.abs(walk_core.node_distribution(psi).probs - initial.probs).max()))
            summary["max_drift_over_200_steps"] = drift
        written.append(_save_meta(outdir, figure, summary | extra))
    else:
        raise UsageError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)} or all")
    return written


def cmd_reproduce(args) -> int:
    figures = FIGURES if args.figure == "all" else (args.figure,)
    outdir = Path(args.out or ".")
    for fig in figures:
        for path in reproduce(fig, outdir, args.format, args.stamp):
            print(path)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclewalk", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, state=True, fmt=True):
        p.add_argument("--d", type=int, help="cycle length")
        if state:
            _add_state_args(p)
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--stamp", action="store_true", help="add a timestamp to metadata")

    p = sub.add_parser("simulate", help="distribution after n steps")
    common(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--average", action="store_true", help="average p_1..p_n instead of p_n")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("limiting", help="limiting distribution")
    common(p)
    p.add_argument("--route", choices=ROUTES, default="spectral")
    p.add_argument("--n", type=int, default=100_000, help="steps for --route simulate")
    p.set_defaults(func=cmd_limiting)

    p = sub.add_parser("closed-form", help="closed-form table for a localized start")
    p.add_argument("--d", type=int)
    p.add_argument("--v0", "--localized", dest="v0", type=int)
    p.add_argument("--route", choices=("closed", "series", "direct"), default="closed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("spectrum", help="analytic eigensystem as CSV")
    p.add_argument("--d", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compare", help="compare two routes")
    common(p, fmt=False)
    p.add_argument("--routes", default="spectral,closed")
    p.add_argument("--n", type=int, default=100_000, help="steps for the simulate route")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("tv", help="total variation distance between two distribution files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_tv)

    p = sub.add_parser("reproduce", help="figure data")
    p.add_argument("figure", choices=FIGURES + ("all",))
    p.add_argument("--out", help="output directory (default: .)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--stamp", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, states.StateFileError, ValueError) as exc:
        print(f"cyclewalk: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"cyclewalk: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
