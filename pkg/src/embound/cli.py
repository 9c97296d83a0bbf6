"""Command-line surface: single measures, the GHZ-W' sweep, verification."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import closedform, emb, geometric, measures, state
from .optimize import OptimizerConfig

ROW_TOL = 1e-4
MEASURES = ("emb", "ehmin", "egeom", "ebi", "tangle-ghzw", "elocc", "sandwich", "schmidt")


@dataclass(frozen=True)
class SweepRow:
    """One line of the GHZ-W' sweep CSV (x = sin alpha)."""

    x: float
    emb: float
    egeom: float
    ehmin: float
    ebi: float
    tangle: float

    def check(self, tol: float = ROW_TOL) -> list[str]:
        problems = []
        if self.ehmin < self.emb - tol:
            problems.append(f"ehmin {self.ehmin} < emb {self.emb}")
        if self.emb < self.egeom - tol:
            problems.append(f"emb {self.emb} < egeom {self.egeom}")
        if self.emb < self.ebi - tol:
            problems.append(f"emb {self.emb} < ebi {self.ebi}")
        return problems


def _tangle_from_fraction(x: float) -> float:
    ca = math.sqrt(max(0.0, 1.0 - x * x))
    return abs(ca**4 + (8.0 / 9.0) * math.sqrt(6.0) * x**3 * ca)


def ghz_w_from_fraction(x: float) -> state.StateTensor:
    """GHZ-W' superposition parametrized by x = sin alpha in [-1, 1]."""
    if not -1.0 <= x <= 1.0:
        raise ValueError("x must lie in [-1, 1]")
    return state.ghz_w_superposition(math.asin(x))


def sweep_row(
    x: float,
    cfg: OptimizerConfig | None = None,
    hmin_cfg: OptimizerConfig | None = None,
) -> SweepRow:
    psi = ghz_w_from_fraction(x)
    return SweepRow(
        x=x,
        emb=emb.emb_tripartite_best(psi, cfg).value,
        egeom=geometric.geometric_measure_symmetric(psi, cfg).value,
        ehmin=emb.e_hmin(psi, hmin_cfg).value,
        ebi=measures.bipartite_lower_bound(psi),
        tangle=_tangle_from_fraction(x),
    )


def sweep_rows(
    points: int,
    cfg: OptimizerConfig | None = None,
    hmin_cfg: OptimizerConfig | None = None,
    check: bool = True,
) -> list[SweepRow]:
    if points < 2:
        raise ValueError("sweep needs at least 2 points")
    rows = []
    for x in np.linspace(-1.0, 1.0, points):
        row = sweep_row(float(x), cfg, hmin_cfg)
        if check:
            problems = row.check()
            if problems:
                raise AssertionError(f"sweep row x={row.x}: " + "; ".join(problems))
        rows.append(row)
    return rows


@dataclass
class VerifyOutcome:
    checks: dict[str, bool]
    values: dict[str, float]
    tight: bool

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_state(
    psi: state.StateTensor,
    cfg: OptimizerConfig | None = None,
    hmin_cfg: OptimizerConfig | None = None,
    tol: float = ROW_TOL,
) -> VerifyOutcome:
    """Run the full inequality suite on one three-qubit state."""
    e_mb = emb.emb_tripartite_best(psi, cfg).value
    e_h = emb.e_hmin(psi, hmin_cfg).value
    e_g = geometric.geometric_measure_general(psi).value
    e_bi = measures.bipartite_lower_bound(psi)
    e_lo = emb.e_locc(psi, cfg).value
    sandwich = closedform.relative_entropy_sandwich(psi, cfg)
    checks = {
        "ehmin>=emb": e_h >= e_mb - tol,
        "emb>=egeom": e_mb >= e_g - tol,
        "emb>=ebi": e_mb >= e_bi - tol,
        "emb>=elocc": e_mb >= e_lo - tol,
        "sandwich": sandwich.upper >= sandwich.lower - tol,
    }
    values = {
        "emb": e_mb,
        "ehmin": e_h,
        "egeom": e_g,
        "ebi": e_bi,
        "elocc": e_lo,
        "sandwich_lower": sandwich.lower,
        "sandwich_upper": sandwich.upper,
    }
    return VerifyOutcome(
        checks=checks,
        values=values,
        tight=abs(sandwich.upper - sandwich.lower) < tol,
    )


# --- argument handling -----------------------------------------------------


def _add_state_args(parser):
    parser.add_argument("--state", help="path of a JSON state file")
    parser.add_argument("--named", help="named state (GHZ, W, Wprime, Omega, Bell, GHZ-W, ...)")
    parser.add_argument("--alpha", type=float, help="mixing angle for GHZ-W / tangle-ghzw")
    parser.add_argument(
        "--q",
        help="standard-form parameters q0,q1,q2,q3,q4,gamma (comma separated)",
    )


def _add_optimizer_args(parser):
    parser.add_argument("--grid", type=int, help="grid resolution per angle axis")
    parser.add_argument("--restarts", type=int, help="local refinements from best cells")
    parser.add_argument("--max-evals", type=int, help="evaluation budget per refinement")
    parser.add_argument("--tol", type=float, help="objective tolerance")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized starts")
    parser.add_argument("--strict", action="store_true", help="fail on optimizer budget exhaustion")


def _config_from(args, base: OptimizerConfig) -> OptimizerConfig:
    cfg = replace(base, seed=args.seed)
    if args.grid is not None:
        cfg = replace(cfg, grid_resolution=args.grid)
    if args.restarts is not None:
        cfg = replace(cfg, restart_count=args.restarts)
    if args.max_evals is not None:
        cfg = replace(cfg, max_evaluations=args.max_evals)
    if args.tol is not None:
        cfg = replace(cfg, objective_tolerance=args.tol)
    return cfg


def _resolve_state(args) -> state.StateTensor:
    sources = sum(x is not None for x in (args.state, args.named, args.q))
    if sources != 1:
        raise SystemExit("exactly one of --state, --named or --q is required")
    if args.state is not None:
        with open(args.state, "rb") as fh:
            return state.from_json(fh.read())
    if args.q is not None:
        values = [float(v) for v in args.q.split(",")]
        if len(values) == 5:
            values.append(0.0)
        return state.standard_form_state(values)
    params = None
    if args.named.strip().lower().replace("_", "-") == "ghz-w":
        if args.alpha is None:
            raise SystemExit("--named GHZ-W requires --alpha")
        params = [args.alpha]
    return state.named_state(args.named, params)


def _parse_cut(spec_text: str, n_parties: int) -> state.Partition:
    block = tuple(int(i) for i in spec_text.split(","))
    return state.Partition.bipartition(block, n_parties)


def _print_result(name: str, result: emb.MeasureResult, strict: bool) -> int:
    print(f"{name} = {result.value:.10g}")
    if result.argmin is not None:
        angles = ", ".join(f"{a:.8f}" for a in result.argmin)
        print(f"  argmin angles: [{angles}]")
    if result.extras:
        printable = {
            k: v for k, v in result.extras.items() if isinstance(v, (int, float, str, tuple))
        }
        if printable:
            print(f"  details: {printable}")
    if result.diagnostics is not None:
        d = result.diagnostics
        print(
            f"  optimizer: {d.evaluations} evaluations, {d.restarts} restarts, "
            f"converged={d.converged}"
        )
        if strict and not d.converged:
            print("  optimizer budget exhausted (--strict)", file=sys.stderr)
            return 1
    return 0


def _cmd_compute(args) -> int:
    cfg = _config_from(args, emb.DEFAULT_CFG)
    hmin_cfg = _config_from(args, emb.HMIN_CFG)
    if args.measure == "tangle-ghzw":
        if args.alpha is None:
            raise SystemExit("tangle-ghzw requires --alpha")
        print(f"tangle-ghzw = {geometric.tangle_ghz_w(args.alpha):.10g}")
        return 0
    psi = _resolve_state(args)
    tripartite_only = {"ehmin", "elocc", "sandwich", "ebi"}
    if args.measure in tripartite_only and psi.dims != (2, 2, 2):
        raise SystemExit(f"measure {args.measure} requires a three-qubit state")
    if args.measure == "emb":
        return _print_result("emb", emb.emb_general(psi, cfg=cfg), args.strict)
    if args.measure == "ehmin":
        return _print_result("ehmin", emb.e_hmin(psi, hmin_cfg), args.strict)
    if args.measure == "elocc":
        return _print_result("elocc", emb.e_locc(psi, cfg), args.strict)
    if args.measure == "ebi":
        print(f"ebi = {measures.bipartite_lower_bound(psi):.10g}")
        return 0
    if args.measure == "egeom":
        try:
            result = geometric.geometric_measure_symmetric(psi, cfg)
        except ValueError:
            result = geometric.geometric_measure_general(psi)
        return _print_result("egeom", result, args.strict)
    if args.measure == "sandwich":
        bounds = closedform.relative_entropy_sandwich(psi, cfg)
        print(f"sandwich lower = {bounds.lower:.10g}")
        print(f"sandwich upper = {bounds.upper:.10g}")
        print(f"sandwich exact = {'none' if bounds.exact is None else f'{bounds.exact:.10g}'}")
        return 0
    if args.measure == "schmidt":
        cut = _parse_cut(args.cut, psi.n_parties) if args.cut else state.Partition.bipartition((0,), psi.n_parties)
        spectrum = measures.schmidt_decompose(psi, cut)
        print("schmidt values = " + ", ".join(f"{v:.10g}" for v in spectrum.values))
        print(f"schmidt rank = {spectrum.rank}")
        return 0
    raise SystemExit(f"unknown measure {args.measure!r}")


def _cmd_sweep(args) -> int:
    cfg = _config_from(args, emb.DEFAULT_CFG)
    hmin_cfg = _config_from(args, emb.HMIN_CFG)
    rows = sweep_rows(args.points, cfg, hmin_cfg, check=not args.no_assert)
    lines = ["x,emb,egeom,ehmin,ebi,tangle"]
    for r in rows:
        lines.append(
            ",".join(
                f"{v:.10g}" for v in (r.x, r.emb, r.egeom, r.ehmin, r.ebi, r.tangle)
            )
        )
    text = "\n".join(lines) + "\n"
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def _cmd_verify(args) -> int:
    cfg = _config_from(args, emb.DEFAULT_CFG)
    hmin_cfg = _config_from(args, emb.HMIN_CFG)
    if args.state is not None:
        with open(args.state, "rb") as fh:
            states = [state.from_json(fh.read())]
    else:
        rng = np.random.default_rng(args.seed)
        states = [state.random_pure_state((2, 2, 2), rng) for _ in range(args.trials)]
    passed = 0
    failures = []
    for i, psi in enumerate(states):
        outcome = verify_state(psi, cfg, hmin_cfg)
        if outcome.passed:
            passed += 1
        else:
            bad = [name for name, ok in outcome.checks.items() if not ok]
            failures.append((i, bad, outcome.values))
        if outcome.tight:
            print(f"state {i}: sandwich bounds tight "
                  f"({outcome.values['sandwich_lower']:.6f})")
    print(f"verify: {passed}/{len(states)} states passed")
    for i, bad, values in failures:
        print(f"  state {i} FAILED {bad}: {values}", file=sys.stderr)
    return 0 if not failures else 1


def _cmd_schmidt(args) -> int:
    psi = _resolve_state(args)
    cut = _parse_cut(args.cut, psi.n_parties) if args.cut else state.Partition.bipartition((0,), psi.n_parties)
    spectrum = measures.schmidt_decompose(psi, cut)
    print("schmidt values = " + ", ".join(f"{v:.10g}" for v in spectrum.values))
    print(f"schmidt rank = {spectrum.rank}")
    print(f"entanglement = {measures.entropy_bits(spectrum.values):.10g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embound",
        description="Measurement-based entanglement bounds for pure states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute one measure for one state")
    _add_state_args(compute)
    _add_optimizer_args(compute)
    compute.add_argument("--measure", required=True, choices=MEASURES)
    compute.add_argument("--cut", help="comma-separated party indices of the left block")
    compute.set_defaults(func=_cmd_compute)

    sweep = sub.add_parser("sweep", help="GHZ-W' family sweep CSV")
    _add_optimizer_args(sweep)
    sweep.add_argument("--points", type=int, default=41)
    sweep.add_argument("--out", help="CSV output path ('-' for stdout)")
    sweep.add_argument("--no-assert", action="store_true", help="skip row ordering checks")
    sweep.set_defaults(func=_cmd_sweep)

    verify = sub.add_parser("verify", help="inequality harness on random states")
    _add_optimizer_args(verify)
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--state", help="verify this JSON state instead of random draws")
    verify.set_defaults(func=_cmd_verify)

    schmidt = sub.add_parser("schmidt", help="Schmidt spectrum across a cut")
    _add_state_args(schmidt)
    schmidt.add_argument("--cut", help="comma-separated party indices of the left block")
    schmidt.set_defaults(func=_cmd_schmidt)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
