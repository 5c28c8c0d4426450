"""
Command-line entry points for the coarse-geometry lab.

Each subcommand validates a RunConfig, delegates to one module operation and
writes a versioned JSON report (or CSV / DOT where the command supports it).
With --strict the exit status carries the verdict: 0 consistent,
2 violates, 3 indeterminate. Lab errors exit 1, usage errors 64.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from circles.jurisdiction import BOUNDED, GROWING, limited_jurisdiction_sweep
from circles.loops import search_quasi_circles
from config.settings import configure_logging, family_defaults, load_config_file, set_ball_budget_env
from examiner import (
    CrossExaminer,
    SEPARATED,
    SEPARATION_INDETERMINATE,
    construct_ce_tree,
    construct_ce_z2,
    delta_graph,
    good_subpath_exhaustive_check,
    validate_cross_examiner,
    witness_separation_check,
)
from graphs.ball import materialize_ball
from graphs.errors import LabError, MalformedInputError, PreconditionError
from graphs.oracles import RegularTree, ZLattice, parse_family
from growth.isoperimetry import isoperimetry_sweep
from growth.tables import growth_table
from metric.axes import default_axis
from metric.certify import fmt_rational
from reports import (
    dump_report,
    envelope,
    growth_chart,
    growth_csv,
    jurisdiction_chart,
    jurisdiction_csv,
    render_dot,
)
from separation.probes import CONSISTENT, INDETERMINATE, SAMPLED, SigmaSweep, ubq_probe

from .classify import EUCLIDEAN, HYPERBOLIC, UBQ_FAILS, classify
from .config import DEFAULT_BUCKETS, RunConfig
from .hyperbolicity import DEFAULT_SAMPLES
from .hyperbolicity import INDETERMINATE as DELTA_INDETERMINATE
from .hyperbolicity import hyperbolicity_estimate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATES = 2
EXIT_INDETERMINATE = 3
EXIT_USAGE = 64

CONFIG_ALIASES = {"lambda": "lam"}


@dataclass
class CommandOutput:
    result: Dict[str, Any]
    status: int = EXIT_OK
    csv: Optional[Callable[[], str]] = None
    dot: Optional[Callable[[], str]] = None
    chart: Optional[Callable[[str], str]] = None


def _defaults(cfg: RunConfig) -> Dict[str, Any]:
    return family_defaults(cfg.family)


def cmd_growth(cfg: RunConfig) -> CommandOutput:
    oracle = parse_family(cfg.family)
    defaults = _defaults(cfg)
    N = defaults["N"] if cfg.N is None else cfg.N
    window = tuple(defaults["fit_window"]) if cfg.N is None else None
    table = growth_table(oracle, N, window=window)
    return CommandOutput(
        table.to_dict(),
        EXIT_OK if table.complete else EXIT_INDETERMINATE,
        csv=lambda: growth_csv(table),
        chart=lambda path: growth_chart(table, path),
    )


def cmd_ubq(cfg: RunConfig) -> CommandOutput:
    oracle = parse_family(cfg.family)
    defaults = _defaults(cfg)
    R = defaults["R"] if cfg.R is None else cfg.R
    D = R // 3 if cfg.D is None else cfg.D
    sigmas = cfg.sigma or defaults["sigmas"]
    axis = cfg.axis or default_axis(oracle)
    if axis == SAMPLED:
        axis = f"{SAMPLED}:{cfg.seed}"
    ball = materialize_ball(oracle, oracle.base, R)
    reports = [ubq_probe(oracle, axis, cfg.lam or 1, cfg.c, s, D, R, ball=ball) for s in sigmas]
    result = reports[0].to_dict()
    if len(reports) > 1:
        result["sweep"] = SigmaSweep(reports).to_dict()
    verdicts = {r.verdict for r in reports}
    if verdicts == {CONSISTENT}:
        status = EXIT_OK
    elif verdicts - {CONSISTENT, INDETERMINATE}:
        status = EXIT_VIOLATES
    else:
        status = EXIT_INDETERMINATE
    first = reports[0]
    return CommandOutput(
        result,
        status,
        dot=lambda: render_dot(
            ball, first.components, overlays=[("segment", first.segment)],
            title=f"{ball.family} sigma={first.sigma} D={D}: {first.verdict}",
        ),
    )


def cmd_jurisdiction(cfg: RunConfig) -> CommandOutput:
    oracle = parse_family(cfg.family)
    R = _defaults(cfg)["R"] if cfg.R is None else cfg.R
    sweep = limited_jurisdiction_sweep(
        oracle, cfg.lam or 2, cfg.c, cfg.delta, cfg.buckets or DEFAULT_BUCKETS, R,
        budget=cfg.samples or 40, seed=cfg.seed,
    )
    status = {BOUNDED: EXIT_OK, GROWING: EXIT_VIOLATES}.get(sweep.trend, EXIT_INDETERMINATE)
    return CommandOutput(
        sweep.to_dict(),
        status,
        csv=lambda: jurisdiction_csv(sweep),
        chart=lambda path: jurisdiction_chart(sweep, path),
    )


def cmd_circles(cfg: RunConfig) -> CommandOutput:
    oracle = parse_family(cfg.family)
    R = _defaults(cfg)["R"] if cfg.R is None else cfg.R
    lam = cfg.lam or "2"
    length = cfg.length or (4, 40)
    ball = materialize_ball(oracle, oracle.base, R)
    found = search_quasi_circles(ball, lam, cfg.c, length, cfg.samples or 40, seed=cfg.seed)
    result = {
        "family": ball.family,
        "lambda": fmt_rational(lam),
        "c": fmt_rational(cfg.c),
        "length_range": list(length),
        "found": len(found),
        "max_length": max((qc.length for qc in found), default=0),
        "circles": [qc.to_dict() for qc in found],
    }
    return CommandOutput(
        result,
        EXIT_OK if found else EXIT_INDETERMINATE,
        dot=lambda: render_dot(
            ball, overlays=[(f"loop{k}", qc.loop) for k, qc in enumerate(found[:6])],
            title=f"{ball.family} ({result['lambda']}, {result['c']})-quasi-circles",
        ),
    )


def cmd_iso(cfg: RunConfig) -> CommandOutput:
    oracle = parse_family(cfg.family)
    defaults = _defaults(cfg)
    R = defaults["R"] if cfg.R is None else cfg.R
    N = defaults["N"] if cfg.N is None else cfg.N
    ball = materialize_ball(oracle, oracle.base, R)
    table = growth_table(oracle, N)
    summary = isoperimetry_sweep(ball, table, 1000 if cfg.samples is None else cfg.samples, seed=cfg.seed)
    return CommandOutput(summary.to_dict(), EXIT_OK if summary.all_pass else EXIT_VIOLATES)


def _load_fixture(path: str) -> CrossExaminer:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInputError(f"cannot read cross-examiner fixture {path}: {e}")
    return CrossExaminer.from_dict(payload)


def cmd_ce(cfg: RunConfig) -> CommandOutput:
    oracle = parse_family(cfg.family)
    if cfg.fixture:
        ce = _load_fixture(cfg.fixture)
    elif isinstance(oracle, ZLattice) and oracle.dim == 2:
        sigma = cfg.sigma[0] if cfg.sigma else 1
        ce = construct_ce_z2(sigma=sigma, halflength=80 if cfg.N is None else cfg.N, lam=cfg.lam or 1, c=cfg.c)
    elif isinstance(oracle, RegularTree):
        sigma = cfg.sigma[0] if cfg.sigma else 1
        ce = construct_ce_tree(oracle.valence, sigma, halflength=8 if cfg.N is None else cfg.N)
    else:
        raise PreconditionError(f"no canonical cross-examiner for {oracle.family}; pass --fixture", {"family": oracle.family})
    halflength = max(g.length for g in ce.gamma)
    # tree distances are exact in any ball holding the pieces
    margin = 2 if isinstance(oracle, RegularTree) else halflength
    R = halflength + margin if cfg.R is None else cfg.R
    ball = materialize_ball(oracle, ce.v0, R)
    validation = validate_cross_examiner(ball, ce)
    separation = witness_separation_check(ball, ce, validation) if validation.passed else None
    delta = delta_graph(ball, ce) if validation.passed else None
    result = {
        "sizes": {"sigma": ce.sigma, "r": ce.r, "R": ce.R, "halflength": halflength, "ball_radius": R},
        "validation": validation.to_dict(),
        "separation": separation.to_dict() if separation else None,
        "delta_graph": dict(delta.to_dict(), alternating_cycle=delta.is_alternating_cycle()) if delta else None,
        "good_subpath_check": good_subpath_exhaustive_check().to_dict(),
    }
    if not validation.passed or separation.status not in (SEPARATED, SEPARATION_INDETERMINATE):
        status = EXIT_VIOLATES
    elif separation.status == SEPARATION_INDETERMINATE:
        status = EXIT_INDETERMINATE
    else:
        status = EXIT_OK
    return CommandOutput(result, status)


def cmd_hyperbolicity(cfg: RunConfig) -> CommandOutput:
    oracle = parse_family(cfg.family)
    R = _defaults(cfg)["hyper_R"] if cfg.R is None else cfg.R
    ball = materialize_ball(oracle, oracle.base, R)
    report = hyperbolicity_estimate(ball, cfg.samples or DEFAULT_SAMPLES, seed=cfg.seed)
    return CommandOutput(report.to_dict(), EXIT_INDETERMINATE if report.trend == DELTA_INDETERMINATE else EXIT_OK)


def cmd_classify(cfg: RunConfig) -> CommandOutput:
    overrides = {"R": cfg.R, "N": cfg.N, "sigmas": cfg.sigma}
    verdict = classify(cfg.family, overrides, seed=cfg.seed, samples=cfg.samples)
    status = {EUCLIDEAN: EXIT_OK, HYPERBOLIC: EXIT_OK, UBQ_FAILS: EXIT_VIOLATES}.get(verdict.label, EXIT_INDETERMINATE)
    return CommandOutput(verdict.to_dict(), status)


class LabArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"[ERROR] {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--family", type=str, default="z2", help="z<d>, heisenberg, t<k>, free:<r>, tiling:<p>,<q>, edges:<path>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="Vertex budget per ball (sets COARSE_PLANE_BUDGET)")
    p.add_argument("--out", type=str, default=None, help="Output path; stdout when omitted")
    p.add_argument("--format", type=str, default="json", choices=["json", "csv", "dot"])
    p.add_argument("--plot", type=str, default=None, help="PNG chart path (growth, jurisdiction)")
    p.add_argument("--strict", action="store_true", help="Exit 2 on violations, 3 when indeterminate")
    p.add_argument("--no-meta", dest="no_meta", action="store_true", help="Omit timestamps for byte-identical reports")
    p.add_argument("--config", type=str, default=None, help="key=value file supplying defaults")
    p.add_argument("--log-level", dest="log_level", type=str, default="INFO")


def _probe(p: argparse.ArgumentParser):
    p.add_argument("--R", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=str, default=None)
    p.add_argument("--c", type=str, default="0")


def build_parser():
    parser = LabArgumentParser(description="Coarse-geometry lab: probes, certificates and classification")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers: Dict[str, argparse.ArgumentParser] = {}

    p = sub.add_parser("growth", help="Exact growth table and exponent fit")
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=cmd_growth)
    subparsers["growth"] = p

    p = sub.add_parser("ubq", help="UBQ probe: wide components around an axis")
    _probe(p)
    p.add_argument("--sigma", type=str, default=None, help="Comma-separated list")
    p.add_argument("--D", type=int, default=None)
    p.add_argument("--axis", type=str, default=None, help="Axis name, or 'sampled' for a seeded random geodesic")
    p.set_defaults(func=cmd_ubq)
    subparsers["ubq"] = p

    p = sub.add_parser("jurisdiction", help="Limited-jurisdiction sweep over loop-length buckets")
    _probe(p)
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--buckets", type=str, default=None, help="e.g. 8-12,13-20")
    p.set_defaults(func=cmd_jurisdiction)
    subparsers["jurisdiction"] = p

    p = sub.add_parser("circles", help="Seeded quasi-circle search")
    _probe(p)
    p.add_argument("--length", type=str, default=None, help="lo-hi loop length")
    p.set_defaults(func=cmd_circles)
    subparsers["circles"] = p

    p = sub.add_parser("ce", help="Build or load a cross-examiner and audit it")
    _probe(p)
    p.add_argument("--sigma", type=str, default=None)
    p.add_argument("--N", type=int, default=None, help="Ray halflength")
    p.add_argument("--fixture", type=str, default=None, help="Cross-examiner JSON")
    p.set_defaults(func=cmd_ce)
    subparsers["ce"] = p

    p = sub.add_parser("iso", help="Varopoulos inequality on random connected sets")
    p.add_argument("--R", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=cmd_iso)
    subparsers["iso"] = p

    p = sub.add_parser("hyperbolicity", help="Four-point delta over a ladder of radii")
    p.add_argument("--R", type=int, default=None)
    p.set_defaults(func=cmd_hyperbolicity)
    subparsers["hyperbolicity"] = p

    p = sub.add_parser("classify", help="Euclidean / hyperbolic / ubq-fails label")
    p.add_argument("--R", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--sigma", type=str, default=None)
    p.set_defaults(func=cmd_classify)
    subparsers["classify"] = p

    for p in subparsers.values():
        _common(p)
    return parser, subparsers


def _parse(argv: Optional[List[str]]):
    parser, subparsers = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            values = load_config_file(args.config)
        except (OSError, ValueError) as e:
            parser.error(str(e))
        values = {CONFIG_ALIASES.get(k, k): v for k, v in values.items()}
        unknown = sorted(k for k in values if k not in vars(args) or k in ("func", "command", "config"))
        if unknown:
            parser.error(f"{args.config}: unknown keys {unknown}")
        subparsers[args.command].set_defaults(**values)
        args = parser.parse_args(argv)
    return args


def _emit(cfg: RunConfig, output: CommandOutput):
    if cfg.format == "csv":
        text = output.csv()
    elif cfg.format == "dot":
        text = output.dot()
    else:
        report = envelope(
            cfg.command, output.result, cfg.echo(),
            meta=not cfg.no_meta, exit_status=output.status if cfg.strict else None,
        )
        text = dump_report(report)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
        logger.info("%s output written to %s", cfg.command, cfg.out)
    else:
        sys.stdout.write(text)
    if cfg.plot:
        if output.chart is None:
            logger.warning("%s has no chart; --plot ignored", cfg.command)
        else:
            output.chart(cfg.plot)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv(override=True)
    args = _parse(argv)
    fields = {k: v for k, v in vars(args).items() if k not in ("func", "config")}
    try:
        cfg = RunConfig(**fields)
    except ValidationError as e:
        err = e.errors()[0]
        where = ".".join(str(x) for x in err.get("loc", ())) or "config"
        print(f"[ERROR] invalid {where}: {err['msg']}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(cfg.log_level)
    if cfg.budget:
        set_ball_budget_env(cfg.budget)
    try:
        output = args.func(cfg)
        _emit(cfg, output)
    except LabError as e:
        print(f"[ERROR] {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    return output.status if cfg.strict else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
