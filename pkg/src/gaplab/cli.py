"""Command line front end.

Every subcommand prints one deterministic JSON (or CSV) document: config
echo, named pass/fail verdicts with their certificates, metrics, and a
timings subobject that identity comparisons exclude.  Exit status 0 means
all verdicts passed, 1 means some inequality verdict failed (the report
carries the counterexample), 2 means the input was invalid.

Rationals cross the boundary as "p/q" strings; exact decimal literals are
accepted and converted exactly (0.625 -> 5/8).
"""

from __future__ import annotations

import argparse
import inspect
import os
import sys
import time
from fractions import Fraction
from math import isqrt
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exact_torus import TorusVector
from .extremal_constructions import (ap_free_check, behrend_set,
                                     build_cover_forcing_set, exact_ap_free,
                                     greedy_ap_free, lattice_projection)
from .gap_spectrum import (APUnionSpec, CircularSet, ap_union_gap_check,
                           arc_counting_diagnostic, fractional_orbit,
                           gap_bound_check, greedy_max_distinct, spectrum,
                           three_gap_check)
from .generator_decomposition import verify_generation
from .nn_census import (PointCloud, extract_core, kissing_check,
                        kronecker_census, max_ball_depth, nn_census,
                        tightness_example)
from .reports import SCHEMA_VERSION, canonical_json, to_csv, to_jsonable
from .sumset_engine import (Domain, FiniteExactSet, difference_set,
                            minimal_difference_cover, sumset)
from .verify import CHECKS, run_checks

OUTPUT_DIR_VAR = "GAPLAB_OUTPUT_DIR"


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _rational_list(text: str) -> Tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty rational list")
    return tuple(_rational(p.strip()) for p in parts)


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(p.strip()) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from exc


def _vector_list(text: str) -> Tuple[Tuple[Fraction, ...], ...]:
    """Semicolon-separated points, comma-separated coordinates."""
    points = [p for p in text.split(";") if p.strip()]
    if not points:
        raise argparse.ArgumentTypeError("empty point list")
    return tuple(_rational_list(p) for p in points)


def _verdict(name: str, passed: bool, **certificate: Any) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"name": name, "passed": bool(passed)}
    entry.update(certificate)
    return entry


def _payload(command: str, config: Dict[str, Any], verdicts: List[Dict[str, Any]],
             metrics: Dict[str, Any], report: Any, elapsed: float) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": to_jsonable(config),
        "verdicts": to_jsonable(verdicts),
        "metrics": to_jsonable(metrics),
        "report": to_jsonable(report),
        "timings": {"total_s": float(elapsed)},
    }


def _emit(payload: Dict[str, Any], args: argparse.Namespace) -> None:
    text = to_csv(payload) if args.format == "csv" else canonical_json(payload) + "\n"
    path = args.output
    if path is None:
        sys.stdout.write(text)
        return
    base = os.environ.get(OUTPUT_DIR_VAR)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _points_or_orbit(args: argparse.Namespace) -> CircularSet:
    if args.points is not None:
        return CircularSet.from_values([v[0] for v in args.points])
    if args.alpha is None or args.n is None:
        raise ValueError("give either --points or both --alpha and --n")
    return fractional_orbit(args.alpha, args.n)


def _cmd_orbit(args) -> Tuple[Dict[str, Any], bool]:
    b = fractional_orbit(args.alpha, args.n)
    rep = three_gap_check(args.alpha, args.n)
    spect = spectrum(b) if len(b) > 1 else None
    verdicts = [_verdict("three-gap", rep.passed,
                         distinct_gaps=rep.distinct_gaps,
                         reference_distances=rep.reference_distances)]
    metrics = {"size": len(b), "distinct_gap_count": len(rep.distinct_gaps)}
    report = {"points": b, "multiplicities": spect.multiplicity if spect else {}}
    return {"verdicts": verdicts, "metrics": metrics, "report": report}, rep.passed


def _cmd_gaps(args) -> Tuple[Dict[str, Any], bool]:
    rep = three_gap_check(args.alpha, args.n)
    verdicts = [_verdict("three-gap", rep.passed,
                         distinct_gaps=rep.distinct_gaps,
                         reference_distances=rep.reference_distances)]
    metrics = {"distinct_gap_count": len(rep.distinct_gaps)}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_ap_union(args) -> Tuple[Dict[str, Any], bool]:
    arms = tuple(zip(args.betas, args.lengths))
    if len(args.betas) != len(args.lengths):
        raise ValueError("--betas and --lengths must have equal length")
    spec = APUnionSpec(args.alpha, arms)
    rep = ap_union_gap_check(spec)
    verdicts = [_verdict("gap-bound-3k", rep.passed, bound=rep.bound,
                         distinct_gaps=rep.distinct_gaps)]
    metrics = {"k": rep.k, "total_points": rep.total_points,
               "distinct_gap_count": len(rep.distinct_gaps)}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_greedy(args) -> Tuple[Dict[str, Any], bool]:
    b = fractional_orbit(args.alpha, args.n)
    a = greedy_max_distinct(b)
    bound = gap_bound_check(a, b)
    n = len(b)
    root = isqrt(2 * n)
    target = root - 1 if root * root == 2 * n else root  # ceil(sqrt(2n)) - 1
    distinct = len(spectrum(a).distinct)
    achieved = distinct >= target
    double = sumset(b.to_exact_set(), b.to_exact_set())
    doubling_ok = len(double) == 2 * n - 1
    verdicts = [
        _verdict("greedy-target", achieved, distinct_gaps=distinct, target=target),
        _verdict("gap-bound", bound.passed, lhs=bound.lhs, rhs=bound.rhs),
        _verdict("orbit-doubling", doubling_ok, sumset_size=len(double),
                 expected=2 * n - 1),
    ]
    metrics = {"b_size": n, "a_size": len(a), "distinct_gaps": distinct}
    report = {"chosen": a, "bound": bound}
    passed = achieved and bound.passed and doubling_ok
    return {"verdicts": verdicts, "metrics": metrics, "report": report}, passed


def _cmd_sumset(args) -> Tuple[Dict[str, Any], bool]:
    dom = Domain(args.domain)
    if dom is Domain.INTEGERS:
        for v in args.a + (args.b or ()):
            if v.denominator != 1:
                raise ValueError(f"integer domain got non-integer {v}")
        xs = FiniteExactSet.integers(int(v) for v in args.a)
        ys = FiniteExactSet.integers(int(v) for v in args.b) if args.b else xs
    elif dom is Domain.RATIONALS:
        xs = FiniteExactSet.rationals(args.a)
        ys = FiniteExactSet.rationals(args.b) if args.b else xs
    else:
        xs = FiniteExactSet.torus(args.a)
        ys = FiniteExactSet.torus(args.b) if args.b else xs
    t0 = time.perf_counter()
    s = sumset(xs, ys)
    elapsed = time.perf_counter() - t0
    metrics = {"a_size": len(xs), "b_size": len(ys), "sum_size": len(s),
               "doubling_numerator": len(s), "doubling_denominator": len(xs)}
    report = {"elements": s.elements if len(s) <= args.print_limit else (),
              "truncated": len(s) > args.print_limit}
    return {"verdicts": [], "metrics": metrics, "report": report,
            "timings_extra": {"sumset_s": elapsed}}, True


def _cmd_cover(args) -> Tuple[Dict[str, Any], bool]:
    b = _points_or_orbit(args)
    cov = minimal_difference_cover(b.to_exact_set(), exact_limit=args.exact_limit)
    c_set = FiniteExactSet.torus(cov.cover)
    valid = difference_set(c_set, b.to_exact_set()).elements == tuple(cov.universe)
    verdicts = [_verdict("cover-valid", valid, cover_size=len(cov.cover),
                         universe_size=len(cov.universe), exact=cov.exact)]
    metrics = {"b_size": len(b), "cover_size": len(cov.cover),
               "universe_size": len(cov.universe)}
    report = {"cover": cov.cover, "exact": cov.exact}
    return {"verdicts": verdicts, "metrics": metrics, "report": report}, valid


def _cmd_generators(args) -> Tuple[Dict[str, Any], bool]:
    b = _points_or_orbit(args)
    if args.cover is not None:
        c = CircularSet.from_values([v[0] for v in args.cover])
    else:
        cov = minimal_difference_cover(b.to_exact_set(), exact_limit=args.exact_limit)
        c = CircularSet.from_values([p.value for p in cov.cover])
    rep = verify_generation(b, c)
    verdicts = [_verdict("generators", rep.passed,
                         decomposed_minus=rep.decomposed_minus,
                         decomposed_plus=rep.decomposed_plus,
                         universe_size=rep.universe_size,
                         spans_agree=rep.spans_agree,
                         mismatches=rep.mismatches)]
    metrics = {"b_size": rep.b_size, "c_size": rep.c_size,
               "r_minus_size": len(rep.r_minus), "r_plus_size": len(rep.r_plus)}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_behrend(args) -> Tuple[Dict[str, Any], bool]:
    rep = behrend_set(args.n)
    greedy = greedy_ap_free(args.n)
    ok = ap_free_check(rep.points)
    verdicts = [_verdict("ap-free", ok, size=rep.size)]
    metrics = {"digit_sphere_size": rep.size, "greedy_size": len(greedy),
               "base": rep.base, "digit_count": rep.digit_count,
               "radius_sq": rep.radius_sq}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, ok


def _cmd_forced_cover(args) -> Tuple[Dict[str, Any], bool]:
    seed = args.s if args.s is not None else exact_ap_free(args.n)
    rep = build_cover_forcing_set(args.n, seed, exact_limit=args.exact_limit)
    verdicts = [
        _verdict("unique-representations",
                 all(c == 1 for c in rep.representation_counts.values()),
                 representation_counts=rep.representation_counts),
        _verdict("doubling-below-10n", rep.sumset_size < rep.doubling_bound,
                 sumset_size=rep.sumset_size, bound=rep.doubling_bound),
        _verdict("forced-block-in-cover", rep.forced_block_in_cover,
                 forced_block=rep.forced_block),
    ]
    metrics = {"n": rep.n, "x": rep.x, "cover_size": len(rep.cover),
               "cover_exact": rep.cover_exact}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_lattice(args) -> Tuple[Dict[str, Any], bool]:
    rep = lattice_projection(args.alphas, args.box)
    verdicts = [
        _verdict("corner-cover", rep.cover_equal, corners=rep.corners,
                 corner_bound=rep.corner_bound),
        _verdict("doubling", rep.sumset_size <= rep.doubling_bound,
                 sumset_size=rep.sumset_size, bound=rep.doubling_bound),
    ]
    metrics = {"size": len(rep.points), "sumset_size": rep.sumset_size}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_nn_census(args) -> Tuple[Dict[str, Any], bool]:
    cloud = PointCloud.from_values(args.points)
    rep = nn_census(cloud, method=args.method, cells=args.cells)
    metrics = {"size": len(cloud.points), "dim": rep.dim,
               "census_size": rep.census_size, "method": rep.method}
    return {"verdicts": [], "metrics": metrics, "report": rep}, True


def _cmd_kronecker(args) -> Tuple[Dict[str, Any], bool]:
    rep = kronecker_census(args.alphas, args.n)
    verdicts = [_verdict("census-contained", rep.contained,
                         census_size=rep.census_size, bound=rep.bound, ell=rep.ell)]
    metrics = {"n": rep.n, "dim": len(rep.alphas), "census_size": rep.census_size,
               "ell": rep.ell, "ratio": rep.ratio, "tie_free": rep.tie_free}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_kissing(args) -> Tuple[Dict[str, Any], bool]:
    vectors = [TorusVector(v) for v in args.vectors]
    rep = kissing_check(vectors)
    verdicts = [_verdict("pairwise-dominance", rep.passed, count=rep.count,
                         violations=rep.violations)]
    metrics = {"dim": rep.dim, "count": rep.count}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_extract_core(args) -> Tuple[Dict[str, Any], bool]:
    if args.points is not None:
        cloud = PointCloud.from_values(args.points)
    elif args.m is not None:
        cloud = tightness_example(args.m).cloud
    else:
        raise ValueError("give either --points or --m")
    epsilon = args.epsilon
    if epsilon is None:
        if args.m is None:
            raise ValueError("--epsilon is required with --points")
        epsilon = Fraction(1, 2 * args.m)
    kappa = args.kappa if args.kappa is not None else max_ball_depth(cloud, cloud).kappa_hat
    trace = extract_core(cloud, cloud, epsilon, kappa)
    verdicts = [
        _verdict("core-size", trace.size_ok, core_size=len(trace.core),
                 floor_size=trace.a_size - int(epsilon * trace.a_size)),
        _verdict("core-census", trace.census_ok, census_size=trace.core_census_size,
                 bound=trace.census_bound),
        _verdict("ball-depth", trace.upsilon_ok, upsilon_max=trace.upsilon_max,
                 threshold=trace.threshold),
    ]
    metrics = {"a_size": trace.a_size, "rounds": trace.rounds, "l": trace.l,
               "epsilon": epsilon, "kappa": kappa}
    return {"verdicts": verdicts, "metrics": metrics, "report": trace}, trace.passed


def _cmd_tightness(args) -> Tuple[Dict[str, Any], bool]:
    rep = tightness_example(args.m)
    verdicts = [
        _verdict("doubling", rep.sumset_size < rep.doubling_bound,
                 sumset_size=rep.sumset_size, bound=rep.doubling_bound),
        _verdict("census-floor", rep.census_size >= rep.census_floor,
                 census_size=rep.census_size, floor=rep.census_floor),
    ]
    metrics = {"m": rep.m, "size": rep.size, "census_size": rep.census_size,
               "upper_estimate": rep.upper_estimate}
    return {"verdicts": verdicts, "metrics": metrics, "report": rep}, rep.passed


def _cmd_verify(args) -> Tuple[Dict[str, Any], bool]:
    names = None if args.suite == "all" else [s.strip() for s in args.suite.split(",")]
    overrides: Dict[str, Dict[str, Any]] = {}
    if args.trials is not None:
        for name, fn in CHECKS.items():
            if "trials" in inspect.signature(fn).parameters:
                overrides[name] = {"trials": args.trials}
    results = run_checks(seed=args.seed, names=names, overrides=overrides)
    for r in results:
        print(r.line)
    verdicts = [_verdict(r.name, r.passed, summary=r.summary) for r in results]
    metrics = {"checks": len(results), "failures": sum(not r.passed for r in results)}
    payload = {"verdicts": verdicts, "metrics": metrics,
               "report": {r.name: r.details for r in results}}
    return payload, all(r.passed for r in results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaplab",
        description="Exact gap spectra, sumsets, covers, and torus censuses.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None,
                       help=f"write the report here (relative paths land in ${OUTPUT_DIR_VAR})")

    p = sub.add_parser("orbit", help="fractional-part orbit of alpha with its gaps")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_orbit)

    p = sub.add_parser("gaps", help="distinct gaps of the orbit against reference distances")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_gaps)

    p = sub.add_parser("ap-union", help="gap count of a union of progressions vs 3k")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--betas", type=_rational_list, required=True,
                   help="comma-separated starting offsets")
    p.add_argument("--lengths", type=_int_list, required=True,
                   help="comma-separated progression lengths")
    common(p)
    p.set_defaults(fn=_cmd_ap_union)

    p = sub.add_parser("greedy", help="greedy distinct-gap subset of an orbit")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_greedy)

    p = sub.add_parser("sumset", help="exact sumset of two finite sets")
    p.add_argument("--a", type=_rational_list, required=True)
    p.add_argument("--b", type=_rational_list, default=None)
    p.add_argument("--domain", choices=tuple(d.value for d in Domain), default="torus")
    p.add_argument("--print-limit", type=int, default=10000)
    common(p)
    p.set_defaults(fn=_cmd_sumset)

    p = sub.add_parser("cover", help="minimum difference cover of a torus set")
    p.add_argument("--points", type=_vector_list, default=None,
                   help="semicolon-separated torus points")
    p.add_argument("--alpha", type=_rational, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--exact-limit", type=int, default=24)
    common(p)
    p.set_defaults(fn=_cmd_cover)

    p = sub.add_parser("generators", help="decompose every difference over both gap families")
    p.add_argument("--points", type=_vector_list, default=None)
    p.add_argument("--alpha", type=_rational, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--cover", type=_vector_list, default=None,
                   help="explicit C; defaults to the minimum difference cover")
    p.add_argument("--exact-limit", type=int, default=24)
    common(p)
    p.set_defaults(fn=_cmd_generators)

    p = sub.add_parser("behrend", help="digit-sphere progression-free set in [1, n]")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_behrend)

    p = sub.add_parser("forced-cover", help="set whose covers must contain a mirrored block")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=_int_list, default=None,
                   help="progression-free seed; defaults to the exact maximizer")
    p.add_argument("--exact-limit", type=int, default=24)
    common(p)
    p.set_defaults(fn=_cmd_forced_cover)

    p = sub.add_parser("lattice", help="multi-frequency orbit with corner-set cover")
    p.add_argument("--alphas", type=_rational_list, required=True)
    p.add_argument("--box", type=_int_list, required=True)
    common(p)
    p.set_defaults(fn=_cmd_lattice)

    p = sub.add_parser("nn-census", help="nearest-neighbour census of a torus cloud")
    p.add_argument("--points", type=_vector_list, required=True)
    p.add_argument("--method", choices=("auto", "brute", "grid"), default="auto")
    p.add_argument("--cells", type=int, default=None)
    common(p)
    p.set_defaults(fn=_cmd_nn_census)

    p = sub.add_parser("kronecker", help="census of a Kronecker orbit on the d-torus")
    p.add_argument("--alphas", type=_rational_list, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_kronecker)

    p = sub.add_parser("kissing", help="pairwise-dominance check for torus vectors")
    p.add_argument("--vectors", type=_vector_list, required=True)
    common(p)
    p.set_defaults(fn=_cmd_kissing)

    p = sub.add_parser("extract-core", help="large low-census core of a cloud")
    p.add_argument("--points", type=_vector_list, default=None)
    p.add_argument("--m", type=int, default=None,
                   help="use the square-block cloud of parameter m")
    p.add_argument("--epsilon", type=_rational, default=None)
    p.add_argument("--kappa", type=_rational, default=None,
                   help="ball-depth constant; defaults to the measured value")
    common(p)
    p.set_defaults(fn=_cmd_extract_core)

    p = sub.add_parser("tightness", help="square-block cloud with large census")
    p.add_argument("--m", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_tightness)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", default="all",
                   help="'all' or comma-separated check names")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None,
                   help="override the trial count of checks that accept one")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        body, passed = args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0
    config = {k: v for k, v in vars(args).items()
              if k not in ("fn", "format", "output", "command") and v is not None}
    payload = _payload(args.command, config, body["verdicts"], body["metrics"],
                       body["report"], elapsed)
    for key, value in body.get("timings_extra", {}).items():
        payload["timings"][key] = float(value)
    if args.command == "verify" and args.output is None:
        return 0 if passed else 1
    _emit(payload, args)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
