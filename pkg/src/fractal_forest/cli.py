"""Command-line front door.

Subcommands: ``generate`` (build a graph, emit census/DOT), ``gf``
(generating-function values by one or all methods), ``verify`` (the full
cross-method consistency matrix; nonzero exit on any mismatch) and
``stats`` (label statistics of a random spanning tree).

Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 capability
cap exceeded, 4 decimation singular with no fallback.  Weights are only
accepted as exact rationals ("3/7"); every exact value is printed as a
fraction string.  FRACTAL_FOREST_SEED overrides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import hanoi as hgf
from . import sierpinski as sgf
from . import stats as stat_mod
from .algebra import DEFAULT_SEED, Weights, poly_equal_by_sampling, random_weights
from .errors import CapabilityError, DecimationSingularError
from .graphs import build_hanoi, build_sierpinski, export_dot, graph_census
from .kirchhoff import (
    SchurState,
    lambda_matrix,
    schur_denominator,
    schur_map,
    schur_map_divergence,
    schur_pipeline,
    tree_gf_cofactor,
)
from .oracle import EDGE_CAP, ForestSpec, enumerate_gf

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CAPABILITY = 3
EXIT_SINGULAR = 4

FAMILIES = {
    "hanoi": "hanoi",
    "sierpinski-rot": "sierpinski-rotational",
    "sierpinski-rotational": "sierpinski-rotational",
    "sierpinski-dir": "sierpinski-directional",
    "sierpinski-directional": "sierpinski-directional",
    "sierpinski-schreier": "sierpinski-schreier",
}

COFACTOR_VERTEX_CAP = 130
ORACLE_AUTO_EDGE_CAP = 12  # method=all only runs the oracle on tiny graphs


class UsageError(ValueError):
    pass


def _default_seed() -> int:
    env = os.environ.get("FRACTAL_FOREST_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"FRACTAL_FOREST_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def _family(name: str) -> str:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UsageError(f"unknown family {name!r}") from None


def _level(n: int) -> int:
    if n < 1:
        raise UsageError("level must be >= 1")
    return n


def _build(family: str, level: int, loops: bool = False):
    if family == "hanoi":
        return build_hanoi(level, include_loops=loops)
    return build_sierpinski(level, family.split("-", 1)[1])


def _parse_levels(text: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad level range {text!r}") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"bad level range {text!r}")
    return range(lo, hi + 1)


def _positive_weights(rng: random.Random) -> Weights:
    w = random_weights(rng)
    return Weights(abs(w.a), abs(w.b), abs(w.c))


# -- generate -----------------------------------------------------------------


def run_generate(args) -> tuple[int, str]:
    family = _family(args.family)
    g = _build(family, _level(args.level), loops=args.loops)
    if args.format == "dot":
        return EXIT_OK, export_dot(g)
    census = graph_census(g)
    if args.format == "text":
        lines = [f"{k}: {v}" for k, v in census.items()]
        return EXIT_OK, "\n".join(lines) + "\n"
    if args.format == "csv":
        return EXIT_OK, _to_csv(census)
    return EXIT_OK, _to_json(census)


# -- gf -----------------------------------------------------------------------


def _bundle(family: str, n: int, w: Weights | None):
    if family == "hanoi":
        return hgf.hanoi_bundle(n, w)
    if family == "sierpinski-rotational":
        return sgf.rot_bundle(n, w)
    if family == "sierpinski-directional":
        return sgf.dir_bundle(n, w)
    return sgf.schreier_bundle(n, w)


def _components(bundle) -> dict:
    if hasattr(bundle, "U"):
        return {"T": bundle.T, "U": bundle.U, "R": bundle.R, "L": bundle.L, "Q": bundle.Q}
    return {"T": bundle.T, "S": bundle.S, "Q": bundle.Q}


def _closed_value(family: str, n: int, w: Weights) -> Fraction:
    if family == "sierpinski-rotational":
        return sgf.rot_closed(n).T.evaluate(w)
    if family == "sierpinski-directional":
        return sgf.dir_closed_value(n, w).T
    if family == "sierpinski-schreier":
        return sgf.schreier_closed_value(n, w).T
    if w != Weights.ones():
        raise UsageError("hanoi closed form counts trees at weights 1 1 1 only")
    return Fraction(hgf.hanoi_counts_closed(n).tau)


def _gf_methods(family: str, n: int, w: Weights, requested: str):
    """Resolve the requested method set to the applicable ones."""
    g = None

    def graph():
        nonlocal g
        if g is None:
            g = _build(family, n)
        return g

    methods = {}
    skipped = {}
    wanted = (
        ["recursion", "closed", "cofactor", "schur", "oracle"]
        if requested == "all"
        else [requested]
    )
    for name in wanted:
        if name == "schur" and family != "hanoi":
            if requested == "all":
                continue
            raise UsageError("the decimation method applies to the hanoi family only")
        if name == "closed" and family == "hanoi" and w != Weights.ones():
            if requested == "all":
                skipped[name] = "hanoi closed form is unweighted"
                continue
        if name == "cofactor" and len(graph().vertices) > COFACTOR_VERTEX_CAP:
            msg = f"cofactor capped at {COFACTOR_VERTEX_CAP} vertices"
            if requested == "all":
                skipped[name] = msg
                continue
            raise CapabilityError(msg)
        if name == "oracle":
            edges = len(graph().nonloop_edges())
            cap = ORACLE_AUTO_EDGE_CAP if requested == "all" else EDGE_CAP
            if edges > cap:
                msg = f"oracle skipped at {edges} edges"
                if requested == "all":
                    skipped[name] = msg
                    continue
                raise CapabilityError(f"oracle capped at {EDGE_CAP} edges")
        methods[name] = None
    return methods, skipped, graph


def run_gf(args) -> tuple[int, str]:
    family = _family(args.family)
    n = _level(args.level)
    seed = args.seed if args.seed is not None else _default_seed()
    report = {
        "family": family,
        "level": n,
        "mode": args.mode,
        "method": args.method,
        "seed": seed,
    }
    if args.mode == "symbolic":
        bundle = _bundle(family, n, None)
        comps = {k: v.text() for k, v in _components(bundle).items()}
        report["components"] = comps
        report["value"] = comps["T"]
        if family != "hanoi":
            closed = (
                sgf.rot_closed(n)
                if family == "sierpinski-rotational"
                else sgf.dir_closed(n)
                if family == "sierpinski-directional"
                else sgf.schreier_closed(n)
            )
            report["closed"] = {k: v.text() for k, v in _components(closed).items()}
            agree = all(
                poly_equal_by_sampling(cv, rv, trials=20, seed=seed)
                for cv, rv in zip(_components(closed).values(), _components(bundle).values())
            )
            report["agreement"] = agree
        return EXIT_OK, _emit(report, args.format)

    w = Weights.parse(*args.weights)
    report["weights"] = [str(x) for x in w.as_tuple()]
    methods, skipped, graph = _gf_methods(family, n, w, args.method)
    fallbacks = []
    for name in list(methods):
        if name == "recursion":
            bundle = _bundle(family, n, w)
            report["components"] = {
                k: str(v) for k, v in _components(bundle).items()
            }
            methods[name] = bundle.T
        elif name == "closed":
            methods[name] = _closed_value(family, n, w)
        elif name == "cofactor":
            methods[name] = tree_gf_cofactor(graph(), w)
        elif name == "oracle":
            methods[name] = enumerate_gf(graph(), ForestSpec("tree")).evaluate(w)
        elif name == "schur":
            try:
                value, orbit = schur_pipeline(n, w)
            except DecimationSingularError as exc:
                if len(graph().vertices) <= COFACTOR_VERTEX_CAP:
                    fallbacks.append(f"schur failed ({exc}); used cofactor")
                    value, orbit = tree_gf_cofactor(graph(), w), []
                else:
                    raise
            methods[name] = value
            report["D_orbit"] = [str(d) for d in orbit]
    values = {k: str(v) for k, v in methods.items()}
    report["methods"] = values
    report["skipped"] = skipped
    report["fallbacks"] = fallbacks
    distinct = set(values.values())
    report["agreement"] = len(distinct) == 1
    report["value"] = next(iter(values.values())) if values else None
    code = EXIT_OK if report["agreement"] else EXIT_MISMATCH
    return code, _emit(report, args.format)


# -- verify ---------------------------------------------------------------------


def _check(checks, mismatches, name, level, ok, detail=None):
    entry = {"check": name, "level": level, "status": "ok" if ok else "mismatch"}
    if detail is not None:
        entry["detail"] = detail
    checks.append(entry)
    if not ok:
        mismatches.append(entry)


def _verify_hanoi(levels, trials, rng, checks, mismatches):
    for n in levels:
        rec = hgf.hanoi_counts_recursive(n)
        clo = hgf.hanoi_counts_closed(n)
        _check(
            checks,
            mismatches,
            "hanoi counts recursive=closed",
            n,
            rec == clo,
            None if rec == clo else {"recursive": str(rec), "closed": str(clo)},
        )
        bundle = hgf.hanoi_bundle(n, Weights.ones())
        ok = (
            bundle.T == rec.tau
            and bundle.U == bundle.R == bundle.L == rec.s
            and bundle.Q == rec.q
        )
        _check(checks, mismatches, "hanoi bundle at ones = counts", n, ok)
        if n <= 2:
            g = build_hanoi(n)
            tree = enumerate_gf(g, ForestSpec("tree")).evaluate(Weights.ones())
            _check(checks, mismatches, "hanoi oracle tree count", n, tree == rec.tau)
        g = build_hanoi(n) if n <= 4 else None
        for _ in range(trials):
            w = _positive_weights(rng)
            t_rec = hgf.hanoi_bundle(n, w).T
            t_schur = schur_pipeline(n, w)[0]
            ok = t_rec == t_schur
            detail = None if ok else {"weights": str(w), "recursion": str(t_rec), "schur": str(t_schur)}
            _check(checks, mismatches, "hanoi recursion=schur", n, ok, detail)
            if g is not None:
                t_cof = tree_gf_cofactor(g, w)
                ok = t_rec == t_cof
                detail = None if ok else {"weights": str(w), "recursion": str(t_rec), "cofactor": str(t_cof)}
                _check(checks, mismatches, "hanoi recursion=cofactor", n, ok, detail)
    # map-level guards, independent of level range
    done = 0
    while done < trials:
        state = SchurState.of(
            [Fraction(rng.randint(1, 97), rng.randint(1, 97)) for _ in range(9)]
        )
        if schur_denominator(state) == 0:
            continue
        div = schur_map_divergence(state)
        _check(checks, mismatches, "schur map = rederived", None, not div, div or None)
        done += 1
    if max(levels) >= 3:
        for _ in range(2):
            state = SchurState.of(
                [Fraction(rng.randint(1, 97), rng.randint(1, 97)) for _ in range(9)]
            )
            if schur_denominator(state) == 0:
                continue
            lhs = lambda_matrix(3, state).det()
            rhs = schur_denominator(state) ** 3 * lambda_matrix(2, schur_map(state)).det()
            _check(checks, mismatches, "decimation identity k=3", None, lhs == rhs)


def _verify_rotational(levels, trials, rng, checks, mismatches):
    for n in levels:
        counts = sgf.rot_counts(n)
        closed = sgf.rot_closed(n)
        ones = Weights.ones()
        ok = (
            closed.T.evaluate(ones) == counts.tau
            and closed.S.evaluate(ones) == counts.s
            and closed.Q.evaluate(ones) == counts.q
        )
        _check(checks, mismatches, "rotational closed at ones = counts", n, ok)
        for _ in range(trials):
            w = _positive_weights(rng)
            b = sgf.rot_bundle(n, w)
            ok = (
                closed.T.evaluate(w) == b.T
                and closed.S.evaluate(w) == b.S
                and closed.Q.evaluate(w) == b.Q
            )
            _check(checks, mismatches, "rotational closed = recursion", n, ok,
                   None if ok else {"weights": str(w)})
        if n <= 3:
            g = build_sierpinski(n, "rotational")
            w = _positive_weights(rng)
            ok = tree_gf_cofactor(g, w) == sgf.rot_bundle(n, w).T
            _check(checks, mismatches, "rotational cofactor = recursion", n, ok)
        if n == 1:
            g = build_sierpinski(1, "rotational")
            ok = enumerate_gf(g, ForestSpec("tree")).evaluate(Weights.ones()) == counts.tau
            _check(checks, mismatches, "rotational oracle tree count", n, ok)


def _verify_directional_like(family, levels, trials, rng, checks, mismatches):
    bundle_of = sgf.dir_bundle if family == "sierpinski-directional" else sgf.schreier_bundle
    closed_of = (
        sgf.dir_closed_value
        if family == "sierpinski-directional"
        else sgf.schreier_closed_value
    )
    label = family.split("-", 1)[1]
    for n in levels:
        for _ in range(trials):
            w = _positive_weights(rng)
            b = bundle_of(n, w)
            c = closed_of(n, w)
            ok = (b.T, b.U, b.R, b.L, b.Q) == (c.T, c.U, c.R, c.L, c.Q)
            _check(checks, mismatches, f"{label} closed = recursion", n, ok,
                   None if ok else {"weights": str(w)})
        if n >= 2:
            ones = Weights.ones()
            ok = bundle_of(n, ones).T == sgf.rot_bundle(n - 1, ones).T
            _check(checks, mismatches, f"{label} T at ones = rotational shift", n, ok)
        if n <= 3:
            g = build_sierpinski(n, label)
            w = _positive_weights(rng)
            ok = tree_gf_cofactor(g, w) == bundle_of(n, w).T
            _check(checks, mismatches, f"{label} cofactor = recursion", n, ok)


def run_verify(args) -> tuple[int, str]:
    families = (
        list(dict.fromkeys(FAMILIES.values()))
        if args.family == "all"
        else [_family(args.family)]
    )
    levels = _parse_levels(args.levels)
    seed = args.seed if args.seed is not None else _default_seed()
    rng = random.Random(seed)
    checks: list = []
    mismatches: list = []
    for family in families:
        if family == "hanoi":
            _verify_hanoi(levels, args.trials, rng, checks, mismatches)
        elif family == "sierpinski-rotational":
            _verify_rotational(levels, args.trials, rng, checks, mismatches)
        else:
            _verify_directional_like(family, levels, args.trials, rng, checks, mismatches)
    report = {
        "families": families,
        "levels": [levels[0], levels[-1]],
        "trials": args.trials,
        "seed": seed,
        "checks_run": len(checks),
        "failures": mismatches,
        "status": "ok" if not mismatches else "mismatch",
    }
    code = EXIT_OK if not mismatches else EXIT_MISMATCH
    return code, _emit(report, args.format)


# -- stats ----------------------------------------------------------------------


def run_stats(args) -> tuple[int, str]:
    model = _family(args.model)
    n = _level(args.level)
    mean = stat_mod.label_mean_gf(model, n, args.label)
    variance = stat_mod.label_variance_gf(model, n, args.label)
    report = {
        "model": model,
        "n": n,
        "label": args.label,
        "mean": str(mean),
        "variance": str(variance),
    }
    if model == "sierpinski-rotational":
        closed = stat_mod.label_stat_closed(n, args.label)
        report["matches_closed_form"] = (
            closed.mean == mean and closed.variance == variance
        )
    if args.normality:
        report["normality_gap"] = f"{stat_mod.normality_gap(n, label=args.label):.6g}"
    return EXIT_OK, _emit(report, args.format)


# -- output helpers ---------------------------------------------------------------


def _to_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _flatten(data, prefix=""):
    rows = []
    if isinstance(data, dict):
        for k in sorted(data):
            rows.extend(_flatten(data[k], f"{prefix}{k}." if prefix else f"{k}."))
    elif isinstance(data, (list, tuple)):
        for i, v in enumerate(data):
            rows.extend(_flatten(v, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], data))
    return rows


def _to_csv(data) -> str:
    lines = ["key,value"]
    for key, value in _flatten(data):
        text = str(value).replace('"', '""')
        lines.append(f'{key},"{text}"')
    return "\n".join(lines) + "\n"


def _emit(report, fmt) -> str:
    if fmt == "csv":
        return _to_csv(report)
    if fmt == "text":
        return "\n".join(f"{k}: {v}" for k, v in _flatten(report)) + "\n"
    return _to_json(report)


# -- argument parsing --------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fractal-forest",
        description="exact spanning-tree generating functions on self-similar graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a labelled graph")
    g.add_argument("--family", required=True)
    g.add_argument("--level", type=int, required=True)
    g.add_argument("--loops", action="store_true", help="keep loops (hanoi only)")
    g.add_argument("--format", choices=("json", "dot", "text", "csv"), default="json")

    f = sub.add_parser("gf", help="generating-function values")
    f.add_argument("--family", required=True)
    f.add_argument("--level", type=int, required=True)
    f.add_argument("--weights", nargs=3, default=("1", "1", "1"), metavar=("A", "B", "C"))
    f.add_argument("--mode", choices=("symbolic", "evaluated"), default="evaluated")
    f.add_argument(
        "--method",
        choices=("recursion", "closed", "cofactor", "schur", "oracle", "all"),
        default="recursion",
    )
    f.add_argument("--seed", type=int)
    f.add_argument("--format", choices=("json", "text", "csv"), default="json")

    v = sub.add_parser("verify", help="cross-method consistency matrix")
    v.add_argument("--family", default="all")
    v.add_argument("--levels", default="1..3")
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--seed", type=int)
    v.add_argument("--format", choices=("json", "text", "csv"), default="json")

    s = sub.add_parser("stats", help="random-spanning-tree label statistics")
    s.add_argument("--model", default="sierpinski-rot")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--label", choices=("a", "b", "c"), required=True)
    s.add_argument("--normality", action="store_true")
    s.add_argument("--format", choices=("json", "text", "csv"), default="json")
    return p


_RUNNERS = {
    "generate": run_generate,
    "gf": run_gf,
    "verify": run_verify,
    "stats": run_stats,
}


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, output = _RUNNERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as exc:
        print(f"capability: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except DecimationSingularError as exc:
        print(f"decimation singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
