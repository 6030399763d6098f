"""
Command line front end.

Usage: ``twinpoly <verb> [options]`` where verb is one of validate, enumerate, volume,
facets, dual, reflexive, region-check or selftest. Exit status is 0 on success, 1 on
parse or validation errors, 2 when an input exceeds a configured capacity and 3 when
two independent computations disagree.
"""

import argparse
import logging
import sys

from . import config, oracle
from .core.linalg import format_rational
from .core.polytope import polar_dual
from .core.poset import (
    antichains,
    count_linear_extensions,
    ideals,
    maximal_chains,
)
from .errors import CapacityError
from .io import dumps, read_poset
from .twinned import (
    GammaKind,
    TwinnedPolytope,
    all_subsets,
    check_region_decomposition,
    dual_vertices,
    facet_normals,
    region_is_integral,
)

logger = logging.getLogger(__name__)

TWO_POSET_VERBS = ("volume", "facets", "dual", "reflexive", "region-check")
VERBS = ("validate", "enumerate", *TWO_POSET_VERBS, "selftest")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CAPACITY = 2
EXIT_MISMATCH = 3


class UsageError(ValueError):
    """Wrong command line."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = ArgumentParser(
        prog="twinpoly",
        description="Order, chain and twinned chain polytopes of finite posets.",
    )
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--p", metavar="FILE", help="poset file of P")
    parser.add_argument("--q", metavar="FILE", help="poset file of Q")
    parser.add_argument(
        "--kind",
        choices=[kind.value for kind in GammaKind],
        default=GammaKind.CC.value,
        help="which twinned polytope to build (default: cc)",
    )
    parser.add_argument(
        "--method",
        choices=["formula", "hull", "both"],
        default="formula",
        help="combinatorial formula, polyhedral hull, or both compared",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument(
        "--count-only", action="store_true", help="only report the number of items"
    )
    parser.add_argument(
        "--w", metavar="LIST", help="comma separated labels of the orthant to check"
    )
    parser.add_argument("--out", metavar="FILE", help="write the report to FILE")
    parser.add_argument("--verbose", action="store_true", help="log progress")
    parser.add_argument(
        "--seed", type=int, default=0, help="seed of the randomized selftest"
    )
    parser.add_argument(
        "--pairs",
        type=int,
        default=0,
        help="number of random pairs added to the selftest (default: none)",
    )
    parser.add_argument(
        "--random-dim",
        type=int,
        default=4,
        help="size of the random posets of the selftest (default: 4)",
    )
    return parser


def main(argv=None):
    """
    Run one command.

    Parameters
    ----------
    argv : list of str, optional
        The arguments, ``sys.argv[1:]`` when not given.

    Returns
    -------
    int
        The exit status.

    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as error:
        print(f"twinpoly: error: {error}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        status, text, payload = COMMANDS[args.verb](args)
    except CapacityError as error:
        print(f"twinpoly: capacity exceeded: {error}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, OSError) as error:
        print(f"twinpoly: error: {error}", file=sys.stderr)
        return EXIT_INVALID
    output = dumps(payload) if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as file:
            file.write(output + "\n")
        logger.info("report written to %s", args.out)
    else:
        print(output)
    return status


def validate(args):
    p, q = _load(args)
    payload = {"p": _summary(p)}
    lines = [_format_summary("P", payload["p"])]
    if q is not None:
        poly = TwinnedPolytope(p, q)
        extension = poly.common_linear_extension
        payload["q"] = _summary(q)
        payload["common_linear_extension"] = (
            None if extension is None else list(extension)
        )
        lines.append(_format_summary("Q", payload["q"]))
        lines.append(
            "common linear extension: "
            + ("none" if extension is None else " ".join(map(str, extension)))
        )
    return EXIT_OK, "\n".join(lines), payload


def enumerate_(args):
    p, q = _load(args)
    if q is not None:
        v = TwinnedPolytope(p, q, args.kind).vertices
        if args.count_only:
            return EXIT_OK, str(len(v)), {"vertex_count": len(v)}
        return EXIT_OK, "\n".join(_format_vector(x) for x in v), v.to_dict()
    families = {
        "ideals": ideals(p),
        "antichains": antichains(p),
        "maximal_chains": maximal_chains(p),
    }
    if args.count_only:
        payload = {name: len(family) for name, family in families.items()}
        lines = [f"{name}: {count}" for name, count in payload.items()]
    else:
        payload = {name: family.to_list() for name, family in families.items()}
        lines = [
            f"{name}: " + " ".join(_format_subset(s) for s in family)
            for name, family in families.items()
        ]
    return EXIT_OK, "\n".join(lines), payload


def volume(args):
    p, q = _load(args)
    poly = TwinnedPolytope(p, q, args.kind)
    values = {}
    if args.method in ("formula", "both"):
        _require_formula(poly)
        values["formula"] = poly.volume("formula")
    if args.method in ("hull", "both"):
        values["hull"] = poly.volume("hull")
    status = EXIT_OK
    parts = [f"{name} = {value}" for name, value in values.items()]
    payload = {"kind": poly.kind.value}
    payload.update({name: format_rational(value) for name, value in values.items()})
    if args.method == "both":
        agree = values["formula"] == values["hull"]
        parts.append("agree" if agree else "disagree")
        payload["agree"] = agree
        if not agree:
            status = EXIT_MISMATCH
    return status, ", ".join(parts), payload


def facets(args):
    p, q = _load(args)
    poly = TwinnedPolytope(p, q, args.kind)
    status = EXIT_OK
    if args.method != "hull":
        _require_cc(poly)
        h = facet_normals(p, q).to_hrep()
    if args.method != "formula":
        if args.method == "both" and not poly.facets.equals(h):
            status = EXIT_MISMATCH
        h = poly.facets
    if args.count_only:
        return status, str(len(h)), {"facet_count": len(h)}
    lines = [f"{_format_vector(normal)} . x <= {rhs}" for normal, rhs in h.rows]
    return status, "\n".join(lines), h.to_dict()


def dual(args):
    p, q = _load(args)
    poly = TwinnedPolytope(p, q, args.kind)
    status = EXIT_OK
    if args.method != "hull":
        _require_cc(poly)
        v = dual_vertices(p, q)
    if args.method != "formula":
        hull_dual = polar_dual(poly.facets)
        if args.method == "both" and not hull_dual.equals(v):
            status = EXIT_MISMATCH
        v = hull_dual
    if args.count_only:
        return status, str(len(v)), {"vertex_count": len(v)}
    return status, "\n".join(_format_vector(x) for x in v), v.to_dict()


def reflexive(args):
    p, q = _load(args)
    poly = TwinnedPolytope(p, q, args.kind)
    method = "hull" if args.method == "hull" else "formula"
    report = poly.report(method)
    lines = [f"{key} = {_format_value(value)}" for key, value in report.items()]
    return EXIT_OK, "\n".join(lines), report


def region_check(args):
    p, q = _load(args)
    kind = GammaKind(args.kind)
    if args.w is None:
        subsets = all_subsets(p.labels)
    else:
        subsets = [_parse_subset(args.w, p.d)]
    status = EXIT_OK
    regions = []
    lines = []
    for w in subsets:
        if kind is GammaKind.CC:
            holds = check_region_decomposition(p, q, w)
            if not holds:
                status = EXIT_MISMATCH
            regions.append({"w": sorted(w), "holds": holds})
            lines.append(f"W={_format_subset(w)}: " + ("holds" if holds else "fails"))
        else:
            integral = region_is_integral(kind, p, q, w)
            regions.append({"w": sorted(w), "integral": integral})
            lines.append(
                f"W={_format_subset(w)}: "
                + ("integral" if integral else "not integral")
            )
    return status, "\n".join(lines), {"kind": kind.value, "regions": regions}


def selftest(args):
    suites = ["golden"]
    failures = oracle.golden_checks()
    for d in (1, 2, 3):
        suites.append(f"exhaustive d={d}")
        failures += oracle.exhaustive_suite(d, regions=True, verbose=args.verbose)
    if args.pairs > 0:
        suites.append(f"random d={args.random_dim} x{args.pairs}")
        failures += oracle.random_suite(
            args.random_dim,
            args.pairs,
            seed=args.seed,
            regions=args.random_dim <= config.get("max_region_dim"),
            verbose=args.verbose,
        )
    payload = {"suites": suites, "passed": not failures, "failures": failures}
    if failures:
        lines = failures + [f"selftest: {len(failures)} mismatches"]
        return EXIT_MISMATCH, "\n".join(lines), payload
    return EXIT_OK, f"selftest: ok ({', '.join(suites)})", payload


COMMANDS = {
    "validate": validate,
    "enumerate": enumerate_,
    "volume": volume,
    "facets": facets,
    "dual": dual,
    "reflexive": reflexive,
    "region-check": region_check,
    "selftest": selftest,
}


def _load(args):
    if args.p is None:
        raise UsageError(f"--p is required by '{args.verb}'")
    if args.q is None and args.verb in TWO_POSET_VERBS:
        raise UsageError(f"--q is required by '{args.verb}'")
    p = read_poset(args.p)
    q = None if args.q is None else read_poset(args.q)
    if q is not None and q.d != p.d:
        raise ValueError(f"P has {p.d} elements but Q has {q.d}")
    return p, q


def _require_cc(poly):
    if poly.kind is not GammaKind.CC:
        raise ValueError(
            f"the combinatorial description only covers the cc polytope, "
            f"use --method hull for '{poly.kind.value}'"
        )


def _require_formula(poly):
    if not poly.formula_applies:
        raise ValueError(
            "P and Q have no common linear extension, the volume formula does not "
            "apply to their oo polytope, use --method hull"
        )


def _summary(poset):
    return {
        "d": poset.d,
        "relations": len(poset.relations()),
        "ideals": len(ideals(poset)),
        "antichains": len(antichains(poset)),
        "maximal_chains": len(maximal_chains(poset)),
        "linear_extensions": count_linear_extensions(poset),
    }


def _format_summary(name, summary):
    fields = ", ".join(
        f"{key.replace('_', ' ')}={value}" for key, value in summary.items()
    )
    return f"{name}: {fields}"


def _parse_subset(text, d):
    try:
        labels = {int(token) for token in text.split(",") if token.strip()}
    except ValueError:
        raise UsageError(f"--w expects comma separated labels, got '{text}'") from None
    if any(not 1 <= label <= d for label in labels):
        raise UsageError(f"--w labels must lie in 1..{d}")
    return frozenset(labels)


def _format_subset(subset):
    return "{" + ",".join(str(label) for label in sorted(subset)) + "}"


def _format_vector(vector):
    return "(" + ", ".join(str(x) for x in vector) + ")"


def _format_value(value):
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)
