"""Command-line front door. Run from the `src` directory:

    python cli.py paper
    python cli.py count rooted 4
    python cli.py enumerate 4 --rooted
    python cli.py bounds --b1 2 --g 1 --b2 1

Exit status: 0 success, 2 usage error, 3 invalid input (tree text, curve data), 4 enumeration refused.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

import counting
from codefile import save_to_file
from curve_bounds import (
    AffineCurveTopology,
    BridgeIdentityError,
    CurveTopology,
    IncidenceError,
    bounds_affine,
    bounds_irreducible,
    bounds_projective,
    build_incidence_graph,
    cusp_bound_from_complement,
    euler_complement,
    genus_reference_bound,
    pa_from_betti,
    sing_from_cusp,
    verify_derivation_identities,
)
from formats import FORMATS, JsonFormat
from map import BoundConstants, CountingConstants, ExitCodes
from report import OutputDocument
from treegen import (
    EnumerationGuardError,
    TreeParseError,
    TreeValidityError,
    generate_rooted,
    generate_unrooted,
    serialize,
)
from util import DomainError, component_list, positive_int

logger = logging.getLogger(__name__)

COUNT_KINDS = {
    "rooted": counting.count_rooted,
    "vertex-pointed": counting.count_vertex_pointed_paper,
    "edge-pair": counting.count_edge_pair,
    "unrooted-exact": counting.count_unrooted_exact,
}

PUBLISHED_VARIANT = "published-variant: P/Q terms of the original tip-count computation (overcounts classes)"
EXACT_VARIANT = "exact-variant: one count per class"


class CurveDocumentError(ValueError):
    """A curve document that can't be read as a JSON object"""


# Commands


def cmd_count(kind: str, n: int) -> OutputDocument:
    """A single count from one of the counting tables"""
    if kind not in COUNT_KINDS:
        raise DomainError(f"unknown kind {kind!r}; expected one of {', '.join(COUNT_KINDS)}")

    document = OutputDocument("count")
    document.add_input("kind", kind)
    document.add_input("n", n)
    document.add_integer("count", COUNT_KINDS[kind](n))
    document.provenance = (
        PUBLISHED_VARIANT if kind in ("vertex-pointed", "edge-pair") else EXACT_VARIANT
    )
    return document


def cmd_paper(max_tips: int = CountingConstants.PAPER_MAX_TIPS) -> OutputDocument:
    """The T, P and Q tables, the published totals S and S1, and the exact total next to them"""
    totals = counting.paper_total(max_tips)
    exact = counting.homeomorphism_classes_upto(max_tips)

    document = OutputDocument("paper")
    document.add_input("max_tips", max_tips)
    document.add_table(
        "tables",
        ["n", "T", "P", "Q"],
        [
            (
                n,
                counting.count_rooted(n),
                counting.count_vertex_pointed_paper(n),
                counting.count_edge_pair(n) if n <= max_tips // 2 else None,
            )
            for n in range(1, max_tips + 1)
        ],
    )
    document.add_integer("S", totals.S)
    document.add_integer("S1", totals.S1)
    document.add_integer("exact_total", exact)
    document.add_integer("overcount", totals.S1 - exact)
    document.add_table(
        "audit",
        ["n", "P", "Q", "published", "exact", "difference"],
        [
            (row.n, row.vertex_pointed, row.edge_pair, row.paper_term, row.exact, row.difference)
            for row in counting.overcount_audit(max_tips)
        ],
    )
    if max_tips == CountingConstants.PAPER_MAX_TIPS:
        document.add_boolean("matches_published", totals.S1 == CountingConstants.PAPER_TOTAL)

    document.provenance = (
        "S and S1 follow the published P/Q computation; "
        "exact_total counts homeomorphism classes split at the leaf-centroid"
    )
    return document


def cmd_enumerate(n: int, rooted: bool = False, limit: Optional[int] = None) -> List[str]:
    """Canonical codes of every tree with `n` tips, sorted"""
    trees = generate_rooted(n, limit) if rooted else generate_unrooted(n, limit)
    return [serialize(tree) for tree in trees]


def enumeration_document(n: int, rooted: bool, codes: List[str]) -> OutputDocument:
    document = OutputDocument("enumerate")
    document.add_input("n", n)
    document.add_input("rooted", rooted)
    document.add_integer("count", len(codes))
    document.add_string_list("codes", codes)
    return document


def load_curve_document(path: str) -> Dict[str, Any]:
    """Read a curve-topology document: a JSON object with any of the fields b1, b2, g, branches,
    b0_aff, b1_aff, p
    """
    try:
        with open(path, "rt", encoding="utf-8") as f:
            fields = json.load(f)
    except UnicodeDecodeError as e:
        raise CurveDocumentError(f"{path} is not UTF-8 text: {e}")
    except json.JSONDecodeError as e:
        raise CurveDocumentError(f"{path} is not valid JSON: {e}")

    if not isinstance(fields, dict):
        raise DomainError(f"{path} must contain a JSON object")
    unknown = sorted(set(fields) - set(BoundConstants.DOCUMENT_FIELDS))
    if unknown:
        raise DomainError(f"unknown fields in {path}: {', '.join(unknown)}")
    return fields


def cmd_bounds(fields: Dict[str, Any]) -> OutputDocument:
    """Every bound that applies to the given curve data

    :param fields: Curve data keyed by the document field names. Missing or None fields are unknown
    """
    document = OutputDocument("bounds")
    for key in BoundConstants.DOCUMENT_FIELDS:
        if fields.get(key) is not None:
            value = fields[key]
            document.add_input(key, value if key != "branches" else json.dumps(value))

    b2 = fields.get("b2") if fields.get("b2") is not None else 1
    g = fields.get("g") if fields.get("g") is not None else 0

    singularities = None
    incidence = None
    if fields.get("branches") is not None:
        incidence = build_incidence_graph(fields["branches"], b2)
        singularities = tuple(incidence.branch_counts())

    affine_keys = ("b0_aff", "b1_aff", "p")
    given = [key for key in affine_keys if fields.get(key) is not None]
    affine = None
    if given:
        if len(given) != len(affine_keys):
            raise DomainError("affine data needs all of b0_aff, b1_aff and p")
        affine = AffineCurveTopology.from_counts(
            b0_aff=fields["b0_aff"],
            b1_aff=fields["b1_aff"],
            p=fields["p"],
            b2=b2,
            g=g,
            b1=fields.get("b1"),
            singularities=singularities,
        )
        topology = affine.projective
    else:
        if fields.get("b1") is None:
            raise DomainError("b1 is required unless b0_aff, b1_aff and p are given")
        topology = CurveTopology(b1=fields["b1"], b2=b2, g=g, singularities=singularities)

    # Projective bounds and the steps that produce them
    e = euler_complement(topology.b1, topology.b2)
    p_a = pa_from_betti(topology.b1, topology.g)
    projective = bounds_projective(topology)
    document.add_integer("b1", topology.b1)
    document.add_integer("e_complement", e)
    document.add_integer("p_a", p_a)
    document.add_rational("cusp", projective.cusp)
    document.add_rational("sing", projective.sing)
    document.add_boolean(
        "cusp_matches_complement_bound", projective.cusp == cusp_bound_from_complement(e, p_a)
    )
    document.add_boolean(
        "sing_matches_cusp_plus_d", projective.sing == sing_from_cusp(projective.cusp, topology)
    )
    caveats = [projective.caveat]

    if topology.is_irreducible:
        irreducible = bounds_irreducible(topology.b1, topology.g)
        document.add_rational("c_tight", irreducible.c_tight)
        document.add_rational("c_loose", irreducible.c_loose)
        document.add_rational("s_tight", irreducible.s_tight)
        document.add_rational("s_loose", irreducible.s_loose)
        if topology.b1 == 2 * topology.g:
            document.add_rational("genus_reference", genus_reference_bound(topology.g))
        caveats.append(irreducible.caveat)

    if incidence is not None:
        document.add_integer("s", topology.s)
        document.add_integer("c", topology.c)
        document.add_integer("d", topology.d)
        document.add_integer("incidence_euler", incidence.euler())
        document.add_boolean("incidence_connected", incidence.is_connected())
        document.add_boolean(
            "counts_within_bounds",
            topology.c <= projective.cusp.floor_value
            and topology.s <= projective.sing.floor_value,
        )
        if not incidence.is_connected():
            document.add_warning("the incidence graph is disconnected; a plane curve gives a connected one")

    if affine is not None:
        affine_bounds = bounds_affine(affine)
        document.add_rational("c_aff", affine_bounds.c_aff)
        document.add_rational("s_aff", affine_bounds.s_aff)
        if affine.is_irreducible:
            document.add_rational("c_aff_tight", affine_bounds.c_aff_tight)
            document.add_rational("c_aff_loose", affine_bounds.c_aff_loose)
            document.add_rational("s_aff_tight", affine_bounds.s_aff_tight)
            document.add_rational("s_aff_loose", affine_bounds.s_aff_loose)
            document.add_rational("c_aff_linear", affine_bounds.c_aff_linear)
            document.add_integer("c_aff_conjectured", affine_bounds.c_aff_conjectured)
            caveats.append(BoundConstants.CONJECTURE_NOTE)

    for name, ok in verify_derivation_identities().items():
        document.add_boolean(f"identity:{name}", ok)

    document.provenance = "; ".join(caveats)
    for message in topology.warnings():
        document.add_warning(message)
    return document


# Argument handling


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tipcount",
        description="Count and enumerate homeomorphism classes of trees by tips, "
        "and evaluate cusp and singular point bounds for plane curves",
    )
    parser.add_argument("--verbose", action="store_true", help="log debugging output to stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    count = subparsers.add_parser("count", help="a single count")
    count.add_argument("kind", choices=list(COUNT_KINDS))
    count.add_argument("n", type=positive_int)
    count.add_argument("--format", choices=list(FORMATS), default="text")
    count.set_defaults(handler=_run_count)

    paper = subparsers.add_parser("paper", help="reproduce the tip-count totals")
    paper.add_argument(
        "--max-tips", type=positive_int, default=CountingConstants.PAPER_MAX_TIPS
    )
    paper.add_argument("--format", choices=list(FORMATS), default="text")
    paper.set_defaults(handler=_run_paper)

    enumerate_ = subparsers.add_parser("enumerate", help="list canonical codes")
    enumerate_.add_argument("n", type=positive_int)
    enumerate_.add_argument("--rooted", action="store_true", help="rooted instead of unrooted trees")
    enumerate_.add_argument("--format", choices=["lines", "doc"], default="lines")
    enumerate_.add_argument("--limit", type=positive_int, help="override the enumeration guard")
    enumerate_.add_argument("--output", help="write to this file instead of stdout")
    enumerate_.set_defaults(handler=_run_enumerate)

    bounds = subparsers.add_parser("bounds", help="cusp and singular point bounds")
    bounds.add_argument("--input", help="JSON curve-topology document")
    for name in ("b1", "b2", "g", "b0_aff", "b1_aff", "p"):
        bounds.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
    bounds.add_argument(
        "--branch",
        dest="branches",
        type=component_list,
        action="append",
        help="component index of each branch at one singular point, e.g. 0,1 (repeatable)",
    )
    bounds.add_argument("--format", choices=list(FORMATS), default="text")
    bounds.set_defaults(handler=_run_bounds)

    return parser


def _emit(text: str):
    sys.stdout.write(text)


def _run_count(args: argparse.Namespace) -> int:
    _emit(FORMATS[args.format].render(cmd_count(args.kind, args.n)))
    return ExitCodes.OK


def _run_paper(args: argparse.Namespace) -> int:
    _emit(FORMATS[args.format].render(cmd_paper(args.max_tips)))
    return ExitCodes.OK


def _run_enumerate(args: argparse.Namespace) -> int:
    codes = cmd_enumerate(args.n, rooted=args.rooted, limit=args.limit)

    if args.format == "lines":
        if args.output:
            save_to_file(args.output, codes)
        else:
            _emit("".join(f"{code}\n" for code in codes))
        return ExitCodes.OK

    text = JsonFormat().render(enumeration_document(args.n, args.rooted, codes))
    if args.output:
        with open(args.output, "wt", encoding="utf-8") as f:
            f.write(text)
    else:
        _emit(text)
    return ExitCodes.OK


def _run_bounds(args: argparse.Namespace) -> int:
    fields = load_curve_document(args.input) if args.input else {}
    # Flags override the document
    for key in BoundConstants.DOCUMENT_FIELDS:
        value = getattr(args, key)
        if value is not None:
            fields[key] = value

    _emit(FORMATS[args.format].render(cmd_bounds(fields)))
    return ExitCodes.OK


def main(argv: Optional[List[str]] = None) -> int:
    # argparse exits with status 2 on its own usage errors
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug("Running %s", args.command)

    try:
        return args.handler(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCodes.USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCodes.USAGE
    except (
        TreeParseError,
        TreeValidityError,
        BridgeIdentityError,
        IncidenceError,
        CurveDocumentError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCodes.INVALID
    except EnumerationGuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCodes.REFUSED


if __name__ == "__main__":
    sys.exit(main())
