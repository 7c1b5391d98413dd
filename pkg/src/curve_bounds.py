"""Upper bounds on the number of cusps and singular points of a plane projective curve C.

Inputs are topological: the Betti numbers b1, b2 of C (b2 = number of irreducible components), the
total genus g, and optionally the number of local branches r_i at each singular point. The cusp bound
comes from

    2c <= 12 e(complement) + 5 - 3 p_a,    e(complement) = 2 + b1 - b2,    p_a = b1 - g

and the singular-point bound adds d = sum(r_i - 1), read off the incidence graph, to it. Every bound
is conditional on the log Kodaira dimension of the complement being 2, which cannot be checked from
this data; results carry that caveat.

Bounds are exact rationals (they are half- or quarter-integers) along with their integer floors.
"""

import functools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import sympy

from map import BoundConstants
from util import require_non_negative, require_positive

logger = logging.getLogger(__name__)


class BridgeIdentityError(ValueError):
    """Affine and projective data that can't describe the same curve"""


class IncidenceError(ValueError):
    """A branch matrix that doesn't describe an incidence graph"""


@dataclass(frozen=True)
class RationalBound:
    value: sympy.Rational

    def __post_init__(self):
        object.__setattr__(self, "value", sympy.Rational(self.value))

    @property
    def numerator(self) -> int:
        return int(self.value.p)

    @property
    def denominator(self) -> int:
        return int(self.value.q)

    @property
    def floor_value(self) -> int:
        """The largest integer <= the bound; what the bound means for a count"""
        return self.numerator // self.denominator

    def __add__(self, other: int) -> "RationalBound":
        return RationalBound(self.value + other)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class CurveTopology:
    """Topological data of a projective plane curve

    :param b1: First Betti number of C
    :param b2: Number of irreducible components
    :param g: Total genus (sum over components of the genus of the normalization)
    :param singularities: Number of local branches r_i >= 1 at each singular point, if known
    """

    b1: int
    b2: int
    g: int
    singularities: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        require_non_negative(self.b1, "b1")
        require_positive(self.b2, "b2")
        require_non_negative(self.g, "g")
        if self.singularities is not None:
            branches = tuple(self.singularities)
            for r in branches:
                require_positive(r, "branch count")
            object.__setattr__(self, "singularities", branches)

        for message in self.warnings():
            logger.warning(message)

    @property
    def is_irreducible(self) -> bool:
        return self.b2 == 1

    @property
    def s(self) -> Optional[int]:
        """Number of singular points"""
        return None if self.singularities is None else len(self.singularities)

    @property
    def c(self) -> Optional[int]:
        """Number of cusps (singular points with one branch)"""
        if self.singularities is None:
            return None
        return sum(1 for r in self.singularities if r == 1)

    @property
    def d(self) -> Optional[int]:
        if self.singularities is None:
            return None
        return sum(r - 1 for r in self.singularities)

    def warnings(self) -> List[str]:
        """Ways in which the numbers can't belong to an actual curve. These don't stop a calculation"""
        messages = []

        # b1 = 2g + b1 of the dual graph, so 2g <= b1
        if 2 * self.g > self.b1:
            messages.append(
                f"g = {self.g} exceeds b1/2 = {sympy.Rational(self.b1, 2)}; "
                f"no curve has 2g > b1"
            )

        if self.singularities is not None:
            incidence_euler = self.b2 - self.d
            expected = dual_graph_euler(self.b1, self.g)
            if incidence_euler != expected:
                messages.append(
                    f"incidence graph Euler characteristic b2 - d = {incidence_euler} "
                    f"differs from 1 - b1 + 2g = {expected}"
                )
        return messages


def bridge_b1(b2: int, b0_aff: int, b1_aff: int, p: int) -> int:
    """b1 of the projective curve from its affine part: b2 + 1 - b0_aff + b1_aff - p"""
    return b2 + 1 - b0_aff + b1_aff - p


@dataclass(frozen=True)
class AffineCurveTopology:
    """The part of a projective curve in an affine chart

    :param b0_aff: Number of connected components of the affine curve
    :param b1_aff: Its first Betti number
    :param p: Number of points at infinity
    :param projective: The projective closure
    """

    b0_aff: int
    b1_aff: int
    p: int
    projective: CurveTopology

    def __post_init__(self):
        require_positive(self.b0_aff, "b0_aff")
        require_non_negative(self.b1_aff, "b1_aff")
        require_positive(self.p, "p")
        self.check_bridge()

    @classmethod
    def from_counts(
        cls,
        b0_aff: int,
        b1_aff: int,
        p: int,
        b2: int = 1,
        g: int = 0,
        b1: Optional[int] = None,
        singularities: Optional[Sequence[int]] = None,
    ) -> "AffineCurveTopology":
        """Build from affine counts. If `b1` is omitted it is derived from them"""
        require_positive(b0_aff, "b0_aff")
        require_non_negative(b1_aff, "b1_aff")
        require_positive(p, "p")
        require_positive(b2, "b2")
        bridged = bridge_b1(b2, b0_aff, b1_aff, p)
        if b1 is None:
            if bridged < 0:
                raise BridgeIdentityError(
                    f"b2 + 1 - b0_aff + b1_aff - p = {bridged} is negative"
                )
            b1 = bridged
        elif b1 != bridged:
            raise BridgeIdentityError(
                f"b1 = {b1} but b2 + 1 - b0_aff + b1_aff - p = {bridged}"
            )

        singularities = None if singularities is None else tuple(singularities)
        return cls(
            b0_aff=b0_aff,
            b1_aff=b1_aff,
            p=p,
            projective=CurveTopology(b1=b1, b2=b2, g=g, singularities=singularities),
        )

    @property
    def is_irreducible(self) -> bool:
        return self.projective.b2 == 1 and self.b0_aff == 1

    def check_bridge(self):
        bridged = bridge_b1(self.projective.b2, self.b0_aff, self.b1_aff, self.p)
        if self.projective.b1 != bridged:
            raise BridgeIdentityError(
                f"b1 = {self.projective.b1} but b2 + 1 - b0_aff + b1_aff - p = {bridged}"
            )


# Records


@dataclass(frozen=True)
class ProjectiveBounds:
    cusp: RationalBound
    sing: RationalBound
    caveat: str = BoundConstants.KAPPA_CAVEAT


@dataclass(frozen=True)
class IrreducibleBounds:
    """`*_tight` use g; `*_loose` drop it (using g <= b1/2 for cusps, g >= 0 for singular points)"""

    c_tight: RationalBound
    c_loose: RationalBound
    s_tight: RationalBound
    s_loose: RationalBound
    caveat: str = BoundConstants.IRREDUCIBLE_CAVEAT


@dataclass(frozen=True)
class AffineBounds:
    b1: int
    c_aff: RationalBound
    s_aff: RationalBound
    # Only for irreducible curves
    c_aff_tight: Optional[RationalBound] = None
    c_aff_loose: Optional[RationalBound] = None
    s_aff_tight: Optional[RationalBound] = None
    s_aff_loose: Optional[RationalBound] = None
    c_aff_linear: Optional[RationalBound] = None
    c_aff_conjectured: Optional[int] = None
    caveat: str = BoundConstants.KAPPA_CAVEAT


# Formulas


def euler_complement(b1: int, b2: int) -> int:
    """Euler characteristic of the complement of C in the projective plane"""
    return 2 + b1 - b2


def pa_from_betti(b1: int, g: int) -> int:
    """Arithmetic genus of the normal-crossing resolution of C"""
    return b1 - g


def pa_constituents(b1_gamma: int, g: int) -> Tuple[int, int]:
    """(p_a, b1) for a curve whose resolution's dual graph has first Betti number `b1_gamma`

    p_a = g + b1_gamma and b1 = 2g + b1_gamma, so pa_from_betti(b1, g) == p_a
    """
    return g + b1_gamma, 2 * g + b1_gamma


def dual_graph_euler(b1: int, g: int) -> int:
    """Euler characteristic of the dual graph, 1 - b1_gamma = 1 - b1 + 2g"""
    return 1 - b1 + 2 * g


def cusp_bound_from_complement(e_complement: int, p_a: int) -> RationalBound:
    """c <= (12 e + 5 - 3 p_a) / 2"""
    return RationalBound(sympy.Rational(12 * e_complement + 5 - 3 * p_a, 2))


def cusp_bound_projective(t: CurveTopology) -> RationalBound:
    """c <= 9/2 b1 + 3/2 g - 6 b2 + 29/2"""
    return RationalBound(sympy.Rational(9 * t.b1 + 3 * t.g - 12 * t.b2 + 29, 2))


def sing_bound_projective(t: CurveTopology) -> RationalBound:
    """s <= 11/2 b1 - 1/2 g - 5 b2 + 27/2"""
    return RationalBound(sympy.Rational(11 * t.b1 - t.g - 10 * t.b2 + 27, 2))


def sing_from_cusp(c_bound: RationalBound, t: CurveTopology) -> RationalBound:
    """s <= c + d = c + b2 - e(incidence graph) = c + b2 + b1 - 2g - 1"""
    return c_bound + (t.b2 + t.b1 - 2 * t.g - 1)


def bounds_projective(t: CurveTopology) -> ProjectiveBounds:
    return ProjectiveBounds(cusp=cusp_bound_projective(t), sing=sing_bound_projective(t))


def bounds_irreducible(b1: int, g: int) -> IrreducibleBounds:
    # Validates the input and logs a warning if 2g > b1
    CurveTopology(b1=b1, b2=1, g=g)

    return IrreducibleBounds(
        c_tight=RationalBound(sympy.Rational(9 * b1 + 3 * g + 17, 2)),
        c_loose=RationalBound(sympy.Rational(21 * b1 + 34, 4)),
        s_tight=RationalBound(sympy.Rational(11 * b1 - g + 17, 2)),
        s_loose=RationalBound(sympy.Rational(11 * b1 + 17, 2)),
    )


def genus_reference_bound(g: int) -> RationalBound:
    """(21g + 17) / 2: the bound for a curve homeomorphic to a surface of genus g"""
    require_non_negative(g, "g")
    return RationalBound(sympy.Rational(21 * g + 17, 2))


def bounds_affine(a: AffineCurveTopology) -> AffineBounds:
    """Bounds for the cusps and singular points lying in the affine chart"""
    a.check_bridge()
    t = a.projective
    reduced = a.b1_aff - a.b0_aff - a.p

    general = dict(
        b1=t.b1,
        c_aff=RationalBound(sympy.Rational(9 * reduced + 3 * (t.g - t.b2) + 38, 2)),
        s_aff=RationalBound(sympy.Rational(11 * reduced + (t.b2 - t.g) + 38, 2)),
    )
    if not a.is_irreducible:
        return AffineBounds(**general)

    return AffineBounds(
        **general,
        c_aff_tight=RationalBound(sympy.Rational(9 * (a.b1_aff - a.p) + 3 * t.g + 26, 2)),
        c_aff_loose=RationalBound(sympy.Rational(9 * a.b1_aff + 3 * t.g + 17, 2)),
        s_aff_tight=RationalBound(sympy.Rational(11 * (a.b1_aff - a.p) - t.g + 28, 2)),
        s_aff_loose=RationalBound(sympy.Rational(11 * a.b1_aff - t.g + 17, 2)),
        # g <= b1/2 and b1 <= b1_aff
        c_aff_linear=RationalBound(sympy.Rational(21 * a.b1_aff + 34, 4)),
        c_aff_conjectured=1 + 2 * a.b1_aff,
    )


# Incidence graphs


class IncidenceGraph:
    """Bipartite multigraph: one vertex per singular point, one per irreducible component, one edge
    per local branch joining its point to the component containing it.

    Vertices are ("point", i) and ("component", j).
    """

    def __init__(self, graph: nx.MultiGraph, b2: int, s: int):
        self._graph = nx.freeze(graph)
        self.b2 = b2
        self.s = s

    @property
    def graph(self) -> nx.MultiGraph:
        return self._graph

    @property
    def vertex_count(self) -> int:
        return self._graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self._graph.number_of_edges()

    @property
    def d(self) -> int:
        return self.edge_count - self.s

    def branch_counts(self) -> List[int]:
        """r_i for each singular point, in point order"""
        return [self._graph.degree(("point", i)) for i in range(self.s)]

    def cusp_count(self) -> int:
        return sum(1 for r in self.branch_counts() if r == 1)

    def euler(self) -> int:
        return self.vertex_count - self.edge_count

    def is_connected(self) -> bool:
        return nx.is_connected(self._graph)

    def component_count(self) -> int:
        return nx.number_connected_components(self._graph)

    def first_betti(self) -> int:
        return self.edge_count - self.vertex_count + self.component_count()

    def topology(self, b1: int, g: int) -> CurveTopology:
        return CurveTopology(
            b1=b1, b2=self.b2, g=g, singularities=tuple(self.branch_counts())
        )

    def subdivided(self, point: int, component: int) -> "IncidenceGraph":
        """Blow the branch (point, component) up: its edge becomes a path through a new component
        vertex and a new point vertex. The homotopy type doesn't change.
        """
        old = (("point", point), ("component", component))
        if not self._graph.has_edge(*old):
            raise IncidenceError(
                f"point {point} has no branch on component {component}"
            )

        graph = nx.MultiGraph(self._graph)
        key = next(iter(graph[old[0]][old[1]]))
        graph.remove_edge(old[0], old[1], key=key)

        new_component = ("component", self.b2)
        new_point = ("point", self.s)
        graph.add_edge(old[0], new_component)
        graph.add_edge(new_component, new_point)
        graph.add_edge(new_point, old[1])
        return IncidenceGraph(graph, b2=self.b2 + 1, s=self.s + 1)


def build_incidence_graph(
    branch_matrix: Sequence[Sequence[int]], b2: Optional[int] = None
) -> IncidenceGraph:
    """Build the incidence graph of a curve

    :param branch_matrix: For each singular point, the component index of each local branch there
    :param b2: Number of components. Defaults to one more than the largest index used
    """
    if not isinstance(branch_matrix, (list, tuple)) or not all(
        isinstance(row, (list, tuple)) for row in branch_matrix
    ):
        raise IncidenceError("branches must be a list with one list of component indices per point")
    rows = [list(row) for row in branch_matrix]
    if b2 is None:
        b2 = 1 + max((j for row in rows for j in row), default=0)
    require_positive(b2, "b2")

    graph = nx.MultiGraph()
    graph.add_nodes_from(("component", j) for j in range(b2))
    for i, row in enumerate(rows):
        if not row:
            raise IncidenceError(f"singular point {i} has no branches")
        graph.add_node(("point", i))
        for j in row:
            if isinstance(j, bool) or not isinstance(j, int) or not 0 <= j < b2:
                raise IncidenceError(
                    f"singular point {i} has a branch on component {j!r}, "
                    f"but components are numbered 0..{b2 - 1}"
                )
            graph.add_edge(("point", i), ("component", j))

    incidence = IncidenceGraph(graph, b2=b2, s=len(rows))
    # Any two plane curves meet, so a real curve always gives a connected graph
    if not incidence.is_connected():
        logger.warning(
            "incidence graph has %d connected components; a plane curve gives a connected one",
            incidence.component_count(),
        )
    return incidence


# Symbolic checks


def derivation_identities() -> Dict[str, Tuple[sympy.Expr, sympy.Expr]]:
    """Every equality used to get from the complement inequality to the final bounds, as
    (left, right) pairs of sympy expressions that must agree identically
    """
    b1, b2, g, e, pa = sympy.symbols("b1 b2 g e p_a")
    b1_gamma, d, s = sympy.symbols("b1_Gamma d s")
    b0_aff, b1_aff, p = sympy.symbols("b0_aff b1_aff p")
    half = sympy.Rational(1, 2)

    from_complement = (12 * e + 5 - 3 * pa) * half
    cusp = sympy.Rational(9, 2) * b1 + sympy.Rational(3, 2) * g - 6 * b2 + sympy.Rational(29, 2)
    sing = sympy.Rational(11, 2) * b1 - half * g - 5 * b2 + sympy.Rational(27, 2)

    c_irr = sympy.Rational(9, 2) * b1 + sympy.Rational(3, 2) * g + sympy.Rational(17, 2)
    c_irr_loose = sympy.Rational(21, 4) * b1 + sympy.Rational(17, 2)
    s_irr = sympy.Rational(11, 2) * b1 - half * g + sympy.Rational(17, 2)
    s_irr_loose = sympy.Rational(11, 2) * b1 + sympy.Rational(17, 2)

    bridged = b2 + 1 - b0_aff + b1_aff - p
    reduced = b1_aff - b0_aff - p
    c_aff = sympy.Rational(9, 2) * reduced + sympy.Rational(3, 2) * (g - b2) + 19
    s_aff = sympy.Rational(11, 2) * reduced + half * (b2 - g) + 19
    c_aff_irr = sympy.Rational(9, 2) * (b1_aff - p) + sympy.Rational(3, 2) * g + 13
    c_aff_irr_loose = (
        sympy.Rational(9, 2) * b1_aff + sympy.Rational(3, 2) * g + sympy.Rational(17, 2)
    )
    s_aff_irr = sympy.Rational(11, 2) * (b1_aff - p) - half * g + 14
    s_aff_irr_loose = sympy.Rational(11, 2) * b1_aff - half * g + sympy.Rational(17, 2)
    irreducible_affine = {b2: 1, b0_aff: 1}

    return {
        "complement-substitution": (
            cusp,
            from_complement.subs({e: 2 + b1 - b2, pa: b1 - g}),
        ),
        "genus-substitution": (g + b1_gamma, (b1 - g).subs(b1, 2 * g + b1_gamma)),
        "dual-graph-euler": (1 - b1_gamma, (1 - b1 + 2 * g).subs(b1, 2 * g + b1_gamma)),
        "incidence-euler": ((b2 + s) - (d + s), b2 - d),
        "singular-composition": (sing, cusp + b2 + b1 - 2 * g - 1),
        "irreducible-cusp": (cusp.subs(b2, 1), c_irr),
        "irreducible-cusp-relaxed": (c_irr.subs(g, b1 / 2), c_irr_loose),
        "irreducible-sing": (sing.subs(b2, 1), s_irr),
        "irreducible-sing-relaxed": (s_irr.subs(g, 0), s_irr_loose),
        "genus-reference": (c_irr.subs(b1, 2 * g), (21 * g + 17) * half),
        "affine-cusp": (cusp.subs(b1, bridged), c_aff),
        "affine-sing": (sing.subs(b1, bridged), s_aff),
        "affine-irreducible-cusp": (c_aff.subs(irreducible_affine), c_aff_irr),
        "affine-irreducible-sing": (s_aff.subs(irreducible_affine), s_aff_irr),
        "affine-cusp-relaxed": (c_aff_irr.subs(p, 1), c_aff_irr_loose),
        "affine-sing-relaxed": (s_aff_irr.subs(p, 1), s_aff_irr_loose),
        "affine-linear": (
            c_aff_irr_loose.subs(g, b1_aff / 2),
            sympy.Rational(21, 4) * b1_aff + sympy.Rational(17, 2),
        ),
    }


@functools.lru_cache(maxsize=1)
def verify_derivation_identities() -> Dict[str, bool]:
    """Expand left - right for every derivation identity; True where it vanishes"""
    results = {
        name: sympy.expand(left - right) == 0
        for name, (left, right) in derivation_identities().items()
    }
    failed = [name for name, ok in results.items() if not ok]
    if failed:
        logger.error("Derivation identities failed: %s", ", ".join(failed))
    return results
