"""Explicit series-reduced trees: construction, canonical codes, text format and enumeration.

Codes use three symbols. A leaf is `*`; an internal node is `(`, its children's codes in sorted
order, then `)`. Children are sorted with `(` < `*` < `)`, so a cherry comes before a leaf:
a root over a cherry and two leaves is `((**)**)`.

Unrooted trees are coded by rooting them at their leaf-centroid: the vertex where every branch
carries fewer than half the tips, or, failing that, a virtual midpoint on the edge that splits the
tips exactly in half. Two trees are homeomorphic exactly when their codes match.

Enumeration is a brute-force oracle for the `counting` module and is refused above a guard bound
(10 tips by default).
"""

__all__ = [
    "RootedTree",
    "UnrootedTree",
    "LeafCentroid",
    "LEAF",
    "TreeParseError",
    "TreeValidityError",
    "EnumerationGuardError",
    "canonical_code",
    "unrooted_canonical_code",
    "leaf_centroid",
    "rooted_at",
    "unrooted_from_rooted",
    "generate_rooted",
    "generate_unrooted",
    "serialize",
    "parse",
    "parse_unrooted",
]

import functools
import itertools
import logging
from dataclasses import dataclass, field
from typing import Hashable, Iterable, List, Optional, Tuple

import networkx as nx

from map import CodeAlphabet, EnumerationConstants
from partitions import conv_part, partitions_of
from util import DomainError, enumeration_limit, require_positive

logger = logging.getLogger(__name__)

_RANKS = str.maketrans(CodeAlphabet.SORT_RANKS)


class TreeParseError(ValueError):
    """Tree text that doesn't follow the code grammar"""

    def __init__(self, message: str, position: int):
        ValueError.__init__(self, f"{message} at position {position}")
        self.position = position


class TreeValidityError(ValueError):
    """A well-formed structure that isn't a series-reduced tree (e.g. a node with a single child)"""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} at position {position}"
        ValueError.__init__(self, message)
        self.position = position


class EnumerationGuardError(RuntimeError):
    """Explicit generation was asked for more tips than the guard allows"""

    def __init__(self, n: int, limit: int):
        RuntimeError.__init__(
            self,
            f"refusing to enumerate trees with {n} tips: the limit is {limit} "
            f"(raise it with --limit or {EnumerationConstants.LIMIT_ENV_VAR})",
        )
        self.n = n
        self.limit = limit


def code_sort_key(code: str) -> str:
    """Sort key that orders codes with "(" < "*" < ")" """
    return code.translate(_RANKS)


@dataclass(frozen=True, eq=False)
class RootedTree:
    """A leaf (no children) or an internal node with at least two children.

    Children are kept sorted by code, so equal trees compare equal no matter how they were built.
    Code and counts are filled in from the children at construction, so no method walks the tree.
    """

    children: Tuple["RootedTree", ...] = ()
    code: str = field(init=False, repr=False)
    leaf_count: int = field(init=False, repr=False)
    internal_count: int = field(init=False, repr=False)

    def __post_init__(self):
        children = tuple(self.children)
        if len(children) == 1:
            raise TreeValidityError(
                "a node with a single child is not series-reduced"
            )
        ordered = tuple(sorted(children, key=lambda child: code_sort_key(child.code)))
        object.__setattr__(self, "children", ordered)

        if not ordered:
            object.__setattr__(self, "code", CodeAlphabet.LEAF)
            object.__setattr__(self, "leaf_count", 1)
            object.__setattr__(self, "internal_count", 0)
            return
        inner = "".join(child.code for child in ordered)
        object.__setattr__(self, "code", f"{CodeAlphabet.OPEN}{inner}{CodeAlphabet.CLOSE}")
        object.__setattr__(self, "leaf_count", sum(child.leaf_count for child in ordered))
        object.__setattr__(
            self, "internal_count", 1 + sum(child.internal_count for child in ordered)
        )

    @property
    def is_leaf(self) -> bool:
        return not self.children

    # The code determines the tree, and comparing codes never recurses
    def __eq__(self, other) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)

    def __repr__(self) -> str:
        return f"RootedTree({self.code!r})"

    def __str__(self) -> str:
        return self.code

LEAF = RootedTree()


class UnrootedTree:
    """A tree with no degree-2 vertices, wrapping a frozen networkx graph.

    The single-vertex tree is allowed and has one tip.
    """

    def __init__(self, graph: nx.Graph):
        """Construct an UnrootedTree

        :param graph: A networkx graph. It is copied, so later changes to it have no effect
        """
        if graph.number_of_nodes() == 0:
            raise TreeValidityError("a tree needs at least one vertex")
        if graph.is_multigraph() or graph.is_directed():
            raise TreeValidityError("a tree must be a simple undirected graph")
        if not nx.is_tree(graph):
            raise TreeValidityError("the graph is not connected and acyclic")

        smooth = [v for v, degree in graph.degree() if degree == 2]
        if smooth:
            raise TreeValidityError(f"vertices {smooth} have degree 2")

        self._graph = nx.freeze(nx.Graph(graph))

    @classmethod
    def from_graph(cls, graph: nx.Graph) -> "UnrootedTree":
        return cls(graph)

    @classmethod
    def from_edges(
        cls, edges: Iterable[Tuple[Hashable, Hashable]], vertices: Iterable[Hashable] = ()
    ) -> "UnrootedTree":
        """Build a tree from an edge list. `vertices` adds isolated vertices (the one vertex tree)"""
        graph = nx.Graph()
        graph.add_nodes_from(vertices)
        graph.add_edges_from(edges)
        return cls(graph)

    # Properties

    @property
    def graph(self) -> nx.Graph:
        """The underlying (frozen) networkx graph"""
        return self._graph

    @property
    def vertices(self) -> List[Hashable]:
        return list(self._graph.nodes)

    @property
    def edges(self) -> List[Tuple[Hashable, Hashable]]:
        return list(self._graph.edges)

    @property
    def tip_count(self) -> int:
        return len(self.tips())

    def tips(self) -> List[Hashable]:
        """Vertices of degree <= 1"""
        return [v for v, degree in self._graph.degree() if degree <= 1]

    def degree(self, vertex: Hashable) -> int:
        return self._graph.degree(vertex)

    @functools.cached_property
    def code(self) -> str:
        return unrooted_canonical_code(self)

    def __str__(self) -> str:
        return self.code

    def __repr__(self) -> str:
        return f"UnrootedTree({self.code!r})"


@dataclass(frozen=True)
class LeafCentroid:
    """Exactly one of `vertex` and `edge` is set"""

    vertex: Optional[Hashable] = None
    edge: Optional[Tuple[Hashable, Hashable]] = None

    @property
    def is_vertex(self) -> bool:
        return self.edge is None


def canonical_code(t: RootedTree) -> str:
    return t.code


def leaf_centroid(t: UnrootedTree) -> LeafCentroid:
    """The vertex whose removal leaves every component with fewer than n/2 tips, or the edge that
    splits the tips n/2 - n/2. Exactly one of them exists once there are two or more tips.

    :param t: A tree with at least 2 tips
    """
    graph = t.graph
    if graph.number_of_nodes() == 1:
        raise DomainError("the one vertex tree has no leaf-centroid")

    n = t.tip_count
    root = next(iter(graph.nodes))
    order = list(nx.dfs_preorder_nodes(graph, root))
    parent = nx.dfs_predecessors(graph, root)

    # Count the tips hanging below each vertex, from the bottom of the DFS tree up
    below = {v: 1 if graph.degree(v) <= 1 else 0 for v in order}
    children = {v: [] for v in order}
    for v in reversed(order):
        if v != root:
            below[parent[v]] += below[v]
            children[parent[v]].append(v)

    for v in order:
        if v != root and 2 * below[v] == n:
            return LeafCentroid(edge=(parent[v], v))

    for v in order:
        components = [below[c] for c in children[v]]
        if v != root:
            components.append(n - below[v])
        if all(2 * size < n for size in components):
            return LeafCentroid(vertex=v)

    # Every tree with >= 2 tips has a centroid; getting here means the tree is broken
    raise RuntimeError(f"no leaf-centroid found for {t.edges}")


def _branch(graph: nx.Graph, vertex: Hashable, parent: Optional[Hashable]) -> RootedTree:
    """The rooted tree hanging from `vertex`, looking away from `parent`"""
    above = {vertex: parent}
    order = []
    stack = [vertex]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in graph.neighbors(v):
            if w != above[v]:
                above[w] = v
                stack.append(w)

    # Reversed preorder reaches every vertex after all of its descendants
    built = {}
    for v in reversed(order):
        below = [built.pop(w) for w in graph.neighbors(v) if w != above[v]]
        built[v] = RootedTree(tuple(below)) if below else LEAF
    return built[vertex]


def rooted_at(t: UnrootedTree, vertex: Hashable) -> RootedTree:
    """View `t` as a rooted tree hanging from `vertex`

    :param vertex: Any vertex that isn't a tip (unless `t` is the one vertex tree)
    """
    if t.degree(vertex) == 1:
        raise DomainError(f"cannot root at tip {vertex!r}: the root would have one child")
    return _branch(t.graph, vertex, None)


def unrooted_canonical_code(t: UnrootedTree) -> str:
    if t.graph.number_of_nodes() == 1:
        return CodeAlphabet.LEAF

    centroid = leaf_centroid(t)
    if centroid.is_vertex:
        return rooted_at(t, centroid.vertex).code

    # Balanced edge: root at a virtual midpoint whose two children are the halves
    u, w = centroid.edge
    return RootedTree((_branch(t.graph, u, w), _branch(t.graph, w, u))).code


def unrooted_from_rooted(r: RootedTree) -> UnrootedTree:
    """Forget the root. A root with exactly two children would have degree 2, so it is smoothed
    away and its children are joined by a single edge
    """
    graph = nx.Graph()
    labels = itertools.count()

    if len(r.children) == 2:
        left, right = r.children
        pending = [(left, next(labels)), (right, next(labels))]
        graph.add_edge(pending[0][1], pending[1][1])
    else:
        pending = [(r, next(labels))]
        graph.add_node(pending[0][1])

    while pending:
        tree, label = pending.pop()
        for child in tree.children:
            child_label = next(labels)
            graph.add_edge(label, child_label)
            pending.append((child, child_label))

    return UnrootedTree(graph)


# Enumeration


@functools.lru_cache(maxsize=None)
def _rooted_classes(n: int) -> Tuple[RootedTree, ...]:
    if n == 1:
        return (LEAF,)

    # Same shape as the T[n] recursion: split the leaves between >= 2 subtrees, then pick
    # a multiset of subtrees for each distinct part size
    trees = []
    for p in partitions_of(n, min_parts=2):
        choices = [
            itertools.combinations_with_replacement(_rooted_classes(part), mult)
            for part, mult in conv_part(p)
        ]
        for picks in itertools.product(*choices):
            trees.append(RootedTree(tuple(itertools.chain.from_iterable(picks))))

    logger.debug("Generated %d rooted trees with %d leaves", len(trees), n)
    return tuple(sorted(trees, key=lambda tree: code_sort_key(tree.code)))


def _check_guard(n: int, limit: Optional[int]):
    require_positive(n)
    allowed = enumeration_limit(limit)
    if n > allowed:
        raise EnumerationGuardError(n, allowed)


def generate_rooted(n: int, limit: Optional[int] = None) -> List[RootedTree]:
    """One rooted series-reduced tree per isomorphism class with `n` leaves, in code order

    :param n: Number of leaves, >= 1
    :param limit: Override the enumeration guard for this call
    """
    _check_guard(n, limit)
    return list(_rooted_classes(n))


def generate_unrooted(n: int, limit: Optional[int] = None) -> List[UnrootedTree]:
    """One tree per homeomorphism class of trees with `n` tips, in code order

    Every class shows up among the rooted trees with `n` leaves once the root is forgotten, so
    those are the candidates; duplicates are dropped by unrooted code.

    :param n: Number of tips, >= 1
    :param limit: Override the enumeration guard for this call
    """
    _check_guard(n, limit)
    if n == 1:
        return [UnrootedTree.from_edges([], vertices=[0])]

    found = {}
    for candidate in _rooted_classes(n):
        tree = unrooted_from_rooted(candidate)
        found.setdefault(tree.code, tree)

    logger.debug("Kept %d of %d candidates with %d tips", len(found), len(_rooted_classes(n)), n)
    return [found[code] for code in sorted(found, key=code_sort_key)]


# Text format


@functools.singledispatch
def serialize(t) -> str:
    """The canonical code of a rooted or unrooted tree"""
    raise TypeError(f"cannot serialize {type(t).__name__}")


@serialize.register
def _(t: RootedTree) -> str:
    return t.code


@serialize.register
def _(t: UnrootedTree) -> str:
    return t.code


def parse(text: str) -> RootedTree:
    """Read a rooted tree. Whitespace is ignored.

    Grammar: tree := "*" | "(" tree tree tree* ")"
    """
    parser = _CodeParser(text)
    tree = parser.tree()
    parser.expect_end()
    return tree


def parse_unrooted(text: str) -> UnrootedTree:
    """Read an unrooted tree from its code (a rooted code whose 2-child root is a midpoint)"""
    return unrooted_from_rooted(parse(text))


class _CodeParser:
    def __init__(self, text: str):
        self._text = text
        self._pos = 0

    def _skip_whitespace(self):
        while self._pos < len(self._text) and self._text[self._pos].isspace():
            self._pos += 1

    def tree(self) -> RootedTree:
        # One (start position, children so far) entry per open node
        open_nodes: List[Tuple[int, List[RootedTree]]] = []
        while True:
            self._skip_whitespace()
            if self._pos >= len(self._text):
                if open_nodes:
                    raise TreeParseError(
                        f"unbalanced {CodeAlphabet.OPEN!r} opened", open_nodes[-1][0]
                    )
                raise TreeParseError("unexpected end of input", self._pos)

            char = self._text[self._pos]
            if char == CodeAlphabet.OPEN:
                open_nodes.append((self._pos, []))
                self._pos += 1
                continue

            if char == CodeAlphabet.LEAF:
                node = LEAF
            elif char == CodeAlphabet.CLOSE and open_nodes:
                start, children = open_nodes.pop()
                if not children:
                    raise TreeParseError("empty node", start)
                if len(children) == 1:
                    raise TreeValidityError("node with a single child", start)
                node = RootedTree(tuple(children))
            else:
                raise TreeParseError(f"unexpected {char!r}", self._pos)

            self._pos += 1
            if not open_nodes:
                return node
            open_nodes[-1][1].append(node)

    def expect_end(self):
        self._skip_whitespace()
        if self._pos < len(self._text):
            raise TreeParseError("trailing input", self._pos)
