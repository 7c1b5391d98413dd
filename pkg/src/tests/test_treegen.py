import random

import networkx as nx
import pytest

import counting
from map import EnumerationConstants
from treegen import (
    LEAF,
    EnumerationGuardError,
    RootedTree,
    TreeParseError,
    TreeValidityError,
    UnrootedTree,
    canonical_code,
    generate_rooted,
    generate_unrooted,
    leaf_centroid,
    parse,
    parse_unrooted,
    rooted_at,
    serialize,
    unrooted_canonical_code,
    unrooted_from_rooted,
)
from util import DomainError

ROOTED_4 = ["(((**)*)*)", "((***)*)", "((**)(**))", "((**)**)", "(****)"]
UNROOTED_4 = ["((**)(**))", "(****)"]
UNROOTED_5 = ["((**)(**)*)", "((**)***)", "(*****)"]


def cherry():
    return RootedTree((LEAF, LEAF))


def h_tree():
    return UnrootedTree.from_edges([("a", "b"), ("a", 1), ("a", 2), ("b", 3), ("b", 4)])


def series_reduced_by_networkx(n):
    """Every series-reduced tree with n tips, straight from networkx's list of all trees"""
    if n == 1:
        return [UnrootedTree.from_edges([], vertices=[0])]
    found = []
    # A series-reduced tree with n >= 2 tips has at most 2n - 2 vertices
    for order in range(2, 2 * n - 1):
        for graph in nx.nonisomorphic_trees(order):
            degrees = [degree for _, degree in graph.degree()]
            if 2 not in degrees and sum(1 for d in degrees if d == 1) == n:
                found.append(UnrootedTree(graph))
    return found


def shuffled_rooted(tree, rng):
    """The same tree rebuilt with its children handed over in a random order at every level"""
    children = [shuffled_rooted(child, rng) for child in tree.children]
    rng.shuffle(children)
    return RootedTree(tuple(children)) if children else LEAF


def shuffled_unrooted(tree, rng):
    """The same tree with new vertex labels and edges inserted in a random order"""
    labels = list(tree.vertices)
    new_labels = [f"v{i}" for i in range(len(labels))]
    rng.shuffle(new_labels)
    mapping = dict(zip(labels, new_labels))

    edges = [(mapping[u], mapping[w]) for u, w in tree.edges]
    rng.shuffle(edges)
    edges = [(w, u) if rng.random() < 0.5 else (u, w) for u, w in edges]
    vertices = [mapping[v] for v in labels]
    rng.shuffle(vertices)
    return UnrootedTree.from_edges(edges, vertices=vertices), mapping


def tip_counts_after_removing(graph, tips, removed_vertex=None, removed_edge=None):
    rest = nx.Graph(graph)
    if removed_vertex is not None:
        rest.remove_node(removed_vertex)
    if removed_edge is not None:
        rest.remove_edge(*removed_edge)
    return [len(component & tips) for component in nx.connected_components(rest)]


# Rooted trees


def test_children_are_sorted():
    left = RootedTree((LEAF, cherry(), LEAF))
    right = RootedTree((cherry(), LEAF, LEAF))
    assert left == right
    assert left.code == "((**)**)"
    assert hash(left) == hash(right)


def test_rooted_tree_properties():
    tree = parse("(((**)*)*)")
    assert tree.leaf_count == 4
    assert tree.internal_count == 3
    assert not tree.is_leaf
    assert LEAF.is_leaf
    assert LEAF.leaf_count == 1
    assert canonical_code(tree) == str(tree) == "(((**)*)*)"


def test_single_child_rejected():
    with pytest.raises(TreeValidityError):
        RootedTree((LEAF,))


# Unrooted trees


def test_unrooted_validation():
    with pytest.raises(TreeValidityError):
        UnrootedTree.from_graph(nx.Graph())
    with pytest.raises(TreeValidityError):
        UnrootedTree(nx.path_graph(3))
    with pytest.raises(TreeValidityError):
        UnrootedTree(nx.cycle_graph(4))
    with pytest.raises(TreeValidityError):
        UnrootedTree(nx.MultiGraph([(0, 1)]))
    with pytest.raises(TreeValidityError):
        UnrootedTree.from_edges([(0, 1), (2, 3)])


def test_unrooted_copies_its_graph():
    graph = nx.star_graph(3)
    tree = UnrootedTree(graph)
    graph.add_edge(0, 99)
    assert tree.tip_count == 3
    assert nx.is_frozen(tree.graph)


def test_one_vertex_tree():
    tree = UnrootedTree.from_edges([], vertices=["v"])
    assert tree.tip_count == 1
    assert tree.code == "*"
    with pytest.raises(DomainError):
        leaf_centroid(tree)


def test_h_tree():
    tree = h_tree()
    assert tree.tip_count == 4
    assert sorted(tree.tips()) == [1, 2, 3, 4]
    assert tree.degree("a") == 3

    centroid = leaf_centroid(tree)
    assert not centroid.is_vertex
    assert set(centroid.edge) == {"a", "b"}
    assert tree.code == "((**)(**))"
    assert repr(tree) == "UnrootedTree('((**)(**))')"


def test_star_centroid_is_the_hub():
    tree = UnrootedTree(nx.star_graph(5))
    centroid = leaf_centroid(tree)
    assert centroid.is_vertex
    assert centroid.vertex == 0
    assert unrooted_canonical_code(tree) == "(*****)"


def test_two_tip_tree():
    tree = UnrootedTree.from_edges([(0, 1)])
    assert leaf_centroid(tree).edge is not None
    assert tree.code == "(**)"


def test_rooted_at():
    tree = h_tree()
    assert rooted_at(tree, "a").code == "((**)**)"
    with pytest.raises(DomainError):
        rooted_at(tree, 1)


def test_unrooted_from_rooted_smooths_a_two_child_root():
    tree = unrooted_from_rooted(parse("((**)(**))"))
    assert tree.graph.number_of_nodes() == 6
    assert tree.code == "((**)(**))"

    # Rooting the H tree at an internal vertex and forgetting the root gives the H tree back
    assert unrooted_from_rooted(parse("((**)**)")).code == tree.code


@pytest.mark.parametrize("n", range(1, 9))
def test_leaf_centroid_matches_brute_force(n):
    for tree in generate_unrooted(n):
        if n == 1:
            continue
        graph, tips = tree.graph, set(tree.tips())
        vertices = [
            v
            for v in graph.nodes
            if all(2 * k < n for k in tip_counts_after_removing(graph, tips, removed_vertex=v))
        ]
        edges = [
            e
            for e in graph.edges
            if tip_counts_after_removing(graph, tips, removed_edge=e) == [n // 2, n // 2]
            and n % 2 == 0
        ]
        assert len(vertices) + len(edges) == 1

        centroid = leaf_centroid(tree)
        if centroid.is_vertex:
            assert vertices == [centroid.vertex]
        else:
            assert {frozenset(e) for e in edges} == {frozenset(centroid.edge)}


@pytest.mark.parametrize("n", range(4, 9))
def test_code_ignores_labels(n):
    rng = random.Random(n)
    for tree in generate_unrooted(n):
        labels = list(tree.vertices)
        shuffled = labels[:]
        rng.shuffle(shuffled)
        relabelled = nx.relabel_nodes(nx.Graph(tree.graph), dict(zip(labels, shuffled)))
        assert UnrootedTree(relabelled).code == tree.code


@pytest.mark.parametrize("n", range(1, 9))
def test_code_ignores_child_order(n):
    rng = random.Random(1000 + n)
    trees = generate_rooted(n)
    for _ in range(500):
        tree = rng.choice(trees)
        rebuilt = shuffled_rooted(tree, rng)
        assert canonical_code(rebuilt) == canonical_code(tree)
        assert rebuilt == tree


@pytest.mark.parametrize("n", range(2, 9))
def test_centroid_rooting_survives_reshuffled_graphs(n):
    rng = random.Random(2000 + n)
    trees = generate_unrooted(n)
    for _ in range(500):
        tree = rng.choice(trees)
        copy, mapping = shuffled_unrooted(tree, rng)
        centroid, copy_centroid = leaf_centroid(tree), leaf_centroid(copy)

        if centroid.is_vertex:
            assert copy_centroid.vertex == mapping[centroid.vertex]
            assert rooted_at(copy, copy_centroid.vertex) == rooted_at(tree, centroid.vertex)
        else:
            assert not copy_centroid.is_vertex
            assert set(copy_centroid.edge) == {mapping[v] for v in centroid.edge}
        assert unrooted_canonical_code(copy) == unrooted_canonical_code(tree)


# Enumeration


def test_generate_rooted_four():
    assert [serialize(t) for t in generate_rooted(4)] == ROOTED_4


def test_generate_rooted_two():
    assert [serialize(t) for t in generate_rooted(2)] == ["(**)"]
    assert [serialize(t) for t in generate_rooted(1)] == ["*"]


def test_generate_unrooted_small():
    assert [serialize(t) for t in generate_unrooted(4)] == UNROOTED_4
    assert [serialize(t) for t in generate_unrooted(5)] == UNROOTED_5
    assert [serialize(t) for t in generate_unrooted(1)] == ["*"]
    assert [serialize(t) for t in generate_unrooted(3)] == ["(***)"]


@pytest.mark.parametrize("n", range(1, 9))
def test_rooted_generation_matches_count(n):
    trees = generate_rooted(n)
    assert len(trees) == counting.count_rooted(n)
    assert len({t.code for t in trees}) == len(trees)
    assert all(t.leaf_count == n for t in trees)


@pytest.mark.parametrize("n", range(1, 9))
def test_unrooted_generation_matches_count(n):
    trees = generate_unrooted(n)
    assert len(trees) == counting.count_unrooted_exact(n)
    assert len({t.code for t in trees}) == len(trees)
    for tree in trees:
        assert tree.tip_count == n
        assert all(tree.degree(v) != 2 for v in tree.vertices)


@pytest.mark.parametrize("n", range(1, 8))
def test_unrooted_generation_matches_networkx(n):
    expected = sorted(tree.code for tree in series_reduced_by_networkx(n))
    assert len(expected) == len(set(expected))
    assert sorted(tree.code for tree in generate_unrooted(n)) == expected


def test_guard_refuses_large_n():
    with pytest.raises(EnumerationGuardError) as e:
        generate_unrooted(EnumerationConstants.MAX_TIPS + 1)
    assert e.value.limit == EnumerationConstants.MAX_TIPS
    assert "--limit" in str(e.value)


def test_guard_override_per_call():
    with pytest.raises(EnumerationGuardError):
        generate_rooted(4, limit=3)
    assert len(generate_rooted(4, limit=4)) == 5


def test_guard_from_environment(monkeypatch):
    monkeypatch.setenv(EnumerationConstants.LIMIT_ENV_VAR, "3")
    with pytest.raises(EnumerationGuardError):
        generate_unrooted(4)

    monkeypatch.setenv(EnumerationConstants.LIMIT_ENV_VAR, "many")
    with pytest.raises(DomainError):
        generate_unrooted(4)


def test_generation_rejects_non_positive():
    with pytest.raises(DomainError):
        generate_rooted(0)


# Text format


@pytest.mark.parametrize("n", range(1, 9))
def test_parse_serialize_identity(n):
    for tree in generate_rooted(n):
        assert parse(serialize(tree)) == tree
    for tree in generate_unrooted(n):
        assert serialize(parse_unrooted(serialize(tree))) == serialize(tree)


def test_parse_sorts_children():
    assert serialize(parse("(*(**)*)")) == "((**)**)"


def test_parse_ignores_whitespace():
    assert serialize(parse(" ( *\t* \n) ")) == "(**)"


def caterpillar_code(leaves):
    """A path of internal nodes with one extra leaf on each, as deep as a tree with `leaves` tips gets"""
    code = "(**)"
    for _ in range(leaves - 2):
        code = f"({code}*)"
    return code


def test_parse_deep_caterpillar():
    code = caterpillar_code(2000)
    tree = parse(code)
    assert tree.leaf_count == 2000
    assert tree.internal_count == 1999
    assert serialize(tree) == code
    assert tree == parse(code)


def test_deep_caterpillar_unrooted():
    tree = parse_unrooted(caterpillar_code(2000))
    assert tree.tip_count == 2000
    assert parse_unrooted(tree.code).code == tree.code
    assert not leaf_centroid(tree).is_vertex


def test_unbalanced_deep_text_reports_position():
    with pytest.raises(TreeParseError) as e:
        parse("(" * 5000 + "**")
    assert e.value.position == 4999


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0),
        ("()", 0),
        ("((**)", 0),
        ("(**", 0),
        ("(**))", 4),
        ("(**)*", 4),
        ("(*x)", 2),
        (")", 0),
    ],
)
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(TreeParseError) as e:
        parse(text)
    assert e.value.position == position
    assert f"at position {position}" in str(e.value)


def test_single_child_text_rejected():
    with pytest.raises(TreeValidityError) as e:
        parse("((*)*)")
    assert e.value.position == 1

    with pytest.raises(TreeValidityError) as e:
        parse("(*)")
    assert e.value.position == 0


def test_serialize_rejects_other_types():
    with pytest.raises(TypeError):
        serialize("(**)")
