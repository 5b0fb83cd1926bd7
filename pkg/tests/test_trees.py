import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_closure
from geoshell.circuits import (
    CircuitFamily,
    check_rooted_axioms,
    is_convex_geometry_oracle,
    rooted,
    subsets,
    trace,
)
from geoshell.trees import (
    LabeledTree,
    TreeError,
    all_tree_shapes,
    contract,
    edge_path,
    edge_shelling_circuits,
    find_vertex_stem_not_two,
    path,
    random_tree,
    spanning_subtree,
    star,
    tree_from_names,
    trees_isomorphic,
    vertex_shelling_circuits,
    wide_stems,
)


def lab(tree, name):
    return next(l for l in tree.labels if tree.label_name(l) == name)


def labs(tree, names):
    return frozenset(lab(tree, n) for n in names.split())


@pytest.fixture
def path4():
    return tree_from_names([("0", "1", "p"), ("1", "2", "q"), ("2", "3", "r"), ("3", "4", "s")])


def test_tree_validation():
    with pytest.raises(TreeError):
        LabeledTree(3, ((0, 1, 0), (1, 2, 0)))
    with pytest.raises(TreeError):
        LabeledTree(3, ((0, 1, 0), (1, 0, 1)))
    with pytest.raises(TreeError, match="forest"):
        LabeledTree(4, ((0, 1, 0), (2, 3, 1)))
    with pytest.raises(TreeError):
        LabeledTree(2, ((0, 0, 0),))


def test_edge_path_examples(fork_tree):
    t = fork_tree
    assert edge_path(t, lab(t, "a"), lab(t, "c")) == labs(t, "a b c")
    assert edge_path(t, lab(t, "c"), lab(t, "d")) == labs(t, "c d")
    assert edge_path(t, lab(t, "a"), lab(t, "a")) == labs(t, "a")


def test_edge_path_unknown_label(fork_tree):
    with pytest.raises((KeyError, ValueError)):
        edge_path(fork_tree, 0, 42)


def test_edge_shelling_fork(fork_tree, fork_edges):
    expected = CircuitFamily.from_names("a b c d", [("a c", "b"), ("a d", "b")])
    assert fork_edges == expected


def test_edge_shelling_star_is_empty():
    for n in range(6):
        assert edge_shelling_circuits(star(n)).circuits == frozenset()


def test_edge_shelling_path4(path4):
    expected = CircuitFamily.from_names(
        "p q r s", [("p r", "q"), ("p s", "q"), ("p s", "r"), ("q s", "r")]
    )
    assert edge_shelling_circuits(path4) == expected


def brute_edge_shelling(tree):
    """Circuits from the definition: convex sets are edge sets of subtrees."""
    g = tree.to_networkx()
    ground = tree.labels
    by_label = {d["label"]: (u, v) for u, v, d in g.edges(data=True)}
    closed = []
    for s in subsets(ground):
        if not s:
            closed.append(s)
            continue
        sub = g.edge_subgraph(by_label[l] for l in s)
        if nx.is_connected(sub):
            closed.append(s)
    family_circuits = set()
    for a, b in itertools.combinations(sorted(ground), 2):
        hull = ground
        for s in closed:
            if a in s and b in s:
                hull = hull & s
        for c in hull - {a, b}:
            family_circuits.add(rooted({a, b}, c))
    return frozenset(family_circuits)


@pytest.mark.parametrize("n_edges", range(1, 7))
def test_edge_shelling_matches_subtree_definition(n_edges):
    for tree in all_tree_shapes(n_edges):
        assert edge_shelling_circuits(tree).circuits == brute_edge_shelling(tree)


@pytest.mark.parametrize("n_edges", range(0, 9))
def test_edge_shelling_is_stem2_convex_geometry(n_edges):
    for tree in all_tree_shapes(n_edges):
        family = edge_shelling_circuits(tree)
        assert family.is_stem2()
        assert check_rooted_axioms(family) is None
        if n_edges <= 7:
            assert is_convex_geometry_oracle(family)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(9, 14))
def test_edge_shelling_sampled_larger_trees(seed, n_edges):
    family = edge_shelling_circuits(random_tree(random.Random(seed), n_edges))
    assert family.is_stem2()
    assert check_rooted_axioms(family) is None


# vertex shelling --------------------------------------------------------------


def test_vertex_shelling_single_edge():
    assert vertex_shelling_circuits(path(1)).circuits == frozenset()


def test_vertex_shelling_star():
    fam = vertex_shelling_circuits(star(3))
    expected = {rooted({a, b}, 0) for a, b in itertools.combinations((1, 2, 3), 2)}
    assert fam.circuits == frozenset(expected)


def test_vertex_shelling_fork_contains_listed_circuits(fork_tree):
    fam = vertex_shelling_circuits(fork_tree)
    listed = [
        ("A C", "B"), ("A D", "C"), ("A D", "B"), ("B D", "C"),
        ("A E", "C"), ("A E", "B"), ("B E", "C"),
    ]
    for stem, root in listed:
        assert fam.has(fam.ids_of(stem), fam.id_of(root))
    # D and E hang off C, so C also lies on the subtree spanning {D, E}
    assert fam.has(fam.ids_of("D E"), fam.id_of("C"))
    assert len(fam.circuits) == 8


def test_spanning_subtree_is_closure(fork_tree):
    fam = vertex_shelling_circuits(fork_tree)
    for s in subsets(range(fork_tree.n_vertices)):
        if s:
            assert spanning_subtree(fork_tree, s) == naive_closure(fam, s)


@pytest.mark.parametrize("n_edges", range(1, 7))
def test_vertex_shelling_is_convex_geometry(n_edges):
    for tree in all_tree_shapes(n_edges):
        fam = vertex_shelling_circuits(tree)
        assert is_convex_geometry_oracle(fam)
        assert wide_stems(fam) == []


def test_no_wide_vertex_stem_on_small_trees():
    assert find_vertex_stem_not_two(8) is None


def test_vertex_shelling_guard():
    with pytest.raises(ValueError):
        vertex_shelling_circuits(path(20))


# contraction -------------------------------------------------------------------


def test_contract_fork_b_gives_star(fork_tree):
    t = contract(fork_tree, {lab(fork_tree, "b")})
    assert t.n_vertices == 4
    hub = [v for v in range(t.n_vertices) if len(t.adjacency()[v]) == 3]
    assert len(hub) == 1
    assert t.vertex_name(hub[0]) == "B+C"
    assert {t.label_name(l) for l in t.labels} == {"a", "c", "d"}


def test_contract_nothing(fork_tree):
    assert trees_isomorphic(contract(fork_tree, set()), fork_tree)


def test_contract_path(path4):
    t = contract(path4, labs(path4, "q r"))
    assert t.n_vertices == 3
    assert edge_path(t, lab(t, "p"), lab(t, "s")) == labs(t, "p s")


def test_contract_unknown_label(path4):
    with pytest.raises(KeyError):
        contract(path4, {99})


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 10))
def test_trace_equals_contraction(seed, n_edges):
    rng = random.Random(seed)
    tree = random_tree(rng, n_edges)
    keep = frozenset(l for l in tree.labels if rng.random() < 0.5)
    traced = trace(edge_shelling_circuits(tree), keep)
    contracted = edge_shelling_circuits(contract(tree, tree.labels - keep))
    assert traced.circuits == contracted.circuits
    assert contracted.ground == keep
