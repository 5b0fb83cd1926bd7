"""Trees with element-labelled edges and their shelling convex geometries."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx
from networkx.utils import UnionFind

from .circuits import CircuitFamily, RootedSet, circuits_from_closure_table

MAX_VERTEX_SHELLING = 20


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledTree:
    """A tree on vertices ``0..n_vertices-1`` whose edges carry distinct element labels."""

    n_vertices: int
    edges: tuple
    names: Mapping[int, str] | None = field(default=None, compare=False, hash=False, repr=False)
    vertex_names: Mapping[int, str] | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        edges = tuple((int(u), int(v), int(lab)) for u, v, lab in self.edges)
        object.__setattr__(self, "edges", edges)
        n = self.n_vertices
        labels = [lab for _, _, lab in edges]
        if len(set(labels)) != len(labels):
            raise TreeError("edge labels must be pairwise distinct")
        for u, v, _ in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise TreeError(f"edge {u}-{v} uses a vertex outside 0..{n - 1}")
            if u == v:
                raise TreeError(f"loop at vertex {u}")
        if n == 0:
            if edges:
                raise TreeError("edges without vertices")
            return
        uf = UnionFind(range(n))
        for u, v, lab in edges:
            if uf[u] == uf[v]:
                raise TreeError(f"edge {self.label_name(lab)} closes a cycle")
            uf.union(u, v)
        if len(edges) != n - 1:
            raise TreeError(f"forest with {n - len(edges)} components, expected a connected tree")

    @property
    def labels(self) -> frozenset:
        return frozenset(lab for _, _, lab in self.edges)

    def label_name(self, lab: int) -> str:
        if self.names and lab in self.names:
            return self.names[lab]
        return str(lab)

    def vertex_name(self, v: int) -> str:
        if self.vertex_names and v in self.vertex_names:
            return self.vertex_names[v]
        return str(v)

    def edge(self, lab: int) -> tuple:
        for u, v, other in self.edges:
            if other == lab:
                return u, v
        raise KeyError(f"unknown edge label {lab!r}")

    def adjacency(self) -> dict:
        adj = {v: [] for v in range(self.n_vertices)}
        for u, v, lab in self.edges:
            adj[u].append((v, lab))
            adj[v].append((u, lab))
        return adj

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_vertices))
        for u, v, lab in self.edges:
            g.add_edge(u, v, label=lab)
        return g


def tree_from_names(edges: Iterable[tuple], vertices: Iterable[str] | None = None) -> LabeledTree:
    """Build a tree from ``(vertex_name, vertex_name, label_name)`` triples.

    Label ids follow first appearance, vertex ids follow ``vertices`` if given.
    """
    edges = list(edges)
    vnames = list(vertices) if vertices is not None else []
    for u, v, _ in edges:
        for w in (u, v):
            if w not in vnames:
                vnames.append(w)
    vid = {w: i for i, w in enumerate(vnames)}
    lid = {}
    for _, _, lab in edges:
        lid.setdefault(lab, len(lid))
    return LabeledTree(
        len(vnames),
        tuple((vid[u], vid[v], lid[lab]) for u, v, lab in edges),
        {i: lab for lab, i in lid.items()},
        dict(enumerate(vnames)),
    )


def trees_isomorphic(t1: LabeledTree, t2: LabeledTree) -> bool:
    """Isomorphism preserving edge labels."""
    return nx.is_isomorphic(
        t1.to_networkx(), t2.to_networkx(), edge_match=lambda a, b: a["label"] == b["label"]
    )


def _vertex_path(adj: dict, src: int, dst: int) -> list:
    """Edge labels on the vertex path ``src -> dst``."""
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for w, lab in adj[v]:
            if w not in parent:
                parent[w] = (v, lab)
                queue.append(w)
    out = []
    v = dst
    while parent[v] is not None:
        v, lab = parent[v]
        out.append(lab)
    return out


def edge_path(tree: LabeledTree, x: int, y: int) -> frozenset:
    """Labels of the smallest subtree containing edges ``x`` and ``y``."""
    a, _ = tree.edge(x)
    c, _ = tree.edge(y)
    return frozenset(_vertex_path(tree.adjacency(), a, c)) | {x, y}


def edge_shelling_circuits(tree: LabeledTree) -> CircuitFamily:
    labels = sorted(tree.labels)
    adj = tree.adjacency()
    circuits = set()
    for i, x in enumerate(labels):
        a, _ = tree.edge(x)
        for y in labels[i + 1:]:
            c, _ = tree.edge(y)
            interior = set(_vertex_path(adj, a, c)) - {x, y}
            circuits.update(RootedSet(frozenset((x, y)), z) for z in interior)
    names = {lab: tree.label_name(lab) for lab in labels} if tree.names else None
    return CircuitFamily(frozenset(labels), frozenset(circuits), names)


def spanning_subtree(tree: LabeledTree, vertices: Iterable[int]) -> frozenset:
    """Vertex set of the smallest subtree containing ``vertices``, by stripping foreign leaves."""
    keep = set(vertices)
    if len(keep) <= 1:
        return frozenset(keep)
    adj = {v: {w for w, _ in nbrs} for v, nbrs in tree.adjacency().items()}
    alive = set(adj)
    leaves = [v for v in alive if len(adj[v]) <= 1 and v not in keep]
    while leaves:
        v = leaves.pop()
        alive.discard(v)
        for w in adj.pop(v):
            adj[w].discard(v)
            if w not in keep and len(adj[w]) <= 1 and w in alive:
                leaves.append(w)
    return frozenset(alive)


def vertex_shelling_circuits(tree: LabeledTree) -> CircuitFamily:
    """Rooted circuits of the convex geometry whose convex sets are vertex sets of subtrees."""
    n = tree.n_vertices
    if n > MAX_VERTEX_SHELLING:
        raise ValueError(f"{n} vertices exceeds the limit {MAX_VERTEX_SHELLING}")
    tau = [0] * (1 << n)
    for m in range(1 << n):
        hull = spanning_subtree(tree, (v for v in range(n) if m >> v & 1))
        tau[m] = sum(1 << v for v in hull)
    circuits = circuits_from_closure_table(list(range(n)), tau)
    names = {v: tree.vertex_name(v) for v in range(n)} if tree.vertex_names else None
    return CircuitFamily(frozenset(range(n)), circuits, names)


def wide_stems(family: CircuitFamily) -> list:
    """Circuits whose stem size is not two."""
    return [c for c in family.sorted_circuits() if len(c.stem) != 2]


def find_vertex_stem_not_two(max_vertices: int = 10):
    """Search all tree shapes up to ``max_vertices`` for a vertex-shelling stem of size other than two.

    Returns ``(tree, circuit)`` for the first hit, or ``None``.
    """
    for m in range(max_vertices):
        for tree in all_tree_shapes(m):
            wide = wide_stems(vertex_shelling_circuits(tree))
            if wide:
                return tree, wide[0]
    return None


def contract(tree: LabeledTree, remove: Iterable[int]) -> LabeledTree:
    """Contract the edges labelled ``remove``; merged vertices are renumbered by smallest member."""
    remove = frozenset(remove)
    unknown = remove - tree.labels
    if unknown:
        raise KeyError(f"unknown edge labels {sorted(unknown)}")
    uf = UnionFind(range(tree.n_vertices))
    for u, v, lab in tree.edges:
        if lab in remove:
            uf.union(u, v)
    blocks = sorted((sorted(b) for b in uf.to_sets()), key=lambda b: b[0])
    new_id = {v: i for i, block in enumerate(blocks) for v in block}
    edges = tuple((new_id[u], new_id[v], lab) for u, v, lab in tree.edges if lab not in remove)
    names = {lab: tree.label_name(lab) for _, _, lab in edges} if tree.names else None
    vnames = None
    if tree.vertex_names:
        vnames = {i: "+".join(tree.vertex_name(v) for v in block) for i, block in enumerate(blocks)}
    return LabeledTree(len(blocks), edges, names, vnames)


def all_tree_shapes(n_edges: int) -> list:
    """One tree per unlabelled shape with ``n_edges`` edges; edges labelled ``0..n_edges-1``."""
    if n_edges == 0:
        return [LabeledTree(1, ())]
    out = []
    for g in nx.nonisomorphic_trees(n_edges + 1):
        edges = tuple((u, v, i) for i, (u, v) in enumerate(sorted(g.edges())))
        out.append(LabeledTree(n_edges + 1, edges))
    return out


def random_tree(rng: random.Random, n_edges: int) -> LabeledTree:
    """Uniform random labelled tree (Prüfer) with a random edge labelling."""
    n = n_edges + 1
    if n == 1:
        return LabeledTree(1, ())
    if n == 2:
        g = nx.Graph([(0, 1)])
    else:
        g = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
    labels = list(range(n_edges))
    rng.shuffle(labels)
    edges = tuple((u, v, labels[i]) for i, (u, v) in enumerate(sorted(g.edges())))
    return LabeledTree(n, edges)


def star(n_edges: int) -> LabeledTree:
    return LabeledTree(n_edges + 1, tuple((0, i + 1, i) for i in range(n_edges)))


def path(n_edges: int) -> LabeledTree:
    return LabeledTree(n_edges + 1, tuple((i, i + 1, i) for i in range(n_edges)))


def fork_tree() -> LabeledTree:
    """Path A-B-C with D and E hanging off C; edges a=AB, b=BC, c=CD, d=CE."""
    return tree_from_names(
        [("A", "B", "a"), ("B", "C", "b"), ("C", "D", "c"), ("C", "E", "d")],
        vertices="ABCDE",
    )
