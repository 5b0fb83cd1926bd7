"""Simplicial-shelling convex geometries of chordal graphs.

The shelling is realised as monophonic convexity: a vertex set is convex when
it contains every vertex of every chordless path between two of its members.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx

from .circuits import CircuitFamily, RootedSet, circuits_from_closure_table, trace

MAX_SHELLING = 16
MAX_REALIZE = 9


class NotChordal(ValueError):
    def __init__(self, cycle):
        super().__init__(f"graph is not chordal, chordless cycle {cycle}")
        self.cycle = cycle


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset
    names: Mapping[int, str] | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        edges = set()
        for e in self.edges:
            e = frozenset(e)
            if len(e) != 2:
                raise ValueError(f"loop or malformed edge {sorted(e)}")
            if not all(0 <= v < self.n for v in e):
                raise ValueError(f"edge {sorted(e)} uses a vertex outside 0..{self.n - 1}")
            edges.add(e)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple], names=None) -> "SimpleGraph":
        return cls(n, frozenset(frozenset(p) for p in pairs), names)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "SimpleGraph":
        nodes = sorted(g.nodes())
        idx = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((idx[u], idx[v]) for u, v in g.edges()))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    def name(self, v: int) -> str:
        if self.names and v in self.names:
            return self.names[v]
        return str(v)

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.n)]
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def sorted_edges(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.edges)


def maximum_cardinality_search(g: SimpleGraph) -> list:
    """Visit order of MCS (ties to the smallest vertex); its reverse is a PEO iff chordal."""
    adj = g.adjacency()
    weight = [0] * g.n
    visited = []
    left = set(range(g.n))
    while left:
        v = max(sorted(left), key=lambda w: weight[w])
        left.discard(v)
        visited.append(v)
        for w in adj[v]:
            if w in left:
                weight[w] += 1
    return visited


def is_perfect_elimination_ordering(g: SimpleGraph, order: list) -> bool:
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        for a, b in itertools.combinations(later, 2):
            if b not in adj[a]:
                return False
    return True


def chordless_cycle(g: SimpleGraph) -> list | None:
    """A chordless cycle of length at least four, or ``None``.

    For non-adjacent neighbours ``a, b`` of ``v``, a shortest ``a-b`` path
    avoiding the rest of ``N[v]`` closes a chordless cycle through ``v``.
    """
    adj = g.adjacency()
    for v in range(g.n):
        for a, b in itertools.combinations(sorted(adj[v]), 2):
            if b in adj[a]:
                continue
            blocked = (adj[v] | {v}) - {a, b}
            parent = {a: None}
            frontier = [a]
            while frontier and b not in parent:
                nxt = []
                for w in frontier:
                    for t in sorted(adj[w]):
                        if t not in parent and t not in blocked:
                            parent[t] = w
                            nxt.append(t)
                frontier = nxt
            if b in parent:
                route = [b]
                while parent[route[-1]] is not None:
                    route.append(parent[route[-1]])
                return [v] + route[::-1]
    return None


def is_chordal(g: SimpleGraph) -> tuple:
    """``(True, elimination_ordering)`` or ``(False, chordless_cycle)``."""
    order = maximum_cardinality_search(g)[::-1]
    if is_perfect_elimination_ordering(g, order):
        return True, order
    cycle = chordless_cycle(g)
    if cycle is None:
        raise AssertionError("MCS rejected the graph but no chordless cycle exists")
    return False, cycle


def simplicial_vertices(g: SimpleGraph) -> frozenset:
    adj = g.adjacency()
    return frozenset(
        v for v in range(g.n) if all(b in adj[a] for a, b in itertools.combinations(adj[v], 2))
    )


def chordless_paths(g: SimpleGraph, a: int, b: int, adj=None):
    """Yield every induced path from ``a`` to ``b`` as a vertex list."""
    adj = adj or g.adjacency()
    if a == b:
        yield [a]
        return

    def extend(route, banned):
        last = route[-1]
        for w in sorted(adj[last]):
            if w in banned:
                continue
            if w == b:
                yield route + [w]
                continue
            # w must not touch any earlier vertex; everything adjacent to last is now banned
            yield from extend(route + [w], banned | adj[last] | {last})

    yield from extend([a], {a})


def monophonic_interval(g: SimpleGraph, a: int, b: int, adj=None) -> frozenset:
    out = set()
    for p in chordless_paths(g, a, b, adj):
        out.update(p)
    return frozenset(out) | {a, b}


def _interval_masks(g: SimpleGraph) -> dict:
    adj = g.adjacency()
    out = {}
    for a, b in itertools.combinations(range(g.n), 2):
        out[(a, b)] = sum(1 << v for v in monophonic_interval(g, a, b, adj))
    return out


def _hull_mask(n: int, intervals: dict, m: int) -> int:
    while True:
        new = m
        members = [v for v in range(n) if m >> v & 1]
        for a, b in itertools.combinations(members, 2):
            new |= intervals[(a, b)]
        if new == m:
            return m
        m = new


def monophonic_closure(g: SimpleGraph, xs: Iterable[int]) -> frozenset:
    m = sum(1 << v for v in set(xs))
    hull = _hull_mask(g.n, _interval_masks(g), m)
    return frozenset(v for v in range(g.n) if hull >> v & 1)


def _names(g: SimpleGraph):
    return {v: g.name(v) for v in range(g.n)} if g.names else None


def monophonic_circuits(g: SimpleGraph) -> CircuitFamily:
    """Minimal-stem circuits of the monophonic convexity of any graph (exhaustive)."""
    if g.n > MAX_SHELLING:
        raise ValueError(f"{g.n} vertices exceeds the limit {MAX_SHELLING}")
    intervals = _interval_masks(g)
    tau = [_hull_mask(g.n, intervals, m) for m in range(1 << g.n)]
    return CircuitFamily(frozenset(range(g.n)), circuits_from_closure_table(list(range(g.n)), tau), _names(g))


def simplicial_shelling_circuits(g: SimpleGraph) -> CircuitFamily:
    chordal, witness = is_chordal(g)
    if not chordal:
        raise NotChordal(witness)
    family = monophonic_circuits(g)
    if not family.is_stem2():
        raise AssertionError("chordal graph produced a stem of size other than two")
    return family


def pair_circuits(g: SimpleGraph) -> CircuitFamily:
    """Stem-2 circuits ``({a,b},c)`` with ``c`` in the hull of ``{a, b}``.

    Equals :func:`simplicial_shelling_circuits` on chordal graphs, without the
    exponential sweep over all vertex subsets.
    """
    intervals = _interval_masks(g)
    circuits = set()
    for (a, b), _ in intervals.items():
        hull = _hull_mask(g.n, intervals, (1 << a) | (1 << b))
        for c in range(g.n):
            if hull >> c & 1 and c not in (a, b):
                circuits.add(RootedSet(frozenset((a, b)), c))
    return CircuitFamily(frozenset(range(g.n)), frozenset(circuits), _names(g))


def _set_partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _components(nodes: list, pairs: Iterable[tuple]) -> list:
    g = nx.Graph()
    g.add_nodes_from(nodes)
    g.add_edges_from(pairs)
    return sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])


def realizable_as_simplicial_shelling(family: CircuitFamily) -> SimpleGraph | None:
    """A chordal graph on the family's ground whose monophonic circuits equal the family.

    In any realiser, a pair is a stem exactly when it is non-adjacent inside one
    component.  So the edge set is fixed by the component partition, which must
    coarsen the components of the stem-pair graph; those partitions are searched.
    The returned graph has vertices ``0..n-1`` in ascending element order.
    """
    elements = family.elements_sorted()
    n = len(elements)
    if n > MAX_REALIZE:
        raise ValueError(f"ground of size {n} exceeds the limit {MAX_REALIZE}")
    if not family.is_stem2():
        return None
    pos = {e: i for i, e in enumerate(elements)}
    stems = {tuple(sorted(pos[s] for s in c.stem)) for c in family.circuits}
    target = family.relabel(pos, names=None).circuits
    names = {pos[e]: family.name(e) for e in elements} if family.names else None
    blocks = _components(list(range(n)), stems)
    for part in _set_partitions(blocks):
        comps = [sorted(v for b in group for v in b) for group in part]
        edges = [
            (a, b) for comp in comps for a, b in itertools.combinations(comp, 2) if (a, b) not in stems
        ]
        g = SimpleGraph.from_edges(n, edges, names)
        if len(_components(list(range(n)), edges)) != len(comps):
            continue
        if not is_chordal(g)[0]:
            continue
        if pair_circuits(g).circuits == target:
            return g
    return None


def chordal_graphs(n: int) -> list:
    """One chordal graph per isomorphism class on ``n`` vertices, in a fixed order.

    Every chordal graph arises from a smaller one by adding a simplicial vertex
    joined to a clique (possibly empty).
    """
    if n == 0:
        return [SimpleGraph(0, frozenset())]
    out = []
    buckets: dict = {}
    for base in chordal_graphs(n - 1):
        gb = base.to_networkx()
        cliques = [()] + sorted(
            (tuple(sorted(c)) for c in nx.enumerate_all_cliques(gb)), key=lambda c: (len(c), c)
        )
        for clique in cliques:
            g = gb.copy()
            g.add_node(n - 1)
            g.add_edges_from((v, n - 1) for v in clique)
            key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
            bucket = buckets.setdefault((key, g.number_of_edges()), [])
            if any(nx.is_isomorphic(g, h) for h in bucket):
                continue
            bucket.append(g)
            out.append(SimpleGraph.from_networkx(g))
    return out


@dataclass(frozen=True)
class TraceEscape:
    graph: SimpleGraph
    removed: int
    traced: CircuitFamily


def find_trace_escape(max_n: int = 8, min_n: int = 1) -> TraceEscape | None:
    """First chordal graph (by vertex count, then generation order) with a vertex
    whose removal leaves a traced circuit family that no chordal graph realises."""
    if max_n > MAX_REALIZE:
        raise ValueError(f"max_n exceeds {MAX_REALIZE}")
    for n in range(min_n, max_n + 1):
        for g in chordal_graphs(n):
            family = pair_circuits(g)
            for v in range(n):
                traced = trace(family, family.ground - {v})
                if realizable_as_simplicial_shelling(traced) is None:
                    return TraceEscape(g, v, traced)
    return None
