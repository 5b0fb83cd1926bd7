"""Recognition of edge-shelling convex geometries of trees.

A stem-2 convex geometry is the edge-shelling geometry of a tree exactly when
Rule Y holds.  On success the tree is rebuilt from the Hasse diagram of the
order induced by an extreme element; on failure the first Rule Y violation
is classified as one of the five trace-minimal forbidden minors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .circuits import (
    CircuitFamily,
    RootedSet,
    are_isomorphic,
    check_rooted_axioms,
    extreme,
    trace,
)
from .trees import LabeledTree, edge_shelling_circuits

MINOR_LABELS = ("x", "y", "z", "u")


def _type(*circuits) -> CircuitFamily:
    return CircuitFamily.from_names(MINOR_LABELS, circuits)


MINOR_TYPES = {
    "i": _type(("y z", "u")),
    "Y": _type(("x y", "u"), ("y z", "u"), ("x z", "u")),
    "O": _type(("x z", "y"), ("x z", "u")),
    "OC": _type(("x z", "y"), ("x z", "u"), ("u z", "y")),
    "B": _type(("x z", "y"), ("x y", "u"), ("y z", "u"), ("x z", "u")),
}


class NotAConvexGeometry(ValueError):
    pass


class HasseError(ValueError):
    pass


class NoMinorMatch(ValueError):
    pass


class RuleYViolation(NamedTuple):
    x: int
    circuit: RootedSet
    kind: str  # "both" or "neither"

    @property
    def elements(self) -> frozenset:
        return self.circuit.elements | {self.x}


@dataclass(frozen=True)
class StrictOrder:
    ground: frozenset
    pairs: frozenset  # (greater, lesser)

    def greater(self, a, b) -> bool:
        return (a, b) in self.pairs

    def restrict(self, core) -> "StrictOrder":
        core = frozenset(core)
        return StrictOrder(core, frozenset(p for p in self.pairs if p[0] in core and p[1] in core))

    def is_irreflexive(self) -> bool:
        return all(a != b for a, b in self.pairs)

    def is_asymmetric(self) -> bool:
        return all((b, a) not in self.pairs for a, b in self.pairs)

    def is_transitive(self) -> bool:
        above = {}
        for a, b in self.pairs:
            above.setdefault(b, set()).add(a)
        return all((a, c) in self.pairs for b, c in self.pairs for a in above.get(b, ()))

    def is_strict_partial_order(self) -> bool:
        return self.is_irreflexive() and self.is_asymmetric() and self.is_transitive()

    def covers(self) -> dict:
        """Map each element to the set of elements covering it."""
        up = {e: set() for e in self.ground}
        for a, b in self.pairs:
            if not any((a, c) in self.pairs and (c, b) in self.pairs for c in self.ground):
                up[b].add(a)
        return up


@dataclass(frozen=True)
class Certificate:
    family: CircuitFamily
    tree: LabeledTree | None = None
    reason: str | None = None  # "stem-size" or "forbidden-minor"
    circuit: RootedSet | None = None
    minor_type: str | None = None
    witness: tuple = ()
    mapping: dict | None = None

    @property
    def is_edge_shelling(self) -> bool:
        return self.tree is not None

    def to_json(self) -> dict:
        f = self.family
        out = {"verdict": "edge-shelling" if self.is_edge_shelling else "not-edge-shelling"}
        if self.tree is not None:
            t = self.tree
            out["tree"] = {
                "vertices": t.n_vertices,
                "edges": [[u, v, t.label_name(lab)] for u, v, lab in t.edges],
            }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.circuit is not None:
            out["circuit"] = {"stem": [f.name(s) for s in sorted(self.circuit.stem)], "root": f.name(self.circuit.root)}
        if self.minor_type is not None:
            out["minor_type"] = self.minor_type
            out["witness"] = [f.name(e) for e in self.witness]
            out["mapping"] = {f.name(e): MINOR_LABELS[c] for e, c in sorted(self.mapping.items())}
        return out


def _require_stem2(family: CircuitFamily) -> None:
    if not family.is_stem2():
        raise ValueError("all stems must have size 2")


def rule_Y_violations(family: CircuitFamily) -> list:
    """All ``(x, ({y,z},u), kind)`` where Rule Y fails, in (circuit, x) order.

    ``kind`` is ``"both"`` when both ``({x,y},u)`` and ``({x,z},u)`` are circuits
    and ``"neither"`` when neither is.
    """
    _require_stem2(family)
    out = []
    for c in family.sorted_circuits():
        y, z = sorted(c.stem)
        u = c.root
        for x in family.elements_sorted():
            if x in (y, z, u):
                continue
            hits = family.has((x, y), u) + family.has((x, z), u)
            if hits != 1:
                out.append(RuleYViolation(x, c, "both" if hits == 2 else "neither"))
    return out


def rule_O_check(family: CircuitFamily) -> bool:
    """``({x,z},y), ({x,z},u)`` in C implies ``({x,y},u)`` or ``({x,u},y)`` in C."""
    _require_stem2(family)
    by_stem = {}
    for c in family.circuits:
        by_stem.setdefault(c.stem, []).append(c.root)
    for stem, roots in by_stem.items():
        for y, u in itertools.combinations(roots, 2):
            for x in stem:
                if not (family.has((x, y), u) or family.has((x, u), y)):
                    return False
    return True


def classify_forbidden_minor(family: CircuitFamily, witness) -> tuple:
    """Match the trace on a 4-element ``witness`` against the five minor types.

    Returns ``(type_tag, mapping)`` with ``mapping`` sending witness elements to
    indices into ``MINOR_LABELS`` (x, y, z, u).
    """
    witness = frozenset(witness)
    if len(witness) != 4:
        raise ValueError("witness must have four elements")
    local = trace(family, witness)
    for tag, canon in MINOR_TYPES.items():
        mapping = are_isomorphic(local, canon)
        if mapping is not None:
            return tag, mapping
    raise NoMinorMatch(f"trace on {sorted(family.name(e) for e in witness)} matches no forbidden minor")


def _check_preconditions(family: CircuitFamily, x: int) -> None:
    _require_stem2(family)
    violation = check_rooted_axioms(family)
    if violation is not None:
        raise NotAConvexGeometry(f"rooted axioms fail ({violation.which.value})")
    if x not in extreme(family, family.ground):
        raise ValueError(f"{family.name(x)} is not an extreme element of the ground set")


def order_from_extreme(family: CircuitFamily, x: int) -> StrictOrder:
    """``y > z`` iff ``({x,z},y)`` is a circuit, and ``x`` above everything else."""
    _check_preconditions(family, x)
    pairs = {(c.root, next(iter(c.stem - {x}))) for c in family.circuits if x in c.stem}
    pairs |= {(x, y) for y in family.ground if y != x}
    return StrictOrder(family.ground, frozenset(pairs))


def parallel_elements(family: CircuitFamily, x: int) -> frozenset:
    """Elements other than ``x`` that share no circuit with ``x``."""
    _check_preconditions(family, x)
    touching = set()
    for c in family.circuits:
        if x in c.elements:
            touching |= c.elements
    return frozenset(family.ground - touching - {x})


def hasse_tree(order: StrictOrder, core) -> dict:
    """Cover map ``y -> y'`` of ``order`` restricted to ``core``.

    Raises :class:`HasseError` unless the cover graph is a tree hanging from a
    greatest element, i.e. every other element has exactly one cover.
    """
    sub = order.restrict(core)
    if not sub.is_strict_partial_order():
        raise HasseError("relation is not a strict partial order")
    tops = [e for e in sorted(sub.ground) if not any(sub.greater(o, e) for o in sub.ground)]
    if len(tops) != 1:
        raise HasseError(f"disconnected cover graph: {len(tops)} maximal elements")
    out = {}
    for e, above in sorted(sub.covers().items()):
        if e == tops[0]:
            continue
        if len(above) != 1:
            raise HasseError(f"multiple covers for {e}: {sorted(above)}")
        out[e] = next(iter(above))
    return out


def choose_extreme(family: CircuitFamily) -> int:
    return min(extreme(family, family.ground))


def build_tree(family: CircuitFamily) -> LabeledTree:
    """Rebuild a tree whose edge-shelling circuits are ``family``.

    Vertices are the Hasse nodes of the non-parallel core (ascending id), then a
    fresh vertex behind edge ``x``, then one leaf per parallel element.
    """
    if not family.ground:
        return LabeledTree(1, (), {})
    x = choose_extreme(family)
    _check_preconditions(family, x)
    if rule_Y_violations(family):
        raise ValueError("Rule Y fails; the family is not edge-shelling")
    parallel = parallel_elements(family, x)
    core = sorted(family.ground - parallel)
    covers = hasse_tree(order_from_extreme(family, x), core)
    node = {e: i for i, e in enumerate(core)}
    edges = [(node[y], node[covers[y]], y) for y in core if y != x]
    root_side = len(core)
    edges.append((node[x], root_side, x))
    for k, p in enumerate(sorted(parallel)):
        edges.append((node[x], root_side + 1 + k, p))
    names = {e: family.name(e) for e in family.ground}
    tree = LabeledTree(len(core) + 1 + len(parallel), tuple(edges), names)
    regenerated = edge_shelling_circuits(tree)
    if regenerated.circuits != family.circuits:
        raise AssertionError("rebuilt tree does not regenerate the input circuits")
    return tree


def recognize(family: CircuitFamily) -> Certificate:
    violation = check_rooted_axioms(family)
    if violation is not None:
        raise NotAConvexGeometry(f"input is not a convex geometry ({violation.which.value})")
    for c in family.sorted_circuits():
        if len(c.stem) != 2:
            return Certificate(family, reason="stem-size", circuit=c)
    violations = rule_Y_violations(family)
    if violations:
        first = violations[0]
        tag, mapping = classify_forbidden_minor(family, first.elements)
        return Certificate(
            family,
            reason="forbidden-minor",
            minor_type=tag,
            witness=tuple(sorted(first.elements)),
            mapping=mapping,
        )
    return Certificate(family, tree=build_tree(family))


def has_forbidden_trace(family: CircuitFamily) -> str | None:
    """Tag of some minor type isomorphic to a 4-element trace, or ``None``."""
    for quad in itertools.combinations(family.elements_sorted(), 4):
        local = trace(family, quad)
        for tag, canon in MINOR_TYPES.items():
            if are_isomorphic(local, canon) is not None:
                return tag
    return None


def hasse_for(family: CircuitFamily) -> tuple:
    """``(x, parallel, covers)`` for the chosen extreme element."""
    x = choose_extreme(family)
    parallel = parallel_elements(family, x)
    covers = hasse_tree(order_from_extreme(family, x), family.ground - parallel)
    return x, parallel, covers
