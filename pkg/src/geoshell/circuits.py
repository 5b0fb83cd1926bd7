"""Rooted circuit families, closure operators and convex-geometry axiom checks.

Elements are small non-negative integers.  A :class:`CircuitFamily` always
carries its ground set explicitly, because a family may have elements that
occur in no circuit at all.  Display names live in a per-family symbol table
that plays no part in equality.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

MAX_EXHAUSTIVE = 20
MAX_PERMUTATION = 8


@dataclass(frozen=True)
class RootedSet:
    """A rooted set ``(stem, root)`` with the root outside the stem."""

    stem: frozenset
    root: int

    def __post_init__(self):
        object.__setattr__(self, "stem", frozenset(self.stem))
        if not self.stem:
            raise ValueError("stem must be non-empty")
        if self.root in self.stem:
            raise ValueError(f"root {self.root} lies in its own stem")

    @property
    def elements(self) -> frozenset:
        return self.stem | {self.root}

    def key(self) -> tuple:
        return tuple(sorted(self.stem)), self.root

    def relabel(self, mapping: Mapping[int, int]) -> "RootedSet":
        return RootedSet(frozenset(mapping[s] for s in self.stem), mapping[self.root])


def rooted(stem: Iterable[int], root: int) -> RootedSet:
    return RootedSet(frozenset(stem), root)


@dataclass(frozen=True)
class CircuitFamily:
    ground: frozenset
    circuits: frozenset
    names: Mapping[int, str] | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "circuits", frozenset(self.circuits))
        for e in self.ground:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"element ids must be non-negative ints, got {e!r}")
        for c in self.circuits:
            if not c.elements <= self.ground:
                raise ValueError(f"circuit {self.describe(c)} leaves the ground set")

    @classmethod
    def from_names(cls, ground: str | Sequence[str], circuits: Iterable[tuple] = ()) -> "CircuitFamily":
        """Build a family from names, e.g. ``from_names("x y z", [("x y", "z")])``.

        Element ids follow the order of ``ground``.
        """
        if isinstance(ground, str):
            ground = ground.split()
        ids = {name: i for i, name in enumerate(ground)}
        if len(ids) != len(ground):
            raise ValueError("duplicate element names")
        cs = []
        for stem, root in circuits:
            if isinstance(stem, str):
                stem = stem.split()
            cs.append(rooted((ids[s] for s in stem), ids[root]))
        return cls(frozenset(ids.values()), frozenset(cs), dict(enumerate(ground)))

    def name(self, e: int) -> str:
        if self.names and e in self.names:
            return self.names[e]
        return str(e)

    def describe(self, c: RootedSet) -> str:
        stem = ",".join(self.name(s) for s in sorted(c.stem))
        return f"({{{stem}}},{self.name(c.root)})"

    def sorted_circuits(self) -> list:
        return sorted(self.circuits, key=RootedSet.key)

    def elements_sorted(self) -> list:
        return sorted(self.ground)

    def id_of(self, name: str) -> int:
        for e in self.ground:
            if self.name(e) == name:
                return e
        raise KeyError(name)

    def ids_of(self, names: str | Iterable[str]) -> frozenset:
        if isinstance(names, str):
            names = names.split()
        return frozenset(self.id_of(n) for n in names)

    def has(self, stem: Iterable[int], root: int) -> bool:
        return (frozenset(stem), root) in self._index

    def with_names(self, names: Mapping[int, str] | None) -> "CircuitFamily":
        return CircuitFamily(self.ground, self.circuits, names)

    def relabel(self, mapping: Mapping[int, int], names: Mapping[int, str] | None = None) -> "CircuitFamily":
        if names is None and self.names:
            names = {mapping[e]: self.name(e) for e in self.ground}
        return CircuitFamily(
            frozenset(mapping[e] for e in self.ground),
            frozenset(c.relabel(mapping) for c in self.circuits),
            names,
        )

    @property
    def stem_sizes(self) -> set:
        return {len(c.stem) for c in self.circuits}

    def is_stem2(self) -> bool:
        return all(len(c.stem) == 2 for c in self.circuits)

    def __len__(self):
        return len(self.circuits)

    def __str__(self):
        body = " ".join(self.describe(c) for c in self.sorted_circuits())
        ground = " ".join(self.name(e) for e in self.elements_sorted())
        return f"CircuitFamily[{ground}]{{{body}}}"

    @cached_property
    def _index(self) -> frozenset:
        return frozenset((c.stem, c.root) for c in self.circuits)

    @cached_property
    def _bits(self) -> dict:
        return {e: 1 << i for i, e in enumerate(sorted(self.ground))}

    @cached_property
    def _mask_circuits(self) -> list:
        bit = self._bits
        return [(sum(bit[s] for s in c.stem), bit[c.root]) for c in self.sorted_circuits()]

    def _to_mask(self, xs: Iterable[int]) -> int:
        bit = self._bits
        m = 0
        for x in xs:
            try:
                m |= bit[x]
            except KeyError:
                raise ValueError(f"element {x!r} is not in the ground set") from None
        return m

    def _from_mask(self, m: int) -> frozenset:
        return frozenset(e for e, b in self._bits.items() if m & b)


@dataclass(frozen=True)
class ClosureSystem:
    ground: frozenset
    closed_sets: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "closed_sets", frozenset(frozenset(s) for s in self.closed_sets))

    def violations(self) -> list:
        """Return human-readable invariant violations (empty when valid)."""
        out = []
        if self.ground not in self.closed_sets:
            out.append("ground set is not closed")
        for s in self.closed_sets:
            if not s <= self.ground:
                out.append(f"closed set {sorted(s)} leaves the ground set")
        sets = sorted(self.closed_sets, key=lambda s: (len(s), sorted(s)))
        for a, b in itertools.combinations(sets, 2):
            if a & b not in self.closed_sets:
                out.append(f"intersection of {sorted(a)} and {sorted(b)} is not closed")
                break
        return out

    def closure(self, xs: Iterable[int]) -> frozenset:
        xs = frozenset(xs)
        result = self.ground
        for s in self.closed_sets:
            if xs <= s:
                result = result & s
        return result

    def trace(self, subset: Iterable[int]) -> "ClosureSystem":
        t = frozenset(subset)
        return ClosureSystem(t, frozenset(t & s for s in self.closed_sets))


class ViolationKind(enum.Enum):
    CONDITION_1 = "condition-1"
    CONDITION_2 = "condition-2"
    NO_EXTREME_IN_CLOSED_SET = "no-extreme-in-closed-set"
    NO_ONE_POINT_EXTENSION = "no-one-point-extension"
    CIRCUIT_MISMATCH = "circuit-mismatch"


@dataclass(frozen=True)
class AxiomViolation:
    which: ViolationKind
    circuits: tuple = ()
    sets: tuple = ()

    def elements(self) -> frozenset:
        out = set()
        for c in self.circuits:
            out |= c.elements
        for s in self.sets:
            out |= s
        return frozenset(out)

    def to_json(self, family: CircuitFamily) -> dict:
        return {
            "which": self.which.value,
            "circuits": [
                {"stem": [family.name(s) for s in sorted(c.stem)], "root": family.name(c.root)}
                for c in self.circuits
            ],
            "sets": [[family.name(e) for e in sorted(s)] for s in self.sets],
        }


def _check_subset(family: CircuitFamily, xs: Iterable[int]) -> int:
    return family._to_mask(xs)


def closure(family: CircuitFamily, xs: Iterable[int]) -> frozenset:
    """Least superset of ``xs`` that contains the root of every circuit whose stem it contains."""
    m = _check_subset(family, xs)
    return family._from_mask(_closure_mask(family._mask_circuits, m))


def _closure_mask(mask_circuits, m: int) -> int:
    changed = True
    while changed:
        changed = False
        for stem, root in mask_circuits:
            if stem & m == stem and not root & m:
                m |= root
                changed = True
    return m


def extreme(family: CircuitFamily, xs: Iterable[int]) -> frozenset:
    """Elements of ``xs`` that root no circuit whose stem lies inside ``xs``."""
    m = _check_subset(family, xs)
    blocked = 0
    for stem, root in family._mask_circuits:
        if stem & m == stem:
            blocked |= root
    return family._from_mask(m & ~blocked)


def extreme_by_closure(family: CircuitFamily, xs: Iterable[int]) -> frozenset:
    """``{x in X : x not in closure(X - x)}``, the closure-based definition."""
    xs = frozenset(xs)
    return frozenset(x for x in xs if x not in closure(family, xs - {x}))


def _guard(n: int, limit: int = MAX_EXHAUSTIVE) -> None:
    if n > limit:
        raise ValueError(f"ground set of size {n} exceeds the exhaustive limit {limit}")


def _closed_masks(family: CircuitFamily) -> list:
    n = len(family.ground)
    _guard(n)
    mc = family._mask_circuits
    return [m for m in range(1 << n) if all(stem & m != stem or root & m for stem, root in mc)]


def convex_sets(family: CircuitFamily) -> ClosureSystem:
    """All fixpoints of :func:`closure`, as a closure system."""
    return ClosureSystem(family.ground, frozenset(family._from_mask(m) for m in _closed_masks(family)))


def _closure_table(n: int, closed: set) -> list:
    # tau(X) = X if X closed, else the meet of tau(X + i) over i outside X
    full = (1 << n) - 1
    tau = [0] * (1 << n)
    for m in range(full, -1, -1):
        if m in closed:
            tau[m] = m
            continue
        t = full
        rest = full & ~m
        while rest:
            low = rest & -rest
            t &= tau[m | low]
            rest ^= low
        tau[m] = t
    return tau


def circuits_from_closure_table(elements: Sequence[int], tau: Sequence[int]) -> frozenset:
    """Minimal rooted sets ``(X, e)`` with ``e`` in ``tau[X]``; ``tau`` is indexed by bitmask."""
    n = len(elements)
    out = set()
    for m in range(1, 1 << n):
        extra = tau[m] & ~m
        if not extra:
            continue
        members = [i for i in range(n) if m >> i & 1]
        for e in range(n):
            if not extra >> e & 1:
                continue
            if all(not tau[m & ~(1 << i)] >> e & 1 for i in members):
                out.add(RootedSet(frozenset(elements[i] for i in members), elements[e]))
    return frozenset(out)


def circuits_of_closure_system(system: ClosureSystem) -> CircuitFamily:
    problems = system.violations()
    if problems:
        raise ValueError("not a closure system: " + "; ".join(problems))
    elements = sorted(system.ground)
    n = len(elements)
    _guard(n)
    bit = {e: 1 << i for i, e in enumerate(elements)}
    closed = {sum(bit[e] for e in s) for s in system.closed_sets}
    tau = _closure_table(n, closed)
    return CircuitFamily(system.ground, circuits_from_closure_table(elements, tau))


def check_rooted_axioms(family: CircuitFamily) -> AxiomViolation | None:
    """Return the first violation of the rooted-circuit axioms, or ``None``.

    Condition 1: stems sharing a root form an antichain.  Condition 2: if
    ``(X, e)`` and ``(Y, f)`` are circuits with ``e`` in ``Y``, some circuit
    ``(Z, f)`` has ``Z`` inside ``X | Y - {e}``.
    """
    cs = family.sorted_circuits()
    by_root: dict = {}
    for c in cs:
        by_root.setdefault(c.root, []).append(c)
    for c in cs:
        for d in by_root[c.root]:
            if c is not d and c.stem < d.stem:
                return AxiomViolation(ViolationKind.CONDITION_1, (c, d))
    for c in cs:
        for d in cs:
            if c.root not in d.stem:
                continue
            allowed = (c.stem | d.stem) - {c.root}
            if not any(z.stem <= allowed for z in by_root.get(d.root, ())):
                return AxiomViolation(ViolationKind.CONDITION_2, (c, d))
    return None


def satisfies_rooted_axioms(family: CircuitFamily) -> bool:
    return check_rooted_axioms(family) is None


def oracle_violation(family: CircuitFamily) -> AxiomViolation | None:
    """Closed-set based convex-geometry check, independent of the rooted axioms.

    Requires that the family is the circuit family of its own closed sets, that
    every non-empty closed set has an extreme point, and that every closed set
    other than the ground set grows by a single element into another closed set.
    The last condition is what rules out e.g. ``({x,y},z), ({x,z},y)``, whose
    closed sets all have extreme points.
    """
    system = convex_sets(family)
    regenerated = circuits_of_closure_system(system)
    if regenerated.circuits != family.circuits:
        diff = tuple(sorted(regenerated.circuits ^ family.circuits, key=RootedSet.key))
        return AxiomViolation(ViolationKind.CIRCUIT_MISMATCH, diff)
    for s in sorted(system.closed_sets, key=lambda s: (len(s), sorted(s))):
        if s and not any(x not in system.closure(s - {x}) for x in s):
            return AxiomViolation(ViolationKind.NO_EXTREME_IN_CLOSED_SET, sets=(s,))
    for s in sorted(system.closed_sets, key=lambda s: (len(s), sorted(s))):
        if s != system.ground and not any(s | {e} in system.closed_sets for e in system.ground - s):
            return AxiomViolation(ViolationKind.NO_ONE_POINT_EXTENSION, sets=(s,))
    return None


def is_convex_geometry_oracle(family: CircuitFamily) -> bool:
    return oracle_violation(family) is None


def is_honest(family: CircuitFamily) -> bool:
    """True when the family is exactly the circuit family of its own closed sets."""
    return circuits_of_closure_system(convex_sets(family)).circuits == family.circuits


def trace(family: CircuitFamily, subset: Iterable[int]) -> CircuitFamily:
    """Circuits lying entirely inside ``subset``; the result has ground ``subset``."""
    t = frozenset(subset)
    if not t <= family.ground:
        raise ValueError(f"trace set {sorted(t - family.ground)} leaves the ground set")
    names = {e: family.names[e] for e in t if e in family.names} if family.names else None
    return CircuitFamily(t, frozenset(c for c in family.circuits if c.elements <= t), names)


def _encode(circuits, position: Mapping[int, int]) -> tuple:
    return tuple(sorted((tuple(sorted(position[s] for s in c.stem)), position[c.root]) for c in circuits))


def are_isomorphic(f1: CircuitFamily, f2: CircuitFamily) -> dict | None:
    """A bijection ``ground(f1) -> ground(f2)`` carrying circuits onto circuits, or ``None``.

    Permutations are tried in lexicographic order, so the identity wins when it works.
    """
    n = len(f1.ground)
    if n != len(f2.ground):
        raise ValueError("ground sets differ in size")
    _guard(n, MAX_PERMUTATION)
    if len(f1.circuits) != len(f2.circuits) or _degree_profile(f1) != _degree_profile(f2):
        return None
    src = f1.elements_sorted()
    for image in itertools.permutations(f2.elements_sorted()):
        mapping = dict(zip(src, image))
        if all(c.relabel(mapping) in f2.circuits for c in f1.circuits):
            return mapping
    return None


def _degree_profile(f: CircuitFamily) -> list:
    prof = {e: [0, 0] for e in f.ground}
    for c in f.circuits:
        prof[c.root][0] += 1
        for s in c.stem:
            prof[s][1] += 1
    return sorted(map(tuple, prof.values()))


def canonical_form(family: CircuitFamily) -> tuple:
    """``(n, encoding)``, minimal over all relabelings of the ground set by ``0..n-1``."""
    n = len(family.ground)
    _guard(n, MAX_PERMUTATION)
    elements = family.elements_sorted()
    best = None
    for perm in itertools.permutations(range(n)):
        enc = _encode(family.circuits, dict(zip(elements, perm)))
        if best is None or enc < best:
            best = enc
    return n, best


def canonical_labeling(family: CircuitFamily) -> dict:
    """A relabeling ``element -> 0..n-1`` that realises :func:`canonical_form`."""
    n, best = canonical_form(family)
    elements = family.elements_sorted()
    for perm in itertools.permutations(range(n)):
        mapping = dict(zip(elements, perm))
        if _encode(family.circuits, mapping) == best:
            return mapping
    raise AssertionError("unreachable")


def from_canonical(form: tuple, names: Sequence[str] | None = None) -> CircuitFamily:
    n, enc = form
    circuits = frozenset(RootedSet(frozenset(stem), root) for stem, root in enc)
    table = dict(enumerate(names)) if names else None
    return CircuitFamily(frozenset(range(n)), circuits, table)


def subsets(xs: Iterable[int], proper: bool = False) -> Iterable[frozenset]:
    xs = sorted(xs)
    top = len(xs) - 1 if proper else len(xs)
    for k in range(top + 1):
        for combo in itertools.combinations(xs, k):
            yield frozenset(combo)
