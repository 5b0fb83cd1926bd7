"""Isomorph-free enumeration of stem-2 circuit families.

Produces the catalog of trace-minimal non-convex-geometries of stem size 2
and the corpus of all stem-2 convex geometries on small ground sets.
Candidate checks run on a bitmask kernel; only survivors are canonicalised.
"""
from __future__ import annotations

import itertools
import multiprocessing
import random
from dataclasses import dataclass, field

from .circuits import (
    CircuitFamily,
    RootedSet,
    canonical_form,
    check_rooted_axioms,
    from_canonical,
    is_convex_geometry_oracle,
    subsets,
    trace,
)

LETTERS = "abcdefghij"


@dataclass(frozen=True)
class CatalogEntry:
    family: CircuitFamily
    size: int
    circuit_count: int

    @property
    def form(self) -> tuple:
        return canonical_form(self.family)


@dataclass
class EnumerationConfig:
    size: int
    unpruned: bool = False
    workers: int = 1


@dataclass
class SizeBoundReport:
    n: int
    samples: int
    seed: int
    non_convex: int = 0
    skipped: int = 0
    largest_witness: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _triples(n: int) -> list:
    return list(itertools.combinations(range(n), 3))


def _options(triple: tuple, one_per_triple: bool) -> list:
    """Circuit sets allowed on one triple, as tuples of ``(stem_mask, root)``."""
    single = []
    for r in triple:
        a, b = (t for t in triple if t != r)
        single.append(((1 << a) | (1 << b), r))
    if one_per_triple:
        return [()] + [(c,) for c in single]
    return [combo for k in range(4) for combo in itertools.combinations(single, k)]


def _is_cg(circs, n: int) -> bool:
    """Rooted-axiom check for stem-2 families given as ``(stem_mask, root)`` pairs.

    Distinct 2-element stems are never nested, so only the exchange condition matters.
    """
    by_root = [[] for _ in range(n)]
    containing = [[] for _ in range(n)]
    for stem, r in circs:
        by_root[r].append(stem)
        for e in range(n):
            if stem >> e & 1:
                containing[e].append((stem, r))
    for stem_x, e in circs:
        ebit = 1 << e
        for stem_y, f in containing[e]:
            allowed = (stem_x | stem_y) & ~ebit
            for z in by_root[f]:
                if not z & ~allowed:
                    break
            else:
                return False
    return True


def _drop(circs, e: int) -> list:
    bit = 1 << e
    return [(s, r) for s, r in circs if r != e and not s & bit]


def _is_trace_minimal(circs, n: int) -> bool:
    if _is_cg(circs, n):
        return False
    # convex geometries are closed under trace, so maximal proper subsets suffice
    return all(_is_cg(_drop(circs, e), n) for e in range(n))


def _to_family(circs, n: int, names=None) -> CircuitFamily:
    cs = frozenset(RootedSet(frozenset(i for i in range(n) if s >> i & 1), r) for s, r in circs)
    return CircuitFamily(frozenset(range(n)), cs, names)


def _to_masks(family: CircuitFamily) -> tuple:
    elements = family.elements_sorted()
    pos = {e: i for i, e in enumerate(elements)}
    circs = [(sum(1 << pos[s] for s in c.stem), pos[c.root]) for c in family.sorted_circuits()]
    return circs, len(elements)


def _names(n: int) -> dict:
    return dict(enumerate(LETTERS[:n]))


def enumerate_stem2_families(n: int, one_per_triple: bool = True):
    """Yield one representative per isomorphism class of stem-2 families on ``n`` elements.

    Classes on ``n`` elements are grown from classes on ``n - 1`` elements:
    every family restricts to a family on its first ``n - 1`` elements, so
    extending each smaller representative by all circuit choices on the new
    triples reaches every class.
    """
    if not 1 <= n <= 5:
        raise ValueError("n must lie in 1..5")
    yield from (from_canonical(f, LETTERS[:n]) for f in _class_forms(n, one_per_triple))


def _class_forms(n: int, one_per_triple: bool) -> list:
    if n <= 2:
        return [(n, ())]
    smaller = _class_forms(n - 1, one_per_triple)
    new = [t for t in _triples(n) if n - 1 in t]
    option_lists = [_options(t, one_per_triple) for t in new]
    seen = set()
    out = []
    for form in smaller:
        base = [(sum(1 << s for s in stem), r) for stem, r in form[1]]
        for choice in itertools.product(*option_lists):
            circs = base + [c for opt in choice for c in opt]
            cf = canonical_form(_to_family(circs, n))
            if cf not in seen:
                seen.add(cf)
                out.append(cf)
    return out


def stem2_convex_geometries(n: int) -> list:
    """Isomorphism-class representatives of stem-2 convex geometries on ``n`` elements.

    A convex geometry carries at most one circuit per triple and every trace of
    it is again a convex geometry, so the growth can prune at each size.
    """
    if not 0 <= n <= 5:
        raise ValueError("n must lie in 0..5")
    if n <= 2:
        return [from_canonical((n, ()), LETTERS[:n])]
    forms = _cg_forms(n)
    return [from_canonical(f, LETTERS[:n]) for f in forms]


def _cg_forms(n: int) -> list:
    if n <= 2:
        return [(n, ())]
    smaller = _cg_forms(n - 1)
    new = [t for t in _triples(n) if n - 1 in t]
    option_lists = [_options(t, True) for t in new]
    seen = set()
    out = []
    for form in smaller:
        base = [(sum(1 << s for s in stem), r) for stem, r in form[1]]
        for choice in itertools.product(*option_lists):
            circs = base + [c for opt in choice for c in opt]
            if not _is_cg(circs, n):
                continue
            cf = canonical_form(_to_family(circs, n))
            if cf not in seen:
                seen.add(cf)
                out.append(cf)
    return sorted(out, key=lambda f: (len(f[1]), f))


def convex_geometry_corpus(max_n: int = 5) -> list:
    out = []
    for n in range(max_n + 1):
        out.extend(stem2_convex_geometries(n))
    return out


def is_trace_minimal_non_cg(family: CircuitFamily) -> bool:
    """True iff the family violates the rooted axioms while every proper trace satisfies them.

    The answer is cross-checked against the closed-set oracle on the family and
    on every proper trace; a disagreement raises ``AssertionError``.
    """
    if not family.is_stem2():
        raise ValueError("stems must have size 2")
    n = len(family.ground)
    if n > 6:
        raise ValueError("ground set larger than 6")
    if check_rooted_axioms(family) is None:
        verdict = False
    else:
        verdict = all(check_rooted_axioms(trace(family, t)) is None for t in subsets(family.ground, proper=True))
    oracle = not is_convex_geometry_oracle(family) and all(
        is_convex_geometry_oracle(trace(family, t)) for t in subsets(family.ground, proper=True)
    )
    if verdict != oracle:
        raise AssertionError(f"axiom check and closed-set oracle disagree on {family}")
    return verdict


def _scan(args) -> list:
    n, unpruned, prefix = args
    triples = _triples(n)
    option_lists = [_options(t, not unpruned) for t in triples]
    head = [option_lists[i][c] for i, c in enumerate(prefix)]
    base = [c for opt in head for c in opt]
    found = set()
    for choice in itertools.product(*option_lists[len(prefix):]):
        circs = base + [c for opt in choice for c in opt]
        if _is_trace_minimal(circs, n):
            found.add(canonical_form(_to_family(circs, n)))
    return sorted(found)


def _prefixes(n: int, unpruned: bool) -> list:
    triples = _triples(n)
    width = len(_options(triples[0], not unpruned)) if triples else 1
    depth = min(2, len(triples))
    return [p for p in itertools.product(range(width), repeat=depth)]


def catalog(n: int, unpruned: bool | None = None, workers: int = 1) -> list:
    """All trace-minimal non-convex-geometries of stem size 2 on ``n`` elements, up to isomorphism.

    Sizes 4 and 5 scan only families with at most one circuit per triple unless
    ``unpruned`` is set; size 3 is always scanned in full.  The result is sorted by
    ``(circuit_count, canonical form)`` and does not depend on ``workers``.
    """
    if not 3 <= n <= 5:
        raise ValueError("n must lie in 3..5")
    if unpruned is None:
        unpruned = n == 3
    if n == 3:
        unpruned = True
    tasks = [(n, unpruned, p) for p in _prefixes(n, unpruned)]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_scan, tasks)
    else:
        parts = [_scan(t) for t in tasks]
    forms = set()
    for part in parts:
        forms.update(part)
    ordered = sorted(forms, key=lambda f: (len(f[1]), f))
    return [CatalogEntry(from_canonical(f, LETTERS[:n]), n, len(f[1])) for f in ordered]


def _random_family(rng: random.Random, n: int) -> list:
    density = rng.random()
    circs = []
    for t in _triples(n):
        if rng.random() >= density:
            continue
        opts = _options(t, False)[1:]
        pick = rng.choice(opts[:3]) if rng.random() < 0.9 else rng.choice(opts[3:])
        circs.extend(pick)
    return circs


def verify_size_bound(samples: int, n: int, seed: int = 0) -> SizeBoundReport:
    """Sample stem-2 non-convex-geometries on ``n`` elements and look for a failing trace on at most 5.

    The failing pair of circuits reported by the axiom check spans at most five
    elements; the trace on those elements is re-checked independently.
    """
    if n < 6:
        raise ValueError("n must be at least 6")
    rng = random.Random(seed)
    report = SizeBoundReport(n, samples, seed)
    for _ in range(samples):
        circs = _random_family(rng, n)
        family = _to_family(circs, n)
        violation = check_rooted_axioms(family)
        if violation is None:
            report.skipped += 1
            continue
        report.non_convex += 1
        witness = violation.elements()
        if len(witness) > 5 or check_rooted_axioms(trace(family, witness)) is None:
            report.counterexamples.append(family)
            continue
        report.largest_witness = max(report.largest_witness, len(witness))
    return report


def format_catalog(entries: list) -> str:
    from .formats import format_family

    blocks = []
    for k, entry in enumerate(entries, 1):
        head = f"# entry {k}: size {entry.size}, circuits {entry.circuit_count}\n"
        blocks.append(head + format_family(entry.family))
    return "\n".join(blocks)


def catalog_table(entries: list) -> str:
    lines = []
    for count, group in itertools.groupby(entries, key=lambda e: e.circuit_count):
        group = list(group)
        lines.append(f"{len(group)} famil{'y' if len(group) == 1 else 'ies'} with {count} rooted circuits:")
        for entry in group:
            f = entry.family
            lines.append("  " + " ".join(f.describe(c) for c in f.sorted_circuits()))
    return "\n".join(lines)
