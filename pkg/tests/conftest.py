import itertools

import pytest
from hypothesis import strategies as st

from geoshell.circuits import CircuitFamily, RootedSet
from geoshell.recognition import MINOR_TYPES
from geoshell import trees

_ACCEPTANCE = []


def record_criterion(number, title, passed, detail=""):
    _ACCEPTANCE.append((number, title, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {number:>2}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)


# --- brute-force oracles shared by several modules -------------------------


def naive_is_closed(family, s):
    s = frozenset(s)
    return all(not c.stem <= s or c.root in s for c in family.circuits)


def naive_closure(family, xs):
    """Intersection of every closed superset, by listing all subsets."""
    xs = frozenset(xs)
    result = family.ground
    rest = sorted(family.ground - xs)
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            s = xs | frozenset(extra)
            if naive_is_closed(family, s):
                result = result & s
    return result


def all_stem2_rooted_sets(n):
    out = []
    for triple in itertools.combinations(range(n), 3):
        for r in triple:
            out.append(RootedSet(frozenset(set(triple) - {r}), r))
    return out


def all_stem2_families(n):
    pool = all_stem2_rooted_sets(n)
    for k in range(len(pool) + 1):
        for combo in itertools.combinations(pool, k):
            yield CircuitFamily(frozenset(range(n)), frozenset(combo))


@st.composite
def stem2_families(draw, min_n=0, max_n=6, one_per_triple=False):
    n = draw(st.integers(min_n, max_n))
    circuits = []
    for triple in itertools.combinations(range(n), 3):
        if one_per_triple:
            pick = draw(st.sampled_from((None,) + triple))
            roots = [] if pick is None else [pick]
        else:
            roots = draw(st.lists(st.sampled_from(triple), unique=True, max_size=3))
        circuits += [RootedSet(frozenset(set(triple) - {r}), r) for r in roots]
    return CircuitFamily(frozenset(range(n)), frozenset(circuits))


def implication_rule_failures(family):
    """Count failures of the three stem-2 chaining rules, elements pairwise distinct."""
    has = family.has
    bad = 0
    for c1 in family.circuits:
        z = c1.root
        for x, y in (sorted(c1.stem), sorted(c1.stem)[::-1]):
            for c2 in family.circuits:
                if z in c2.stem:
                    v, u = next(iter(c2.stem - {z})), c2.root
                    # ({x,y},z), ({v,z},u)
                    if len({x, y, z, v, u}) == 5:
                        bad += not (has((x, v), u) or has((y, v), u) or has((x, y), u))
                    # ({x,y},z), ({x,z},u)
                    if v == x and u != y:
                        bad += not has((x, y), u)
                    # ({x,y},z), ({u,z},y)
                    if u == y and v != x:
                        bad += not (has((x, v), y) and has((x, v), z))
    return bad


# --- named fixtures ---------------------------------------------------------


@pytest.fixture
def types():
    return MINOR_TYPES


@pytest.fixture
def fork_tree():
    return trees.fork_tree()


@pytest.fixture
def fork_edges():
    return trees.edge_shelling_circuits(trees.fork_tree())


@pytest.fixture
def path3():
    return CircuitFamily.from_names("a b c", [("a c", "b")])
