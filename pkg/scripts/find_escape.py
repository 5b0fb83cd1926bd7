"""Search chordal graphs for a vertex whose deletion leaves a circuit family no chordal graph realises."""
import argparse
from dataclasses import dataclass

from geoshell.chordal import find_trace_escape, realizable_as_simplicial_shelling
from geoshell.formats import format_family, format_graph


@dataclass
class EscapeSearch:
    max_n: int = 8
    min_n: int = 1


def main(cfg: EscapeSearch) -> bool:
    found = find_trace_escape(cfg.max_n, cfg.min_n)
    if found is None:
        print(f"no escape with {cfg.min_n}..{cfg.max_n} vertices")
        return False
    assert realizable_as_simplicial_shelling(found.traced) is None
    print(format_graph(found.graph), end="")
    print(f"# removed vertex {found.removed}; traced family:")
    print(format_family(found.traced), end="")
    return True


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--min-n", type=int, default=1)
    a = p.parse_args()
    raise SystemExit(0 if main(EscapeSearch(a.max_n, a.min_n)) else 1)
