"""Compare recognize with a brute-force forbidden-trace scan over every stem-2 convex geometry up to 5 elements."""
import argparse
from collections import Counter
from dataclasses import dataclass

from geoshell.enumeration import stem2_convex_geometries
from geoshell.recognition import has_forbidden_trace, recognize


@dataclass
class CharacterisationRun:
    max_n: int = 5


def main(cfg: CharacterisationRun) -> int:
    discrepancies = 0
    for n in range(cfg.max_n + 1):
        verdicts = Counter()
        for family in stem2_convex_geometries(n):
            cert = recognize(family)
            tag = has_forbidden_trace(family)
            discrepancies += cert.is_edge_shelling != (tag is None)
            verdicts["edge-shelling" if cert.is_edge_shelling else f"type {cert.minor_type}"] += 1
        print(f"n={n}: " + ", ".join(f"{k} {v}" for k, v in sorted(verdicts.items())))
    print(f"discrepancies: {discrepancies}")
    return discrepancies


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=5)
    raise SystemExit(1 if main(CharacterisationRun(p.parse_args().max_n)) else 0)
