"""Sample stem-2 non-convex-geometries on 6 or more elements and confirm each fails on at most 5 of them."""
import argparse
from dataclasses import dataclass

from geoshell.enumeration import verify_size_bound


@dataclass
class SizeBoundRun:
    n: int = 6
    samples: int = 100_000
    seed: int = 0


def main(cfg: SizeBoundRun) -> bool:
    report = verify_size_bound(cfg.samples, cfg.n, cfg.seed)
    print(
        f"n={report.n} samples={report.samples} seed={report.seed} non-geometries={report.non_convex} "
        f"skipped={report.skipped} largest-witness={report.largest_witness} "
        f"counterexamples={len(report.counterexamples)}"
    )
    for family in report.counterexamples[:5]:
        print("  ", family)
    return report.ok


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    raise SystemExit(0 if main(SizeBoundRun(a.n, a.samples, a.seed)) else 1)
