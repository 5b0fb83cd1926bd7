"""Print the catalog of trace-minimal non-convex-geometries of stem size 2 for sizes 3 to 5."""
import argparse
import time
from dataclasses import dataclass

from geoshell.enumeration import catalog, catalog_table


@dataclass
class CatalogRun:
    sizes: tuple = (3, 4, 5)
    unpruned: bool = False
    workers: int = 1


def main(cfg: CatalogRun) -> None:
    for n in cfg.sizes:
        start = time.perf_counter()
        entries = catalog(n, unpruned=cfg.unpruned or None, workers=cfg.workers)
        print(f"== size {n}: {len(entries)} families ({time.perf_counter() - start:.1f}s)")
        print(catalog_table(entries))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--unpruned", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    a = p.parse_args()
    main(CatalogRun(tuple(a.sizes), a.unpruned, a.workers))
