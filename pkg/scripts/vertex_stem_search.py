"""Look for a tree whose vertex-shelling circuits have a stem of size other than two."""
import argparse
from dataclasses import dataclass

from geoshell.trees import all_tree_shapes, vertex_shelling_circuits, wide_stems


@dataclass
class StemSearch:
    max_vertices: int = 10


def main(cfg: StemSearch) -> None:
    for m in range(cfg.max_vertices):
        shapes = all_tree_shapes(m)
        hits = [(t, wide_stems(vertex_shelling_circuits(t))) for t in shapes]
        hits = [(t, w) for t, w in hits if w]
        print(f"{m + 1} vertices: {len(shapes)} shapes, {len(hits)} with a wide stem")
        if hits:
            tree, wide = hits[0]
            print("  first:", tree.edges, wide[0])
            return


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-vertices", type=int, default=10)
    main(StemSearch(p.parse_args().max_vertices))
