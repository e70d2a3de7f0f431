"""Convert a Sampson monastery relation file into a netflatten edge list.

The dataset is not bundled. Download it yourself (for example the UCINET
``sampson.dat`` DL file or any square relation matrix) and run

    python scripts/sampson.py path/to/sampson.dat --out data/sampson.txt

Accepted inputs: a UCINET DL file in full-matrix format, a bare square
matrix, or an edge list of labels/ids. Positive entries count as ties; ties
are symmetrised, so a directed relation becomes an undirected contact.

``--standin`` instead writes the synthetic 18-node, 26-edge graph used in CI.
"""

import argparse
import sys
from pathlib import Path

from netflatten.graph import from_edge_list, write_edge_list

STANDIN_SEED = 18


def parse_relations(text: str) -> list[tuple[int, int]]:
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]
    lower = [l.lower() for l in lines]
    if "data:" in lower:
        lines = lines[lower.index("data:") + 1:]
    rows = [l.replace(",", " ").split() for l in lines]
    if rows and all(len(r) == len(rows) for r in rows):
        return [(i, j) for i, r in enumerate(rows) for j, v in enumerate(r)
                if i != j and float(v) > 0]
    labels: dict[str, int] = {}
    pairs = []
    for r in rows:
        if len(r) < 2 or (len(r) > 2 and float(r[2]) <= 0):
            continue
        a, b = (labels.setdefault(x, len(labels)) for x in r[:2])
        pairs.append((a, b))
    return pairs


def standin():
    import random

    rnd = random.Random(STANDIN_SEED)
    n = 18
    edges = {(rnd.randrange(j), j) for j in range(1, n)}
    while len(edges) < 26:
        a, b = sorted(rnd.sample(range(n), 2))
        edges.add((a, b))
    return from_edge_list(sorted(edges), n=n)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source", nargs="?", help="downloaded relation file")
    ap.add_argument("--out", required=True)
    ap.add_argument("--standin", action="store_true", help="write the synthetic stand-in")
    args = ap.parse_args(argv)
    if args.standin:
        write_edge_list(standin(), args.out,
                        header=f"synthetic stand-in, NOT the Sampson data (seed {STANDIN_SEED})")
        return 0
    if not args.source:
        ap.error("a source file is required unless --standin is given")
    g = from_edge_list(parse_relations(Path(args.source).read_text(encoding="utf-8")))
    write_edge_list(g, args.out, header=f"converted from {Path(args.source).name}")
    print(f"{g.n} nodes, {g.n_edges} undirected edges", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
