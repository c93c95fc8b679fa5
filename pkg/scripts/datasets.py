"""Real-world graph streams used for the larger benchmarks, and a size check.

Nothing here downloads anything. Fetch a dataset yourself, convert it to one
"u v [timestamp]" line per edge sorted by creation time, then run

    python3 scripts/datasets.py arxiv path/to/arxiv.txt

to compare its node and edge counts (after deduplication and self-loop
removal) with the sizes the benchmarks were designed around.
"""
import argparse
import sys

from wrs_triangles.stream import StreamOptions, open_stream

# name: (nodes, edges, kind, where to look)
DATASETS = {
    "arxiv": (30_565, 346_849, "citation network",
              "arXiv hep-ph citations with submission dates; SNAP lists a version at "
              "https://snap.stanford.edu/data/cit-HepPh.html whose raw size differs, so check the counts"),
    "facebook": (61_096, 614_797, "friendship network",
                 "New Orleans Facebook friendship links with creation times (Viswanath et al., WOSN 2009)"),
    "email": (86_978, 297_456, "email network", "no verified public source recorded; check counts carefully"),
    "youtube": (3_181_831, 7_505_218, "friendship network",
                "YouTube friendship links with creation times (Mislove, 2009)"),
    "patent": (3_774_768, 16_518_947, "citation network",
               "US patent citations, https://snap.stanford.edu/data/cit-Patents.html"),
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("name", nargs="?", choices=sorted(DATASETS))
    parser.add_argument("path", nargs="?")
    parser.add_argument("--string-ids", action="store_true", help="remap non-integer node ids")
    args = parser.parse_args(argv)

    if args.path is None:
        for name, (n, m, kind, where) in DATASETS.items():
            print(f"{name:9} {n:>10,} nodes {m:>12,} edges  {kind}\n          {where}")
        return 0

    n_exp, m_exp = DATASETS[args.name][:2]
    stream = open_stream(args.path, StreamOptions(raw_id_mode="str" if args.string_ids else "int"))
    nodes = set()
    m = 0
    for e in stream:
        nodes.update(e.edge)
        m += 1
    print(f"{args.name}: {len(nodes):,} nodes, {m:,} edges (expected {n_exp:,} / {m_exp:,})")
    print(f"dropped: {stream.stats()}")
    return 0 if (len(nodes), m) == (n_exp, m_exp) else 1


if __name__ == "__main__":
    sys.exit(main())
