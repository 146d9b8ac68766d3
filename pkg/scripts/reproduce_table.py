"""Rebuild the table of bounds and write one JSON certificate per computed row."""

import argparse
import pathlib
import time

from edrank.bounds import render_table_text, theorem_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/certificates", help="directory for JSON certificates")
    ap.add_argument("--pgo-even-n", type=int, default=6)
    ap.add_argument("--pgo-odd-n", type=int, default=5)
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t = time.perf_counter()
    rows = theorem_table(args.pgo_even_n, args.pgo_odd_n)
    print(render_table_text(rows), end="")
    for row in rows:
        if row.certificate is None:
            continue
        slug = row.label.split(" ")[0].replace("+", "plus").replace("^", "").lower()
        path = out / f"{slug}.json"
        path.write_text(row.certificate.to_json() + "\n")
        print(f"wrote {path} ({row.certificate.status})")
    print(f"done in {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
