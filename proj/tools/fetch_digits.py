#!/usr/bin/env python3
"""Write the UCI handwritten-digits benchmark table as a plain CSV.

Uses the copy of the UCI ML hand-written digits test set that ships inside
scikit-learn (no network access needed). Each row is the flattened 8x8 pixel
image followed by the integer class label, so the label column index equals
the pixel count (64).

    python3 tools/fetch_digits.py --out data/digits.csv --classes 0-6
"""

import argparse
import os
import tempfile


def parse_classes(spec: str):
    if "-" in spec:
        lo, hi = spec.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return sorted({int(tok) for tok in spec.split(",")})


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True, help="output CSV path")
    ap.add_argument("--classes", default="0-6", help="label range, e.g. 0-6 or 0,1,2")
    args = ap.parse_args()

    from sklearn.datasets import load_digits

    digits = load_digits()
    wanted = set(parse_classes(args.classes))
    rows = [
        (pixels, label)
        for pixels, label in zip(digits.data, digits.target)
        if int(label) in wanted
    ]

    out_dir = os.path.dirname(os.path.abspath(args.out))
    os.makedirs(out_dir, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out_dir, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        for pixels, label in rows:
            fh.write(",".join(f"{v:.17g}" for v in pixels))
            fh.write(f",{int(label)}\n")
    os.replace(tmp, args.out)
    print(f"wrote {len(rows)} rows x {len(rows[0][0]) + 1} cols to {args.out}")


if __name__ == "__main__":
    main()
