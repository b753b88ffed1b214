#!/usr/bin/env python3
"""Generate a search spec document for the treehom search command.

Ranges are LO, LO:HI, or LO:HI:STEP. Examples:

    gen_grid_spec.py --x 1:8 --y 1:8 --z 1:8 --ns 3,5
    gen_grid_spec.py --x 7 --y 1 --z 9 --mode parity_certificate --parity odd
    gen_grid_spec.py --x 2:20:2 --y 3 --z 2:20:2 --looped both \
        --mode dominant_certificate -o sweep.json
"""

import argparse
import json
import re
import sys

MODES = ("finite_n", "parity_certificate", "dominant_certificate")
DEFAULT_WIDTH = "1/1000000000000"


def parse_range(text):
    parts = text.split(":")
    if len(parts) > 3 or not all(re.fullmatch(r"-?\d+", p) for p in parts):
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected LO[:HI[:STEP]]")
    lo = int(parts[0])
    hi = int(parts[1]) if len(parts) > 1 else lo
    step = int(parts[2]) if len(parts) > 2 else 1
    if lo < 1 or hi < lo or step < 1:
        raise argparse.ArgumentTypeError(f"range {text!r} needs 1 <= lo <= hi and step >= 1")
    return [lo, hi, step]


def parse_width(text):
    m = re.fullmatch(r"(\d+)/(\d+)", text)
    if not m or int(m.group(1)) == 0 or int(m.group(2)) == 0:
        raise argparse.ArgumentTypeError(f"bad width {text!r}, expected NUM/DEN, both positive")
    return text


def parse_ns(text):
    try:
        ns = [int(p) for p in text.split(",")]
    except ValueError:
        ns = [-1]
    if not ns or any(n < 0 for n in ns):
        raise argparse.ArgumentTypeError(f"bad member list {text!r}, expected N[,N...]")
    return ns


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=parse_range, required=True, help="x range LO[:HI[:STEP]]")
    ap.add_argument("--y", type=parse_range, required=True, help="y range")
    ap.add_argument("--z", type=parse_range, required=True, help="z range")
    ap.add_argument("--looped", choices=("no", "yes", "both"), default="no",
                    help="loop the root orbit of the target (default no)")
    ap.add_argument("--mode", choices=MODES, default="finite_n")
    ap.add_argument("--ns", type=parse_ns, default=[3, 5], metavar="N[,N...]",
                    help="finite_n mode: member indices to compare (default 3,5)")
    ap.add_argument("--parity", choices=("odd", "even"), default="odd",
                    help="parity_certificate mode: which members (default odd)")
    ap.add_argument("--width", type=parse_width, default=None,
                    help=f"certificate isolation width (default {DEFAULT_WIDTH})")
    ap.add_argument("--max-cells", type=int, default=0, metavar="N",
                    help="stop after N cells, 0 scans everything (default 0)")
    ap.add_argument("-o", "--out", default=None, help="output path (default stdout)")
    args = ap.parse_args()

    if args.max_cells < 0:
        ap.error("--max-cells must be nonnegative")
    if args.mode == "parity_certificate" and args.looped != "no":
        ap.error("parity certificates apply to unlooped targets only")

    certificate_mode = args.mode != "finite_n"
    doc = {
        "x": args.x,
        "y": args.y,
        "z": args.z,
        "looped": {"no": [False], "yes": [True], "both": [False, True]}[args.looped],
        "mode": args.mode,
        "finite_ns": args.ns if args.mode == "finite_n" else [],
        "parity": args.parity,
        "width": args.width or (DEFAULT_WIDTH if certificate_mode else "0/1"),
        "max_cells": args.max_cells,
    }
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
