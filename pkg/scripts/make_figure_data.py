#!/usr/bin/env python3
"""Emit the four fidelity-vs-noise curve families as CSV files.

One file per channel family, covering the schemes whose curves differ there.
The files use the same schema as `decoynoise sweep`.
"""

import argparse
from pathlib import Path

from decoynoise.cli import run

CURVES = {
    "ad_curves.csv": ["--noise", "ad", "--schemes", "bb84,psi+,phi+,cluster"],
    "pd_curves.csv": ["--noise", "pd", "--schemes", "bb84,psi+,cluster"],
    "cd_curves.csv": ["--noise", "cd", "--schemes", "bb84,psi+,cluster,phi-"],
    "cr_curves.csv": ["--noise", "cr", "--schemes", "bb84,cluster,psi-,phi+,psi+"],
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figure_data", help="directory for the CSV files")
    parser.add_argument("--grid", type=int, default=201, help="points per curve")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, flags in CURVES.items():
        target = outdir / name
        code = run(["sweep", *flags, "--grid", str(args.grid), "--out", str(target)])
        if code != 0:
            raise SystemExit(code)
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
