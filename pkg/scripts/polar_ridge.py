"""Write the psi(x0, .) grid table and report where it vanishes."""

import argparse
import sys
from pathlib import Path

from kahlercoh import cli


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--model", default="P1:m=2")
    parser.add_argument("--x0", default="1")
    parser.add_argument("--grid", default="-2:0:51,-1:1:51")
    parser.add_argument("--out", default="psi_table.csv")
    args = parser.parse_args()
    status = cli.main(["table", "--quantity", "psi", "--model", args.model, f"--grid={args.grid}",
                       "--x0", args.x0, "--out", args.out])
    if status:
        sys.exit(status)
    rows = cli.read_table(args.out)
    low = min(rows, key=lambda r: r["psi"])
    print(f"{len(rows)} rows in {Path(args.out).resolve()}")
    print(f"minimum psi = {low['psi']:.3e} at y = {low['y_re']:+.4f}{low['y_im']:+.4f}i")


if __name__ == "__main__":
    main()
