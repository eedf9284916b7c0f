"""Recompute the independent reference values and freeze them as JSON."""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles import compute_all  # noqa: E402


def main():
    out = ROOT / "tests" / "data" / "oracles.json"
    out.write_text(json.dumps(compute_all(), indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
