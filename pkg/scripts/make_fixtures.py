"""Regenerate the golden expansions under tests/fixtures.

Run after an intentional change to an expansion; the fixture test then
compares fresh output byte for byte.
"""
import argparse
from pathlib import Path

from orthoforms.cli import RunConfig, resolve
from orthoforms.fixtures import write_fixture

# name -> (q_prec, s_prec)
GOLDEN = {
    "E4": (12, None), "E6": (12, None), "Delta": (12, None), "j": (12, None),
    "E2.level2.reference": (8, None),
    "phi-2": (4, None), "phi0": (4, None),
    "psi.rank17": (3, None), "psi.rank18": (4, None),
    "psi.n=1": (3, None), "psi.n=2": (3, None), "psi.n=3": (3, None),
    "chi10.L1": (3, 3), "chi12.L1": (3, 3), "chi8.L2": (3, 3),
    "table.rank18.b12": (3, 3),
    "chi20.level2": (5, None), "chi40.level2": (5, None),
}

DEFAULT_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def build(name):
    q, s = GOLDEN[name]
    return resolve(name, RunConfig("expand", name, q_prec=q, s_prec=s))[0]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_DIR)
    args = ap.parse_args()
    for name in GOLDEN:
        print(write_fixture(args.out, name, build(name)))


if __name__ == "__main__":
    main()
