"""Run verification suites one at a time and save each report as JSON.

Suites are run sequentially in a fresh process each, so peak memory stays
at one suite's worth.  Usage:

    python scripts/run_suites.py                 # every suite, standard truncations
    python scripts/run_suites.py rank13 --deep   # the deep rank-13 run only
"""
import argparse
import subprocess
import sys
import time
from pathlib import Path

from orthoforms.cli import SUITES


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("suites", nargs="*", default=list(SUITES))
    ap.add_argument("--deep", action="store_true")
    ap.add_argument("--out", type=Path, default=Path("reports"))
    args = ap.parse_args()
    failed = []
    for name in args.suites:
        cmd = [sys.executable, "-m", "orthoforms", "verify", name, "--fixtures", str(args.out)]
        if args.deep:
            cmd.append("--deep")
        t = time.perf_counter()
        code = subprocess.call(cmd)
        print(f"{name}: exit {code} in {time.perf_counter() - t:.1f}s", flush=True)
        if code:
            failed.append(name)
    if failed:
        print("failed: " + ", ".join(failed))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
