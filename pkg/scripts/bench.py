"""Time the series core at a few truncations and print one table per setting."""
import argparse

from orthoforms.cli import RunConfig, cmd_bench


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--settings", nargs="+", default=["2x3", "3x4", "4x4"], help="QxS pairs")
    args = ap.parse_args()
    for pair in args.settings:
        q, s = (int(x) for x in pair.split("x"))
        print(f"# q_prec={q} s_prec={s}")
        cmd_bench(RunConfig("bench", q_prec=q, s_prec=s))


if __name__ == "__main__":
    main()
