"""Command-line entry point: ``orthoforms expand | verify | bench``."""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from . import classical as cl
from . import vgs
from .fixtures import dumps, write_fixture
from .report import VerifyReport

SUITES = ("rank18", "rank17", "rank16", "rank15", "rank14", "rank13", "restrictions", "borcherds",
          "level2", "symbolic")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: Optional[str] = None
    rank: Optional[int] = None
    q_prec: Optional[int] = None
    s_prec: Optional[int] = None
    output: str = "text"
    deep: bool = False
    fixtures: Optional[str] = None
    threads: int = 1

    def validate(self) -> None:
        for name in ("q_prec", "s_prec"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be at least 1")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")
        if self.rank is not None and not 13 <= self.rank <= 18:
            raise UsageError("--rank must be between 13 and 18")
        if self.deep and not (self.target == "rank13" or (self.target is None and self.rank == 13)):
            raise UsageError("--deep applies to the rank13 suite only")


# -- expand --------------------------------------------------------------------------------

CATALOGUE = [
    ("E4 | E6 | Delta | j", "level-one q-series"),
    ("E2.level2.reference", "2 E2(2 tau) - E2(tau)"),
    ("phi-2 | phi0", "basic weak Jacobi forms of index 1"),
    ("psi.rank17 | psi.rank18", "weight-0 inputs of the rank 17 and rank 18 products"),
    ("psi.n=N", "theta-quotient weight-0 form on L_N, N = 1..5"),
    ("fI.n=N", "weight-2 input with leading term in variable I on L_N"),
    ("chiK.LN", "Gritsenko lift chi_K on L_N"),
    ("E4.LN | E6.LN | F4.L5", "restriction-pinned Eisenstein forms"),
    ("betaI.LN", "12 G(f_I) on L_N"),
    ("table.rankR.COEF", "table a_k / b_k evaluated on the generators, R = 13..18"),
    ("chi20.level2 | chi40.level2", "level-two abelian expansions"),
]


def catalogue_text() -> str:
    width = max(len(a) for a, _ in CATALOGUE)
    return "\n".join(f"  {a.ljust(width)}  {b}" for a, b in CATALOGUE)


def resolve(name: str, cfg: RunConfig):
    """Look up a named form; returns ``(object, header)``."""
    from .jacobi import phi_basic, psi_n, psi_rank17
    q = cfg.q_prec or 5
    s = cfg.s_prec or 3
    simple: Dict[str, Callable[[], object]] = {
        "E4": lambda: cl.eisenstein(4, q), "E6": lambda: cl.eisenstein(6, q),
        "Delta": lambda: cl.delta(q), "j": lambda: cl.j_invariant(q),
        "E2.level2.reference": lambda: cl.e2_level2(q),
        "phi-2": lambda: phi_basic("-2", q), "phi0": lambda: phi_basic("0", q),
        "psi.rank17": lambda: psi_rank17(q), "psi.rank18": lambda: vgs.psi_rank18(q),
        "chi20.level2": lambda: vgs.chi20_expansion(q), "chi40.level2": lambda: vgs.chi40_expansion(q),
    }
    if name in simple:
        return simple[name](), None
    m = re.fullmatch(r"psi\.n=([1-5])", name)
    if m:
        return psi_n(int(m.group(1)), q), None
    m = re.fullmatch(r"f([1-5])\.n=([1-5])", name)
    if m:
        i, n = int(m.group(1)), int(m.group(2))
        if i > n:
            raise UsageError(f"L{n} has only {n} weight-2 inputs")
        return vgs.root_inputs(n, q)[0][i - 1], None
    m = re.fullmatch(r"chi(\d+)\.L([0-5])", name)
    if m:
        k, n = int(m.group(1)), int(m.group(2))
        if k not in vgs.chi_weights(n):
            raise UsageError(f"chi{k} is not a generator on L{n}")
        return vgs.build_generators(n, q, s, with_roots=False, with_eisenstein=False).chi[k], None
    m = re.fullmatch(r"(E4|E6|F4)\.L([0-5])", name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if (kind == "F4") != (n == 5) and kind != "E6":
            raise UsageError("F4 lives on L5; E4 on L0..L4")
        e4, e6 = vgs.resolve_eisenstein(q, s)[f"L{n}"]
        return (e6 if kind == "E6" else e4), None
    m = re.fullmatch(r"beta([1-5])\.L([1-5])", name)
    if m:
        i, n = int(m.group(1)), int(m.group(2))
        if i > n:
            raise UsageError(f"L{n} has only {n} roots")
        return vgs.build_generators(n, q, s).beta[i - 1], None
    m = re.fullmatch(r"table\.rank(1[3-8])\.([ab]\d+)", name)
    if m:
        rank, key = int(m.group(1)), m.group(2)
        table = vgs.build_table(rank)
        if key not in table:
            raise UsageError(f"rank {rank} has coefficients {', '.join(table)}")
        poly = table[key]
        needs_eis = any(poly.degree(e) for e in ("E4", "E6", "F4"))
        gens = vgs.build_generators(vgs.lattice_of(rank), q, s, with_roots=False, with_eisenstein=needs_eis)
        return vgs.evaluate_table(table[key], gens), f"{key} = {table[key]}"
    raise UsageError(f"unknown form {name!r}; known names:\n{catalogue_text()}")


def cmd_expand(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    obj, header = resolve(cfg.target, cfg)
    if cfg.fixtures:
        write_fixture(cfg.fixtures, cfg.target, obj)
    if cfg.output == "json":
        out.write(dumps(obj) + "\n")
    else:
        if header:
            out.write(header + "\n")
        out.write(str(obj) + "\n")
    return 0


# -- verify --------------------------------------------------------------------------------

def run_suite(name: str, q_prec: Optional[int] = None, s_prec: Optional[int] = None,
              deep: bool = False) -> VerifyReport:
    if name.startswith("rank"):
        rank = int(name[4:])
        if rank == 18:
            return vgs.verify_rank18_bivariate()
        return vgs.verify_rank(rank, q_prec, s_prec, deep=deep)
    if name == "restrictions":
        return vgs.verify_restrictions(q_prec or 4, s_prec or 4)
    if name == "borcherds":
        return vgs.verify_psi_and_products(q_prec or 5, s_prec or 4)
    if name == "level2":
        return vgs.verify_level_two_displays(q_prec or 5)
    if name == "symbolic":
        from .symbolic import verify_symbolic
        return verify_symbolic()
    raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    target = cfg.target or (f"rank{cfg.rank}" if cfg.rank else None)
    if target is None:
        raise UsageError("verify needs a suite name or --rank")
    names = list(SUITES) if target == "all" else [target]
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r}; choose from {', '.join(SUITES + ('all',))}")
    args = [(n, cfg.q_prec, cfg.s_prec, cfg.deep) for n in names]
    if cfg.threads > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            reports = list(pool.map(_run_suite_args, args))
    else:
        reports = [run_suite(*a) for a in args]
    if cfg.fixtures:
        for r in reports:
            write_fixture(cfg.fixtures, "report." + r.suite.replace(" ", "_"), r)
    if cfg.output == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(r.render() for r in reports) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _run_suite_args(a):
    return run_suite(*a)


# -- bench ---------------------------------------------------------------------------------

def _timed(fn):
    t = time.perf_counter()
    val = fn()
    return val, time.perf_counter() - t


def _count(series) -> int:
    from .exact import LaurentPoly
    tot = 0
    for _, c in series.items():
        tot += len(list(c.doubled_terms())) if isinstance(c, LaurentPoly) else 1
    return tot


def bench_rows(q_prec: int, s_prec: int) -> List[dict]:
    from .jacobi import fk_symmetric, hecke_v
    from .lifts import lift_input_prec
    rows = []
    P = lift_input_prec(q_prec, s_prec)
    for prec in (P, 2 * P):
        a = fk_symmetric(5, 2, prec).series
        b = fk_symmetric(5, 3, prec).series
        prod, dt = _timed(lambda: (a * b).truncate(prec))
        rows.append({"workload": "5-variable Laurent product", "q_prec": prec, "seconds": round(dt, 4),
                     "coefficients": _count(prod)})
    phi = vgs.chi_input(5, 2, P)
    for m in range(1, s_prec):
        res, dt = _timed(lambda: hecke_v(phi, m, q_prec))
        rows.append({"workload": f"Hecke V_{m} on L5", "q_prec": q_prec, "seconds": round(dt, 4),
                     "coefficients": _count(res.series)})
    return rows


def cmd_bench(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rows = bench_rows(cfg.q_prec or 3, cfg.s_prec or 4)
    if cfg.output == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        for r in rows:
            out.write(f"{r['workload']:<28} q_prec={r['q_prec']:<3} {r['seconds']:>9.4f}s "
                      f"{r['coefficients']:>8} coefficients\n")
    return 0


# -- argument handling -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthoforms",
                                description="Exact expansions of orthogonal modular forms and "
                                            "verification of the K3 coefficient tables.")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int)
    common.add_argument("--q-prec", type=int, help="exclusive bound on the q exponent")
    common.add_argument("--s-prec", type=int, help="exclusive bound on the s exponent")
    common.add_argument("--deep", action="store_true", help="rank-13 deep truncation")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--fixtures", metavar="DIR", help="also write JSON fixtures here")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    e = sub.add_parser("expand", parents=[common], help="print a named expansion",
                       epilog="names:\n" + catalogue_text(), formatter_class=argparse.RawDescriptionHelpFormatter)
    e.add_argument("name")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", nargs="?", help=", ".join(SUITES + ("all",)))
    sub.add_parser("bench", parents=[common], help="time the series core")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    target = getattr(ns, "name", None) or getattr(ns, "suite", None)
    return RunConfig(ns.command, target, ns.rank, ns.q_prec, ns.s_prec, "json" if ns.json else "text",
                     ns.deep, ns.fixtures, ns.threads)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = config_from_args(ns)
    try:
        cfg.validate()
        if cfg.command == "expand":
            return cmd_expand(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        return cmd_bench(cfg)
    except UsageError as exc:
        sys.stderr.write(f"orthoforms: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
