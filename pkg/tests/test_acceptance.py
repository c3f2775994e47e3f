"""One test per acceptance criterion; each prints a PASS/FAIL line.

The lines are repeated in the terminal summary under "acceptance criteria".
"""
import time
from fractions import Fraction

import pytest

from orthoforms import classical as cl
from orthoforms import vgs
from orthoforms.jacobi import hecke_v, is_elliptic_invariant, JacobiSeries, psi_n
from orthoforms.lifts import divisor_order
from orthoforms.exact import LaurentPoly
from orthoforms.symbolic import verify_symbolic

from conftest import borcherds_report, rank_report, restrictions_report

PREC = 21


def _check(report, *labels):
    want = [c for c in report.checks if any(c.label.startswith(l) for l in labels)]
    return want and all(c.passed for c in want), want


def _sigma_series(k, scale):
    return [1] + [scale * cl.sigma(k, n) for n in range(1, PREC)]


def _delta_oracle():
    # q prod (1 - q^n)^24 by plain integer convolution
    poly = [1] + [0] * (PREC - 1)
    for n in range(1, PREC):
        for _ in range(24):
            for i in range(PREC - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    return [0] + poly[:PREC - 1]


def test_criterion_01_classical_layer(record_criterion):
    t = time.perf_counter()
    e4 = cl.eisenstein(4, PREC)
    e6 = cl.eisenstein(6, PREC)
    d = cl.delta(PREC)
    ok_e4 = [e4.coeff(n) for n in range(PREC)] == _sigma_series(3, 240)
    ok_e6 = [e6.coeff(n) for n in range(PREC)] == _sigma_series(5, -504)
    ok_d = [d.coeff(n) for n in range(PREC)] == _delta_oracle()
    j = cl.j_invariant(PREC)
    jd = j * cl.delta(PREC + 2)
    e4c = e4 ** 3
    ok_j = all(jd.coeff(n) == e4c.coeff(n) for n in range(PREC))
    ok_rel = (e4 ** 3 - e6 ** 2).truncate(PREC) == d.scale(1728)
    th = {w: cl.thetanull(w, PREC) for w in ("00", "01", "10")}
    ok_theta = (th["00"] ** 4).truncate(PREC) == (th["01"] ** 4 + th["10"] ** 4).truncate(PREC)
    dt = time.perf_counter() - t
    passed = all([ok_e4, ok_e6, ok_d, ok_j, ok_rel, ok_theta]) and dt < 1.0
    record_criterion(1, passed, f"E4/E6/Delta/j oracles, theta and 1728 Delta identities to q^{PREC - 1} "
                                f"in {dt:.2f}s")
    assert passed


def test_criterion_02_rank0_product(record_criterion):
    t = time.perf_counter()
    rep = vgs.verify_rank0_product(5)
    dt = time.perf_counter() - t
    ok = rep.passed and dt < 10
    record_criterion(2, ok, f"2j - 1440 and B(psi) = const * Delta^2 Delta^2 (j - j)^2 to bi-order (5,5); "
                            f"constant {rep.constant('constant')}, Weyl vector {rep.constant('weyl_vector')}; "
                            f"{dt:.2f}s")
    assert ok


def test_criterion_03_rank18_discriminant(record_criterion):
    t = time.perf_counter()
    rep = vgs.verify_rank18_bivariate(5)
    dt = time.perf_counter() - t
    ok = rep.passed and dt < 30
    record_criterion(3, ok, f"degree-24 factor / F = {rep.constant('constant')}; negative control breaks it; "
                            f"{dt:.2f}s")
    assert ok


def test_criterion_04_rank17_psi_and_product(record_criterion):
    t = time.perf_counter()
    rep = vgs.verify_rank17_product(8)
    dt = time.perf_counter() - t
    ok = rep.passed and dt < 30
    record_criterion(4, ok, f"psi expansion and q^3 s^3 (q - s)^2 (z^-1 + 2 + z) through total degree 8; "
                            f"{dt:.1f}s")
    assert ok


def test_criterion_05_reflective_generators(record_criterion):
    ok, checks = _check(borcherds_report(), "B(psi_")
    kappas = ", ".join(c.constants.get("kappa", "?") for c in checks)
    record_criterion(5, ok and len(checks) == 5, f"B(psi_n) = kappa_n G(Delta f_n), kappa = [{kappas}]")
    assert ok and len(checks) == 5


def test_criterion_06_restrictions(record_criterion):
    rep = restrictions_report()
    ok, checks = _check(rep, "res chi", "res F4", "res E6", "chain endpoint", "E4^L1 = 240", "E6^L1",
                        "chi12 on L0")
    record_criterion(6, ok, f"{len(checks)} restriction and Eisenstein-chain checks at q<=3, s<=3")
    assert ok


def _rank_criterion(number, rank, record):
    rep = rank_report(rank)
    ok, checks = _check(rep, "b", "solved constants")
    A, C = rep.constant("A"), rep.constant("C")
    record(number, ok, f"rank {rank}: {len(checks)} identities, solved (A, C) = ({A}, {C})")
    return ok, rep


def test_criterion_07_rank16(record_criterion):
    ok, _ = _rank_criterion(7, 16, record_criterion)
    assert ok


def test_criterion_08_rank15(record_criterion):
    ok, rep = _rank_criterion(8, 15, record_criterion)
    s2, _ = _check(rep, "b12 layer s^2")
    assert ok and s2


def test_criterion_09_rank14(record_criterion):
    ok, rep = _rank_criterion(9, 14, record_criterion)
    assert ok and rep.constant("lambda") == "0"


def test_criterion_10_rank13_standard(record_criterion):
    ok, rep = _rank_criterion(10, 13, record_criterion)
    poles, _ = _check(rep, "b2: double pole", "b4: order", "b6: order", "b8: order", "b10: order",
                      "b12: order")
    assert ok and poles


@pytest.mark.xfail(strict=True, reason="chi2^6 first appears at q^6 s^6, outside the q<=3 deep truncation")
def test_criterion_10_rank13_deep_exercises_chi2_power6(record_criterion):
    seen, hidden = vgs.visibility(vgs.build_table(13)["b12"], 3, 6)
    exercised = any(term.endswith("chi2^6") for term in seen)
    record_criterion("10b", exercised,
                     f"deep mode q<=3, s<=6 exercises {len(seen)} b12 terms; not reachable: {', '.join(hidden)}")
    assert exercised


def test_criterion_11_symbolic(record_criterion):
    t = time.perf_counter()
    rep = verify_symbolic()
    dt = time.perf_counter() - t
    ok = rep.passed and dt < 60
    record_criterion(11, ok, f"{len(rep.checks)} exact polynomial identities in {dt:.1f}s")
    assert ok


def test_criterion_12_level_two(record_criterion):
    t = time.perf_counter()
    rep = vgs.verify_level_two_displays(5)
    dt = time.perf_counter() - t
    ok = rep.passed and dt < 5
    record_criterion(12, ok, f"chi_(2,0) and chi_(4,0) through q^4 in {dt:.2f}s")
    assert ok


def _scalar(series, weight):
    s = series.map(lambda c: LaurentPoly.constant(0, c), zero=LaurentPoly.zero(0))
    return JacobiSeries(weight, 0, 1, s)


def test_criterion_13_properties(record_criterion):
    failures = []
    for n in range(1, 5):
        for w in vgs.chi_weights(n):
            layers = vgs.build_generators(n, 3, 3, with_roots=False, with_eisenstein=False).chi[w].layers
            for m, layer in enumerate(layers[1:], start=1):
                if not is_elliptic_invariant(JacobiSeries(w, n, m, layer)):
                    failures.append(f"chi{w} on L{n} layer {m} not elliptic-invariant")
    phi = vgs.chi_input(2, 8, 6)
    if hecke_v(phi, 1).series != phi.series:
        failures.append("V_1 is not the identity")
    d = _scalar(cl.delta(12), 12)
    if hecke_v(d, 2, 6).series != d.series.truncate(6).scale(-24):
        failures.append("Delta | V_2 != -24 Delta")
    for n in range(1, 6):
        order = divisor_order(psi_n(n, 4), 0, [1] + [0] * (n - 1))
        if order != 2:
            failures.append(f"psi_{n} divisor order {order}")
    for rank in (14, 15, 16, 17):
        ok, _ = _check(rank_report(rank), *[f"b{k} layers are free" for k in range(2, 13, 2)])
        if not ok:
            failures.append(f"rank {rank} has a coordinate pole")
    ok18 = vgs.verify_rank18_bivariate(3).passed
    if not ok18:
        failures.append("rank 18 bivariate identity")
    ok = not failures
    record_criterion(13, ok, "elliptic invariance, V_1, Delta|V_2, psi_n divisor orders, pole-free b_k"
                     + ("" if ok else ": " + "; ".join(failures)))
    assert ok
