"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (shown in the pytest terminal summary and
printed when this file is run directly) and then asserts.  All comparisons
are exact.
"""

import random

from acceptance_log import record
from families import (
    bihom,
    binary,
    coprime_binary_triple,
    counter_gens,
    counter_syz,
    curvilinear_triple,
    fat_point_quadruple,
    minors_quadruple,
    one_basepoint_quadruple,
    random_quadruple,
    ternary,
)
from syzimp.basepoints import (
    BasepointData,
    degree_formula,
    hilbert_burch_check,
    strong_mu_basis,
    strong_mu_numerology,
)
from syzimp.forms import BIHOM, TERNARY, random_form
from syzimp.implicit import (
    assemble_M_tp_one_bp,
    curve_matrix,
    dandrea_ratio,
    implicitize_curve,
    implicitize_surface,
    moving_det,
    mu_resultant,
)
from syzimp.syzygy import (
    SyzygyVector,
    hilbert_dim,
    is_saturated_up_to,
    koszul_witness,
    mu_basis,
    syzygies,
    vanishes_at_basepoints,
    vanishing_syzygies,
)
from syzimp.target import normalize, parse_target, substitute


def X(text, nvars=3):
    return parse_target(text, nvars)


def curve_triples():
    rng = random.Random(2024)
    return [coprime_binary_triple(rng, 2 + i % 7) for i in range(50)]


def binary_resolution(n, mu, d):
    def r(e):
        return e + 1 if e >= 0 else 0
    return r(d) - 3 * r(d - n) + r(d - n - mu) + r(d - 2 * n + mu)


def test_ac01_conic():
    gens = (binary("s^2"), binary("s*t"), binary("t^2"))
    r = implicitize_curve(*gens)
    res = mu_resultant(mu_basis(*gens))
    det = moving_det(curve_matrix(syzygies(gens, 1)))
    ok = r.F == X("x*z-y^2") and r.d == 1 and normalize(det)[0] == normalize(res)[0]
    record(1, "conic: F = xz - y^2, d = 1, det L ~ Res(p, q)", ok, f"F = {r.F}, d = {r.d}")
    assert ok


def test_ac02_generic_degree():
    r = implicitize_curve(binary("s^4"), binary("s^2*t^2"), binary("t^4"))
    F = X("x*z-y^2")
    ok = r.F == F and r.d == 2 and r.det_poly == (F ** 2).scale(r.lam)
    record(2, "(s^4, s^2t^2, t^4): F = xz - y^2, d = 2, det = lam F^2", ok, f"lam = {r.lam}")
    assert ok


def test_ac03_dimension_law():
    triples = curve_triples()
    dims_ok = all(len(syzygies(g, g[0].degree - 1)) == g[0].degree for g in triples)
    generic = sum(mu_basis(*g).mu == g[0].degree // 2 for g in triples)
    ok = dims_ok and generic >= 45
    record(3, "dim Syz_(n-1) = n for 50 triples, mu = floor(n/2) in >= 90%", ok,
           f"dims exact: {dims_ok}, generic mu: {generic}/50")
    assert ok


def test_ac04_hilbert_identity():
    bad = []
    for g in curve_triples():
        n = g[0].degree
        mu = mu_basis(*g).mu
        for d in range(3 * n + 1):
            h = hilbert_dim(g, d)
            if h != binary_resolution(n, mu, d) or (d >= 2 * n - mu - 1 and h != 0):
                bad.append((n, mu, d, h))
    ok = not bad
    record(4, "Hilbert function matches the resolution for d <= 3n, zero from 2n - mu - 1", ok,
           f"mismatches: {bad[:3]}" if bad else "50 triples")
    assert ok


def test_ac05_segre():
    gens = [bihom(t) for t in ("s*t", "s*v", "u*t", "u*v")]
    r = implicitize_surface("tp", *gens)
    ok = r.F == X("x*w-y*z", 4) and r.matrix.size == 1 and r.det_poly.degree() == 2
    record(5, "Segre: F = xw - yz, M is 1x1, deg det = 2mn = 2", ok, f"F = {r.F}")
    assert ok


def test_ac06_roman():
    gens = [ternary(t) for t in ("s*t", "s*u", "t*u", "s^2+t^2+u^2")]
    r = implicitize_surface("tri", *gens)
    kinds = r.matrix.row_kinds
    ok = (r.F == X("x^2*y^2 + x^2*z^2 + y^2*z^2 - x*y*z*w", 4) and r.matrix.size == 3
          and kinds.count("linear") == 2 and kinds.count("quadratic") == 1 and r.det_poly.degree() == 4)
    record(6, "Roman surface: quartic F, 3x3 M with 2 linear + 1 quadric rows, deg det = 4", ok, f"F = {r.F}")
    assert ok


def test_ac07_counterexample():
    gens, comps = counter_gens(), counter_syz()
    identity = (comps[0] * gens[0] + comps[1] * gens[1] + comps[2] * gens[2]).is_zero()
    vanish = all(vanishes_at_basepoints(gens, c) for c in comps)
    witness = koszul_witness(gens, SyzygyVector(comps, gens))
    ok = identity and vanish and witness is None
    record(7, "degree-5 syzygy: identity holds, vanishes at basepoints, not Koszul", ok,
           f"identity {identity}, vanishes {vanish}, witness {witness}")
    assert ok


def test_ac08_regular_sequences_are_koszul():
    checked, failures = 0, 0
    rng = random.Random(8)
    found = 0
    while found < 20:
        n = 1 + found % 2
        gens = tuple(random_form(TERNARY, n, rng) for _ in range(3))
        if hilbert_dim(gens, 3 * n - 2) != 0:
            continue  # not a regular sequence
        found += 1
        for d in range(2 * n + 1):
            for v in syzygies(gens, d):
                w = koszul_witness(gens, v)
                checked += 1
                failures += w is None or not w.reproduces(gens, v)
    ok = failures == 0 and checked > 0
    record(8, "regular sequences: every syzygy of degree <= 2n has a Koszul witness", ok,
           f"{checked} syzygies over 20 sequences")
    assert ok


def test_ac09_curvilinear():
    checked, failures, shapes = 0, 0, []
    for k in (1, 2, 3):
        for seed in range(2):
            n = 3
            gens = curvilinear_triple(random.Random(100 * k + seed), n, k)
            shapes.append(hilbert_dim(gens, 3 * n))
            for d in range(1, 2 * n + 1):
                for v in vanishing_syzygies(gens, d):
                    checked += 1
                    w = koszul_witness(gens, v)
                    failures += w is None or not w.reproduces(gens, v)
    # one basepoint of length k per triple
    shapes_ok = shapes == [1, 1, 2, 2, 3, 3]
    ok = failures == 0 and checked > 0 and shapes_ok
    record(9, "curvilinear basepoints (u = v^k, k <= 3): vanishing syzygies are Koszul", ok,
           f"{checked} syzygies, basepoint lengths {shapes}")
    assert ok


def test_ac10_cubic_numerology():
    num = strong_mu_numerology((1, 1, 1))
    deg = degree_formula(BasepointData([1] * 6, 3, 1))
    ok = (num.degree, num.basepoints) == (3, 6) and deg == 3
    record(10, "numerology (1,1,1) = (3, 6); degree formula n = 3, six simple points = 3", ok)
    assert ok


def test_ac11_strong_mu_detection():
    rng = random.Random(11)
    minors_ok = True
    agree = True
    for _ in range(5):
        gens = minors_quadruple(rng)
        smb = strong_mu_basis(*gens)
        minors_ok &= smb is not None and smb.mu == (1, 1, 1) and hilbert_burch_check(smb, *gens)
        agree &= (smb is not None) == is_saturated_up_to(gens, 2 * 3)
    free_none = 0
    for _ in range(20):
        gens = random_quadruple(rng, TERNARY, 2)
        assert hilbert_dim(gens, 4) == 0  # basepoint free
        smb = strong_mu_basis(*gens)
        free_none += smb is None
        agree &= (smb is not None) == is_saturated_up_to(gens, 4)
    for _ in range(3):
        gens = fat_point_quadruple(rng)
        agree &= (strong_mu_basis(*gens) is not None) == is_saturated_up_to(gens, 6)
    ok = minors_ok and free_none == 20 and agree
    record(11, "strong mu-bases: minors give (1,1,1) + Hilbert-Burch, basepoint free gives None, "
               "agrees with saturation", ok, f"minors {minors_ok}, None {free_none}/20, saturation agrees {agree}")
    assert ok


def test_ac12_resultant_ratio():
    rng = random.Random(12)
    ok = True
    for _ in range(10):
        gens = random_quadruple(rng, BIHOM, (1, 1))
        a = dandrea_ratio(*gens, seed=1)
        b = dandrea_ratio(*gens, seed=2)
        ok &= a.det_mp != 0 and a.det_mq_prime != 0 and a.ratio != 0
        ok &= b.det_mp != 0 and b.det_mq_prime != 0 and b.ratio != 0
        ok &= a.transform != b.transform
    record(12, "det MQ' / det MP^3: nonzero for 10 (1,1) quadruples under two coordinate changes", ok)
    assert ok


def test_ac13_one_basepoint():
    gens = one_basepoint_quadruple(random.Random(13))
    M = assemble_M_tp_one_bp(*gens)
    r = implicitize_surface("tp1bp", *gens)
    ok = (M.diagnostics["mp_kernel_dim"] == 1 and M.diagnostics["mq_kernel_dim"] == 5 and M.size == 2
          and M.row_kinds.count("linear") == 1 and r.det_poly.degree() == 3
          and substitute(r.F, gens).is_zero() and substitute(r.det_poly, gens).is_zero())
    record(13, "one simple basepoint, bidegree (1,2): MP kernel 1, MQ kernel 5, 2x2 M, deg det = 3", ok,
           f"diagnostics {M.diagnostics}")
    assert ok


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_ac"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
