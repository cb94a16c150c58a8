"""Seeded generator families shared by the test modules."""

from __future__ import annotations

import random

from syzimp.basepoints import _det3
from syzimp.forms import BIHOM, BINARY, TERNARY, Form, gcd_binary_all, monomials, parse_form, random_form


def binary(text):
    return parse_form(text, BINARY)


def ternary(text):
    return parse_form(text, TERNARY)


def bihom(text):
    return parse_form(text, BIHOM)


COUNTER_GENS = ("s^2*u+s*t^2", "s*t*u+2*t^3", "t^2*u+s^3")
COUNTER_SYZ = ("t^2*u^3-2*s^2*t^2*u", "-s*t*u^3+s^3*t*u", "s*t^2*u^2")


def counter_gens():
    return tuple(ternary(t) for t in COUNTER_GENS)


def counter_syz():
    return tuple(ternary(t) for t in COUNTER_SYZ)


def coprime_binary_triple(rng: random.Random, n: int):
    while True:
        gens = tuple(random_form(BINARY, n, rng) for _ in range(3))
        if gcd_binary_all(gens).degree == 0:
            return gens


def curvilinear_triple(rng: random.Random, n: int, k: int):
    """Three random forms of degree n in the ideal (s, t^k): one basepoint, locally u = v^k."""
    def one():
        return Form.variable(TERNARY, "s") * random_form(TERNARY, n - 1, rng, bound=5) + \
            Form.variable(TERNARY, "t") ** k * random_form(TERNARY, n - k, rng, bound=5)
    return one(), one(), one()


def minors_quadruple(rng: random.Random, col_degrees=(1, 1, 1)):
    """Signed maximal minors of a random 4x3 matrix whose column j has degree col_degrees[j]."""
    cols = [[random_form(TERNARY, dg, rng, bound=5) for _ in range(4)] for dg in col_degrees]
    out = []
    for i in range(4):
        rows = [[cols[j][r] for j in range(3)] for r in range(4) if r != i]
        m = _det3(rows)
        out.append(m if i % 2 == 0 else -m)
    return tuple(out)


def fat_point_quadruple(rng: random.Random):
    """Four cubics in (s, t)^2: a double basepoint at (0:0:1), never saturated."""
    support = [e for e in monomials(TERNARY, 3) if e[0] + e[1] >= 2]
    return tuple(random_form(TERNARY, 3, rng, bound=5, support=support) for _ in range(4))


def one_basepoint_quadruple(rng: random.Random, bideg=(1, 2)):
    """Random bihomogeneous quadruple avoiding u^m v^n, so all vanish at ((0:1), (0:1))."""
    m, n = bideg
    support = [e for e in monomials(BIHOM, bideg) if e != (0, m, 0, n)]
    return tuple(random_form(BIHOM, bideg, rng, support=support) for _ in range(4))


def random_quadruple(rng: random.Random, ctx, deg):
    return tuple(random_form(ctx, deg, rng) for _ in range(4))
