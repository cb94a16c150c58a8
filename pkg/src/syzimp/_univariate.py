"""Dense univariate polynomials over Q as coefficient lists, lowest degree first."""

from __future__ import annotations

from fractions import Fraction

Poly = list  # list[Fraction], constant term first, no trailing zeros


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def deg(p) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p, c):
    return trim([c * e for e in p]) if c else []


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return trim(out)


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(e) for e in p]
    dq = deg(q)
    lq = Fraction(q[-1])
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        c = r[-1] / lq
        k = len(r) - 1 - dq
        quo[k] = c
        for i, b in enumerate(q):
            r[k + i] -= c * b
        r = trim(r)
    return trim(quo), r


def exquo(p, q):
    quo, r = divmod_(p, q)
    if r:
        raise ArithmeticError("inexact univariate division")
    return quo


def monic(p):
    if not p:
        return []
    lc = Fraction(p[-1])
    return [Fraction(e) / lc for e in p]


def gcd(p, q):
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)
