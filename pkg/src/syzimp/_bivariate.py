"""gcd in Q[x, y] by primitive pseudo-remainder sequences in y over Q[x]."""

from __future__ import annotations

from fractions import Fraction

from . import _univariate as U
from .target import TargetPoly


def _to_rec(P: TargetPoly) -> list[list]:
    if P.is_zero():
        return []
    dy = max(e[1] for e in P.terms)
    rec = [[] for _ in range(dy + 1)]
    for (i, j), c in P.terms.items():
        row = rec[j]
        if len(row) <= i:
            row.extend([Fraction(0)] * (i + 1 - len(row)))
        row[i] = c
    return _trim([U.trim(r) for r in rec])


def _from_rec(rec: list[list]) -> TargetPoly:
    return TargetPoly(2, {(i, j): c for j, row in enumerate(rec) for i, c in enumerate(row) if c})


def _trim(rec):
    rec = list(rec)
    while rec and not rec[-1]:
        rec.pop()
    return rec


def _content(rec) -> list:
    g: list = []
    for r in rec:
        g = U.gcd(g, r)
        if len(g) == 1:
            break
    return g


def _pp(rec, content):
    return [U.exquo(r, content) if r else [] for r in rec]


def _prem(a, b):
    db = len(b) - 1
    lcb = b[-1]
    r = [list(x) for x in a]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lead = r[-1]
        shift = len(r) - 1 - db
        r = [U.mul(lcb, x) for x in r]
        for i, bi in enumerate(b):
            r[shift + i] = U.sub(r[shift + i], U.mul(lead, bi))
        r = _trim(r)
        e -= 1
    factor = [Fraction(1)]
    for _ in range(max(e, 0)):
        factor = U.mul(factor, lcb)
    return _trim([U.mul(factor, x) for x in r])


def gcd(P: TargetPoly, Q: TargetPoly) -> TargetPoly:
    """gcd of two polynomials in x, y, scaled so its lex-leading coefficient is 1."""
    if P.nvars != 2 or Q.nvars != 2:
        raise ValueError("bivariate gcd needs polynomials in x, y")
    a, b = _to_rec(P), _to_rec(Q)
    if not a and not b:
        raise ZeroDivisionError("gcd(0, 0)")
    if not b:
        a, b = b, a
    if not a:
        return _monic(_from_rec(b))
    ca, cb = _content(a), _content(b)
    c = U.gcd(ca, cb)
    a, b = _pp(a, ca), _pp(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            break
        a, b = b, _pp(r, _content(r))
    if len(b) <= 1:
        # primitive parts coprime in y: only the content survives
        b = [[Fraction(1)]]
    return _monic(_from_rec([U.mul(c, x) for x in b]))


def _monic(P: TargetPoly) -> TargetPoly:
    lead = max(P.terms)
    return P.scale(1 / P.terms[lead])
