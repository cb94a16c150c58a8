"""Graded polynomial rings over Q and their homogeneous elements.

Three parameter rings are supported:

* ``binary``:  Q[s, t], graded by total degree
* ``ternary``: Q[s, t, u], graded by total degree
* ``bihom``:   Q[s, u; t, v], bigraded by (degree in s,u ; degree in t,v)

A :class:`Form` stores a dense coefficient vector over the canonical monomial
basis of its (bi)degree, so a form can only ever hold monomials of that
(bi)degree.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

from . import _univariate as U
from .errors import (
    ContextMismatchError,
    DegreeMismatchError,
    HomogeneityError,
    ParseError,
    PreconditionError,
)

Degree = Union[int, tuple]
Exps = tuple


@dataclass(frozen=True)
class RingCtx:
    kind: str

    def __post_init__(self):
        if self.kind not in _VARIABLES:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @property
    def variables(self) -> tuple[str, ...]:
        return _VARIABLES[self.kind]

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def bigraded(self) -> bool:
        return self.kind == "bihom"

    def degree_of(self, exps: Exps) -> Degree:
        if self.bigraded:
            return (exps[0] + exps[1], exps[2] + exps[3])
        return sum(exps)

    def __repr__(self):
        return f"RingCtx({self.kind!r})"


# bihom exponents are stored in the order (s, u, t, v)
_VARIABLES = {
    "binary": ("s", "t"),
    "ternary": ("s", "t", "u"),
    "bihom": ("s", "u", "t", "v"),
}

BINARY = RingCtx("binary")
TERNARY = RingCtx("ternary")
BIHOM = RingCtx("bihom")


def deg_add(a: Degree, b: Degree) -> Degree:
    if isinstance(a, tuple):
        return (a[0] + b[0], a[1] + b[1])
    return a + b


def deg_sub(a: Degree, b: Degree) -> Degree:
    if isinstance(a, tuple):
        return (a[0] - b[0], a[1] - b[1])
    return a - b


def deg_nonneg(a: Degree) -> bool:
    if isinstance(a, tuple):
        return a[0] >= 0 and a[1] >= 0
    return a >= 0


def deg_scale(k: int, a: Degree) -> Degree:
    if isinstance(a, tuple):
        return (k * a[0], k * a[1])
    return k * a


def _check_degree(ctx: RingCtx, deg: Degree) -> Degree:
    if ctx.bigraded:
        if not (isinstance(deg, tuple) and len(deg) == 2):
            raise DegreeMismatchError(f"bihomogeneous forms need a bidegree pair, got {deg!r}")
        return (int(deg[0]), int(deg[1]))
    if isinstance(deg, tuple):
        raise DegreeMismatchError(f"{ctx.kind} forms take an integer degree, got {deg!r}")
    return int(deg)


@lru_cache(maxsize=None)
def monomials(ctx: RingCtx, deg: Degree) -> tuple[Exps, ...]:
    """Canonical monomial basis of the graded piece of (bi)degree ``deg``.

    binary: descending power of s; ternary: graded lex with s > t > u;
    bihom: descending s-power, then descending t-power.
    """
    deg = _check_degree(ctx, deg)
    if not deg_nonneg(deg):
        return ()
    if ctx.kind == "binary":
        return tuple((deg - i, i) for i in range(deg + 1))
    if ctx.kind == "ternary":
        return tuple((a, b, deg - a - b) for a in range(deg, -1, -1) for b in range(deg - a, -1, -1))
    m, n = deg
    return tuple((i, m - i, j, n - j) for i in range(m, -1, -1) for j in range(n, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(ctx: RingCtx, deg: Degree) -> dict:
    return {e: i for i, e in enumerate(monomials(ctx, deg))}


def dim(ctx: RingCtx, deg: Degree) -> int:
    """Dimension of the graded piece; zero in negative (bi)degree."""
    return len(monomials(ctx, deg))


@lru_cache(maxsize=None)
def _product_table(ctx: RingCtx, d1: Degree, d2: Degree) -> tuple[tuple[int, ...], ...]:
    index = monomial_index(ctx, deg_add(d1, d2))
    return tuple(
        tuple(index[tuple(x + y for x, y in zip(e1, e2))] for e2 in monomials(ctx, d2))
        for e1 in monomials(ctx, d1)
    )


def _as_integers(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = den * c.denominator // _gcd(den, c.denominator)
    return [int(c * den) for c in coeffs], den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class Form:
    """Homogeneous (or bihomogeneous) polynomial with exact rational coefficients."""

    ctx: RingCtx
    degree: Degree
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "degree", _check_degree(self.ctx, self.degree))
        if not deg_nonneg(self.degree):
            raise DegreeMismatchError(f"negative degree {self.degree!r}")
        coeffs = tuple(c if type(c) is Fraction else Fraction(c) for c in self.coeffs)
        if len(coeffs) != dim(self.ctx, self.degree):
            raise DegreeMismatchError(
                f"{len(coeffs)} coefficients for a piece of dimension {dim(self.ctx, self.degree)}")
        object.__setattr__(self, "coeffs", coeffs)

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: RingCtx, deg: Degree) -> "Form":
        return cls(ctx, deg, (0,) * dim(ctx, deg))

    @classmethod
    def one(cls, ctx: RingCtx) -> "Form":
        return cls(ctx, (0, 0) if ctx.bigraded else 0, (1,))

    @classmethod
    def from_terms(cls, ctx: RingCtx, deg: Degree, terms: Mapping[Exps, object]) -> "Form":
        index = monomial_index(ctx, _check_degree(ctx, deg))
        coeffs = [Fraction(0)] * len(index)
        for e, c in terms.items():
            if e not in index:
                raise HomogeneityError(f"monomial {e} is not of degree {deg!r}")
            coeffs[index[e]] += Fraction(c)
        return cls(ctx, deg, coeffs)

    @classmethod
    def monomial(cls, ctx: RingCtx, exps: Exps, coeff=1) -> "Form":
        return cls.from_terms(ctx, ctx.degree_of(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, ctx: RingCtx, name: str) -> "Form":
        exps = tuple(1 if v == name else 0 for v in ctx.variables)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} is not a variable of {ctx.kind}")
        return cls.monomial(ctx, exps)

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Iterator[tuple[Exps, Fraction]]:
        for e, c in zip(monomials(self.ctx, self.degree), self.coeffs):
            if c:
                yield e, c

    def coefficient(self, exps: Exps) -> Fraction:
        i = monomial_index(self.ctx, self.degree).get(tuple(exps))
        return Fraction(0) if i is None else self.coeffs[i]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def leading_coefficient(self) -> Fraction:
        return next((c for c in self.coeffs if c), Fraction(0))

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other: "Form"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx.kind} vs {other.ctx.kind}")
        if self.degree != other.degree:
            raise DegreeMismatchError(f"degree {self.degree!r} vs {other.degree!r}")

    def __add__(self, other: "Form") -> "Form":
        self._check_same(other)
        return Form(self.ctx, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Form") -> "Form":
        self._check_same(other)
        return Form(self.ctx, self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Form":
        return Form(self.ctx, self.degree, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "Form":
        c = Fraction(c)
        return Form(self.ctx, self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Form):
            return self.scale(other)
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx.kind} vs {other.ctx.kind}")
        deg = deg_add(self.degree, other.degree)
        out = [0] * dim(self.ctx, deg)
        a, da = _as_integers(self.coeffs)
        b, db = _as_integers(other.coeffs)
        table = _product_table(self.ctx, self.degree, other.degree)
        bnz = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                row = table[i]
                for j, y in bnz:
                    out[row[j]] += x * y
        den = da * db
        return Form(self.ctx, deg, tuple(Fraction(c, den) for c in out))

    __rmul__ = scale

    def __pow__(self, k: int) -> "Form":
        if k < 0:
            raise ValueError("negative power")
        result = Form.one(self.ctx)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- text ---------------------------------------------------------------

    def render(self) -> str:
        return render_terms(self.terms(), self.ctx.variables)

    def __str__(self):
        return self.render()


# -- text grammar --------------------------------------------------------------

_FACTOR = re.compile(r"(\d+(?:/\d+)?)|([A-Za-z]\w*)(?:\^(\d+))?")


def parse_terms(text: str, variables: Sequence[str]) -> dict[Exps, Fraction]:
    """Parse a polynomial in the ``+``/``-``/``*``/``^`` grammar into a term map."""
    src = re.sub(r"\s+", "", text).replace("**", "^")
    if not src:
        raise ParseError("empty polynomial")
    pos = {v: i for i, v in enumerate(variables)}
    terms: dict[Exps, Fraction] = {}
    # re.split with a capture group alternates term, sign, term, sign, ...
    pieces = re.split(r"([+-])", src)
    signed = [(1, pieces[0])] + [(-1 if pieces[k] == "-" else 1, pieces[k + 1])
                                 for k in range(1, len(pieces), 2)]
    if signed[0][1] == "" and len(signed) > 1:
        signed = [(signed[1][0], signed[1][1])] + signed[2:]
    for sign, piece in signed:
        if piece == "":
            raise ParseError(f"missing term in {text!r}")
        coeff = Fraction(sign)
        exps = [0] * len(variables)
        for factor in piece.split("*"):
            m = _FACTOR.fullmatch(factor)
            if not m:
                raise ParseError(f"cannot parse factor {factor!r} in {text!r}")
            num, var, power = m.groups()
            if num is not None:
                if re.fullmatch(r"\d+/0+", num):
                    raise ParseError(f"zero denominator in {text!r}")
                coeff *= Fraction(num)
            else:
                if var not in pos:
                    raise ParseError(f"unknown variable {var!r}; expected one of {', '.join(variables)}")
                exps[pos[var]] += int(power) if power is not None else 1
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return {e: c for e, c in terms.items() if c}


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_terms(terms: Iterable[tuple[Exps, Fraction]], variables: Sequence[str]) -> str:
    """Canonical text for a term sequence (given in the caller's canonical order)."""
    out = []
    for exps, c in terms:
        factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(variables, exps) if k]
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out) if out else "0"


def parse_form(text: str, ctx: RingCtx, deg: Degree | None = None) -> Form:
    """Parse ``text`` as a form of (bi)degree ``deg`` in ``ctx``.

    With ``deg=None`` the degree is read off the terms; the zero polynomial
    then needs an explicit degree.
    """
    terms = parse_terms(text, ctx.variables)
    degrees = {ctx.degree_of(e) for e in terms}
    if len(degrees) > 1:
        raise HomogeneityError(f"{text!r} mixes degrees {sorted(degrees)}")
    if deg is None:
        if not degrees:
            raise DegreeMismatchError(f"cannot infer the degree of {text!r}")
        deg = degrees.pop()
    else:
        deg = _check_degree(ctx, deg)
        if degrees and degrees != {deg}:
            raise DegreeMismatchError(f"{text!r} has degree {degrees.pop()!r}, expected {deg!r}")
    return Form.from_terms(ctx, deg, terms)


# -- binary gcd ----------------------------------------------------------------

def _s_degree_of_dehom(f: Form) -> int:
    # degree in s of f(s, 1)
    for i, c in enumerate(f.coeffs):
        if c:
            return f.degree - i
    return -1


def _dehomogenize(f: Form) -> list:
    # f(s, 1) as a coefficient list, constant first; coeffs[i] multiplies s^(d-i)
    return U.trim(list(reversed(f.coeffs)))


def gcd_binary(f: Form, g: Form) -> Form:
    """Greatest common divisor of two binary forms, leading coefficient 1.

    Works on the dehomogenizations ``f(s, 1)``, ``g(s, 1)`` and restores the
    power of ``t`` lost by setting ``t = 1``.
    """
    for h in (f, g):
        if h.ctx != BINARY:
            raise ContextMismatchError("gcd_binary needs binary forms")
    if f.is_zero() and g.is_zero():
        raise PreconditionError("gcd of two zero forms")
    if f.is_zero():
        f, g = g, f
    if g.is_zero():
        return f.scale(1 / f.leading_coefficient())
    vf = f.degree - _s_degree_of_dehom(f)
    vg = g.degree - _s_degree_of_dehom(g)
    h = U.gcd(_dehomogenize(f), _dehomogenize(g))
    e = U.deg(h)
    v = min(vf, vg)
    # h(s) of degree e homogenizes to sum h_k s^k t^(e-k); then multiply by t^v
    terms = {(k, e - k + v): c for k, c in enumerate(h) if c}
    return Form.from_terms(BINARY, e + v, terms)


def gcd_binary_all(forms: Sequence[Form]) -> Form:
    """gcd of several binary forms, folded pairwise."""
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise PreconditionError("gcd of zero forms")
    g = nonzero[0]
    for f in nonzero[1:]:
        g = gcd_binary(g, f)
    return gcd_binary(g, Form.zero(BINARY, 0)) if len(nonzero) == 1 else g


# -- substitution of variables --------------------------------------------------

def compose(f: Form, images: Sequence[Form]) -> Form:
    """Substitute ``images[i]`` for the i-th variable of ``f``'s ring.

    The images must share a ring and be such that every monomial of ``f``
    maps to the same (bi)degree.
    """
    if len(images) != f.ctx.nvars:
        raise ValueError("one image per variable required")
    ctx = images[0].ctx
    powers: dict[tuple[int, int], Form] = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = images[i] ** k
        return powers[(i, k)]

    total = None
    for exps, c in f.terms():
        term = Form.one(ctx)
        for i, k in enumerate(exps):
            if k:
                term = term * power(i, k)
        term = term.scale(c)
        total = term if total is None else total + term
    if total is None:
        # zero form: degree of the image of any monomial
        e0 = monomials(f.ctx, f.degree)[0]
        deg = (0, 0) if ctx.bigraded else 0
        for i, k in enumerate(e0):
            deg = deg_add(deg, deg_scale(k, images[i].degree))
        return Form.zero(ctx, deg)
    return total


# -- random forms ---------------------------------------------------------------

def random_form(ctx: RingCtx, deg: Degree, rng: random.Random, bound: int = 9,
                support: Sequence[Exps] | None = None) -> Form:
    """Form with integer coefficients drawn uniformly from [-bound, bound].

    ``support`` restricts the monomials that may receive a nonzero coefficient.
    """
    mons = monomials(ctx, deg)
    allowed = set(mons if support is None else support)
    return Form(ctx, deg, tuple(rng.randint(-bound, bound) if e in allowed else 0 for e in mons))
