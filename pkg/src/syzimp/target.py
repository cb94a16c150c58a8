"""Polynomials in target coordinates and moving forms.

A :class:`TargetPoly` is a sparse polynomial in ``x, y, z`` (curves) or
``x, y, z, w`` (surfaces) with rational coefficients.  Implicit equations,
matrix entries of moving-form matrices and their determinants all live here.

A :class:`MovingForm` is a linear or quadratic polynomial in the target
coordinates whose coefficients are parameter forms of one fixed (bi)degree:
moving lines, planes and quadrics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Mapping, Sequence

from .errors import PreconditionError
from .forms import Form, parse_terms, render_terms

TARGET_VARS = {2: ("x", "y"), 3: ("x", "y", "z"), 4: ("x", "y", "z", "w")}

# -- packed monomial keys -----------------------------------------------------
# Each exponent gets a 16-bit field with the first variable in the highest
# bits, so integer order on keys is lex order and monomial multiplication is
# key addition.
_BITS = 16
_MASK = (1 << _BITS) - 1


def pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        key = (key << _BITS) | e
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = []
    for _ in range(nvars):
        out.append(key & _MASK)
        key >>= _BITS
    return tuple(reversed(out))


def _divides(small: int, big: int, nvars: int) -> bool:
    for _ in range(nvars):
        if (small & _MASK) > (big & _MASK):
            return False
        small >>= _BITS
        big >>= _BITS
    return True


def pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def pexquo(a: dict, b: dict, nvars: int) -> dict:
    """Exact quotient ``a / b``; raises ``ArithmeticError`` if ``b`` does not divide ``a``.

    Works for int or Fraction coefficients.  With ints the coefficient
    division must also be exact.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = max(b)
    lc = b[lead]
    integral = isinstance(lc, int) and all(isinstance(c, int) for c in a.values())
    rem = dict(a)
    quo: dict = {}
    while rem:
        k = max(rem)
        c = rem[k]
        if not _divides(lead, k, nvars):
            raise ArithmeticError("inexact polynomial division")
        if integral:
            q, r = divmod(c, lc)
            if r:
                raise ArithmeticError("inexact coefficient division")
        else:
            q = Fraction(c) / lc
        shift = k - lead
        quo[shift] = q
        for kb, cb in b.items():
            kk = kb + shift
            v = rem.get(kk, 0) - q * cb
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return quo


@lru_cache(maxsize=None)
def target_monomials(nvars: int, deg: int) -> tuple[tuple[int, ...], ...]:
    """Degree-``deg`` monomials in graded lex order with x > y > z > w."""
    if deg < 0:
        return ()
    if nvars == 1:
        return ((deg,),)
    out = []
    for a in range(deg, -1, -1):
        for rest in target_monomials(nvars - 1, deg - a):
            out.append((a, *rest))
    return tuple(out)


class TargetPoly:
    """Sparse polynomial in the target coordinates with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length does not match variable count")
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def from_packed(cls, nvars: int, packed: Mapping[int, object], den: int = 1) -> "TargetPoly":
        return cls(nvars, {unpack(k, nvars): Fraction(c, den) if isinstance(c, int) else Fraction(c) / den
                           for k, c in packed.items()})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "TargetPoly":
        return cls(nvars, {tuple(1 if j == i else 0 for j in range(nvars)): 1})

    @classmethod
    def constant(cls, nvars: int, c) -> "TargetPoly":
        return cls(nvars, {(0,) * nvars: c})

    def packed(self) -> dict[int, Fraction]:
        return {pack(e): c for e, c in self.terms.items()}

    def packed_integral(self) -> tuple[dict[int, int], int]:
        """Integer-coefficient packed form and the denominator that was cleared."""
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        return {pack(e): int(c * den) for e, c in self.terms.items()}, den

    @property
    def variables(self) -> tuple[str, ...]:
        return TARGET_VARS[self.nvars]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in canonical order: total degree descending, then lex with x > y > z > w."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def leading_coefficient(self) -> Fraction:
        ts = self.sorted_terms()
        return ts[0][1] if ts else Fraction(0)

    def _check(self, other: "TargetPoly"):
        if self.nvars != other.nvars:
            raise ValueError("target polynomials over different coordinate sets")

    def __add__(self, other: "TargetPoly") -> "TargetPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TargetPoly(self.nvars, out)

    def __sub__(self, other: "TargetPoly") -> "TargetPoly":
        return self + (-other)

    def __neg__(self) -> "TargetPoly":
        return TargetPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def scale(self, c) -> "TargetPoly":
        c = Fraction(c)
        return TargetPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TargetPoly):
            return self.scale(other)
        self._check(other)
        a, da = self.packed_integral()
        b, db = other.packed_integral()
        return TargetPoly.from_packed(self.nvars, pmul(a, b), da * db)

    __rmul__ = scale

    def __pow__(self, k: int) -> "TargetPoly":
        result = TargetPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exquo(self, other: "TargetPoly") -> "TargetPoly":
        self._check(other)
        return TargetPoly.from_packed(self.nvars, pexquo(self.packed(), other.packed(), self.nvars))

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        point = [Fraction(p) for p in point]
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def derivative(self, i: int) -> "TargetPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return TargetPoly(self.nvars, out)

    def __eq__(self, other):
        if not isinstance(other, TargetPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def render(self) -> str:
        return render_terms(self.sorted_terms(), self.variables)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TargetPoly({self.render()!r})"


def parse_target(text: str, nvars: int) -> TargetPoly:
    return TargetPoly(nvars, parse_terms(text, TARGET_VARS[nvars]))


def normalize(F: TargetPoly) -> tuple[TargetPoly, Fraction]:
    """Canonical representative of ``F`` up to a nonzero rational scalar.

    Clears denominators, removes the integer content and makes the first
    coefficient in canonical order positive.  Returns ``(F_norm, lam)`` with
    ``F == lam * F_norm``.
    """
    if F.is_zero():
        raise PreconditionError("cannot normalize the zero polynomial")
    den = 1
    for c in F.terms.values():
        den = lcm(den, c.denominator)
    content = 0
    for c in F.terms.values():
        content = gcd(content, int(c * den))
    lam = Fraction(content, den)
    if F.leading_coefficient() < 0:
        lam = -lam
    return F.scale(1 / lam), lam


def substitute(F: TargetPoly, gens: Sequence[Form]) -> Form:
    """Expand ``F(g_1, ..., g_k)`` in the parameter ring.

    This is the "does F vanish on the image" oracle used throughout.
    """
    if len(gens) != F.nvars:
        raise PreconditionError(f"{F.nvars}-variable polynomial given {len(gens)} generators")
    ctx = gens[0].ctx
    degs = {g.degree for g in gens}
    if len(degs) != 1 or any(g.ctx != ctx for g in gens):
        raise PreconditionError("generators must share a ring and a (bi)degree")
    if not F.is_homogeneous():
        raise PreconditionError("substitution needs a homogeneous target polynomial")
    if F.is_zero():
        return Form.zero(ctx, gens[0].degree)
    cache: dict = {}

    def power(i, k):
        if (i, k) not in cache:
            cache[(i, k)] = gens[i] ** k
        return cache[(i, k)]

    def horner(terms: dict, i: int) -> Form:
        # terms: exponent tails over variables i.. ; all of one total degree
        if i == len(gens) - 1:
            (e, c), = terms.items()
            return power(i, e[0]).scale(c)
        groups: dict[int, dict] = {}
        for e, c in terms.items():
            groups.setdefault(e[0], {})[e[1:]] = c
        top = max(groups)
        acc = horner(groups[top], i + 1)
        for k in range(top - 1, -1, -1):
            acc = acc * gens[i]
            if k in groups:
                acc = acc + horner(groups[k], i + 1)
        return acc

    return horner(dict(F.terms), 0)


# -- exact roots and square-free parts -----------------------------------------

def _rational_root(q: Fraction, d: int) -> Fraction | None:
    def iroot(n):
        if n < 0:
            if d % 2 == 0:
                return None
            r = iroot(-n)
            return None if r is None else -r
        r = round(n ** (1.0 / d)) if n < 2 ** 1000 else _int_nth_root(n, d)
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** d == n:
                return cand
        r = _int_nth_root(n, d)
        return r if r ** d == n else None

    num, den = iroot(q.numerator), iroot(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_nth_root(n: int, d: int) -> int:
    if n < 2:
        return n
    hi = 1 << ((n.bit_length() + d - 1) // d)
    lo = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** d <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def exact_root(P: TargetPoly, d: int, rng: random.Random | None = None) -> tuple[TargetPoly, Fraction] | None:
    """Find ``(F, lam)`` with ``P == lam * F**d`` and ``F`` monic, or ``None``.

    A quick necessary check at random points rules out most non-powers; the
    root is then built term by term in lex order.
    """
    if P.is_zero() or d < 1:
        return None
    if d == 1:
        return P.scale(1 / P.terms[max(P.terms, key=pack)]), P.terms[max(P.terms, key=pack)]
    n = P.nvars
    rng = rng or random.Random(0)
    ref = None
    for _ in range(3):
        pt = [rng.randint(-50, 50) for _ in range(n)]
        v = P.evaluate(pt)
        if not v:
            continue
        if ref is None:
            ref = v
        elif _rational_root(v / ref, d) is None:
            return None
    packed = P.packed()
    lead = max(packed)
    lam = packed[lead]
    exps = unpack(lead, n)
    if any(e % d for e in exps):
        return None
    f1 = pack([e // d for e in exps])
    target = {k: c / lam for k, c in packed.items()}
    root = {f1: Fraction(1)}
    # d * f1^(d-1): the linear coefficient of a new term in root^d
    lead_factor = (d - 1) * f1
    limit = len(target_monomials(n, sum(exps) // d)) + 1
    last = f1
    for _ in range(limit):
        power = {0: Fraction(1)}
        for _ in range(d):
            power = pmul(power, root)
        rem = padd(target, power, -1)
        if not rem:
            return TargetPoly.from_packed(n, root), lam
        k = max(rem)
        if not _divides(lead_factor, k, n):
            return None
        nk = k - lead_factor
        if nk >= last:
            return None
        root[nk] = rem[k] / d
        last = nk
    return None


def _dehomogenize_last(P: TargetPoly) -> TargetPoly:
    return TargetPoly(P.nvars - 1, {e[:-1]: c for e, c in P.terms.items()})


def _homogenize_last(P: TargetPoly, deg: int) -> TargetPoly:
    return TargetPoly(P.nvars + 1, {(*e, deg - sum(e)): c for e, c in P.terms.items()})


def squarefree_part(P: TargetPoly) -> TargetPoly:
    """Radical of a homogeneous ternary polynomial ``P(x, y, z)``.

    Powers of ``z`` are split off, the rest is dehomogenized at ``z = 1`` and
    divided by ``gcd(f, df/dx, df/dy)``, then rehomogenized.
    """
    from ._bivariate import gcd as bigcd

    if P.nvars != 3:
        raise ValueError("squarefree_part expects a polynomial in x, y, z")
    if P.is_zero():
        raise PreconditionError("square-free part of zero")
    zpow = min(e[2] for e in P.terms)
    rest = TargetPoly(3, {(e[0], e[1], e[2] - zpow): c for e, c in P.terms.items()})
    f = _dehomogenize_last(rest)
    g = bigcd(bigcd(f, f.derivative(0)), f.derivative(1))
    rad = f.exquo(g)
    radh = _homogenize_last(rad, rad.degree())
    if zpow:
        radh = radh * TargetPoly.variable(3, 2)
    return radh


# -- moving forms ----------------------------------------------------------------

@dataclass(frozen=True)
class MovingForm:
    """``sum_alpha coeffs[alpha] * X^alpha`` over degree-``target_degree`` target monomials."""

    nvars: int
    target_degree: int
    coeffs: tuple

    def __post_init__(self):
        mons = target_monomials(self.nvars, self.target_degree)
        if len(self.coeffs) != len(mons):
            raise ValueError(f"need {len(mons)} coefficient forms, got {len(self.coeffs)}")
        ctxs = {c.ctx for c in self.coeffs}
        degs = {c.degree for c in self.coeffs}
        if len(ctxs) != 1 or len(degs) != 1:
            raise ValueError("coefficient forms must share ring and (bi)degree")

    @property
    def param_degree(self):
        return self.coeffs[0].degree

    @property
    def ctx(self):
        return self.coeffs[0].ctx

    def expand(self) -> dict[tuple, TargetPoly]:
        """Collect by parameter monomial: ``{param_exps: target polynomial}``."""
        mons = target_monomials(self.nvars, self.target_degree)
        out: dict[tuple, dict] = {}
        for alpha, form in zip(mons, self.coeffs):
            for e, c in form.terms():
                out.setdefault(e, {})[alpha] = c
        return {e: TargetPoly(self.nvars, t) for e, t in out.items()}

    def row(self, columns: Sequence[tuple]) -> list[TargetPoly]:
        """Entries of this moving form against the given parameter monomials."""
        ex = self.expand()
        zero = TargetPoly(self.nvars)
        return [ex.get(tuple(e), zero) for e in columns]

    def times_variable(self, i: int) -> "MovingForm":
        """Multiply a moving plane by the i-th target coordinate."""
        if self.target_degree != 1:
            raise ValueError("only linear moving forms can be multiplied by a coordinate")
        quad = target_monomials(self.nvars, 2)
        index = {e: k for k, e in enumerate(quad)}
        zero = self.coeffs[0].scale(0)
        coeffs = [zero] * len(quad)
        for j, c in enumerate(self.coeffs):
            e = [0] * self.nvars
            e[i] += 1
            e[j] += 1
            coeffs[index[tuple(e)]] = c
        return MovingForm(self.nvars, 2, tuple(coeffs))

    def vector(self) -> tuple:
        """Flattened coefficient vector, target-monomial-major."""
        return tuple(c for f in self.coeffs for c in f.coeffs)

