"""Graded multiplication maps, syzygies, mu-bases, Koszul witnesses, saturation.

Everything is degreewise linear algebra: a graded piece of a module is the
kernel or image of an explicit matrix in the canonical monomial bases.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    ContextMismatchError,
    CoprimalityWarning,
    DegreeMismatchError,
    InternalConsistencyError,
    PreconditionError,
    StabilizationError,
)
from .forms import (
    BINARY,
    Degree,
    Form,
    compose,
    deg_add,
    deg_nonneg,
    deg_sub,
    dim,
    gcd_binary_all,
    monomial_index,
    monomials,
)
from .linalg import Matrix


def _common(gens: Sequence[Form]) -> tuple:
    if not gens:
        raise PreconditionError("no generators")
    ctx = gens[0].ctx
    if any(g.ctx != ctx for g in gens):
        raise ContextMismatchError("generators live in different rings")
    degs = {g.degree for g in gens}
    if len(degs) != 1:
        raise DegreeMismatchError(f"generators have different degrees {sorted(degs, key=str)}")
    return ctx, degs.pop()


def _mult_block(g: Form, source_deg: Degree) -> list[list[Fraction]]:
    """Columns of the map ``h -> h * g`` from degree ``source_deg``."""
    target = deg_add(source_deg, g.degree)
    index = monomial_index(g.ctx, target)
    nrows = len(index)
    cols = []
    gterms = list(g.terms())
    for e in monomials(g.ctx, source_deg):
        col = [Fraction(0)] * nrows
        for ge, c in gterms:
            col[index[tuple(x + y for x, y in zip(e, ge))]] = c
        cols.append(col)
    return cols


def mult_map(gens: Sequence[Form], source_deg: Degree) -> Matrix:
    """Matrix of ``(h_1, ..., h_k) -> sum h_i * gens_i`` on the given source (bi)degree.

    Columns are generator-major, then canonical monomial order; rows follow
    the canonical monomials of the target (bi)degree.
    """
    ctx, gdeg = _common(gens)
    if not deg_nonneg(source_deg):
        raise DegreeMismatchError(f"negative source degree {source_deg!r}")
    cols = [col for g in gens for col in _mult_block(g, source_deg)]
    return Matrix.from_columns(cols, dim(ctx, deg_add(source_deg, gdeg)))


def ideal_matrix(gens: Sequence[Form], deg: Degree) -> Matrix:
    """Columns spanning ``I_deg`` for ``I = <gens>``; generators may have different degrees."""
    ctx = gens[0].ctx
    cols = []
    for g in gens:
        src = deg_sub(deg, g.degree)
        if deg_nonneg(src) and not g.is_zero():
            cols.extend(_mult_block(g, src))
    return Matrix.from_columns(cols, dim(ctx, deg))


def _split(vec: Sequence, ctx, deg: Degree, k: int) -> tuple[Form, ...]:
    size = dim(ctx, deg)
    return tuple(Form(ctx, deg, tuple(vec[i * size:(i + 1) * size])) for i in range(k))


def _flatten(forms: Sequence[Form]) -> tuple:
    return tuple(c for f in forms for c in f.coeffs)


@dataclass(frozen=True)
class SyzygyVector:
    """``components`` with ``sum components[i] * gens[i] == 0``, checked on construction."""

    components: tuple
    gens: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "gens", tuple(self.gens))
        if len(self.components) != len(self.gens):
            raise PreconditionError("one component per generator required")
        _common(self.components)
        total = None
        for a, g in zip(self.components, self.gens):
            term = a * g
            total = term if total is None else total + term
        if not total.is_zero():
            raise InternalConsistencyError("vector is not a syzygy on its generators")

    @property
    def degree(self) -> Degree:
        return self.components[0].degree

    def vector(self) -> tuple:
        return _flatten(self.components)

    def times(self, f: Form) -> "SyzygyVector":
        return SyzygyVector(tuple(c * f for c in self.components), self.gens)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __str__(self):
        return "(" + ", ".join(c.render() for c in self.components) + ")"


def syzygies(gens: Sequence[Form], deg: Degree) -> list[SyzygyVector]:
    """Canonical basis of ``Syz(gens)_deg`` from the kernel of :func:`mult_map`."""
    ctx, _ = _common(gens)
    if not deg_nonneg(deg):
        return []
    basis = linalg.kernel_basis(mult_map(gens, deg))
    return [SyzygyVector(_split(v, ctx, deg, len(gens)), tuple(gens)) for v in basis]


def syzygy_from_vector(gens: Sequence[Form], deg: Degree, vec: Sequence) -> SyzygyVector:
    ctx, _ = _common(gens)
    return SyzygyVector(_split(vec, ctx, deg, len(gens)), tuple(gens))


# -- mu-bases of curve parametrizations ------------------------------------------

@dataclass(frozen=True)
class MuBasis:
    p: SyzygyVector
    q: SyzygyVector
    mu: int

    @property
    def n(self) -> int:
        return self.p.degree + self.q.degree


def _monomial_multiples(syz: SyzygyVector, deg: int) -> list[SyzygyVector]:
    ctx = syz.components[0].ctx
    return [syz.times(Form.monomial(ctx, e)) for e in monomials(ctx, deg)]


def mu_basis(a: Form, b: Form, c: Form) -> MuBasis:
    """mu-basis ``(p, q)`` of ``Syz(a, b, c)`` for a binary triple with gcd 1.

    ``mu`` is the first degree with a nonzero syzygy and ``p`` the first
    canonical kernel vector there; ``q`` is the first canonical kernel vector
    in degree ``n - mu`` outside the span of the monomial multiples of ``p``.
    """
    gens = (a, b, c)
    ctx, n = _common(gens)
    if ctx != BINARY:
        raise ContextMismatchError("mu-bases are computed for binary forms")
    g = gcd_binary_all(gens)
    if g.degree > 0:
        raise PreconditionError(f"gcd(a, b, c) = {g.render()} is not 1")
    mu = p = None
    for d in range(n // 2 + 1):
        found = syzygies(gens, d)
        if found:
            mu, p = d, found[0]
            break
    if p is None:
        raise InternalConsistencyError(f"no syzygy in degrees <= {n // 2}")
    size = 3 * dim(ctx, n - mu)
    multiples = [v.vector() for v in _monomial_multiples(p, n - 2 * mu)]
    base = linalg.rank_of_vectors(multiples, size)
    q = None
    for cand in syzygies(gens, n - mu):
        if linalg.rank_of_vectors([*multiples, cand.vector()], size) > base:
            q = cand
            break
    if q is None:
        raise InternalConsistencyError("no second generator in degree n - mu")
    if n >= 1:
        size = 3 * dim(ctx, n - 1)
        if len(syzygies(gens, n - 1)) != n:
            raise InternalConsistencyError("dim Syz(a,b,c)_{n-1} != n")
        span = [v.vector() for v in _monomial_multiples(p, n - mu - 1)]
        span += [v.vector() for v in _monomial_multiples(q, mu - 1)]
        if linalg.rank_of_vectors(span, size) != n:
            raise InternalConsistencyError("p, q do not span Syz(a,b,c)_{n-1}")
    return MuBasis(p, q, mu)


# -- Koszul syzygies ---------------------------------------------------------------

@dataclass(frozen=True)
class KoszulWitness:
    """``(h1, h2, h3)`` with A = h1 c + h2 b, B = -h2 a + h3 c, C = -h1 a - h3 b.

    ``degree`` is the syzygy degree minus the generator degree; when it is
    negative the witness is the formal zero and the h's are placeholders.
    """

    h1: Form
    h2: Form
    h3: Form
    degree: Degree

    def image(self, gens: Sequence[Form]) -> tuple[Form, Form, Form]:
        a, b, c = gens
        h1, h2, h3 = self.h1, self.h2, self.h3
        return (h1 * c + h2 * b, -(h2 * a) + h3 * c, -(h1 * a) - h3 * b)

    def reproduces(self, gens: Sequence[Form], syz: SyzygyVector) -> bool:
        if not deg_nonneg(self.degree):
            return syz.is_zero()
        return tuple(self.image(gens)) == tuple(syz.components)


def koszul_witness(gens: Sequence[Form], syz: SyzygyVector) -> KoszulWitness | None:
    """Solve for a Koszul witness of ``syz``; ``None`` if it is not a Koszul syzygy."""
    a, b, c = gens
    ctx, n = _common(gens)
    m = syz.degree
    e = deg_sub(m, n)
    if not deg_nonneg(e):
        if syz.is_zero():
            z = Form.zero(ctx, (0, 0) if ctx.bigraded else 0)
            return KoszulWitness(z, z, z, e)
        return None
    rows = dim(ctx, m)
    Ma, Mb, Mc = (_mult_block(g, e) for g in (a, b, c))
    zero = [Fraction(0)] * rows

    def neg(cols):
        return [[-x for x in col] for col in cols]

    # unknown order h1 | h2 | h3; equation blocks A | B | C
    cols = []
    cols += [col_c + zero + na for col_c, na in zip(Mc, neg(Ma))]
    cols += [col_b + na + zero for col_b, na in zip(Mb, neg(Ma))]
    cols += [zero + col_c + nb for col_c, nb in zip(Mc, neg(Mb))]
    M = Matrix.from_columns(cols, 3 * rows)
    x = linalg.solve(M, syz.vector())
    if x is None:
        return None
    h1, h2, h3 = _split(x, ctx, e, 3)
    w = KoszulWitness(h1, h2, h3, e)
    if not w.reproduces(gens, syz):
        raise InternalConsistencyError("Koszul witness does not reproduce the syzygy")
    return w


# -- ideals: Hilbert function, membership, saturation -----------------------------

def hilbert_dim(gens: Sequence[Form], deg: Degree) -> int:
    """``dim (R/I)_deg`` for ``I = <gens>``."""
    ctx = gens[0].ctx
    total = dim(ctx, deg)
    if total == 0:
        return 0
    M = ideal_matrix(gens, deg)
    return total - (linalg.rank(M) if M.cols else 0)


def ideal_piece(gens: Sequence[Form], deg: Degree) -> list[tuple]:
    """Echelon basis of ``I_deg`` as coefficient vectors."""
    M = ideal_matrix(gens, deg)
    if M.cols == 0:
        return []
    return linalg.row_space_basis([M.column(j) for j in range(M.cols)], M.rows)


def ideal_membership(gens: Sequence[Form], f: Form) -> bool:
    if f.is_zero():
        return True
    M = ideal_matrix(gens, f.degree)
    if M.cols == 0:
        return False
    cols = [M.column(j) for j in range(M.cols)]
    return linalg.in_span(cols, f.coeffs, M.rows)


def _annihilator(gens: Sequence[Form], deg: Degree) -> list[tuple]:
    """Functionals on ``R_deg`` vanishing exactly on ``I_deg``."""
    ctx = gens[0].ctx
    M = ideal_matrix(gens, deg)
    if M.cols == 0:
        return [tuple(Fraction(int(i == j)) for j in range(dim(ctx, deg))) for i in range(dim(ctx, deg))]
    return linalg.left_kernel_basis(M)


def _colon_power(gens: Sequence[Form], deg: int, k: int) -> list[tuple]:
    """Basis of ``(I : m^k)_deg``, ``m`` the irrelevant ideal of the ternary ring."""
    ctx = gens[0].ctx
    size = dim(ctx, deg)
    P = _annihilator(gens, deg + k)
    if not P:
        return [tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size)]
    index = monomial_index(ctx, deg + k)
    mons = monomials(ctx, deg)
    rows = []
    for alpha in monomials(ctx, k):
        shifted = [index[tuple(x + y for x, y in zip(alpha, e))] for e in mons]
        for y in P:
            rows.append([y[j] for j in shifted])
    return linalg.kernel_basis(Matrix.from_rows(rows, size))


def _max_gen_degree(gens: Sequence[Form]) -> int:
    return max(g.degree for g in gens)


def saturation_piece(gens: Sequence[Form], deg: int, cap: int | None = None) -> list[Form]:
    """Basis of ``sat(I)_deg`` for ternary generators.

    Computes ``(I : m^k)_deg`` for k = 0, 1, 2, ... and stops once the
    dimension has been unchanged for two consecutive steps.  ``cap`` bounds k
    (default four times the largest generator degree).
    """
    ctx = gens[0].ctx
    if ctx.kind != "ternary":
        raise ContextMismatchError("saturation is implemented for ternary forms")
    if deg < 0:
        return []
    cap = 4 * max(_max_gen_degree(gens), 1) if cap is None else cap
    full = dim(ctx, deg)
    current = ideal_piece(gens, deg)
    streak = 0
    for k in range(1, cap + 1):
        nxt = _colon_power(gens, deg, k)
        if len(nxt) == full:
            current = nxt
            break
        if len(nxt) == len(current):
            streak += 1
            if streak == 2:
                break
        else:
            streak = 0
        current = nxt
    else:
        raise StabilizationError(f"(I : m^k)_{deg} still growing at k = {cap}")
    basis = linalg.row_space_basis(current, full) if current else []
    return [Form(ctx, deg, v) for v in basis]


def vanishes_at_basepoints(gens: Sequence[Form], f: Form, cap: int | None = None) -> bool:
    """Whether ``f`` lies in the saturation of ``<gens>``."""
    if f.is_zero():
        return True
    if ideal_membership(gens, f):
        return True
    sat = saturation_piece(gens, f.degree, cap)
    return linalg.in_span([s.coeffs for s in sat], f.coeffs, dim(f.ctx, f.degree))


def is_saturated_up_to(gens: Sequence[Form], dmax: int, cap: int | None = None) -> bool:
    """True iff ``sat(I)_d == I_d`` for every ``d <= dmax``."""
    ctx = gens[0].ctx
    for d in range(dmax + 1):
        i_dim = dim(ctx, d) - hilbert_dim(gens, d)
        if i_dim == dim(ctx, d):
            continue
        if len(saturation_piece(gens, d, cap)) != i_dim:
            return False
    return True


def vanishing_syzygies(gens: Sequence[Form], deg: int, cap: int | None = None) -> list[SyzygyVector]:
    """Basis of the syzygies of degree ``deg`` whose components all vanish at the basepoints."""
    ctx, _ = _common(gens)
    basis = syzygies(gens, deg)
    if not basis:
        return []
    size = dim(ctx, deg)
    sat = [s.coeffs for s in saturation_piece(gens, deg, cap)]
    if len(sat) == size:
        return basis
    # functionals cutting out sat(I)_deg inside R_deg
    if sat:
        P = linalg.left_kernel_basis(Matrix.from_columns(sat, size))
    else:
        P = [tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size)]
    k = len(gens)
    rows = []
    for comp in range(k):
        for y in P:
            rows.append([sum((y[j] * v.components[comp].coeffs[j] for j in range(size)), Fraction(0))
                         for v in basis])
    combos = linalg.kernel_basis(Matrix.from_rows(rows, len(basis)))
    out = []
    for cvec in combos:
        vec = [sum((cf * v.vector()[i] for cf, v in zip(cvec, basis) if cf), Fraction(0))
               for i in range(k * size)]
        out.append(syzygy_from_vector(gens, deg, vec))
    return out


# -- probabilistic coprimality ------------------------------------------------------

def probably_coprime(gens: Sequence[Form], seed: int = 0, trials: int = 3, warn: bool = True) -> bool:
    """Restrict the generators to seeded random lines and test the binary gcd.

    A common factor of the generators survives on every line; without one,
    a random line yields coprime restrictions with overwhelming probability.
    Emits :class:`CoprimalityWarning` when every trial shows a common factor.
    """
    ctx, _ = _common(gens)
    if ctx == BINARY:
        ok = gcd_binary_all(gens).degree == 0
    else:
        rng = random.Random(seed)
        ok = False
        lam, mu = Form.variable(BINARY, "s"), Form.variable(BINARY, "t")
        for _ in range(trials):
            images = [lam.scale(rng.randint(-20, 20)) + mu.scale(rng.randint(-20, 20))
                      for _ in range(ctx.nvars)]
            restricted = [compose(g, images) for g in gens]
            if all(r.is_zero() for r in restricted):
                continue
            if gcd_binary_all(restricted).degree == 0:
                ok = True
                break
    if not ok and warn:
        warnings.warn("generators appear to share a common factor", CoprimalityWarning, stacklevel=2)
    return ok
