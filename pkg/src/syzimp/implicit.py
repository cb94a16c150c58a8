"""Moving-form matrices and implicit equations of curves and surfaces.

Curves use moving lines of degree n-1; tensor-product surfaces use moving
quadrics of bidegree (m-1, n-1); triangular surfaces mix moving planes and
moving quadrics of degree n-1.  Each determinant is computed exactly over
the target polynomial ring.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import linalg
from .errors import (
    HypothesisFailure,
    InternalConsistencyError,
    PreconditionError,
)
from .forms import BIHOM, BINARY, TERNARY, Form, gcd_binary_all, monomials
from .linalg import Matrix
from .syzygy import MuBasis, SyzygyVector, _common, mult_map, probably_coprime, syzygies
from .target import (
    MovingForm,
    TargetPoly,
    exact_root,
    normalize,
    padd,
    pexquo,
    pmul,
    squarefree_part,
    substitute,
    target_monomials,
)


@dataclass(frozen=True)
class MovingMatrix:
    """Square matrix of target polynomials, one row per moving line/plane/quadric."""

    entries: tuple
    row_kinds: tuple
    nvars: int
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "row_kinds", tuple(self.row_kinds))
        k = len(entries)
        if any(len(r) != k for r in entries):
            raise PreconditionError("moving matrix must be square")
        if len(self.row_kinds) != k:
            raise PreconditionError("one row kind per row")
        want = {"linear": 1, "quadratic": 2}
        for row, kind in zip(entries, self.row_kinds):
            for e in row:
                if e.terms and (e.degree() != want[kind] or not e.is_homogeneous()):
                    raise PreconditionError(f"entry {e} does not match row kind {kind}")

    @property
    def size(self) -> int:
        return len(self.entries)

    def expected_degree(self) -> int:
        return sum(1 if k == "linear" else 2 for k in self.row_kinds)

    def evaluate(self, point: Sequence) -> Matrix:
        return Matrix.from_rows([[e.evaluate(point) for e in row] for row in self.entries], self.size)

    def render(self) -> list[list[str]]:
        return [[e.render() for e in row] for row in self.entries]


@dataclass(frozen=True)
class ImplicitResult:
    """``det_poly == lam * F**d`` with ``F`` normalized; checked on construction."""

    det_poly: TargetPoly
    F: TargetPoly
    d: int
    lam: Fraction
    matrix: MovingMatrix | None = None
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.det_poly != (self.F ** self.d).scale(self.lam):
            raise InternalConsistencyError("det_poly != lam * F^d")
        if normalize(self.F)[0] != self.F:
            raise InternalConsistencyError("F is not normalized")


# -- polynomial determinant ---------------------------------------------------------

def moving_det(m: MovingMatrix) -> TargetPoly:
    """Exact determinant over Q[x, y, z(, w)] by fraction-free Bareiss elimination.

    Each row is first scaled to integer coefficients so the elimination runs
    over Z[x, ...] where every Bareiss division is exact.
    """
    n = m.size
    nv = m.nvars
    if n == 0:
        return TargetPoly.constant(nv, 1)
    scale = 1
    rows = []
    for row in m.entries:
        den = 1
        for e in row:
            for c in e.terms.values():
                den = lcm(den, c.denominator)
        scale *= den
        rows.append([{k: int(c * den) for k, c in e.packed().items()} for e in row])
    sign = 1
    prev = None
    for k in range(n - 1):
        if not rows[k][k]:
            p = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if p is None:
                return TargetPoly(nv)
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pk = rows[k]
        pv = pk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            for j in range(k + 1, n):
                t = pmul(pv, ri[j])
                if f and pk[j]:
                    t = padd(t, pmul(f, pk[j]), -1)
                ri[j] = pexquo(t, prev, nv) if prev is not None and t else t
            ri[k] = {}
        prev = pv
    det = rows[n - 1][n - 1]
    return TargetPoly.from_packed(nv, {key: sign * c for key, c in det.items()}, scale)


# -- curves ---------------------------------------------------------------------------

def curve_matrix(syz_basis: Sequence[SyzygyVector]) -> MovingMatrix:
    """``L[i][j]``: coefficient of ``s^j t^(n-1-j)`` in ``A_i x + B_i y + C_i z``."""
    n = len(syz_basis)
    if n == 0:
        raise PreconditionError("empty syzygy basis")
    for v in syz_basis:
        if v.degree != n - 1 or len(v.components) != 3:
            raise PreconditionError(f"need {n} moving lines of degree {n - 1}")
    columns = [(j, n - 1 - j) for j in range(n)]
    rows = [MovingForm(3, 1, v.components).row(columns) for v in syz_basis]
    return MovingMatrix(rows, ("linear",) * n, 3)


def _check_coprime_binary(gens):
    g = gcd_binary_all(gens)
    if g.degree > 0:
        raise PreconditionError(f"gcd of the parametrization is {g.render()}, not 1")


def _power_decomposition(det: TargetPoly, F_candidate: TargetPoly) -> tuple[TargetPoly, int, Fraction] | None:
    F, _ = normalize(F_candidate)
    D, f = det.degree(), F.degree()
    if f <= 0 or D % f:
        return None
    d = D // f
    Fd = F ** d
    lam = det.leading_coefficient() / Fd.leading_coefficient()
    if Fd.scale(lam) != det:
        return None
    return F, d, lam


def implicitize_curve(a: Form, b: Form, c: Form) -> ImplicitResult:
    """Implicit equation of the image of ``(a, b, c): P^1 -> P^2`` from moving lines."""
    gens = (a, b, c)
    ctx, n = _common(gens)
    if ctx != BINARY:
        raise PreconditionError("curve parametrizations use binary forms")
    _check_coprime_binary(gens)
    basis = syzygies(gens, n - 1)
    if len(basis) != n:
        raise InternalConsistencyError(f"dim Syz_(n-1) = {len(basis)}, expected {n}")
    M = curve_matrix(basis)
    det = moving_det(M)
    if det.is_zero():
        raise InternalConsistencyError("det(L) vanished for a coprime triple")
    found = _power_decomposition(det, squarefree_part(det))
    if found is None:
        F, lam = normalize(det)
        found = (F, 1, lam)
    F, d, lam = found
    if not substitute(F, gens).is_zero():
        raise InternalConsistencyError("implicit equation does not vanish on the curve")
    diag = {"syzygy_dim": len(basis), "matrix_size": n, "det_degree": det.degree()}
    return ImplicitResult(det, F, d, lam, M, diag)


def _linear_coefficients(form_vec: Sequence[Form], deg: int) -> list[TargetPoly]:
    # binary forms of degree deg -> coefficient of s^(deg-i) t^i as a linear form in x, y, z
    out = []
    for e in monomials(BINARY, deg):
        out.append(TargetPoly(3, {tuple(int(k == j) for k in range(3)): f.coefficient(e)
                                  for j, f in enumerate(form_vec)}))
    return out


def sylvester_matrix(p: Sequence[TargetPoly], q: Sequence[TargetPoly]) -> MovingMatrix:
    """Sylvester matrix of two binary forms given by coefficient lists (descending s)."""
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    zero = TargetPoly(p[0].nvars if p else q[0].nvars)
    rows = []
    for r in range(dq):
        rows.append([p[j - r] if 0 <= j - r <= dp else zero for j in range(size)])
    for r in range(dp):
        rows.append([q[j - r] if 0 <= j - r <= dq else zero for j in range(size)])
    return MovingMatrix(rows, ("linear",) * size, zero.nvars)


def mu_resultant(mb: MuBasis) -> TargetPoly:
    """``Res(p, q)`` of the mu-basis as binary forms in s, t over Q[x, y, z]."""
    p = _linear_coefficients(mb.p.components, mb.p.degree)
    q = _linear_coefficients(mb.q.components, mb.q.degree)
    return moving_det(sylvester_matrix(p, q))


# -- surfaces ---------------------------------------------------------------------------

def _quadric_products(gens: Sequence[Form]) -> list[Form]:
    """a^2, ab, ..., d^2 in target-monomial order x^2, xy, ..., w^2."""
    out = []
    for e in target_monomials(len(gens), 2):
        f = None
        for g, k in zip(gens, e):
            for _ in range(k):
                f = g if f is None else f * g
        out.append(f)
    return out


def _complement(known: Sequence[tuple], candidates: Sequence[SyzygyVector], dim_: int) -> list[SyzygyVector]:
    """Greedy extension: candidates (in canonical order) not in the span so far."""
    span = list(known)
    r = linalg.rank_of_vectors(span, dim_) if span else 0
    chosen = []
    for v in candidates:
        vec = v.vector()
        r2 = linalg.rank_of_vectors([*span, vec], dim_)
        if r2 > r:
            span.append(vec)
            chosen.append(v)
            r = r2
    return chosen


def _plane_multiples(planes: Sequence[SyzygyVector]) -> list[tuple]:
    out = []
    for p in planes:
        mf = MovingForm(4, 1, p.components)
        for i in range(4):
            out.append(mf.times_variable(i).vector())
    return out


def _surface_gens(gens, kind):
    ctx, deg = _common(gens)
    if len(gens) != 4:
        raise PreconditionError("surface parametrizations take four forms")
    if kind == "tp" and ctx != BIHOM:
        raise PreconditionError("tensor-product surfaces use bihomogeneous forms")
    if kind == "tri" and ctx != TERNARY:
        raise PreconditionError("triangular surfaces use ternary forms")
    return ctx, deg


def assemble_M_tp(a: Form, b: Form, c: Form, d: Form, seed: int = 0) -> MovingMatrix:
    """mn x mn matrix of moving quadrics of bidegree (m-1, n-1) for a tensor-product surface."""
    gens = (a, b, c, d)
    ctx, (m, n) = _surface_gens(gens, "tp")
    probably_coprime(gens, seed=seed)
    src = (m - 1, n - 1)
    planes = syzygies(gens, src)
    if planes:
        raise PreconditionError(f"MP is not of maximal rank: kernel dimension {len(planes)}")
    quads = syzygies(_quadric_products(gens), src)
    if len(quads) != m * n:
        raise HypothesisFailure(f"MQ kernel dimension {len(quads)}, expected mn = {m * n}")
    columns = monomials(ctx, src)
    rows = [MovingForm(4, 2, q.components).row(columns) for q in quads]
    diag = {"mp_kernel_dim": 0, "mq_kernel_dim": len(quads)}
    return MovingMatrix(rows, ("quadratic",) * len(rows), 4, diag)


def assemble_M_tri(a: Form, b: Form, c: Form, d: Form, seed: int = 0) -> MovingMatrix:
    """(n^2+n)/2 square matrix: n moving planes and (n^2-n)/2 moving quadrics of degree n-1."""
    gens = (a, b, c, d)
    ctx, n = _surface_gens(gens, "tri")
    probably_coprime(gens, seed=seed)
    src = n - 1
    planes = syzygies(gens, src)
    if len(planes) != n:
        raise PreconditionError(f"MP is not of maximal rank: kernel dimension {len(planes)}, expected {n}")
    quads = syzygies(_quadric_products(gens), src)
    want = (n * n + 7 * n) // 2
    if len(quads) != want:
        raise HypothesisFailure(f"MQ kernel dimension {len(quads)}, expected {want}")
    known = _plane_multiples(planes)
    vdim = 10 * len(monomials(ctx, src))
    if linalg.rank_of_vectors(known, vdim) != 4 * n:
        raise HypothesisFailure("moving planes times x, y, z, w are not independent")
    extra = _complement(known, quads, vdim)
    if len(extra) != (n * n - n) // 2:
        raise InternalConsistencyError("complement has the wrong dimension")
    columns = monomials(ctx, src)
    rows = [MovingForm(4, 1, p.components).row(columns) for p in planes]
    rows += [MovingForm(4, 2, q.components).row(columns) for q in extra]
    kinds = ("linear",) * n + ("quadratic",) * len(extra)
    diag = {"mp_kernel_dim": len(planes), "mq_kernel_dim": len(quads), "quadric_rows": len(extra)}
    return MovingMatrix(rows, kinds, 4, diag)


def assemble_M_tp_one_bp(a: Form, b: Form, c: Form, d: Form, seed: int = 0) -> MovingMatrix:
    """Single-basepoint variant: one moving plane plus mn-1 complementary moving quadrics.

    The kernel dimensions 1 (planes) and mn+3 (quadrics) are expectations, not
    theorems; any other value is reported as a precondition failure.
    """
    gens = (a, b, c, d)
    ctx, (m, n) = _surface_gens(gens, "tp")
    probably_coprime(gens, seed=seed)
    src = (m - 1, n - 1)
    planes = syzygies(gens, src)
    quads = syzygies(_quadric_products(gens), src)
    diag = {"mp_kernel_dim": len(planes), "mq_kernel_dim": len(quads)}
    if len(planes) != 1:
        raise PreconditionError(f"expected one moving plane, MP kernel dimension is {len(planes)}")
    if len(quads) != m * n + 3:
        raise PreconditionError(f"expected MQ kernel dimension {m * n + 3}, got {len(quads)}")
    known = _plane_multiples(planes)
    vdim = 10 * len(monomials(ctx, src))
    extra = _complement(known, quads, vdim)
    if len(extra) != m * n - 1:
        raise PreconditionError(f"complement has dimension {len(extra)}, expected {m * n - 1}")
    columns = monomials(ctx, src)
    rows = [MovingForm(4, 1, planes[0].components).row(columns)]
    rows += [MovingForm(4, 2, q.components).row(columns) for q in extra]
    diag["quadric_rows"] = len(extra)
    return MovingMatrix(rows, ("linear",) + ("quadratic",) * len(extra), 4, diag)


def _divisors_desc(k: int) -> list[int]:
    return [d for d in range(k, 0, -1) if k % d == 0]


def implicit_from_matrix(M: MovingMatrix, gens: Sequence[Form], expected_degree: int) -> ImplicitResult:
    """Normalize ``det M`` into ``lam * F^d`` and validate it against the parametrization."""
    det = moving_det(M)
    if det.is_zero():
        raise HypothesisFailure("det M vanishes identically; the parametrization violates the hypotheses")
    if det.degree() != expected_degree:
        raise InternalConsistencyError(f"deg det M = {det.degree()}, expected {expected_degree}")
    for d in _divisors_desc(det.degree()):
        root = exact_root(det, d)
        if root is None:
            continue
        found = _power_decomposition(det, root[0])
        if found and substitute(found[0], gens).is_zero():
            F, d, lam = found
            break
    else:
        raise InternalConsistencyError("det M does not vanish on the image")
    diag = dict(M.diagnostics)
    diag.update(matrix_size=M.size, det_degree=det.degree(),
                linear_rows=M.row_kinds.count("linear"), quadratic_rows=M.row_kinds.count("quadratic"))
    return ImplicitResult(det, F, d, lam, M, diag)


def implicitize_surface(kind: str, a: Form, b: Form, c: Form, d: Form, seed: int = 0) -> ImplicitResult:
    """Implicit equation of a surface parametrization.

    ``kind`` is ``"tp"`` (P^1 x P^1, bidegree (m, n)), ``"tri"`` (P^2, degree n)
    or ``"tp1bp"`` (tensor product with one simple basepoint).  The caller
    asserts that the map is generically one-to-one.
    """
    gens = (a, b, c, d)
    if kind == "tp":
        M = assemble_M_tp(*gens, seed=seed)
        m, n = a.degree
        expected = 2 * m * n
    elif kind == "tri":
        M = assemble_M_tri(*gens, seed=seed)
        expected = a.degree ** 2
    elif kind == "tp1bp":
        M = assemble_M_tp_one_bp(*gens, seed=seed)
        m, n = a.degree
        expected = 2 * m * n - 1
    else:
        raise ValueError(f"unknown surface kind {kind!r}")
    return implicit_from_matrix(M, gens, expected)


# -- determinant identity check for tensor-product surfaces ------------------------

@dataclass(frozen=True)
class ResultantRatio:
    det_mq_prime: Fraction
    det_mp: Fraction
    ratio: Fraction
    transform: tuple
    attempts: int


def _random_invertible(rng: random.Random, k: int = 4) -> Matrix:
    while True:
        T = Matrix(k, k, [rng.randint(-5, 5) for _ in range(k * k)])
        if linalg.determinant(T):
            return T


def dandrea_ratio(a: Form, b: Form, c: Form, d: Form, seed: int = 0, retries: int = 5) -> ResultantRatio:
    """Determinants of MP and MQ' after a random change of target coordinates.

    MQ' drops the ``d^2`` column block from MQ, making it square (9mn x 9mn).
    The ratio ``det MQ' / det MP^3`` represents ``Res(a, b, c)`` in the new
    coordinates up to basis conventions, so only its vanishing is meaningful.
    """
    gens = (a, b, c, d)
    ctx, (m, n) = _surface_gens(gens, "tp")
    src = (m - 1, n - 1)
    rng = random.Random(seed)
    last_mq = None
    for attempt in range(1, retries + 1):
        T = _random_invertible(rng)
        new = [None] * 4
        for i in range(4):
            acc = Form.zero(ctx, a.degree)
            for j in range(4):
                if T[i, j]:
                    acc = acc + gens[j].scale(T[i, j])
            new[i] = acc
        det_mp = linalg.determinant(mult_map(new, src))
        det_mq = linalg.determinant(mult_map(_quadric_products(new)[:9], src))
        last_mq = det_mq
        if det_mp:
            return ResultantRatio(det_mq, det_mp, det_mq / det_mp ** 3, tuple(T.to_rows()), attempt)
    raise HypothesisFailure(f"det MP = 0 after {retries} coordinate changes (det MQ' = {last_mq})")
