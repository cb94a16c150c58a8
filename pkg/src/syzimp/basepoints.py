"""Strong mu-bases of triangular parametrizations and basepoint numerology."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import PreconditionError
from .forms import TERNARY, Form, dim, monomials
from .syzygy import SyzygyVector, _common, hilbert_dim, probably_coprime, syzygies


@dataclass(frozen=True)
class StrongMuBasis:
    """Three syzygies on ``(a, b, c, d)``, ordered by degree."""

    p1: SyzygyVector
    p2: SyzygyVector
    p3: SyzygyVector

    def __post_init__(self):
        degs = [v.degree for v in self.generators]
        if degs != sorted(degs):
            raise ValueError("generators must be ordered by degree")
        if len({v.gens for v in self.generators}) != 1:
            raise ValueError("generators are syzygies on different quadruples")

    @property
    def generators(self) -> tuple[SyzygyVector, SyzygyVector, SyzygyVector]:
        return (self.p1, self.p2, self.p3)

    @property
    def mu(self) -> tuple[int, int, int]:
        return tuple(v.degree for v in self.generators)


def _ternary_dim(d: int) -> int:
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def resolution_hilbert(n: int, mu: Sequence[int], d: int) -> int:
    """``dim (R/I)_d`` predicted by ``0 -> (+) R(-n-mu_i) -> R(-n)^4 -> R``."""
    return _ternary_dim(d) - 4 * _ternary_dim(d - n) + sum(_ternary_dim(d - n - m) for m in mu)


def minimal_syzygy_generators(gens: Sequence[Form], max_degree: int, limit: int | None = None) -> list[SyzygyVector]:
    """Minimal generators of ``Syz(gens)`` in degrees ``<= max_degree``.

    In each degree, canonical kernel vectors are kept when they fall outside
    the span of monomial multiples of the generators already chosen.  Stops
    early once more than ``limit`` generators have been found.
    """
    ctx, _ = _common(gens)
    k = len(gens)
    found: list[SyzygyVector] = []
    for d in range(max_degree + 1):
        size = k * dim(ctx, d)
        span = [v.times(Form.monomial(ctx, e)).vector()
                for v in found for e in monomials(ctx, d - v.degree)]
        r = linalg.rank_of_vectors(span, size) if span else 0
        for cand in syzygies(gens, d):
            vec = cand.vector()
            r2 = linalg.rank_of_vectors([*span, vec], size)
            if r2 > r:
                span.append(vec)
                found.append(cand)
                r = r2
                if limit is not None and len(found) > limit:
                    return found
    return found


def strong_mu_basis(a: Form, b: Form, c: Form, d: Form, seed: int = 0) -> StrongMuBasis | None:
    """A strong mu-basis of ``(a, b, c, d)``, or ``None`` if the syzygy module is not free of rank 3 with degree sum n.

    Candidates are the minimal generators of degree ``<= n - 1``; they are
    accepted when there are exactly three, their degrees sum to ``n`` and the
    Hilbert function agrees with the predicted free resolution up to ``3n``.
    """
    gens = (a, b, c, d)
    ctx, n = _common(gens)
    if ctx != TERNARY:
        raise PreconditionError("strong mu-bases are defined for ternary quadruples")
    probably_coprime(gens, seed=seed)
    found = minimal_syzygy_generators(gens, n - 1, limit=3)
    if len(found) != 3:
        return None
    mu = [v.degree for v in found]
    if sum(mu) != n:
        return None
    for deg in range(3 * n + 1):
        if hilbert_dim(gens, deg) != resolution_hilbert(n, mu, deg):
            return None
    return StrongMuBasis(*found)


def _det3(m: Sequence[Sequence[Form]]) -> Form:
    (p, q, r), (s, t, u), (v, w, x) = m
    return p * (t * x - u * w) - q * (s * x - u * v) + r * (s * w - t * v)


def signed_minors(smb: StrongMuBasis) -> list[Form]:
    """``(-1)^i`` times the 3x3 minor of the 4x3 syzygy matrix with row ``i`` deleted."""
    cols = [v.components for v in smb.generators]
    out = []
    for i in range(4):
        rows = [[cols[j][r] for j in range(3)] for r in range(4) if r != i]
        m = _det3(rows)
        out.append(m if i % 2 == 0 else -m)
    return out


def hilbert_burch_check(smb: StrongMuBasis, a: Form, b: Form, c: Form, d: Form) -> bool:
    """Whether the signed maximal minors equal ``lam * (a, b, c, d)`` for one scalar ``lam != 0``."""
    gens = (a, b, c, d)
    minors = signed_minors(smb)
    if any(m.ctx != g.ctx or m.degree != g.degree for m, g in zip(minors, gens)):
        return False
    lam = None
    for m, g in zip(minors, gens):
        for e, coef in g.terms():
            lam = m.coefficient(e) / coef
            break
        if lam is not None:
            break
    if not lam:
        return False
    return all(m == g.scale(lam) for m, g in zip(minors, gens))


@dataclass(frozen=True)
class Numerology:
    degree: int
    basepoints: int
    n: int
    bound_holds: bool


def strong_mu_numerology(mu: Sequence[int]) -> Numerology:
    """Surface degree and basepoint multiplicity sum for a strong mu-basis of degrees ``mu``.

    ``bound_holds`` records ``3 * basepoints >= 2 * n^2``.
    """
    mu = tuple(int(m) for m in mu)
    if len(mu) != 3 or any(m < 1 for m in mu):
        raise ValueError("mu must be three positive integers")
    m1, m2, m3 = mu
    n = m1 + m2 + m3
    degree = m1 * m2 + m1 * m3 + m2 * m3
    basepoints = n * n - degree
    return Numerology(degree, basepoints, n, 3 * basepoints >= 2 * n * n)


@dataclass(frozen=True)
class BasepointData:
    multiplicities: tuple
    n: int
    deg_phi: int

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in self.multiplicities))
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if self.n < 1 or self.deg_phi < 1:
            raise ValueError("n and deg_phi must be positive")


def degree_formula(bp: BasepointData) -> int:
    """Degree of the image surface: ``(n^2 - sum of multiplicities) / deg_phi``."""
    rest = bp.n ** 2 - sum(bp.multiplicities)
    if rest <= 0 or rest % bp.deg_phi:
        raise PreconditionError(
            f"inconsistent input: n^2 - sum(multiplicities) = {rest} is not a positive multiple of deg_phi = {bp.deg_phi}")
    return rest // bp.deg_phi
