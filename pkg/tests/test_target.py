import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzimp.errors import ParseError, PreconditionError
from syzimp.forms import BINARY, TERNARY, Form, random_form
from syzimp.target import (
    MovingForm,
    TargetPoly,
    exact_root,
    normalize,
    parse_target,
    squarefree_part,
    substitute,
)

from families import bihom, binary


def X(text, nvars=3):
    return parse_target(text, nvars)


def test_normalize_examples():
    assert normalize(X("-2*x*z+2*y^2")) == (X("x*z-y^2"), -2)
    assert normalize(X("1/3*x")) == (X("x"), Fraction(1, 3))
    assert normalize(X("6*x^2-4*x*y")) == (X("3*x^2-2*x*y"), 2)


def test_substitute_examples():
    conic = [binary("s^2"), binary("s*t"), binary("t^2")]
    assert substitute(X("x*z-y^2"), conic).is_zero()
    assert substitute(X("x"), conic) == binary("s^2")
    segre = [bihom("s*t"), bihom("s*v"), bihom("u*t"), bihom("u*v")]
    assert substitute(X("x*w-y*z", 4), segre).is_zero()


def test_substitute_preconditions():
    with pytest.raises(PreconditionError):
        substitute(X("x"), [binary("s"), binary("t")])
    with pytest.raises(PreconditionError):
        substitute(X("x+y^2"), [binary("s"), binary("t"), binary("s")])


def test_parse_target_errors():
    with pytest.raises(ParseError):
        parse_target("x*s", 3)
    with pytest.raises(ParseError):
        parse_target("w", 3)


def test_render_round_trip():
    F = X("-3/7*x*z + y^2 - 5*z^2")
    assert parse_target(F.render(), 3) == F


def test_exact_root_and_squarefree():
    F = X("x*z-y^2")
    root = exact_root((F ** 2).scale(Fraction(-3, 7)), 2)
    assert root is not None and normalize(root[0])[0] == F
    assert exact_root(F * X("x^2"), 3) is None
    assert normalize(squarefree_part((F ** 3) * X("z^2")))[0] == normalize(F * X("z"))[0]
    assert normalize(squarefree_part(X("x^2*y")))[0] == X("x*y")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_exact_root_recovers_powers(seed, d):
    rng = random.Random(seed)
    F = TargetPoly(4, {tuple(rng.randint(0, 2) for _ in range(3)) + (0,): rng.randint(-5, 5) for _ in range(3)})
    if F.is_zero() or not F.is_homogeneous():
        return
    lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    P = (F ** d).scale(lam)
    found = exact_root(P, d)
    assert found is not None
    G, mu = found
    assert (G ** d).scale(mu) == P


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_substitute_is_ring_homomorphism(seed):
    rng = random.Random(seed)
    gens = [random_form(TERNARY, 2, rng) for _ in range(3)]
    F = TargetPoly(3, {(rng.randint(0, 2), rng.randint(0, 2), 0): rng.randint(-4, 4) for _ in range(3)})
    G = TargetPoly(3, {(1, 0, 1): rng.randint(-4, 4), (0, 1, 1): 1})
    F = TargetPoly(3, {e: c for e, c in F.terms.items() if sum(e) == 2})
    if F.is_zero():
        return
    assert substitute(F * G, gens) == substitute(F, gens) * substitute(G, gens)
    assert substitute(F + F.scale(2), gens) == substitute(F, gens).scale(3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.fractions(min_value=-20, max_value=20, max_denominator=9))
def test_normalize_scale_invariant(seed, c):
    if c == 0:
        return
    rng = random.Random(seed)
    F = TargetPoly(3, {(rng.randint(0, 3), rng.randint(0, 3), 0): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                       for _ in range(4)})
    if F.is_zero():
        return
    N, lam = normalize(F)
    assert N.scale(lam) == F
    assert normalize(F.scale(c))[0] == N


def test_moving_form_rows():
    # the moving line t*x - s*y against columns s^0 t^1, s^1 t^0
    mf = MovingForm(3, 1, (binary("t"), binary("-s"), Form.zero(BINARY, 1)))
    assert [e.render() for e in mf.row([(0, 1), (1, 0)])] == ["x", "-y"]
    quad = mf.times_variable(2)
    assert [e.render() for e in quad.row([(0, 1), (1, 0)])] == ["x*z", "-y*z"]
