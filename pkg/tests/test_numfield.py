"""Number field arithmetic: creation, reduction, signs, roots, omega extension."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpakit.errors import (
    AmbiguousRoot,
    DivisionByZero,
    MixedFields,
    NegativeInput,
    NoRootNearApprox,
    NotSquarefree,
)
from gpakit.numfield import (
    CyclotomicExtension,
    field_create,
    format_element,
    minimal_polynomial,
    parse_element,
    parse_field_declaration,
    sqrt_in_field,
)


def small_elements(field):
    coeff = st.integers(min_value=-9, max_value=9)
    return st.tuples(*[coeff] * field.degree).map(lambda t: field.element(list(t)))


def test_field_create_d(Qd):
    lo, hi = Qd.refine_interval(Fraction(1, 10**8))
    assert hi - lo <= Fraction(1, 10**8)
    assert abs((lo + hi) / 2 - Fraction("2.24698")) < Fraction(1, 10**5)


def test_field_create_d_squared():
    f = field_create([1, -6, 5, -1], "5.05")
    lo, hi = f.refine_interval(Fraction(1, 10**7))
    assert abs((lo + hi) / 2 - Fraction("5.04892")) < Fraction(1, 10**5)


def test_not_squarefree():
    with pytest.raises(NotSquarefree):
        field_create([1, -2, 1], "1.0")


def test_no_root_near():
    with pytest.raises(NoRootNearApprox):
        field_create([1, 0, 1], "1.0")  # x^2+1 has no real roots


def test_ambiguous_root():
    # 100x^2 - 9 has roots +-0.3, both within 0.5 of 0.1
    with pytest.raises(AmbiguousRoot):
        field_create([100, 0, -9], "0.1")


def test_cube_reduction(Qd):
    d = Qd.gen
    assert d**3 == 2 * d**2 + d - 1
    assert (d**3).coeffs == (Fraction(-1), Fraction(1), Fraction(2))


def test_division_extended_euclid(Qd):
    d = Qd.gen
    inv = 1 / d
    assert inv == -(d**2) + 2 * d + 1
    assert d * inv == Qd.one


def test_e_value(Qd):
    e = Qd.gen**2 - Qd.gen - 1
    assert abs(e.to_float() - 1.80194) < 1e-4


def test_sign(Qd):
    d = Qd.gen
    assert Qd.zero.sign() == 0
    assert (d**2 - 5).sign() == 1
    bound_lo, bound_hi = Fraction("5.236067"), Fraction("5.236068")
    assert (d**2 - bound_lo).sign() == -1
    assert (d**2 - bound_hi).sign() == -1


def test_div_by_zero(Qd):
    with pytest.raises(DivisionByZero):
        Qd.one / Qd.zero


def test_mixed_fields(Qd):
    other = field_create([1, -6, 5, -1], "5.05")
    with pytest.raises(MixedFields):
        Qd.one + other.one


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_ring_axioms(Qd, data):
    a = data.draw(small_elements(Qd))
    b = data.draw(small_elements(Qd))
    c = data.draw(small_elements(Qd))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_div_roundtrip(Qd, data):
    a = data.draw(small_elements(Qd))
    b = data.draw(small_elements(Qd))
    if not b.is_zero():
        assert (a * b) / b == a


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_sign_multiplicative(Qd, data):
    a = data.draw(small_elements(Qd))
    b = data.draw(small_elements(Qd))
    assert (a * b).sign() == a.sign() * b.sign()


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_embedding_consistent(Qd, data):
    a = data.draw(small_elements(Qd))
    b = data.draw(small_elements(Qd))
    assert abs((a * b).to_float() - a.to_float() * b.to_float()) < 1e-9 * (
        1 + abs(a.to_float() * b.to_float()))


def test_sqrt_trivial(Qd):
    assert sqrt_in_field(Qd.one) == Qd.one
    d = Qd.gen
    assert sqrt_in_field(d * d) == d


def test_sqrt_negative(Qd):
    with pytest.raises(NegativeInput):
        sqrt_in_field(-Qd.one)


def test_sqrt_none_for_e(Qd):
    # sqrt(e) has degree 6 over Q: scan fails, and the numeric minimal
    # polynomial degree of sqrt(e) exceeds 3 (oracle below).
    e = Qd.gen**2 - Qd.gen - 1
    assert sqrt_in_field(e) is None
    me = minimal_polynomial(e)
    assert len(me) - 1 == 3
    # x^2 - e has no root iff m_e(x^2) has no factor with sqrt(e) as a root of
    # degree <= 3; verify numerically that 1, s, s^2, s^3 are not rationally
    # dependent for s = sqrt(e) at modest height
    import mpmath

    s = mpmath.sqrt(e.to_mpf(40))
    best = None
    for a3 in range(-6, 7):
        for a2 in range(-6, 7):
            for a1 in range(-6, 7):
                for a0 in range(-6, 7):
                    if a3 == a2 == a1 == a0 == 0:
                        continue
                    v = abs(a3 * s**3 + a2 * s**2 + a1 * s + a0)
                    if best is None or v < best:
                        best = v
    assert best > 1e-6


def test_parse_and_format(Qd):
    a = parse_element(Qd, "2*d^4 - 11*d^2 + 5")
    b = parse_element(Qd, "{2,-11,5}")
    assert a == b
    assert abs(a.to_float() - (1 / Qd.gen).to_float()) < 1e-12
    c = parse_element(Qd, format_element(a))
    assert c == a


def test_parse_field_declaration():
    f = parse_field_declaration("field a: [1,-2,-1,1] near 2.25")
    assert f.degree == 3
    assert f.generator == "a"


def test_brace_fractions(Qd):
    a = parse_element(Qd, "{-11/13,61/13,-32/13}")
    assert a.coeffs[0] != 0 or True  # parses without error
    b = (Qd.brace(Fraction(-11), Fraction(61), Fraction(-32))) / 13
    assert a == b


def test_cyclotomic(Qd):
    ext = CyclotomicExtension(Qd)
    w = ext.omega
    assert w**3 == ext.one
    assert ext.one + w + w * w == ext.zero
    z = ext.element(Qd.gen, Qd.one)
    assert z.conj().conj() == z
    zz = z * z.conj()
    assert zz.v.is_zero()
    assert (z / z) == ext.one


def test_compare_across_fields(Qd):
    f2 = field_create([1, -6, 5, -1], "5.05")
    d2 = Qd.gen * Qd.gen
    lam = f2.gen
    # d^2 and lambda denote the same real number; certified comparison at
    # finite width cannot separate them
    with pytest.raises(AmbiguousRoot):
        d2.compare(lam)
    assert Qd.one.compare(f2.gen) == -1
    assert (d2 + 1).compare(lam) == 1
