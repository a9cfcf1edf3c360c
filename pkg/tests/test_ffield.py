import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, Poly, symbols

from ssk3.ffield import (
    FieldError,
    canonical_modulus,
    ctx_from_json,
    discrete_log,
    field_create,
    frobenius,
    is_irreducible_fp,
    mult_order,
    nth_roots,
    poly_roots,
    root_of_unity,
)

T = symbols("T")
FIELDS = [(5, 1), (5, 2), (7, 2), (5, 3), (5, 4), (11, 2)]


def elements(p, d):
    return st.lists(st.integers(0, p - 1), min_size=d, max_size=d).map(lambda c: field_create(p, d).from_coeffs(c))


def _sympy_irreducible(coeffs, p):
    return Poly(list(reversed(coeffs)), T, domain=GF(p)).is_irreducible


@pytest.mark.parametrize("p,d", FIELDS)
def test_canonical_modulus_is_least_irreducible(p, d):
    mod = canonical_modulus(p, d)
    assert mod[-1] == 1 and len(mod) == d + 1
    assert _sympy_irreducible(mod, p)
    # nothing smaller in (c0, ..., c_{d-1}) order is irreducible
    for low in itertools.product(range(p), repeat=d):
        if low >= tuple(mod[:d]):
            break
        assert not _sympy_irreducible(list(low) + [1], p)


def test_small_moduli():
    assert canonical_modulus(5, 2) == (1, 1, 1)
    assert canonical_modulus(5, 4) == (1, 0, 1, 1, 1)


@pytest.mark.parametrize("p", [5, 7])
def test_irreducibility_matches_sympy(p):
    for low in itertools.product(range(p), repeat=3):
        f = list(low) + [1]
        assert is_irreducible_fp(f, p) == _sympy_irreducible(f, p)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    p, d = data.draw(st.sampled_from(FIELDS))
    x, y, z = (data.draw(elements(p, d)) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0
    if x:
        assert x * x.inv() == 1
        assert x / x == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_frobenius_matches_power(data):
    p, d = data.draw(st.sampled_from(FIELDS))
    x = data.draw(elements(p, d))
    e = data.draw(st.integers(-2 * d, 2 * d))
    assert frobenius(x, e) == x ** (p ** (e % d))
    assert frobenius(frobenius(x, e), -e) == x


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_frobenius_is_a_ring_map(data):
    p, d = data.draw(st.sampled_from(FIELDS))
    x, y = data.draw(elements(p, d)), data.draw(elements(p, d))
    assert frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1)
    assert frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1)


def test_negative_powers():
    ctx = field_create(7, 2)
    x = ctx.gen
    assert x**-3 * x**3 == 1
    with pytest.raises(ZeroDivisionError):
        ctx.zero.inv()


@pytest.mark.parametrize("p,d", [(5, 2), (7, 2), (5, 3)])
def test_multiplicative_order_and_roots_of_unity(p, d):
    ctx = field_create(p, d)
    q = ctx.order
    g = ctx.primitive_element()
    assert mult_order(g) == q - 1
    for n in (n for n in range(1, q) if (q - 1) % n == 0):
        z = root_of_unity(ctx, n)
        assert mult_order(z) == n
    with pytest.raises(FieldError):
        root_of_unity(ctx, q)


def test_discrete_log():
    ctx = field_create(5, 4)
    g = ctx.primitive_element()
    for e in (0, 1, 17, 311, 623):
        assert discrete_log(g**e) == e


@pytest.mark.parametrize("p,d", [(5, 2), (7, 2)])
def test_nth_roots_brute_force(p, d):
    ctx = field_create(p, d)
    nonzero = [x for x in ctx.elements() if x]
    for a in nonzero[:8]:
        for n in (2, 3, p + 1):
            expected = sorted((x for x in nonzero if x**n == a), key=lambda x: x.key())
            assert nth_roots(a, n) == expected


@pytest.mark.parametrize("p,d", [(5, 2), (5, 4)])
def test_poly_roots(p, d):
    ctx = field_create(p, d)
    rs = [ctx.from_int(1), ctx.gen, ctx.gen**5 + 2]
    poly = [ctx.one]
    for r in rs:  # multiply by (T - r), low degree first
        poly = [ctx.zero] + poly
        for i in range(len(poly) - 1):
            poly[i] = poly[i] - r * poly[i + 1]
    got = poly_roots(poly)
    assert set(got) == set(rs)
    if ctx.order <= 64:
        assert got == sorted((x for x in ctx.elements() if _eval(poly, x) == 0), key=lambda x: x.key())


def _eval(poly, x):
    acc = x.ctx.zero
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def test_field_create_rejects_bad_input():
    with pytest.raises(FieldError):
        field_create(4, 2)
    with pytest.raises(FieldError):
        field_create(2, 3)
    with pytest.raises(FieldError):
        field_create(3, 2)
    assert field_create(3, 2, allow_small_p=True).order == 9


def test_mixing_fields_raises():
    with pytest.raises(FieldError):
        field_create(5, 2).gen + field_create(5, 4).gen


def test_json_roundtrip():
    ctx = field_create(7, 3)
    assert ctx_from_json(ctx.to_json()) == ctx
