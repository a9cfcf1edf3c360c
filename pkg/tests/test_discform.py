import itertools

import pytest
from sympy import legendre_symbol

from ssk3.discform import (
    BudgetExceeded,
    DiscFormError,
    ExtVector,
    bilinear,
    build_disc_space,
    det_mod_p,
    find_totally_isotropic_subspace,
    frob_semilinear,
    gaussian_binomial,
    has_totally_isotropic_subspace,
    isotropic_vector_count,
    nonsplit_isotropic_count,
)
from ssk3.ffield import frobenius, root_of_unity

SMALL = [(5, 1), (7, 1), (11, 1), (5, 2), (7, 2)]


def brute_count(space):
    g, p, n = space.gram, space.p, space.dim
    return sum(
        1
        for x in itertools.product(range(p), repeat=n)
        if sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n)) % p == 0
    )


@pytest.mark.parametrize("p,sigma", SMALL)
def test_isotropic_count(p, sigma):
    space = build_disc_space(p, sigma)
    expected = p ** (2 * sigma - 1) - p**sigma + p ** (sigma - 1)
    assert nonsplit_isotropic_count(p, sigma) == expected
    assert isotropic_vector_count(space) == expected


@pytest.mark.parametrize("p,sigma", [(5, 1), (7, 1), (5, 2)])
def test_count_by_plain_loop(p, sigma):
    space = build_disc_space(p, sigma)
    assert brute_count(space) == isotropic_vector_count(space)


def test_known_counts():
    assert isotropic_vector_count(build_disc_space(5, 2)) == 105
    assert isotropic_vector_count(build_disc_space(7, 2)) == 301
    assert nonsplit_isotropic_count(5, 3) == 3025


@pytest.mark.parametrize("p,sigma", SMALL)
def test_gram_is_nonsplit(p, sigma):
    space = build_disc_space(p, sigma)
    g = space.gram
    assert all(g[i][j] == g[j][i] for i in range(space.dim) for j in range(space.dim))
    d = det_mod_p(g, p)
    assert d != 0
    assert legendre_symbol((-1) ** sigma * d % p, p) == -1


@pytest.mark.parametrize("p,sigma", [(5, 1), (7, 1), (11, 1), (5, 2)])
def test_no_half_dimensional_isotropic_subspace(p, sigma):
    space = build_disc_space(p, sigma)
    assert not has_totally_isotropic_subspace(space, sigma)
    assert find_totally_isotropic_subspace(space, sigma) is None


def test_isotropic_line_exists_for_sigma_2():
    space = build_disc_space(5, 2)
    line = find_totally_isotropic_subspace(space, 1)
    assert line is not None
    (row,) = line
    assert space.q(row) == 0


def test_gaussian_binomial():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 5) == 806
    assert gaussian_binomial(5, 0, 3) == 1


@pytest.mark.parametrize("p,sigma", [(5, 1), (7, 1), (5, 2)])
def test_norm_one_multiplication_is_isometry(p, sigma):
    space = build_disc_space(p, sigma)
    z = root_of_unity(space.base, p**sigma + 1)
    m = space.multiplication_matrix(z)
    n = space.dim
    for x in itertools.islice(itertools.product(range(p), repeat=n), 0, None, 7):
        mx = [sum(m[i][j] * x[j] for j in range(n)) % p for i in range(n)]
        assert space.q(mx) == space.q(x)


def test_bilinear_properties_in_extension():
    space = build_disc_space(5, 2, 8)
    ctx = space.ctx
    u = space.vector([ctx.gen, ctx.one, ctx.gen**3, ctx.zero])
    w = space.vector([ctx.one, ctx.gen**7, ctx.from_int(2), ctx.gen])
    assert bilinear(u, w) == bilinear(w, u)
    assert bilinear(ctx.gen * u + w, w) == ctx.gen * bilinear(u, w) + bilinear(w, w)
    # rationality of the form: F^-1 b(u, w) = b(f^-1 u, f^-1 w)
    assert frobenius(bilinear(u, w), -1) == bilinear(frob_semilinear(u, -1), frob_semilinear(w, -1))
    assert frob_semilinear(frob_semilinear(u, 3), -3) == u


def test_working_degree_validation():
    with pytest.raises(DiscFormError):
        build_disc_space(5, 2, 6)
    with pytest.raises(DiscFormError):
        build_disc_space(5, 11)
    assert build_disc_space(5, 2).working_degree == 4
    assert build_disc_space(5, 2, 8).working_degree == 8


def test_mixing_spaces_raises():
    a, b = build_disc_space(5, 1), build_disc_space(7, 1)
    with pytest.raises(Exception):
        a.zero_vector() + b.zero_vector()


def test_budget():
    with pytest.raises(BudgetExceeded):
        isotropic_vector_count(build_disc_space(5, 3), budget=1000)


def test_ext_vector_algebra():
    space = build_disc_space(7, 1)
    ctx = space.ctx
    v = space.vector([ctx.one, ctx.gen])
    assert (v - v).is_zero()
    assert -v + v == space.zero_vector()
    assert isinstance(2 * v, ExtVector)
