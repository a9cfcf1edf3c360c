import pytest

from ssk3.charspace import (
    CharSpaceError,
    CharSubspace,
    a_vector_from_chain,
    chain,
    eigen_frame,
    gram_in_vbasis,
    min_working_degree,
    mu_group,
    psi,
    rescale_factor,
    search_subspace,
    special_subspace,
    verify_characteristic,
    vprime_coefficients,
    zero_pattern,
)
from ssk3.discform import bilinear, build_disc_space, frob_semilinear
from ssk3.ffield import frobenius
from ssk3.strata import ZeroPattern, admissible_m


def rescaled_a(K, xi):
    """Moduli coordinates recomputed from scratch after v_1 -> xi * v_1."""
    vs = chain(xi * K.v[0], K.space.dim)
    assert bilinear(vs[0], vs[K.sigma]) == 1
    return a_vector_from_chain(vs, K.sigma)


@pytest.mark.parametrize("key", [(5, 1), (7, 1), (11, 1), (5, 2)])
def test_special_subspace(special_subspaces, key):
    K = special_subspaces[key]
    assert all(x.is_zero() for x in K.a)
    assert verify_characteristic(K.space, K.basis).ok
    gram = gram_in_vbasis(K)
    sigma = K.sigma
    for j in range(sigma):
        for k in range(sigma):
            assert gram[j][sigma + k] == (1 if j == k else 0)


def test_special_subspace_sigma3():
    K = special_subspace(build_disc_space(5, 3))
    assert all(x.is_zero() for x in K.a)


def test_special_subspace_in_larger_field():
    K = special_subspace(build_disc_space(5, 2, 8))
    assert all(x.is_zero() for x in K.a)


def test_wrap_term_at_minimal_degree(special_subspaces):
    # f^-1(v_(2 sigma)) = v_1 when the working field is GF(p^(2 sigma))
    K = special_subspaces[(5, 2)]
    b = vprime_coefficients(K)
    assert b[0] == 1 and all(x.is_zero() for x in b[1:])


def test_distinguished_chain(generic_K):
    K = generic_K
    for i in range(len(K.v) - 1):
        assert frob_semilinear(K.v[i], -1) == K.v[i + 1]
    assert bilinear(K.v[0], K.v[K.sigma]) == 1
    assert all(K.contains(v) for v in K.v[: K.sigma])
    assert not K.contains(K.v[K.sigma])


def test_generic_subspace(generic_K):
    K = generic_K
    assert not K.a[0].is_zero()
    assert verify_characteristic(K.space, K.basis).ok
    gram = gram_in_vbasis(K)
    assert gram[0][3] == K.a[0]
    assert gram[1][3] == 1
    assert gram[1][2].is_zero()


def test_rescaling_rule(generic_K):
    # a_i picks up xi * F^-(sigma+i)(xi) when v_1 -> xi v_1
    K = generic_K
    for xi in mu_group(K.space):
        expected = tuple(rescale_factor(xi, K.sigma, i) * a for i, a in enumerate(K.a, start=1))
        assert rescaled_a(K, xi) == expected


def test_rescaling_exponent_form(generic_K):
    K = generic_K
    p, sigma, D = K.space.p, K.sigma, K.space.working_degree
    for xi in mu_group(K.space):
        assert rescale_factor(xi, sigma, 1) == xi ** (1 + p ** ((D - sigma - 1) % D))


def test_canonical_representative_is_orbit_invariant(generic_K):
    K = generic_K
    canon = psi(K).canonical
    for xi in mu_group(K.space)[:6]:
        a2 = rescaled_a(K, xi)
        orbit = [tuple(rescale_factor(z, K.sigma, i) * a for i, a in enumerate(a2, start=1))
                 for z in mu_group(K.space)]
        assert min(orbit, key=lambda t: tuple(x.key() for x in t)) == canon
    assert zero_pattern(canon) == ZeroPattern((True,))


def test_minimal_degree_hides_nonzero_coordinates():
    assert min_working_degree(2, ZeroPattern((True,))) == 8
    assert min_working_degree(2, ZeroPattern((False,))) == 4
    space = build_disc_space(5, 2)
    assert search_subspace(space, ZeroPattern((True,)), budget=50) is None
    K = search_subspace(space, ZeroPattern((False,)), budget=50)
    assert K is not None and K.a[0].is_zero()


def test_search_sigma1():
    space = build_disc_space(5, 1)
    K = search_subspace(space, ZeroPattern(()))
    assert K.v[0] == special_subspace(space).v[0]


def test_search_limits():
    with pytest.raises(CharSpaceError):
        search_subspace(build_disc_space(5, 3), ZeroPattern.all_zero(3))
    with pytest.raises(CharSpaceError):
        search_subspace(build_disc_space(5, 2), ZeroPattern.all_zero(3))


def test_eigen_frame():
    space = build_disc_space(5, 2, 8)
    es, beta = eigen_frame(space)
    n, sigma = space.dim, space.sigma
    for j in range(n):
        for k in range(n):
            pairs = (k - j) % n == sigma
            assert bilinear(es[j], es[k]).is_zero() != pairs
    assert all(not b.is_zero() for b in beta)


def test_rejects_non_characteristic(special_subspaces):
    K = special_subspaces[(5, 2)]
    space = K.space
    with pytest.raises(CharSpaceError):
        CharSubspace.from_basis(space, [K.v[0], K.v[2]])  # not isotropic
    with pytest.raises(CharSpaceError):
        CharSubspace.from_basis(space, [K.v[0], K.v[0]])  # rank 1
    rational = [space.vector([space.ctx.from_int(x) for x in row]) for row in ([1, 0, 0, 0], [0, 1, 0, 0])]
    report = verify_characteristic(space, rational)
    assert not report.characteristic and not report.strict


def test_json_roundtrip(generic_K):
    K = generic_K
    K2 = CharSubspace.from_json(K.space, K.to_json())
    assert K2.a == K.a
    with pytest.raises(CharSpaceError):
        CharSubspace.from_json(build_disc_space(5, 2), K.to_json())


def test_pairing_is_frobenius_equivariant(generic_K):
    # b(f^-1 x, f^-1 y) = F^-1 b(x, y) along the chain
    K = generic_K
    gram = gram_in_vbasis(K)
    assert bilinear(K.v[1], K.v[3]) == frobenius(bilinear(K.v[0], K.v[2]), -1)
    assert gram[0][2] == 1


@pytest.mark.parametrize("p,sigma,D", [(5, 1, 2), (7, 1, 4), (5, 2, 4), (5, 2, 8), (5, 3, 6)])
def test_wrap_coefficients_special(p, sigma, D):
    # b_i = 0 unless i = 1 + 2me, for every admissible m
    K = special_subspace(build_disc_space(p, sigma, D))
    b = vprime_coefficients(K)
    for m in admissible_m(sigma, zero_pattern(K.a)):
        assert all(x.is_zero() for i, x in enumerate(b, start=1) if (i - 1) % (2 * m))


def test_wrap_coefficients_generic(generic_K):
    # no m >= 1 is admissible, so nothing forces b_2 or b_4 to vanish
    K = generic_K
    assert admissible_m(2, zero_pattern(K.a)) == []
    b = vprime_coefficients(K)
    vp = frob_semilinear(K.v[-1], -1)
    assert bilinear(vp, vp).is_zero()
    assert b[0] == 1 and not b[1].is_zero()
