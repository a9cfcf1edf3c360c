"""End-to-end invariant suites behind ``ssk3 verify``."""

from __future__ import annotations

import random

from . import arith, latred
from .charspace import (
    CharSubspace,
    gram_in_vbasis,
    min_working_degree,
    psi,
    search_subspace,
    special_subspace,
    verify_characteristic,
    zero_pattern,
)
from .discform import (
    bilinear,
    build_disc_space,
    frob_semilinear,
    has_totally_isotropic_subspace,
    isotropic_vector_count,
    nonsplit_isotropic_count,
)
from .ffield import field_create, frobenius, mult_order, root_of_unity
from .oracle import eigenvalue_constraints, enumerate_index
from .strata import ZeroPattern, nonsymplectic_index, render_table, table1


class Checks:
    def __init__(self, suite):
        self.suite = suite
        self.results = []

    def check(self, name, ok, **detail):
        self.results.append({"suite": self.suite, "check": name, "passed": bool(ok), **detail})

    @property
    def passed(self):
        return all(r["passed"] for r in self.results)


def _random_elements(ctx, rng, k):
    return [ctx.from_coeffs([rng.randrange(ctx.p) for _ in range(ctx.d)]) for _ in range(k)]


def suite_fields(p=5, d=4, seed=0, samples=30):
    c = Checks("fields")
    ctx = field_create(p, d)
    rng = random.Random(seed)
    xs = _random_elements(ctx, rng, samples)
    ys = _random_elements(ctx, rng, samples)
    zs = _random_elements(ctx, rng, samples)
    c.check("associativity", all((x * y) * z == x * (y * z) for x, y, z in zip(xs, ys, zs)))
    c.check("distributivity", all(x * (y + z) == x * y + x * z for x, y, z in zip(xs, ys, zs)))
    c.check("inverses", all(x * x.inv() == 1 for x in xs if x))
    c.check("frobenius_additive", all(frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1) for x, y in zip(xs, ys)))
    c.check("frobenius_multiplicative", all(frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1) for x, y in zip(xs, ys)))
    c.check("frobenius_period", all(frobenius(x, d) == x for x in xs))
    c.check("order_divides", all((ctx.order - 1) % mult_order(x) == 0 for x in xs if x))
    divisors = [n for n in range(1, ctx.order) if (ctx.order - 1) % n == 0]
    c.check("roots_of_unity", all(mult_order(root_of_unity(ctx, n)) == n for n in divisors))
    return c


def suite_discform(p=5, sigma=2, seed=0, samples=10):
    c = Checks("discform")
    space = build_disc_space(p, sigma)
    count = isotropic_vector_count(space)
    c.check("zero_count", count == nonsplit_isotropic_count(p, sigma), count=count)
    c.check("no_half_dimensional_isotropic", not has_totally_isotropic_subspace(space, sigma))
    n_roots = p**sigma + 1
    zeta = root_of_unity(space.base, n_roots)
    m = space.multiplication_matrix(zeta)
    g = space.gram
    mtgm = [[sum(m[k][i] * g[k][l] * m[l][j] for k in range(space.dim) for l in range(space.dim)) % p
             for j in range(space.dim)] for i in range(space.dim)]
    c.check("norm_one_multiplication_isometry", tuple(map(tuple, mtgm)) == g)
    rng = random.Random(seed)
    ctx = space.ctx
    ok = True
    for _ in range(samples):
        u = space.vector(_random_elements(ctx, rng, space.dim))
        w = space.vector(_random_elements(ctx, rng, space.dim))
        ok &= frobenius(bilinear(u, w), -1) == bilinear(frob_semilinear(u, -1), frob_semilinear(w, -1))
        ok &= bilinear(u, w) == bilinear(w, u)
    c.check("rationality_and_symmetry", ok)
    return c


def _check_subspace(c, K, label):
    report = verify_characteristic(K.space, K.basis)
    c.check(f"{label}:invariants", report.ok)
    gram_in_vbasis(K)
    c.check(f"{label}:block_shape", True)
    c.check(f"{label}:chain", all(frob_semilinear(K.v[i], -1) == K.v[i + 1] for i in range(len(K.v) - 1)))
    c.check(f"{label}:normalised", bilinear(K.v[0], K.v[K.sigma]) == 1)


def suite_charspace(p=5, sigma=2, seed=0, quick=False):
    c = Checks("charspace")
    space = build_disc_space(p, sigma)
    K = special_subspace(space)
    _check_subspace(c, K, "special")
    c.check("special:a_zero", all(x.is_zero() for x in K.a))
    if sigma == 2 and not quick:
        pattern = ZeroPattern((True,))
        big = build_disc_space(p, sigma, min_working_degree(sigma, pattern))
        G = search_subspace(big, pattern, seed=seed, budget=500)
        c.check("generic:found", G is not None)
        if G is not None:
            _check_subspace(c, G, "generic")
            c.check("generic:pattern", zero_pattern(psi(G).canonical) == pattern)
    return c


def suite_strata():
    c = Checks("strata")
    for sigma, strata in table1():
        for s in strata:
            if s.m:
                c.check(f"sigma={sigma},m={s.m}:divides", all((q**sigma + 1) % (q**s.m + 1) == 0 for q in (5, 7, 11, 13)))
    for p in (5, 7, 11):
        for sigma in range(1, 11):
            for bits in range(2 ** (sigma - 1)):
                pat = ZeroPattern(tuple(bool(bits >> i & 1) for i in range(sigma - 1)))
                r = nonsymplectic_index(p, sigma, pat)
                if r.index % 2 or (p**sigma + 1) % r.index:
                    c.check(f"p={p},sigma={sigma},pattern={pat.to_json()}", False, index=r.index)
    c.check("even_and_divides", True)
    c.check("table_rows", len(render_table().splitlines()) == 2 + sum(len(s) for _, s in table1()))
    return c


def _oracle_checks(c, K, label):
    r = enumerate_index(K)
    crit = nonsymplectic_index(K.space.p, K.sigma, zero_pattern(psi(K).canonical)).index
    c.check(f"{label}:agrees", r.index == crit, oracle=r.index, criterion=crit)
    c.check(f"{label}:minus_id", r.contains_minus_id)
    c.check(f"{label}:even_divides", r.index % 2 == 0 and (K.space.p**K.sigma + 1) % r.index == 0)
    ok = True
    for g in r.kept:
        ec = eigenvalue_constraints(g.xi, K.sigma)
        ok &= g.apply(K.v[K.sigma]) == g.xi.inv() * K.v[K.sigma]
        ok &= ec.n == mult_order(g.xi)
    c.check(f"{label}:eigen_relations", ok)
    return r


def suite_oracle(seed=0, quick=False):
    c = Checks("oracle")
    for p in (5, 7, 11):
        _oracle_checks(c, special_subspace(build_disc_space(p, 1)), f"special({p},1)")
    _oracle_checks(c, special_subspace(build_disc_space(5, 2)), "special(5,2)")
    if not quick:
        pattern = ZeroPattern((True,))
        space = build_disc_space(5, 2, min_working_degree(2, pattern))
        K = search_subspace(space, pattern, seed=seed, budget=500)
        c.check("generic(5,2):found", K is not None)
        if K is not None:
            _oracle_checks(c, K, "generic(5,2)")
    return c


def suite_arith():
    c = Checks("arith")
    c.check("max_index_66", max(arith.admissible_complex_indices(20)) == 66)
    c.check("phi_66", arith.euler_phi(66) == 20)
    c.check("deg_phi", all(len(arith.cyclotomic_poly(n)) - 1 == arith.euler_phi(n) for n in range(1, 201)))
    c.check("artin_3", arith.residue_classes_for_artin(38, 3) == [27, 31])
    c.check("artin_1", arith.residue_classes_for_artin(38, 1) == [37])
    c.check("invalid_19", arith.classify_reduction(38, 19).outcome == "invalid")
    return c


def suite_latred(bound=1):
    c = Checks("latred")
    for name in latred.NAMED_LATTICES:
        L = latred.named_lattice(name)
        group = latred.disc_group(L)
        c.check(f"{name}:order", group.order == abs(L.det()))
        for norm, reflect in ((-2, latred.reflect_minus2), (2, latred.reflect_plus2)):
            for v in latred.short_vectors(L, norm, bound):
                R = reflect(L, v)
                sq = [[sum(R[i][k] * R[k][j] for k in range(L.rank)) for j in range(L.rank)] for i in range(L.rank)]
                ok = L.preserves(R) and sq == latred._ident(L.rank) and latred.acts_trivially_on_disc(L, R)
                if not ok:
                    c.check(f"{name}:reflection{v}", False)
        c.check(f"{name}:reflections", True)
    return c


SUITES = ("fields", "discform", "charspace", "strata", "oracle", "arith", "latred")


def run_suite(name, p=None, sigma=None, d=None, seed=0, quick=False):
    if name == "fields":
        return [suite_fields(p or 5, d or 4, seed)]
    if name == "discform":
        return [suite_discform(p or 5, sigma or 2, seed)]
    if name == "charspace":
        return [suite_charspace(p or 5, sigma or 2, seed, quick)]
    if name == "strata":
        return [suite_strata()]
    if name == "oracle":
        return [suite_oracle(seed, quick)]
    if name == "arith":
        return [suite_arith()]
    if name == "latred":
        return [suite_latred()]
    if name == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, seed=seed, quick=quick)
        return out
    raise ValueError(f"unknown suite {name!r}")
