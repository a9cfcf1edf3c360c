"""Characteristic subspaces, their distinguished bases and moduli coordinates.

For a sigma-dimensional subspace K of the space tensored with the working
field, with f the coordinatewise Frobenius:

* K is characteristic when it is totally isotropic and dim(K + f K) = sigma + 1;
* l_K is the intersection of f^i K for i = 0..sigma-1;
* K is strict when no proper rational subspace M has K inside M (x) k.

Strictness is tested by Galois descent: the smallest rational subspace
containing K is the sum of all f^i K, so K is strict iff that sum is the
whole space.  Independently, the chain v_i = f^(1-i)(v_1) for v_1 spanning
l_K is checked to span.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .discform import DiscSpace, ExtVector, bilinear, frob_semilinear
from .ffield import FieldElement, frobenius, nth_roots, poly_roots, root_of_unity
from .strata import ZeroPattern

SEARCH_BUDGET = 20_000
SEARCH_MAX_SIGMA = 2


class CharSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class CharReport:
    isotropic: bool
    characteristic: bool
    strict: bool
    chain_spans: bool
    line: ExtVector | None

    @property
    def ok(self) -> bool:
        return self.isotropic and self.characteristic and self.strict and self.chain_spans

    def to_json(self):
        return {
            "isotropic": self.isotropic,
            "characteristic": self.characteristic,
            "strict": self.strict,
            "chain_spans": self.chain_spans,
            "line": None if self.line is None else self.line.to_json(),
        }


def _rows(basis):
    return [list(v.coords) if isinstance(v, ExtVector) else list(v) for v in basis]


def _frob_rows(rows, e):
    return [[frobenius(x, e) for x in row] for row in rows]


def _normalize_line(space, row):
    lead = next(x for x in row if not x.is_zero())
    inv = lead.inv()
    return ExtVector(space, tuple(x * inv for x in row))


def chain(v1: ExtVector, length: int) -> list[ExtVector]:
    """v_1, ..., v_length with v_i = f^(1-i)(v_1)."""
    out = [v1]
    for _ in range(length - 1):
        out.append(frob_semilinear(out[-1], -1))
    return out


def verify_characteristic(space: DiscSpace, basis) -> CharReport:
    sigma, n, ctx = space.sigma, space.dim, space.ctx
    rows = [[ctx(x) for x in row] for row in _rows(basis)]
    if len(rows) != sigma or linalg.rank(rows) != sigma:
        raise CharSpaceError(f"basis must have {sigma} independent rows")
    vecs = [ExtVector(space, tuple(r)) for r in rows]

    isotropic = all(bilinear(vecs[i], vecs[j]).is_zero() for i in range(sigma) for j in range(i, sigma))
    characteristic = linalg.rank(rows + _frob_rows(rows, 1)) == sigma + 1

    line_rows = linalg.intersect([_frob_rows(rows, i) for i in range(sigma)], n, ctx)
    line = _normalize_line(space, line_rows[0]) if len(line_rows) == 1 else None

    chain_spans = False
    if line is not None:
        chain_spans = linalg.rank([list(v.coords) for v in chain(line, n)]) == n

    span = list(rows)
    r = sigma
    for e in range(1, space.working_degree):
        span = linalg.rref(span + _frob_rows(rows, e))[0]
        # no growth means the sum is already f-stable
        if len(span) == r:
            break
        r = len(span)
    strict = len(span) == n
    return CharReport(isotropic, characteristic, strict, chain_spans, line)


def _normalized_chain(space: DiscSpace, line: ExtVector) -> list[ExtVector]:
    """Scale a generator of l_K so that v_1 . v_(sigma+1) = 1.

    With c the raw pairing, t * v_1 pairs to t * F^-sigma(t) * c, so t solves
    t^(1 + p^(D - sigma)) = 1/c; the smallest root in canonical order is used.
    """
    sigma, n = space.sigma, space.dim
    vs = chain(line, n)
    c = bilinear(vs[0], vs[sigma])
    if c.is_zero():
        raise CharSpaceError("v_1 . v_(sigma+1) vanishes; the pairing is degenerate on the chain")
    D = space.working_degree
    roots = nth_roots(c.inv(), 1 + space.p ** (D - sigma))
    if not roots:
        raise CharSpaceError("normalising scalar not found in the working field; raise the working degree")
    return chain(roots[0] * line, n)


def a_vector_from_chain(vs: list[ExtVector], sigma: int) -> tuple:
    """a_i = v_1 . v_(sigma+1+i) for i = 1..sigma-1."""
    return tuple(bilinear(vs[0], vs[sigma + i]) for i in range(1, sigma))


@dataclass(frozen=True, eq=False)
class CharSubspace:
    space: DiscSpace
    basis: tuple  # of ExtVector
    v: tuple  # distinguished basis v_1..v_(2 sigma)
    a: tuple  # a_1..a_(sigma-1)

    @classmethod
    def from_basis(cls, space: DiscSpace, basis) -> CharSubspace:
        report = verify_characteristic(space, basis)
        missing = [k for k in ("isotropic", "characteristic", "strict", "chain_spans") if not getattr(report, k)]
        if missing:
            raise CharSpaceError("not a strictly characteristic subspace: fails " + ", ".join(missing))
        ctx = space.ctx
        vecs = tuple(ExtVector(space, tuple(ctx(x) for x in row)) for row in _rows(basis))
        vs = _normalized_chain(space, report.line)
        K = cls(space, vecs, tuple(vs), a_vector_from_chain(vs, space.sigma))
        gram_in_vbasis(K)
        return K

    @property
    def sigma(self) -> int:
        return self.space.sigma

    def contains(self, w: ExtVector) -> bool:
        return linalg.in_span([list(b.coords) for b in self.basis], list(w.coords))

    def to_json(self):
        return {
            "p": self.space.p,
            "sigma": self.sigma,
            "D": self.space.working_degree,
            "basis": [b.to_json() for b in self.basis],
        }

    @classmethod
    def from_json(cls, space: DiscSpace, obj) -> CharSubspace:
        if (obj["p"], obj["sigma"], obj["D"]) != (space.p, space.sigma, space.working_degree):
            raise CharSpaceError("serialized subspace does not match the space")
        ctx = space.ctx
        return cls.from_basis(space, [[ctx.from_coeffs(c) for c in row] for row in obj["basis"]])


def distinguished_basis(K: CharSubspace) -> tuple:
    return K.v


def gram_in_vbasis(K: CharSubspace):
    """Gram matrix in v_1..v_(2 sigma), checked against the block shape
    [[0, A], [A^t, 0]] with A unipotent upper triangular and
    A[j][j+i] = F^(-j)(a_i) (0-based j)."""
    space, sigma = K.space, K.sigma
    vmat = [list(v.coords) for v in K.v]
    gram = linalg.matmul(linalg.matmul(vmat, space.gram_ext()), linalg.transpose(vmat))
    check_block_shape(gram, K.a, sigma)
    return gram


def check_block_shape(gram, a, sigma):
    n = 2 * sigma

    def fail(msg):
        raise CharSpaceError("intersection matrix shape: " + msg)

    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                fail(f"not symmetric at ({i}, {j})")
    for i in range(sigma):
        for j in range(sigma):
            if not gram[i][j].is_zero() or not gram[sigma + i][sigma + j].is_zero():
                fail(f"diagonal block nonzero at ({i}, {j})")
    for j in range(sigma):
        row = gram[j][sigma:]
        if row[j] != 1:
            fail(f"A[{j}][{j}] != 1")
        for k in range(j):
            if not row[k].is_zero():
                fail(f"A[{j}][{k}] below the diagonal is nonzero")
        for i in range(1, sigma - j):
            if row[j + i] != frobenius(a[i - 1], -j):
                fail(f"A[{j}][{j + i}] != F^-{j}(a_{i})")


def zero_pattern(a) -> ZeroPattern:
    return ZeroPattern(tuple(not x.is_zero() for x in a))


@dataclass(frozen=True)
class PsiResult:
    a: tuple
    canonical: tuple

    def to_json(self):
        return {"a": [x.to_json() for x in self.a], "canonical": [x.to_json() for x in self.canonical]}


def rescale_factor(xi: FieldElement, sigma: int, i: int) -> FieldElement:
    """Factor picked up by a_i when v_1 is replaced by xi * v_1."""
    return xi * frobenius(xi, -(sigma + i))


def mu_group(space: DiscSpace) -> list[FieldElement]:
    """The (p^sigma + 1)-th roots of unity, as powers of a fixed generator."""
    n = space.p**space.sigma + 1
    z = root_of_unity(space.ctx, n)
    out = [space.ctx.one]
    for _ in range(n - 1):
        out.append(out[-1] * z)
    return out


def psi(K: CharSubspace) -> PsiResult:
    """Moduli coordinates and the canonical representative of their orbit
    under rescaling v_1 by (p^sigma + 1)-th roots of unity."""
    sigma = K.sigma
    if sigma == 1:
        return PsiResult((), ())
    best = None
    for xi in mu_group(K.space):
        cand = tuple(rescale_factor(xi, sigma, i) * ai for i, ai in enumerate(K.a, start=1))
        key = tuple(x.key() for x in cand)
        if best is None or key < best[0]:
            best = (key, cand)
    return PsiResult(K.a, best[1])


def vprime_coefficients(K: CharSubspace) -> list[FieldElement]:
    """Coordinates b_i of f^-1(v_(2 sigma)) in the distinguished basis."""
    space = K.space
    target = frob_semilinear(K.v[-1], -1)
    vt = linalg.transpose([list(v.coords) for v in K.v])
    inv = linalg.inverse(vt, space.ctx)
    return linalg.matvec(inv, list(target.coords))


def _modulus_roots(space: DiscSpace):
    base, ctx = space.base, space.ctx
    if ctx is base:
        # the generator first, then its conjugates
        return [frobenius(base.gen, j) for j in range(base.d)]
    return poly_roots([ctx.from_int(c) for c in base.modulus])


def eigenline(space: DiscSpace, root: FieldElement) -> ExtVector:
    """Kernel of (M_theta - root) where M_theta multiplies by the base generator."""
    ctx = space.ctx
    mt = space.multiplication_matrix(space.base.gen)
    rows = [[ctx.from_int(mt[r][s]) - (root if r == s else ctx.zero) for s in range(space.dim)]
            for r in range(space.dim)]
    ker = linalg.nullspace(rows, space.dim, ctx)
    if len(ker) != 1:
        raise CharSpaceError(f"eigenspace has dimension {len(ker)}, expected 1")
    return _normalize_line(space, ker[0])


def special_subspace(space: DiscSpace) -> CharSubspace:
    """The subspace spanned by v_1..v_sigma, v_1 an eigenvector of
    multiplication by the field generator; all a_i vanish."""
    v1 = eigenline(space, _modulus_roots(space)[0])
    K = CharSubspace.from_basis(space, chain(v1, space.sigma))
    if any(not x.is_zero() for x in K.a):
        raise CharSpaceError("eigenline construction produced nonzero moduli coordinates")
    return K


def eigen_frame(space: DiscSpace):
    """Eigenvectors e_j = f^j(e_0), j = 0..2 sigma - 1, of multiplication by the
    base generator, and beta_j = b(e_j, e_(j+sigma)).

    e_0 is defined over GF(p^(2 sigma)), so f^(2 sigma) fixes it and f permutes
    the frame cyclically.  Only e_j and e_(j+sigma) pair nontrivially.
    """
    n, sigma = space.dim, space.sigma
    es = [eigenline(space, _modulus_roots(space)[0])]
    for _ in range(n - 1):
        es.append(frob_semilinear(es[-1], 1))
    if frob_semilinear(es[-1], 1) != es[0]:
        raise CharSpaceError("eigen frame is not cyclic under f")
    beta = [bilinear(es[j], es[(j + sigma) % n]) for j in range(n)]
    return es, beta


def min_working_degree(sigma: int, pattern: ZeroPattern) -> int:
    """Smallest working degree at which the pattern can occur.

    Over GF(p^(2 sigma)) one has f^(2 sigma) = id, hence
    a_i = F^(sigma-i)(v_1 . v_(sigma-i+1)) = 0 by isotropy of K: only the
    all-zero pattern is visible there.
    """
    return 2 * sigma if not any(pattern.nonzero) else 4 * sigma


def _random_element(ctx, rng):
    return ctx.from_coeffs([rng.randrange(ctx.p) for _ in range(ctx.d)])


def _sigma2_candidates(space: DiscSpace, rng: random.Random, budget: int):
    """Solutions of b(v, v) = b(v, f^-1 v) = 0 for v = sum c_j e_j, sigma = 2.

    With c_0 = 1 and c_1 drawn at random, b(v, v) = 0 is linear in c_2 and
    gives c_2 = -beta_1 c_1 c_3 / beta_0.  Writing c_3 = y^p, the second
    condition becomes a polynomial of degree p + 1 in y.
    """
    es, beta = eigen_frame(space)
    ctx, p = space.ctx, space.p
    b0, b1, b2, b3 = beta
    for _ in range(budget):
        c1 = _random_element(ctx, rng)
        if c1.is_zero():
            continue
        kappa = -(b1 * c1) / b0  # c_2 = kappa * c_3
        poly = [ctx.zero] * (p + 2)
        poly[0] = b1 * c1
        poly[1] = b0
        poly[p] = b2 * kappa * frobenius(c1, -1)
        poly[p + 1] = b3 * frobenius(kappa, -1)
        if all(c.is_zero() for c in poly[1:]):
            continue
        for y in poly_roots(poly):
            c3 = y**p
            coeffs = [ctx.one, c1, kappa * c3, c3]
            v = es[0]
            for c, e in zip(coeffs[1:], es[1:]):
                v = v + c * e
            yield v


def _candidates(space: DiscSpace, rng: random.Random, budget: int):
    """Eigenlines first (all a_i = 0), then solved generators for sigma = 2."""
    for root in _modulus_roots(space):
        yield eigenline(space, root)
    if space.sigma == 2:
        yield from _sigma2_candidates(space, rng, budget)


def search_subspace(space: DiscSpace, pattern: ZeroPattern, seed: int = 0,
                    budget: int = SEARCH_BUDGET, max_sigma: int = SEARCH_MAX_SIGMA) -> CharSubspace | None:
    """First strictly characteristic K (in candidate order) whose moduli
    coordinates have the requested vanishing pattern, or None.

    Candidates whose normalising scalar lies outside the working field are
    skipped.  A pattern that cannot occur at the space's working degree
    returns None without searching.
    """
    sigma = space.sigma
    if sigma > max_sigma:
        raise CharSpaceError(f"search is limited to sigma <= {max_sigma}")
    if pattern.sigma != sigma:
        raise CharSpaceError("pattern length does not match sigma")
    if space.working_degree < min_working_degree(sigma, pattern):
        return None
    rng = random.Random(seed)
    for v in _candidates(space, rng, budget):
        vs = chain(v, sigma)
        if any(not bilinear(v, w).is_zero() for w in vs):
            continue
        try:
            K = CharSubspace.from_basis(space, vs)
        except CharSpaceError:
            continue
        if zero_pattern(K.a) == pattern:
            return K
    return None
