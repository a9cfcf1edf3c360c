"""The non-split quadratic space of dimension 2*sigma over F_p.

The space is modelled on GF(p^(2 sigma)) viewed as F_p^(2 sigma) in the power
basis of the canonical modulus, with bilinear form

    b(x, y) = Tr(lam * x * y^(p^sigma))

for the first nonzero lam in GF(p^sigma) (canonical order) whose form passes
the self-checks.  Multiplication by any element of norm one is then an
isometry, and the isotropic-vector count certifies the non-split type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from sympy import legendre_symbol

from .ffield import FieldCtx, FieldElement, FieldError, field_create, frobenius

ENUMERATION_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


class DiscFormError(ValueError):
    pass


def nonsplit_isotropic_count(p: int, sigma: int) -> int:
    """Number of x with q(x) = 0 in the 2*sigma dimensional non-split space."""
    return p ** (2 * sigma - 1) - p**sigma + p ** (sigma - 1)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def det_mod_p(mat, p: int) -> int:
    a = [[x % p for x in row] for row in mat]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def field_trace(x: FieldElement) -> int:
    """Absolute trace to F_p, returned as an int."""
    acc = x
    for e in range(1, x.ctx.d):
        acc = acc + frobenius(x, e)
    if any(acc.coeffs[1:]):
        raise FieldError("trace landed outside the prime field")
    return acc.coeffs[0]


@dataclass(frozen=True, eq=False)
class DiscSpace:
    p: int
    sigma: int
    gram: tuple  # tuple of tuples of ints mod p
    base: FieldCtx  # GF(p^(2 sigma)), the underlying set
    ctx: FieldCtx  # working field GF(p^D)
    lam: FieldElement
    _gram_ext: list = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return 2 * self.sigma

    @property
    def working_degree(self) -> int:
        return self.ctx.d

    def gram_ext(self):
        """Gram matrix with entries in the working field."""
        if self._gram_ext is None:
            object.__setattr__(self, "_gram_ext", [[self.ctx.from_int(x) for x in row] for row in self.gram])
        return self._gram_ext

    def q(self, x) -> int:
        """b(x, x) for an integer vector."""
        g = self.gram
        return sum(x[r] * g[r][s] * x[s] for r in range(self.dim) for s in range(self.dim)) % self.p

    def b_int(self, x, y) -> int:
        g = self.gram
        return sum(x[r] * g[r][s] * y[s] for r in range(self.dim) for s in range(self.dim)) % self.p

    def vector(self, coords) -> ExtVector:
        return ExtVector(self, tuple(self.ctx(c) for c in coords))

    def zero_vector(self) -> ExtVector:
        return ExtVector(self, (self.ctx.zero,) * self.dim)

    def multiplication_matrix(self, z: FieldElement):
        """Matrix over F_p of x -> z*x on the underlying set (columns are images
        of the power basis)."""
        if z.ctx != self.base:
            raise FieldError("multiplier must live in the base field")
        cols = [(z * self.base.from_coeffs([0] * s + [1])).coeffs for s in range(self.dim)]
        return [[cols[s][r] for s in range(self.dim)] for r in range(self.dim)]

    def to_json(self):
        return {
            "p": self.p,
            "sigma": self.sigma,
            "D": self.working_degree,
            "lambda": self.lam.to_json(),
            "gram": [list(row) for row in self.gram],
        }


@dataclass(frozen=True, eq=False)
class ExtVector:
    """A vector of the space tensored with the working field, in rational
    coordinates."""

    space: DiscSpace
    coords: tuple

    def _check(self, other):
        if other.space is not self.space:
            raise DiscFormError("vectors belong to different spaces")

    def __add__(self, other):
        self._check(other)
        return ExtVector(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return ExtVector(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return ExtVector(self.space, tuple(-a for a in self.coords))

    def __rmul__(self, c):
        return ExtVector(self.space, tuple(c * a for a in self.coords))

    def __eq__(self, other):
        if not isinstance(other, ExtVector):
            return NotImplemented
        return self.space is other.space and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def to_json(self):
        return [c.to_json() for c in self.coords]


def _gram_for(base: FieldCtx, sigma: int, lam: FieldElement):
    n = 2 * sigma
    powers = [base.one]
    for _ in range(n - 1):
        powers.append(powers[-1] * base.gen)
    twisted = [frobenius(x, sigma) for x in powers]
    return tuple(tuple(field_trace(lam * powers[r] * twisted[s]) for s in range(n)) for r in range(n))


def _gram_ok(gram, p, sigma, budget):
    n = 2 * sigma
    if any(gram[r][s] != gram[s][r] for r in range(n) for s in range(n)):
        return False
    det = det_mod_p(gram, p)
    if det == 0:
        return False
    # non-split: (-1)^sigma * det is a non-residue
    if legendre_symbol((-1) ** sigma * det % p, p) != -1:
        return False
    if p**n <= budget:
        return _count_isotropic(gram, p) == nonsplit_isotropic_count(p, sigma)
    return True


def build_disc_space(p: int, sigma: int, D: int | None = None, *, allow_small_p: bool = False,
                     budget: int = ENUMERATION_BUDGET) -> DiscSpace:
    if not 1 <= sigma <= 10:
        raise DiscFormError(f"sigma must be in 1..10, got {sigma}")
    base = field_create(p, 2 * sigma, allow_small_p=allow_small_p)
    if D is None:
        D = 2 * sigma
    if D % (2 * sigma):
        raise DiscFormError(f"working degree {D} is not a multiple of 2*sigma = {2 * sigma}")
    ctx = base if D == 2 * sigma else field_create(p, D, allow_small_p=allow_small_p)
    q = p**sigma
    for lam in base.elements():
        if lam.is_zero() or lam**q != lam:
            continue
        gram = _gram_for(base, sigma, lam)
        if _gram_ok(gram, p, sigma, budget):
            return DiscSpace(p, sigma, gram, base, ctx, lam)
    raise DiscFormError(f"no scaling passed the discriminant self-check for p={p}, sigma={sigma}")


def bilinear(u: ExtVector, w: ExtVector) -> FieldElement:
    u._check(w)
    g = u.space.gram
    ctx = u.space.ctx
    acc = ctx.zero
    for r, ur in enumerate(u.coords):
        if ur.is_zero():
            continue
        inner = ctx.zero
        for s, ws in enumerate(w.coords):
            if g[r][s] and not ws.is_zero():
                inner = inner + g[r][s] * ws
        acc = acc + ur * inner
    return acc


def frob_semilinear(x: ExtVector, e: int) -> ExtVector:
    """id (x) Frobenius^e, coordinatewise in the rational basis."""
    return ExtVector(x.space, tuple(frobenius(c, e) for c in x.coords))


def _count_isotropic(gram, p) -> int:
    n = len(gram)
    g = np.array(gram, dtype=np.int64)
    pts = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    vals = np.einsum("ij,jk,ik->i", pts, g, pts) % p
    return int(np.count_nonzero(vals == 0))


def isotropic_vector_count(space: DiscSpace, budget: int = ENUMERATION_BUDGET) -> int:
    """Exact number of x in F_p^(2 sigma) with b(x, x) = 0, zero included."""
    if space.p**space.dim > budget:
        raise BudgetExceeded(f"{space.p}^{space.dim} vectors exceeds budget {budget}")
    return _count_isotropic(space.gram, space.p)


def _echelon_shapes(n, k):
    """Pivot tuples for k x n reduced echelon matrices."""
    return itertools.combinations(range(n), k)


def find_totally_isotropic_subspace(space: DiscSpace, dim: int, budget: int = ENUMERATION_BUDGET):
    """Rows of a totally isotropic F_p-subspace of the given dimension, or None.

    Each subspace is visited once through its reduced row echelon form; rows
    are filled one at a time and pruned as soon as a pairing is nonzero.
    """
    n, p = space.dim, space.p
    if not 0 <= dim <= n:
        raise DiscFormError(f"subspace dimension {dim} out of range")
    if gaussian_binomial(n, dim, p) > budget:
        raise BudgetExceeded(f"{gaussian_binomial(n, dim, p)} subspaces exceeds budget {budget}")
    if dim == 0:
        return []
    for pivots in _echelon_shapes(n, dim):
        pivot_set = set(pivots)
        free = [[c for c in range(piv + 1, n) if c not in pivot_set] for piv in pivots]
        found = _fill_rows(space, pivots, free, [])
        if found is not None:
            return found
    return None


def _fill_rows(space, pivots, free, rows):
    i = len(rows)
    if i == len(pivots):
        return rows
    p, n = space.p, space.dim
    for values in itertools.product(range(p), repeat=len(free[i])):
        row = [0] * n
        row[pivots[i]] = 1
        for c, v in zip(free[i], values):
            row[c] = v
        if space.q(row):
            continue
        if any(space.b_int(row, prev) for prev in rows):
            continue
        found = _fill_rows(space, pivots, free, rows + [row])
        if found is not None:
            return found
    return None


def has_totally_isotropic_subspace(space: DiscSpace, dim: int, budget: int = ENUMERATION_BUDGET) -> bool:
    return find_totally_isotropic_subspace(space, dim, budget) is not None


def count_subspaces_scanned(space: DiscSpace, dim: int) -> int:
    return gaussian_binomial(space.dim, dim, space.p)
