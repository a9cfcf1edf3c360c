"""Integral lattices: Smith normal form, discriminant groups and reflections
in vectors of norm -2 and +2.

Isometries are integer matrices acting on column coordinate vectors, so R
preserves the Gram matrix G when R^t G R = G.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import Matrix


class LatticeError(ValueError):
    pass


def _ident(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _mat(a):
    return [list(map(int, row)) for row in a]


def smith_normal_form(M):
    """(D, U, V) with U M V = D, U and V unimodular, D diagonal with
    nonnegative entries d_1 | d_2 | ..."""
    A = _mat(M)
    n, m = len(A), len(A[0]) if A else 0
    U, V = _ident(n), _ident(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(n, m)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, m) if A[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = A[t][t]
            done = True
            for i in range(t + 1, n):
                q = A[i][t] // piv
                if q:
                    add_row(i, t, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, m):
                q = A[t][j] // piv
                if q:
                    add_col(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


@dataclass(frozen=True)
class IntegralLattice:
    gram: tuple

    def __post_init__(self):
        g = self.gram
        if any(len(row) != len(g) for row in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(len(g)) for j in range(len(g))):
            raise LatticeError("Gram matrix must be symmetric")

    @classmethod
    def from_gram(cls, gram) -> IntegralLattice:
        return cls(tuple(tuple(int(x) for x in row) for row in gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def det(self) -> int:
        return int(Matrix(self.gram).det()) if self.rank else 1

    def dot(self, x, y):
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def preserves(self, R) -> bool:
        g = np.array(self.gram, dtype=object)
        r = np.array(R, dtype=object)
        return (r.T.dot(g).dot(r) == g).all()

    def to_json(self):
        return [list(row) for row in self.gram]


@dataclass(frozen=True)
class DiscGroup:
    factors: tuple  # d_1 | d_2 | ..., all > 1
    generators: tuple  # dual vectors as tuples of Fractions, lattice coordinates
    form: tuple  # b(g_i, g_j) mod 1
    quadratic: tuple | None  # q(g_i) mod 2, even lattices only

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    def to_json(self):
        return {
            "factors": list(self.factors),
            "form": [[str(x) for x in row] for row in self.form],
            "quadratic": None if self.quadratic is None else [str(x) for x in self.quadratic],
        }


def disc_group(L: IntegralLattice) -> DiscGroup:
    """L^*/L from the Smith form U G V = D: the columns of V divided by the
    invariant factors generate the dual modulo L."""
    D, U, V = smith_normal_form(L.gram)
    n = L.rank
    diag = [D[i][i] for i in range(n)]
    if any(d == 0 for d in diag):
        raise LatticeError("Gram matrix is degenerate")
    gens, factors = [], []
    for k, d in enumerate(diag):
        if d > 1:
            gens.append(tuple(Fraction(V[i][k], d) for i in range(n)))
            factors.append(d)
    form = tuple(tuple(_frac_mod(L.dot(a, b), 1) for b in gens) for a in gens)
    quad = tuple(_frac_mod(L.dot(a, a), 2) for a in gens) if L.is_even else None
    return DiscGroup(tuple(factors), tuple(gens), form, quad)


def _frac_mod(x, m):
    x = Fraction(x)
    return x - m * (x.numerator // (x.denominator * m))


def induced_disc_action(L: IntegralLattice, R, group: DiscGroup | None = None):
    """Images of the discriminant generators under R, as coordinate vectors
    modulo the invariant factors."""
    group = group or disc_group(L)
    D, U, V = smith_normal_form(L.gram)
    # z = D V^-1 w recovers generator coordinates of a dual vector w
    Vinv = _unimodular_inverse(V)
    diag = [D[i][i] for i in range(L.rank)]
    idx = [k for k, d in enumerate(diag) if d > 1]
    images = []
    for g in group.generators:
        w = [sum(Fraction(R[i][j]) * g[j] for j in range(L.rank)) for i in range(L.rank)]
        z = [diag[k] * sum(Vinv[k][j] * w[j] for j in range(L.rank)) for k in range(L.rank)]
        if any(Fraction(x).denominator != 1 for x in z):
            raise LatticeError("image is not in the dual lattice")
        images.append(tuple(int(z[k]) % diag[k] for k in idx))
    return images


def acts_trivially_on_disc(L: IntegralLattice, R) -> bool:
    group = disc_group(L)
    images = induced_disc_action(L, R, group)
    k = len(group.factors)
    return all(img == tuple(int(i == j) for j in range(k)) for i, img in enumerate(images))


def _unimodular_inverse(V):
    n = len(V)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise LatticeError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def _reflection(L, v, sign):
    n = L.rank
    gv = [sum(L.gram[j][k] * v[k] for k in range(n)) for j in range(n)]  # G v
    return [[int(i == j) + sign * v[i] * gv[j] for j in range(n)] for i in range(n)]


def reflect_minus2(L: IntegralLattice, v) -> list[list[int]]:
    """s_v(w) = w + (v.w) v for v.v = -2."""
    if L.dot(v, v) != -2:
        raise LatticeError(f"v.v = {L.dot(v, v)}, expected -2")
    return _reflection(L, v, 1)


def reflect_plus2(L: IntegralLattice, u) -> list[list[int]]:
    """t_u(w) = w - (w.u) u for u.u = 2; sends u to -u."""
    if L.dot(u, u) != 2:
        raise LatticeError(f"u.u = {L.dot(u, u)}, expected 2")
    return _reflection(L, u, -1)


def short_vectors(L: IntegralLattice, norm: int, bound: int = 1):
    """Vectors with entries in [-bound, bound] and v.v = norm (one of each +-pair)."""
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=L.rank):
        if not any(v):
            continue
        first = next(x for x in v if x)
        if first < 0:
            continue
        if L.dot(v, v) == norm:
            out.append(v)
    return out


def _block(*grams):
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    off = 0
    for g in grams:
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(g)
    return out


_A1 = [[-2]]
_U = [[0, 1], [1, 0]]
_A2 = [[-2, 1], [1, -2]]
_A4 = [[-2, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 1], [0, 0, 1, -2]]
# negative definite E8, Bourbaki numbering
_E8 = [
    [-2, 0, 1, 0, 0, 0, 0, 0],
    [0, -2, 0, 1, 0, 0, 0, 0],
    [1, 0, -2, 1, 0, 0, 0, 0],
    [0, 1, 1, -2, 1, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 0, 0, 1, -2],
]

NAMED_LATTICES = {
    "A1": _A1,
    "A1+": [[2]],
    "U": _U,
    "U+A1": _block(_U, _A1),
    "A1+A1": _block(_A1, _A1),
    "A2": _A2,
    "A4": _A4,
    "U+A4": _block(_U, _A4),
    "E8": _E8,
    "U(5)+A1": _block([[0, 5], [5, 0]], _A1),
}


def named_lattice(name: str) -> IntegralLattice:
    try:
        return IntegralLattice.from_gram(NAMED_LATTICES[name])
    except KeyError:
        raise LatticeError(f"unknown lattice {name!r}; known: {', '.join(NAMED_LATTICES)}") from None
