"""Brute-force non-symplectic index of a characteristic subspace.

Every automorphism acts on the discriminant space diagonally in the
distinguished basis, v_i -> F^(1-i)(xi) v_i, and conversely every such map
that is orthogonal, defined over F_p and stabilises K is realised by an
automorphism.  So the index is the number of xi in mu_(p^sigma + 1) whose
diagonal map passes the three checks; this module counts them directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .charspace import CharSubspace, mu_group
from .discform import BudgetExceeded, ExtVector
from .ffield import FieldElement, FieldError, frobenius, mult_order

ORACLE_BUDGET = 100_000


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EigenIsometry:
    xi: FieldElement
    matrix: list  # acts on column vectors in the rational basis
    orthogonal: bool
    rational: bool
    preserves_K: bool

    @property
    def admissible(self) -> bool:
        return self.orthogonal and self.rational and self.preserves_K

    def apply(self, w: ExtVector) -> ExtVector:
        return ExtVector(w.space, tuple(linalg.matvec(self.matrix, list(w.coords))))


def _change_of_basis(K: CharSubspace):
    cols = linalg.transpose([list(v.coords) for v in K.v])
    return cols, linalg.inverse(cols, K.space.ctx)


def build_eigen_isometry(K: CharSubspace, xi: FieldElement, _basis=None) -> EigenIsometry:
    """The map v_i -> F^(1-i)(xi) v_i, written in the rational basis, with its
    orthogonality / rationality / K-stability flags."""
    space = K.space
    if xi.is_zero():
        raise OracleError("eigenvalue must be nonzero")
    P, P_inv = _basis or _change_of_basis(K)
    n = space.dim
    diag = [frobenius(xi, -i) for i in range(n)]
    scaled = [[P[r][c] * diag[c] for c in range(n)] for r in range(n)]
    g = linalg.matmul(scaled, P_inv)

    gram = space.gram_ext()
    orthogonal = linalg.matmul(linalg.matmul(linalg.transpose(g), gram), g) == gram
    # f(g e_r) = g(f e_r) = g e_r on rational basis vectors: entries lie in F_p
    rational = all(frobenius(x, 1) == x for row in g for x in row)
    K_rows = [list(b.coords) for b in K.basis]
    preserves = all(linalg.in_span(K_rows, linalg.matvec(g, row)) for row in K_rows)
    return EigenIsometry(xi, g, orthogonal, rational, preserves)


@dataclass(frozen=True)
class OracleResult:
    index: int
    kept_exponents: tuple  # exponents e with xi = zeta^e kept, zeta generating mu
    kept_orders: tuple
    kept: tuple  # EigenIsometry
    group_order: int  # p^sigma + 1

    @property
    def contains_minus_id(self) -> bool:
        return self.group_order // 2 in self.kept_exponents

    def to_json(self):
        return {"index": self.index, "kept_orders": sorted(self.kept_orders)}


def enumerate_index(K: CharSubspace, budget: int = ORACLE_BUDGET) -> OracleResult:
    space = K.space
    n = space.p**space.sigma + 1
    if n > budget:
        raise BudgetExceeded(f"|mu_(p^sigma+1)| = {n} exceeds oracle budget {budget}")
    basis = _change_of_basis(K)
    mu = mu_group(space)
    kept = []
    for e, xi in enumerate(mu):
        g = build_eigen_isometry(K, xi, basis)
        if g.admissible:
            kept.append((e, g))
    exps = tuple(e for e, _ in kept)
    _check_cyclic(exps, n, [g for _, g in kept], space.ctx)
    return OracleResult(len(kept), exps, tuple(mult_order(g.xi) for _, g in kept),
                        tuple(g for _, g in kept), n)


def _check_cyclic(exps, n, isometries, ctx):
    """Kept exponents must be exactly the multiples of n / |kept|, and the
    matrices must compose like their eigenvalues."""
    if not exps or exps[0] != 0:
        raise OracleError("identity was not kept")
    step = math.gcd(n, *exps)
    if set(exps) != set(range(0, n, step)):
        raise OracleError(f"kept exponents {exps} do not form a subgroup of Z/{n}")
    by_exp = dict(zip(exps, isometries))
    if len(exps) > 1:
        gen = by_exp[step]
        power = gen.matrix
        for k in range(2, len(exps) + 1):
            power = linalg.matmul(power, gen.matrix)
            expected = by_exp[(k * step) % n].matrix
            if power != expected:
                raise OracleError("kept isometries do not compose as a cyclic group")
        if power != linalg.identity(ctx, len(power)):
            raise OracleError("generator power is not the identity")


@dataclass(frozen=True)
class EigenConstraints:
    m: int
    n: int


def eigenvalue_constraints(xi: FieldElement, sigma: int) -> EigenConstraints:
    """n = order of xi and the least m >= 0 with F^-m(xi) = 1/xi.

    For m >= 1 also asserts that p has order 2m modulo n and n | p^m + 1.
    """
    if xi.is_zero():
        raise FieldError("eigenvalue must be nonzero")
    n = mult_order(xi)
    inv = xi.inv()
    m = next((k for k in range(2 * sigma + 1) if frobenius(xi, -k) == inv), None)
    if m is None:
        raise OracleError(f"no m <= {2 * sigma} with F^-m(xi) = xi^-1")
    p = xi.ctx.p
    if m >= 1:
        if _order_mod(p, n) != 2 * m:
            raise OracleError(f"order of {p} mod {n} is not {2 * m}")
        if (p**m + 1) % n:
            raise OracleError(f"{n} does not divide {p}^{m} + 1")
    return EigenConstraints(m, n)


def _order_mod(a, n):
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k
