"""Totients, cyclotomic polynomials and the reduction classifier.

A CM surface whose non-symplectic index N has phi(N) equal to the rank of
its transcendental lattice reduces at a good prime p to a supersingular
surface of Artin invariant m exactly when m is the least positive integer
with p^m = -1 (mod N).  When no power of p is -1 the reduction has finite
height, which is not computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

# Residue lists as printed in the literature for the order-38 elliptic K3
# surface y^2 = x^3 + t^7 x + t, keyed by Artin invariant.
LITERATURE_RESIDUES_38 = {1: [37], 3: [27, 31], 9: [3, 13, 15, 19, 29, 33]}


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result, m, q = n, n, 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


def _poly_div_exact(num, den):
    """Exact division of integer polynomials (low degree first), monic den."""
    num = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + len(den) - 1]
        quot[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
    if any(num):
        raise ArithmeticError("division left a remainder")
    return quot


_CYCLO_CACHE: dict[int, tuple] = {}


def cyclotomic_poly(n: int) -> list[int]:
    """Coefficients of Phi_n, low degree first: T^n - 1 divided by Phi_d for
    every proper divisor d of n."""
    if n < 1:
        raise ValueError("cyclotomic_poly needs n >= 1")
    if n not in _CYCLO_CACHE:
        poly = [-1] + [0] * (n - 1) + [1]
        for d in range(1, n):
            if n % d == 0:
                poly = _poly_div_exact(poly, cyclotomic_poly(d))
        _CYCLO_CACHE[n] = tuple(poly)
    return list(_CYCLO_CACHE[n])


def admissible_complex_indices(rank_bound: int) -> list[int]:
    """All N with phi(N) <= rank_bound.

    phi(N) >= sqrt(N / 2) for every N, so N <= 2 * rank_bound^2 bounds the scan.
    """
    if rank_bound < 1:
        raise ValueError("rank_bound must be >= 1")
    return [n for n in range(1, 2 * rank_bound * rank_bound + 3) if euler_phi(n) <= rank_bound]


def mult_order_mod(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def neg_one_exponent(p: int, N: int) -> int | None:
    """Least m >= 1 with p^m = -1 (mod N), or None when -1 is not a power of p."""
    if gcd(p, N) != 1:
        raise ValueError(f"gcd({p}, {N}) > 1")
    order = mult_order_mod(p, N)
    x = 1
    for m in range(1, order + 1):
        x = x * p % N
        if x == (-1) % N:
            return m
    return None


@dataclass(frozen=True)
class ReductionClass:
    N: int
    p: int
    outcome: str  # "supersingular" | "finite_height" | "invalid"
    artin: int | None = None

    def to_json(self):
        out = {"N": self.N, "p": self.p, "outcome": self.outcome}
        if self.artin is not None:
            out["artin_invariant"] = self.artin
        return out


def classify_reduction(N: int, p: int) -> ReductionClass:
    if gcd(p, N) > 1:
        return ReductionClass(N, p, "invalid")
    m = neg_one_exponent(p, N)
    if m is None:
        return ReductionClass(N, p, "finite_height")
    return ReductionClass(N, p, "supersingular", m)


def residue_classes_for_artin(N: int, m: int) -> list[int]:
    if N < 2:
        raise ValueError("N must be >= 2")
    return [r for r in range(N) if gcd(r, N) == 1 and neg_one_exponent(r, N) == m]


def residue_partition(N: int) -> dict:
    """Units of Z/N grouped by Artin invariant, plus finite-height residues
    and non-units."""
    supersingular: dict[int, list[int]] = {}
    finite, invalid = [], []
    for r in range(N):
        if gcd(r, N) > 1:
            invalid.append(r)
            continue
        m = neg_one_exponent(r, N)
        if m is None:
            finite.append(r)
        else:
            supersingular.setdefault(m, []).append(r)
    return {
        "N": N,
        "supersingular": {str(m): supersingular[m] for m in sorted(supersingular)},
        "finite_height": finite,
        "invalid": invalid,
    }


def literature_discrepancies(N: int) -> list[dict]:
    """Compare computed residue lists with the printed ones (N = 38 only)."""
    if N != 38:
        return []
    notes = []
    for m, printed in sorted(LITERATURE_RESIDUES_38.items()):
        computed = residue_classes_for_artin(N, m)
        if computed != sorted(printed):
            notes.append({
                "artin_invariant": m,
                "printed": sorted(printed),
                "computed": computed,
                "missing_from_printed": sorted(set(computed) - set(printed)),
                "extra_in_printed": sorted(set(printed) - set(computed)),
                "agrees": False,
            })
    return notes
