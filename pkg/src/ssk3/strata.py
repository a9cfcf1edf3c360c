"""Combinatorial non-symplectic index from the vanishing pattern of the
moduli coordinates, and the table of strata for sigma = 1..10.

An order m >= 1 is admissible for sigma when m divides sigma with odd
quotient and every nonzero coordinate a_i sits at an index divisible by 2m.
The index is p^m + 1 for the largest admissible m, or 2 when none is
admissible (the eigenvalue is then +-1, which is always available).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ZeroPattern:
    """Which coordinates a_1..a_(sigma-1) are nonzero."""

    nonzero: tuple

    @property
    def sigma(self) -> int:
        return len(self.nonzero) + 1

    @classmethod
    def all_zero(cls, sigma: int) -> ZeroPattern:
        return cls((False,) * (sigma - 1))

    @classmethod
    def parse(cls, text: str | None, sigma: int) -> ZeroPattern:
        """Comma-separated 0/1 flags, 1 meaning nonzero; empty means all zero."""
        if text is None or text.strip() == "":
            pattern = cls.all_zero(sigma)
        else:
            flags = [t.strip() for t in text.split(",")]
            if any(f not in ("0", "1") for f in flags):
                raise ValueError(f"pattern entries must be 0 or 1, got {text!r}")
            pattern = cls(tuple(f == "1" for f in flags))
        if pattern.sigma != sigma:
            raise ValueError(f"pattern has {len(pattern.nonzero)} slots, sigma={sigma} needs {sigma - 1}")
        return pattern

    def to_json(self):
        return [int(x) for x in self.nonzero]


@dataclass(frozen=True)
class Stratum:
    m: int
    dimension: int
    label: str

    def index(self, p: int) -> int:
        return 2 if self.m == 0 else p**self.m + 1

    @property
    def index_expr(self) -> str:
        if self.m == 0:
            return "2"
        if self.m == 1:
            return "p+1"
        return f"p^{self.m}+1"

    def to_json(self, p: int | None = None):
        out = {"m": self.m, "index": self.index_expr, "dimension": self.dimension, "family": self.label}
        if p is not None:
            out["index_value"] = self.index(p)
        return out


@dataclass(frozen=True)
class IndexResult:
    p: int
    sigma: int
    index: int
    m: int
    provenance: str
    admissible: tuple = ()

    def to_json(self):
        return {
            "p": self.p,
            "sigma": self.sigma,
            "index": self.index,
            "m": self.m,
            "admissible_m": list(self.admissible),
            "provenance": self.provenance,
        }


def _check_sigma(sigma):
    if not 1 <= sigma <= 10:
        raise ValueError(f"sigma must be in 1..10, got {sigma}")


def orders_for_sigma(sigma: int) -> list[int]:
    """All m >= 1 with m | sigma and sigma/m odd."""
    return [m for m in range(1, sigma + 1) if sigma % m == 0 and (sigma // m) % 2 == 1]


def admissible_m(sigma: int, pattern: ZeroPattern) -> list[int]:
    _check_sigma(sigma)
    if pattern.sigma != sigma:
        raise ValueError("pattern length does not match sigma")
    nonzero_slots = [i for i, nz in enumerate(pattern.nonzero, start=1) if nz]
    return [m for m in orders_for_sigma(sigma) if all(i % (2 * m) == 0 for i in nonzero_slots)]


def nonsymplectic_index(p: int, sigma: int, pattern: ZeroPattern) -> IndexResult:
    ms = admissible_m(sigma, pattern)
    m = max(ms, default=0)
    index = p**m + 1 if m else 2
    return IndexResult(p, sigma, index, m, "criterion", tuple(ms))


def stratum_dimension(sigma: int, m: int) -> int:
    """Free coordinates left when only a_i with 2m | i may be nonzero."""
    _check_sigma(sigma)
    if m == 0:
        return sigma - 1
    if m not in orders_for_sigma(sigma):
        raise ValueError(f"m={m} is not admissible for sigma={sigma}")
    return (sigma - 1) // (2 * m)


def _label(m, dim):
    if dim == 0:
        return "unique"
    if m == 0:
        return "generic"
    return f"{dim} dimensional"


def strata_for(sigma: int) -> list[Stratum]:
    ms = ([0] if sigma >= 2 else []) + orders_for_sigma(sigma)
    return [Stratum(m, stratum_dimension(sigma, m), _label(m, stratum_dimension(sigma, m))) for m in ms]


def table1(p: int | None = None) -> list[tuple[int, list[Stratum]]]:
    """Strata for sigma = 1..10.  ``p`` only matters for rendering numeric
    indices; the strata themselves do not depend on it."""
    return [(sigma, strata_for(sigma)) for sigma in range(1, 11)]


def render_table(p: int | None = None) -> str:
    header = ("sigma", "non-symplectic index", "family")
    rows = []
    for sigma, strata in table1(p):
        for j, s in enumerate(strata):
            idx = s.index_expr if p is None else str(s.index(p))
            rows.append((str(sigma) if j == 0 else "", idx, s.label))
    widths = [max(len(r[k]) for r in rows + [header]) for k in range(3)]
    fmt = " | ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header).rstrip(), "-+-".join("-" * w for w in widths)]
    lines += [fmt.format(*r).rstrip() for r in rows]
    return "\n".join(lines) + "\n"
