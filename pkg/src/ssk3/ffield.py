"""Exact arithmetic in GF(p^d).

Elements are coefficient tuples over F_p in the power basis 1, t, ..., t^(d-1)
of F_p[t]/(modulus).  The modulus is the lexicographically smallest monic
irreducible polynomial of degree d, comparing coefficient tuples listed
low degree first, so a given (p, d) always produces the same field.

The canonical element order used throughout the package is the same tuple
order on coefficient vectors.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from sympy import factorint, isprime

# p^d above this is refused; arithmetic is plain Python ints so this is only a
# guard against accidentally huge enumerations downstream.
MAX_FIELD_BITS = 256


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials over F_p (lists of ints, low degree first)


def _fp_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _fp_mod(f, g, p):
    f = list(f)
    inv_lead = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(_fp_trim(f)) - 1 >= dg:
        shift = len(f) - 1 - dg
        c = f[-1] * inv_lead % p
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
    return f


def _fp_mulmod(a, b, g, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_mod(out, g, p)


def _fp_powmod(a, e, g, p):
    result = [1]
    base = _fp_mod(a, g, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, g, p)
        base = _fp_mulmod(base, base, g, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _fp_trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible_fp(f, p):
    """Rabin's irreducibility test for a monic f over F_p (low degree first)."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    t = [0, 1]
    if _fp_sub(_fp_powmod(t, p**d, f, p), t, p):
        return False
    for q in factorint(d):
        h = _fp_sub(_fp_powmod(t, p ** (d // q), f, p), t, p)
        if len(_fp_gcd(f, h, p)) > 1:
            return False
    return True


def canonical_modulus(p, d):
    """Smallest monic irreducible of degree d (low-to-high coefficient order)."""
    if d == 1:
        return (0, 1)
    # constant term 0 means T divides f
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=d - 1):
            f = [c0, *rest, 1]
            if is_irreducible_fp(f, p):
                return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {d} over F_{p}")


# ---------------------------------------------------------------------------
# contexts and elements


class FieldCtx:
    """The field GF(p^d) together with cached tables (Frobenius matrices,
    group-order factorisation, a primitive element)."""

    def __init__(self, p: int, d: int, modulus: tuple):
        self.p = p
        self.d = d
        self.modulus = modulus
        self.order = p**d
        self._frob_mats: dict[int, list[list[int]]] = {}
        self._primitive = None
        self._factors = None
        self.zero = FieldElement(self, (0,) * d)
        self.one = self.from_int(1)

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    # construction helpers
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.from_coeffs(value)

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, (n % self.p,) + (0,) * (self.d - 1))

    def from_coeffs(self, coeffs) -> FieldElement:
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.d:
            coeffs = _fp_mod(coeffs, list(self.modulus), self.p)
        coeffs = coeffs + [0] * (self.d - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    @property
    def gen(self) -> FieldElement:
        """The class of t, a root of the modulus."""
        if self.d == 1:
            return self.from_int(-self.modulus[0])
        return self.from_coeffs([0, 1])

    def elements(self):
        """All elements in canonical order."""
        for c in itertools.product(range(self.p), repeat=self.d):
            yield FieldElement(self, c)

    def to_json(self):
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}

    # internal arithmetic on coefficient tuples
    def _mul(self, a, b):
        p, d = self.p, self.d
        if d == 1:
            return ((a[0] * b[0]) % p,)
        out = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = out[k] % p
            if c:
                base = k - d
                for i in range(d):
                    out[base + i] -= c * mod[i]
        return tuple(x % p for x in out[:d])

    def frobenius_matrix(self, e: int):
        """Matrix over F_p of x -> x^(p^e) on coefficient vectors (columns are
        images of basis powers)."""
        e %= self.d
        mat = self._frob_mats.get(e)
        if mat is None:
            cols = []
            for i in range(self.d):
                basis = [0] * self.d
                basis[i] = 1
                img = FieldElement(self, tuple(basis)) ** (self.p**e)
                cols.append(img.coeffs)
            mat = [[cols[j][i] for j in range(self.d)] for i in range(self.d)]
            self._frob_mats[e] = mat
        return mat

    def group_order_factors(self):
        if self._factors is None:
            self._factors = factorint(self.order - 1)
        return self._factors

    def primitive_element(self) -> FieldElement:
        """Smallest generator of the multiplicative group in canonical order."""
        if self._primitive is None:
            n = self.order - 1
            for x in self.elements():
                if x.is_zero():
                    continue
                if all(x ** (n // q) != self.one for q in self.group_order_factors()):
                    self._primitive = x
                    break
        return self._primitive


class FieldElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def __repr__(self):
        if self.ctx.d == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = "" if (c == 1 and i) else str(c)
                terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(reversed(terms)) or "0"

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.ctx.from_int(other).coeffs
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def key(self):
        """Sort key for the canonical element order."""
        return self.coeffs

    def __lt__(self, other):
        return self.coeffs < self._coerce(other).coeffs

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, self.ctx._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in " + repr(self.ctx))
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inv() ** (-e)
        ctx = self.ctx
        result = ctx.one.coeffs
        base = self.coeffs
        while e:
            if e & 1:
                result = ctx._mul(result, base)
            e >>= 1
            if e:
                base = ctx._mul(base, base)
        return FieldElement(ctx, result)

    def to_json(self):
        return list(self.coeffs)


@lru_cache(maxsize=None)
def field_create(p: int, d: int, allow_small_p: bool = False) -> FieldCtx:
    """Build GF(p^d) with the canonical modulus.

    p = 3 is refused unless ``allow_small_p`` is set; p = 2 is never accepted.
    """
    if not isinstance(p, int) or not isprime(p):
        raise FieldError(f"{p} is not prime")
    if p == 2 or (p == 3 and not allow_small_p):
        raise FieldError(f"characteristic {p} is not supported (need p >= 5)")
    if not isinstance(d, int) or d < 1:
        raise FieldError(f"extension degree must be a positive integer, got {d}")
    if d * math.log2(p) > MAX_FIELD_BITS:
        raise FieldError(f"GF({p}^{d}) exceeds the {MAX_FIELD_BITS}-bit budget")
    return FieldCtx(p, d, canonical_modulus(p, d))


def ctx_from_json(obj) -> FieldCtx:
    ctx = field_create(obj["p"], obj["d"], allow_small_p=obj["p"] == 3)
    if list(ctx.modulus) != list(obj["modulus"]):
        raise FieldError("serialized modulus is not the canonical one")
    return ctx


# ---------------------------------------------------------------------------
# Frobenius, orders, roots


def frobenius(x: FieldElement, e: int) -> FieldElement:
    """x^(p^e); negative e uses p^-1 = p^(d-1) on exponents."""
    ctx = x.ctx
    e %= ctx.d
    if e == 0:
        return x
    mat = ctx.frobenius_matrix(e)
    p = ctx.p
    c = x.coeffs
    return FieldElement(ctx, tuple(sum(r[j] * c[j] for j in range(ctx.d)) % p for r in mat))


def mult_order(x: FieldElement) -> int:
    if x.is_zero():
        raise FieldError("zero has no multiplicative order")
    ctx = x.ctx
    n = ctx.order - 1
    for q, k in ctx.group_order_factors().items():
        for _ in range(k):
            if x ** (n // q) == ctx.one:
                n //= q
            else:
                break
    return n


def root_of_unity(ctx: FieldCtx, n: int) -> FieldElement:
    """Element of exact order n: a fixed power of the canonical primitive element."""
    if n < 1 or (ctx.order - 1) % n:
        raise FieldError(f"{n} does not divide {ctx.order - 1}; no element of order {n} in {ctx}")
    return ctx.primitive_element() ** ((ctx.order - 1) // n)


def discrete_log(x: FieldElement, base: FieldElement | None = None) -> int:
    """k with base^k = x, by Pohlig-Hellman over the factorised group order.

    ``base`` defaults to the canonical primitive element and must generate
    the multiplicative group.
    """
    ctx = x.ctx
    g = base if base is not None else ctx.primitive_element()
    n = ctx.order - 1
    residues, moduli = [], []
    for q, k in ctx.group_order_factors().items():
        qk = q**k
        gamma = g ** (n // q)
        xk = 0
        for j in range(k):
            h = (x * g ** (-xk)) ** (n // q ** (j + 1))
            dj = _bsgs(gamma, h, q)
            xk += dj * q**j
        residues.append(xk)
        moduli.append(qk)
    from sympy.ntheory.modular import crt

    result = crt(moduli, residues)
    if result is None:
        raise FieldError("discrete log failed")
    return int(result[0]) % n


def _bsgs(g: FieldElement, h: FieldElement, order: int) -> int:
    m = math.isqrt(order) + 1
    table = {}
    e = g.ctx.one
    for j in range(m):
        table.setdefault(e.coeffs, j)
        e = e * g
    step = g ** (-m)
    y = h
    for i in range(m):
        j = table.get(y.coeffs)
        if j is not None:
            return i * m + j
        y = y * step
    raise FieldError("element not in the subgroup")


def nth_roots(a: FieldElement, n: int) -> list[FieldElement]:
    """All t with t^n = a (a nonzero), in canonical order."""
    ctx = a.ctx
    if a.is_zero():
        raise FieldError("nth_roots expects a nonzero element")
    q1 = ctx.order - 1
    g = math.gcd(n, q1)
    k = discrete_log(a)
    if k % g:
        return []
    step = q1 // g
    x0 = (k // g) * pow(n // g, -1, step) % step if step > 1 else 0
    gen = ctx.primitive_element()
    t0 = gen**x0
    zeta = gen**step
    roots, t = [], t0
    for _ in range(g):
        roots.append(t)
        t = t * zeta
    return sorted(roots, key=FieldElement.key)


# ---------------------------------------------------------------------------
# polynomials over GF(p^d) (lists of FieldElement, low degree first)


def _poly_trim(f):
    while f and f[-1].is_zero():
        f.pop()
    return f


def _poly_divmod(f, g):
    f = list(f)
    inv_lead = g[-1].inv()
    dg = len(g) - 1
    quot = [g[0].ctx.zero] * max(len(f) - dg, 1)
    while len(_poly_trim(f)) - 1 >= dg:
        shift = len(f) - 1 - dg
        c = f[-1] * inv_lead
        quot[shift] = c
        for i, gi in enumerate(g):
            f[shift + i] = f[shift + i] - c * gi
    return quot, f


def _poly_mulmod(a, b, g):
    if not a or not b:
        return []
    zero = g[0].ctx.zero
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return _poly_divmod(out, g)[1]


def _poly_powmod(a, e, g):
    result = [g[0].ctx.one]
    base = _poly_divmod(a, g)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, g)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, g)
    return result


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        lead = a[-1].inv()
        a = [c * lead for c in a]
    return a


def _poly_sub(a, b):
    zero = (a or b)[0].ctx.zero
    n = max(len(a), len(b))
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


SCAN_THRESHOLD = 64


def poly_roots(coeffs) -> list[FieldElement]:
    """Distinct roots in GF(p^d) of a nonzero polynomial, in canonical order.

    Small fields are scanned; otherwise the split part gcd(f, T^q - T) is
    separated by equal-degree splitting with shifts a = 0, 1, t, ... taken in
    canonical order, so results never depend on randomness.
    """
    f = _poly_trim(list(coeffs))
    if not f:
        raise FieldError("zero polynomial has no finite root set")
    ctx = f[0].ctx
    if len(f) == 1:
        return []
    if ctx.order <= SCAN_THRESHOLD:
        roots = []
        for x in ctx.elements():
            acc = ctx.zero
            for c in reversed(f):
                acc = acc * x + c
            if acc.is_zero():
                roots.append(x)
        return roots
    lead = f[-1].inv()
    f = [c * lead for c in f]
    t = [ctx.zero, ctx.one]
    h = _poly_sub(_poly_powmod(t, ctx.order, f), t)
    g = _poly_gcd(f, h) if h else f
    roots = []
    _split_linear(g, ctx, roots)
    return sorted(roots, key=FieldElement.key)


def _split_linear(g, ctx, out):
    deg = len(g) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append(-g[0])
        return
    half = (ctx.order - 1) // 2
    for a in ctx.elements():
        shifted = [a, ctx.one]
        h = _poly_sub(_poly_powmod(shifted, half, g), [ctx.one])
        if not h:
            continue
        factor = _poly_gcd(g, h)
        if 0 < len(factor) - 1 < deg:
            other = _poly_divmod(g, factor)[0]
            _split_linear(factor, ctx, out)
            _split_linear(_poly_trim(other), ctx, out)
            return
    raise FieldError("equal-degree splitting did not separate the roots")
