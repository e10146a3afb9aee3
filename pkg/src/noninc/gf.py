"""Finite fields GF(p^k) backed by exponent/log tables.

An element is stored as an integer index: the polynomial
``c0 + c1*x + ... + c_{k-1}*x^(k-1)`` has index ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``.
So 0 and 1 are always the field's zero and one, and for p = 2 addition is XOR.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    NotPrime,
    OrderTooLarge,
    ReducibleModulus,
    WrongCharacteristic,
    ZeroCoefficient,
)

MAX_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n = p^k, or None if n is not a prime power."""
    if n < 2:
        return None
    fs = prime_factors(n)
    if len(fs) != 1:
        return None
    p, k = fs[0], 0
    while n > 1:
        n //= p
        k += 1
    return p, k


# -- polynomials over GF(p): coefficient lists, lowest degree first --------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, m, p)


def _poly_powmod(a, e, m, p):
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Degrees 1 and 2 are settled by a root search; higher degrees by
    Rabin's test.
    """
    f = [c % p for c in modulus]
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    if k == 2:
        return all((f[0] + f[1] * x + x * x) % p for x in range(p))
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**k, f, p), x, p):
        return False
    for r in prime_factors(k):
        h = _poly_sub(_poly_powmod(x, p ** (k // r), f, p), x, p)
        g = _poly_gcd(f, h, p)
        if len(g) != 1:
            return False
    return True


def default_modulus(p: int, k: int) -> list[int]:
    """Least monic irreducible polynomial of degree k over GF(p).

    Candidates are ordered by the element index of their lower k
    coefficients, i.e. x^k + 1 before x^k + x before x^k + x + 1 (p = 2).
    """
    for idx in range(p**k):
        coeffs = _digits(idx, p, k) + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise ReducibleModulus(f"no irreducible polynomial of degree {k} over GF({p})")


def _digits(v: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        v, d = divmod(v, p)
        out.append(d)
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


class FieldTable:
    """Arithmetic in GF(p^k) on integer element indices.

    Immutable after construction. Multiplication goes through exp/log
    tables relative to a primitive element; ``add_table``/``mul_table``
    give full numpy Cayley tables for vectorised use.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        if p**k > MAX_ORDER:
            raise OrderTooLarge(f"field order {p}^{k} exceeds {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, k)
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ReducibleModulus(f"modulus must be monic of degree {k}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = tuple(modulus)
        self._build_tables()

    def __repr__(self):
        return f"FieldTable(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    @property
    def description(self) -> str:
        """Single-token field description, e.g. ``p=2:k=4:modulus=1,1,0,0,1``."""
        return f"p={self.p}:k={self.k}:modulus=" + ",".join(map(str, self.modulus))

    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if p == 2:
            # carry-less multiply, then reduce
            mod = _undigits(self.modulus, 2)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> k & 1:
                    a ^= mod
            return r
        prod = _poly_mulmod(_trim(_digits(a, p, k)), _trim(_digits(b, p, k)), list(self.modulus), p)
        return _undigits(prod + [0] * (k - len(prod)), p)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        n = self.order - 1
        factors = prime_factors(n) if n > 1 else []
        for g in range(1, self.order):
            if all(self._pow_slow(g, n // r) != 1 for r in factors):
                break
        self.generator = g
        exp = [0] * (2 * n)
        log = [-1] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log
        if self.p != 2:
            self._dig = [tuple(_digits(v, self.p, self.k)) for v in range(self.order)]

    # -- scalar arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return _undigits([(x + y) % p for x, y in zip(self._dig[a], self._dig[b])], p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        return _undigits([(-x) % p for x in self._dig[a]], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    # -- full tables -------------------------------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.order
        idx = np.arange(q)
        if self.p == 2:
            t = idx[:, None] ^ idx[None, :]
        else:
            p = self.p
            t = np.zeros((q, q), dtype=np.int64)
            weight = 1
            for _ in range(self.k):
                d = (idx // weight) % p
                t += ((d[:, None] + d[None, :]) % p) * weight
                weight *= p
        t = t.astype(np.int32)
        t.flags.writeable = False
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.order
        log = np.array(self._log, dtype=np.int64)
        exp = np.array(self._exp, dtype=np.int32)
        la = np.where(log < 0, 0, log)
        t = exp[la[:, None] + la[None, :]]
        t[0, :] = 0
        t[:, 0] = 0
        t.flags.writeable = False
        return t


def field_build(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldTable:
    return FieldTable(p, k, modulus)


def parse_field(description: str) -> FieldTable:
    """Inverse of ``FieldTable.description``."""
    parts = dict(item.split("=", 1) for item in description.split(":") if "=" in item)
    try:
        p, k = int(parts["p"]), int(parts["k"])
        modulus = [int(c) for c in parts["modulus"].split(",")]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad field description {description!r}") from exc
    return FieldTable(p, k, modulus)


def trace(f: FieldTable, a: int) -> int:
    """Absolute trace a + a^2 + a^4 + ... + a^(2^(k-1)), returned as 0 or 1."""
    if f.p != 2:
        raise WrongCharacteristic("trace to GF(2) needs characteristic 2")
    t, x = 0, a
    for _ in range(f.k):
        t ^= x
        x = f.mul(x, x)
    if t not in (0, 1):
        raise ArithmeticError(f"trace landed outside GF(2): {t}")
    return t


def quadratic_irreducible(f: FieldTable, b: int) -> bool:
    """True iff x^2 + b*x + 1 has no root in the field (characteristic 2)."""
    if f.p != 2:
        raise WrongCharacteristic("quadratic test is for characteristic 2")
    if b == 0:
        raise ZeroCoefficient("b must be nonzero")
    binv = f.inv(b)
    return trace(f, f.mul(binv, binv)) == 1
