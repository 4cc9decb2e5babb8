"""Explicit arithmetic tables for small finite fields F_q, q = p^k.

Elements are indexed 0..q-1 by base-p digit vectors (index = sum d_i p^i),
which pins 0 and 1 at indices 0 and 1.  For k > 1 arithmetic is polynomial
arithmetic modulo a monic irreducible of degree k; if none is supplied the
lexicographically least one is found by trial division, so table contents
are deterministic for a given q.
"""

from __future__ import annotations

import itertools


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int):
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if not is_prime(p):
            continue
        if q % p:
            continue
        k, m = 0, q
        while m % p == 0:
            m //= p
            k += 1
        return (p, k) if m == 1 else None
    return None


def _poly_trim(f: tuple[int, ...]) -> tuple[int, ...]:
    while f and f[-1] == 0:
        f = f[:-1]
    return f


def _poly_mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(tuple(out))


def _poly_mod(f, g, p):
    """f mod g over F_p; g monic."""
    f = [c % p for c in f]
    dg = len(g) - 1
    while True:
        f = list(_poly_trim(tuple(f)))
        if not f or len(f) - 1 < dg:
            break
        lead = f[-1]
        shift = len(f) - 1 - dg
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - lead * c) % p
    return _poly_trim(tuple(f))


def _monic_polys(p: int, deg: int):
    for lower in itertools.product(range(p), repeat=deg):
        yield lower + (1,)


def is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Monic f over F_p, by trial division up to half the degree."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p."""
    for f in _monic_polys(p, k):
        if is_irreducible(f, p):
            return f
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")  # unreachable


class GaloisField:
    """F_q with full add/mul/neg/inv tables (q kept at desk scale)."""

    def __init__(self, q: int, modulus: tuple[int, ...] | None = None):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q, (self.p, self.k) = q, pk
        if self.k == 1:
            if modulus is not None:
                raise ValueError("modulus only applies to proper prime powers")
            self.modulus = None
        else:
            if modulus is None:
                modulus = default_modulus(self.p, self.k)
            modulus = tuple(c % self.p for c in modulus)
            if len(modulus) != self.k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {self.k}")
            if not is_irreducible(modulus, self.p):
                raise ValueError(f"modulus {modulus} is reducible over F_{self.p}")
            self.modulus = modulus
        self._build_tables()

    def _digits(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(i % self.p)
            i //= self.p
        return tuple(out)

    def _index(self, digits) -> int:
        i = 0
        for d in reversed(_poly_trim(tuple(digits)) + (0,) * self.k):
            i = i * self.p + d
        return i

    def _build_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            polys = [self._digits(i) for i in range(q)]
            self.add = [[self._index(tuple((x + y) % p for x, y in zip(polys[a], polys[b])))
                         for b in range(q)] for a in range(q)]
            self.mul = [[self._index(_poly_mod(_poly_mul(polys[a], polys[b], p),
                                               self.modulus, p) + (0,) * self.k)
                         for b in range(q)] for a in range(q)]
        self.neg = [0] * q
        for a in range(q):
            for b in range(q):
                if self.add[a][b] == 0:
                    self.neg[a] = b
                    break
        self.inv = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul[a][b] == 1:
                    self.inv[a] = b
                    break

    def element_name(self, i: int) -> str:
        if self.k == 1:
            return str(i)
        terms = []
        for e in range(self.k - 1, -1, -1):
            c = self._digits(i)[e]
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                x = "x" if e == 1 else f"x^{e}"
                terms.append(x if c == 1 else f"{c}{x}")
        return "+".join(terms) if terms else "0"

    def names(self) -> list[str]:
        return [self.element_name(i) for i in range(self.q)]
