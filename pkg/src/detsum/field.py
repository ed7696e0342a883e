"""Odd-characteristic finite fields F_{p^n} with precomputed tables.

Field elements are plain integers in [0, q): the element with coefficient
vector (c0, ..., c_{n-1}) over F_p (constant term first) has index
sum(c_i * p**i).  This makes elements cheap to store in numpy arrays and
gives the canonical bijection F_q <-> [0, q).

All arithmetic is table driven.  Dense q x q add/mul tables are built only
for q <= 512; above that, multiplication goes through exp/log tables over a
deterministically chosen generator (the one with the smallest index) and
addition is done digitwise.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .cyclotomic import CycInt

TABLE_BUDGET = 2**16
DENSE_LIMIT = 512


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


# -- polynomial helpers over F_p (coefficient lists, constant term first) --


def _poly_mulmod(a, b, modulus, p):
    """(a * b) mod modulus over F_p.  modulus is monic of degree n."""
    n = len(modulus) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    # reduce by modulus: x^n = -(modulus[:-1])
    for k in range(len(res) - 1, n - 1, -1):
        c = res[k]
        if c:
            res[k] = 0
            for i in range(n):
                res[k - n + i] = (res[k - n + i] - c * modulus[i]) % p
    res = res[:n] + [0] * max(0, n - len(res))
    return res[:n]


def _poly_powmod(a, e, modulus, p):
    n = len(modulus) - 1
    res = [1] + [0] * (n - 1)
    base = list(a)
    while e:
        if e & 1:
            res = _poly_mulmod(res, base, modulus, p)
        base = _poly_mulmod(base, base, modulus, p)
        e >>= 1
    return res


def _poly_divides(d, f, p):
    """True if monic d divides f over F_p."""
    f = list(f)
    nd = len(d) - 1
    while len(f) - 1 >= nd:
        c = f[-1]
        if c:
            shift = len(f) - 1 - nd
            for i, di in enumerate(d):
                f[shift + i] = (f[shift + i] - c * di) % p
        f.pop()
    return all(c == 0 for c in f)


def _is_irreducible(f, p):
    n = len(f) - 1
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=deg):
            d = list(tail) + [1]
            if _poly_divides(d, f, p):
                return False
    return True


def _lex_smallest_irreducible(p: int, n: int) -> list[int]:
    """Lex-smallest monic irreducible of degree n over F_p.

    Candidates are compared by their coefficient tuples (c0, ..., c_{n-1})
    in ascending order; the leading coefficient is fixed to 1.
    """
    for tail in product(range(p), repeat=n):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return f
    raise RuntimeError(f"no irreducible polynomial of degree {n} over F_{p}")


class FieldCtx:
    """An immutable, fully tabulated finite field F_{p^n} (q = p^n odd).

    Instances are safe to share across workers; every operation is pure.
    """

    def __init__(self, p: int, n: int):
        if p == 2:
            raise ValueError("even characteristic unsupported (q must be odd)")
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n < 1:
            raise ValueError(f"extension degree n = {n} must be >= 1")
        q = p**n
        if q > TABLE_BUDGET:
            raise ValueError(
                f"q = {q} exceeds the table budget {TABLE_BUDGET} (= 2^16)"
            )
        self.p = p
        self.n = n
        self.q = q
        self.modulus = _lex_smallest_irreducible(p, n)
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        g = self._find_generator()
        self.generator = g

        exp = np.zeros(q - 1, dtype=np.int64)
        cur = [1] + [0] * (n - 1)
        gpoly = self._idx_to_poly(g)
        for k in range(q - 1):
            exp[k] = self._poly_to_idx(cur)
            cur = _poly_mulmod(cur, gpoly, self.modulus, p)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._exp = exp
        self._log = log

        # digitwise negation / addition-friendly digit matrices
        idx = np.arange(q, dtype=np.int64)
        digits = np.empty((n, q), dtype=np.int64)
        rem = idx.copy()
        for i in range(n):
            digits[i] = rem % p
            rem //= p
        self._digits = digits
        powers = p ** np.arange(n, dtype=np.int64)
        self._neg = (((-digits) % p) * powers[:, None]).sum(axis=0)

        self._inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        self._inv[nz] = exp[(-log[nz]) % (q - 1)]

        # trace: Tr(t) = t + t^p + ... + t^(p^(n-1)), lands in F_p
        tr = np.zeros(q, dtype=np.int64)
        if n == 1:
            tr = idx.copy()
        else:
            frob = np.zeros(q, dtype=np.int64)
            frob[nz] = exp[(log[nz] * p) % (q - 1)]
            acc = idx.copy()
            cur = idx.copy()
            for _ in range(n - 1):
                cur = frob[cur]
                acc = self._add_indices(acc, cur)
            if not np.all(acc < p):
                raise RuntimeError("trace left the prime subfield")
            tr = acc
        self._trace = tr

        quad = np.zeros(q, dtype=np.int8)
        quad[nz] = np.where(self._log[nz] % 2 == 0, 1, -1)
        self._quad = quad

        if q <= DENSE_LIMIT:
            a = np.arange(q)
            self._add_t = self._add_indices(
                np.repeat(a, q), np.tile(a, q)
            ).reshape(q, q)
            lg = np.add.outer(log[1:], log[1:]) % (q - 1)
            mul = np.zeros((q, q), dtype=np.int64)
            mul[1:, 1:] = exp[lg]
            self._mul_t = mul
        else:
            self._add_t = None
            self._mul_t = None

        for t in (self._exp, self._log, self._inv, self._neg, self._trace,
                  self._quad, self._digits):
            t.setflags(write=False)
        if self._add_t is not None:
            self._add_t.setflags(write=False)
            self._mul_t.setflags(write=False)

    def _add_indices(self, a, b):
        """Digitwise mod-p addition of index arrays (no dense table needed)."""
        p, n = self.p, self.n
        # copy: the digit loop floor-divides in place
        a = np.array(a, dtype=np.int64)
        b = np.array(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(n):
            out += ((a + b) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def _find_generator(self) -> int:
        q = self.q
        facs = prime_factors(q - 1)
        for g in range(1, q):
            gp = self._idx_to_poly(g)
            if all(
                _poly_powmod(gp, (q - 1) // f, self.modulus, self.p)
                != [1] + [0] * (self.n - 1)
                for f in facs
            ):
                return g
        raise RuntimeError("no generator found")

    def _idx_to_poly(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def _poly_to_idx(self, poly) -> int:
        out = 0
        for c in reversed(poly):
            out = out * self.p + c
        return out

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_t is not None:
            return int(self._add_t[a, b])
        return int(self._add_indices(a, b))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self._neg[b]))

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def mul(self, a: int, b: int) -> int:
        if self._mul_t is not None:
            return int(self._mul_t[a, b])
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of 0 in F_q")
        return int(self._inv[a])

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    # -- characters and trace ----------------------------------------------

    def trace(self, t: int) -> int:
        """Tr(t) = t + t^p + ... + t^(p^(n-1)) as a residue in [0, p)."""
        return int(self._trace[t])

    def add_char(self, t: int) -> CycInt:
        """Canonical additive character chi(t) = zeta_p ^ Tr(t), exactly."""
        return CycInt.zeta_pow(self.p, self.trace(t))

    def quad_char(self, t: int) -> int:
        """Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at 0."""
        return int(self._quad[t])

    def prime_subfield_elems(self) -> list[int]:
        """The p constant polynomials (indices 0..p-1)."""
        return list(range(self.p))

    # -- vectorized views (read-only numpy tables) --------------------------

    @property
    def neg_table(self) -> np.ndarray:
        return self._neg

    @property
    def inv_table(self) -> np.ndarray:
        return self._inv

    @property
    def trace_table(self) -> np.ndarray:
        return self._trace

    @property
    def quad_table(self) -> np.ndarray:
        return self._quad

    def add_vec(self, a, b) -> np.ndarray:
        if self._add_t is not None:
            return self._add_t[a, b]
        return self._add_indices(a, b)

    def sub_vec(self, a, b) -> np.ndarray:
        return self.add_vec(a, self._neg[b])

    def mul_vec(self, a, b) -> np.ndarray:
        if self._mul_t is not None:
            return self._mul_t[a, b]
        a, b = np.broadcast_arrays(np.atleast_1d(np.asarray(a)), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        mask = (a != 0) & (b != 0)
        out[mask] = self._exp[
            (self._log[a[mask]] + self._log[b[mask]]) % (self.q - 1)
        ]
        return out

    # -- text formats --------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._idx_to_poly(a))

    def from_coeffs(self, coeffs) -> int:
        if len(coeffs) > self.n or any(not (0 <= c < self.p) for c in coeffs):
            raise ValueError(f"bad coefficient vector {coeffs!r} for {self}")
        return self._poly_to_idx(list(coeffs) + [0] * (self.n - len(coeffs)))

    def parse_elem(self, text: str) -> int:
        return self.from_coeffs([int(c) for c in text.split(",")])

    def format_elem(self, a: int) -> str:
        return ",".join(str(c) for c in self.coeffs(a))

    def modulus_str(self) -> str:
        return ",".join(str(c) for c in self.modulus)

    def descriptor(self) -> str:
        return f"{self.p}^{self.n}:{self.modulus_str()}"

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, q={self.q})"


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldCtx:
    """Construct (and cache) F_{p^n}.  Deterministic across runs/platforms."""
    return FieldCtx(p, n)


def field_for_q(q: int) -> FieldCtx:
    """Resolve a prime power q = p^n to its field context."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m != 1:
                break
            return make_field(p, n)
    raise ValueError(f"q = {q} is not a prime power")
