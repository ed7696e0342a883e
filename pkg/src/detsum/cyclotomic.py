"""Exact arithmetic in Z[zeta_p] for prime p.

Every character sum in the verification suite is accumulated here so that
identity checks are integer-exact; floating point only ever enters through
:meth:`CycInt.eval` for magnitude inequalities.

Canonical form: since 1 + zeta + ... + zeta^(p-1) = 0, the coefficient of
zeta^(p-1) is normalized to 0 by subtracting it from every entry.  Equality
of canonical forms is componentwise.  Coefficients are Python ints, so there
is no overflow to guard against.
"""

from __future__ import annotations

import cmath
from functools import lru_cache


def _check_prime(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"root order p = {p} must be prime")


class CycInt:
    """An element of Z[zeta_p], stored as canonical coefficients of zeta^k."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        _check_prime(p)
        coeffs = list(coeffs)
        if len(coeffs) > p:
            raise ValueError(f"expected at most {p} coefficients")
        coeffs += [0] * (p - len(coeffs))
        last = coeffs[p - 1]
        if last:
            coeffs = [c - last for c in coeffs]
        self.p = p
        self.coeffs = tuple(int(c) for c in coeffs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def integer(cls, p: int, m: int) -> "CycInt":
        return cls(p, [m])

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, [])

    @classmethod
    def zeta_pow(cls, p: int, k: int) -> "CycInt":
        c = [0] * p
        c[k % p] = 1
        return cls(p, c)

    @classmethod
    def from_hist(cls, p: int, hist) -> "CycInt":
        """sum_k hist[k] * zeta^k from a residue histogram (len <= p)."""
        return cls(p, hist)

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            raise TypeError(f"cannot combine CycInt with {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"mismatched root orders {self.p} and {other.p}")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        o = self._coerce(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def scale(self, m: int) -> "CycInt":
        return CycInt(self.p, [m * a for a in self.coeffs])

    def conj(self) -> "CycInt":
        """Complex conjugation: zeta^k -> zeta^(p-k)."""
        p = self.p
        out = [0] * p
        for k, a in enumerate(self.coeffs):
            out[(-k) % p] = a
        return CycInt(p, out)

    def norm_sq(self) -> "CycInt":
        return self * self.conj()

    # -- predicates / conversions ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        return (
            isinstance(other, CycInt)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_real(self) -> bool:
        """Exact: true iff the value is fixed by conjugation."""
        return self == self.conj()

    def as_integer(self) -> int:
        """The rational integer this equals, or raise if it is not one."""
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def eval(self) -> complex:
        """Float embedding sum_k c_k e^(2 pi i k / p); inequality checks only."""
        roots = _unit_roots(self.p)
        return sum(c * roots[k] for k, c in enumerate(self.coeffs) if c)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> "CycInt":
        return cls(obj["p"], obj["coeffs"])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*z^{k}" if k > 1 else f"{c}*z")
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def _unit_roots(p: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / p) for k in range(p))
