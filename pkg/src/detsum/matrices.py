"""M2(F_q) as an indexed 4-tuple space: determinant, Odot-product, the
determinant varieties D_i, dense membership sets, and sumsets.

A matrix [[x1, x2], [x3, x4]] is identified with the integer

    index = x1 + x2*q + x3*q^2 + x4*q^3        (xk are field element indices)

which is a bijection with [0, q^4).  Sets of matrices are dense boolean
membership arrays over that index space; all bulk operations are vectorized
over numpy tables from the field context.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import FieldCtx


@dataclass(frozen=True)
class Mat2:
    """One 2x2 matrix, row-major: [[x1, x2], [x3, x4]] (field element indices)."""

    x1: int
    x2: int
    x3: int
    x4: int

    def index(self, ctx: FieldCtx) -> int:
        q = ctx.q
        return self.x1 + q * (self.x2 + q * (self.x3 + q * self.x4))

    @classmethod
    def from_index(cls, ctx: FieldCtx, idx: int) -> "Mat2":
        q = ctx.q
        x1, r = idx % q, idx // q
        x2, r = r % q, r // q
        x3, x4 = r % q, r // q
        return cls(x1, x2, x3, x4)

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str) -> "Mat2":
        """Parse "[a,b;c,d]" where each entry uses the coefficient syntax."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"bad matrix literal {text!r}")
        rows = body[1:-1].split(";")
        if len(rows) != 2:
            raise ValueError(f"expected 2 rows in {text!r}")
        entries = []
        for row in rows:
            coeffs = [int(c) for c in row.split(",")]
            if len(coeffs) != 2 * ctx.n:
                raise ValueError(f"row {row!r} needs {2 * ctx.n} coefficients")
            entries.append(ctx.from_coeffs(coeffs[: ctx.n]))
            entries.append(ctx.from_coeffs(coeffs[ctx.n :]))
        return cls(*entries)

    def format(self, ctx: FieldCtx) -> str:
        e = ctx.format_elem
        return f"[{e(self.x1)},{e(self.x2)};{e(self.x3)},{e(self.x4)}]"


class MatSpace:
    """Per-context cache of digit and determinant tables over [0, q^4)."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        q = ctx.q
        self.size = q**4
        idx = np.arange(self.size, dtype=np.int64)
        self.x1 = idx % q
        self.x2 = (idx // q) % q
        self.x3 = (idx // (q * q)) % q
        self.x4 = idx // (q**3)
        self.det = ctx.sub_vec(
            ctx.mul_vec(self.x1, self.x4), ctx.mul_vec(self.x2, self.x3)
        )
        neg = ctx.neg_table
        self.neg_map = self.encode(
            neg[self.x1], neg[self.x2], neg[self.x3], neg[self.x4]
        )
        for t in (self.x1, self.x2, self.x3, self.x4, self.det, self.neg_map):
            t.setflags(write=False)

    def encode(self, x1, x2, x3, x4) -> np.ndarray:
        q = self.ctx.q
        return x1 + q * (x2 + q * (x3 + np.asarray(x4, dtype=np.int64) * q))

    def decode(self, idx):
        q = self.ctx.q
        idx = np.asarray(idx, dtype=np.int64)
        return idx % q, (idx // q) % q, (idx // (q * q)) % q, idx // (q**3)


@lru_cache(maxsize=8)
def mat_space(ctx: FieldCtx) -> MatSpace:
    return MatSpace(ctx)


# -- scalar forms -------------------------------------------------------------


def det(ctx: FieldCtx, x: Mat2) -> int:
    """det(x) = x1*x4 - x2*x3."""
    return ctx.sub(ctx.mul(x.x1, x.x4), ctx.mul(x.x2, x.x3))


def odot(ctx: FieldCtx, x: Mat2, y: Mat2) -> int:
    """x (.) y = x1*y4 - x2*y3 - x3*y2 + x4*y1, the polarization of det."""
    a = ctx.sub(ctx.mul(x.x1, y.x4), ctx.mul(x.x2, y.x3))
    b = ctx.sub(ctx.mul(x.x4, y.x1), ctx.mul(x.x3, y.x2))
    return ctx.add(a, b)


def mat_add(ctx: FieldCtx, x: Mat2, y: Mat2) -> Mat2:
    return Mat2(
        ctx.add(x.x1, y.x1), ctx.add(x.x2, y.x2),
        ctx.add(x.x3, y.x3), ctx.add(x.x4, y.x4),
    )


def odot_with_all(ctx: FieldCtx, x: Mat2, idx: np.ndarray) -> np.ndarray:
    """Vector of x (.) y over an index array of matrices y."""
    sp = mat_space(ctx)
    y1, y2, y3, y4 = sp.decode(idx)
    a = ctx.sub_vec(ctx.mul_vec(x.x1, y4), ctx.mul_vec(x.x2, y3))
    b = ctx.sub_vec(ctx.mul_vec(x.x4, y1), ctx.mul_vec(x.x3, y2))
    return ctx.add_vec(a, b)


# -- membership sets ----------------------------------------------------------


class MatSet:
    """A subset of M2(F_q) as a dense boolean membership array."""

    def __init__(self, ctx: FieldCtx, mask: np.ndarray):
        sp = mat_space(ctx)
        if mask.shape != (sp.size,) or mask.dtype != np.bool_:
            raise ValueError("mask must be a boolean array of length q^4")
        self.ctx = ctx
        self.mask = mask
        self.size = int(mask.sum())

    @classmethod
    def empty(cls, ctx: FieldCtx) -> "MatSet":
        return cls(ctx, np.zeros(mat_space(ctx).size, dtype=bool))

    @classmethod
    def full(cls, ctx: FieldCtx) -> "MatSet":
        return cls(ctx, np.ones(mat_space(ctx).size, dtype=bool))

    @classmethod
    def from_indices(cls, ctx: FieldCtx, indices) -> "MatSet":
        mask = np.zeros(mat_space(ctx).size, dtype=bool)
        mask[np.asarray(indices, dtype=np.int64)] = True
        return cls(ctx, mask)

    @classmethod
    def from_matrices(cls, ctx: FieldCtx, mats) -> "MatSet":
        return cls.from_indices(ctx, [m.index(ctx) for m in mats])

    def indices(self) -> np.ndarray:
        """Sorted member indices (the reproducible serialization order)."""
        return np.flatnonzero(self.mask)

    def __contains__(self, item) -> bool:
        idx = item.index(self.ctx) if isinstance(item, Mat2) else int(item)
        return bool(self.mask[idx])

    def __eq__(self, other):
        return (
            isinstance(other, MatSet)
            and self.ctx is other.ctx
            and np.array_equal(self.mask, other.mask)
        )

    def __len__(self):
        return self.size

    def _check_ctx(self, other: "MatSet"):
        if self.ctx is not other.ctx:
            raise ValueError("MatSet operands belong to different field contexts")

    def union(self, other: "MatSet") -> "MatSet":
        self._check_ctx(other)
        return MatSet(self.ctx, self.mask | other.mask)

    def intersect(self, other: "MatSet") -> "MatSet":
        self._check_ctx(other)
        return MatSet(self.ctx, self.mask & other.mask)

    def complement(self) -> "MatSet":
        return MatSet(self.ctx, ~self.mask)

    def negate(self) -> "MatSet":
        """{-x : x in S}."""
        sp = mat_space(self.ctx)
        mask = np.zeros(sp.size, dtype=bool)
        mask[sp.neg_map[self.mask]] = True
        return MatSet(self.ctx, mask)

    def scale(self, c: int) -> "MatSet":
        """{c*x : x in S} (entrywise scalar multiple)."""
        ctx = self.ctx
        sp = mat_space(ctx)
        idx = self.indices()
        x1, x2, x3, x4 = sp.decode(idx)
        out = sp.encode(
            ctx.mul_vec(c, x1), ctx.mul_vec(c, x2),
            ctx.mul_vec(c, x3), ctx.mul_vec(c, x4),
        )
        mask = np.zeros(sp.size, dtype=bool)
        mask[out] = True
        return MatSet(ctx, mask)

    def to_json(self) -> list[int]:
        return [int(i) for i in self.indices()]

    def __repr__(self):
        return f"MatSet(q={self.ctx.q}, size={self.size})"


def variety(ctx: FieldCtx, i: int) -> MatSet:
    """D_i = {x in M2(F_q) : det(x) = i}, by scanning all q^4 matrices."""
    sp = mat_space(ctx)
    return MatSet(ctx, sp.det == i)


def det_set(s: MatSet) -> set[int]:
    """det(S) = {det(x) : x in S}."""
    sp = mat_space(s.ctx)
    return set(int(v) for v in np.unique(sp.det[s.mask]))


# -- sumsets -------------------------------------------------------------------


def _mat_add_digits(ctx: FieldCtx, x1, x2, x3, x4, b1, b2, b3, b4):
    sp = mat_space(ctx)
    return sp.encode(
        ctx.add_vec(x1, b1), ctx.add_vec(x2, b2),
        ctx.add_vec(x3, b3), ctx.add_vec(x4, b4),
    )


def _sumset_mask_chunk(ctx, a_idx, b_digits) -> np.ndarray:
    sp = mat_space(ctx)
    b1, b2, b3, b4 = b_digits
    mask = np.zeros(sp.size, dtype=bool)
    for idx in a_idx:
        x = Mat2.from_index(ctx, int(idx))
        out = _mat_add_digits(ctx, x.x1, x.x2, x.x3, x.x4, b1, b2, b3, b4)
        mask[out] = True
    return mask


def sumset(a: MatSet, b: MatSet, threads: int = 1) -> MatSet:
    """E + F = {x + y : x in E, y in F}, exact.

    Outer loop runs over the smaller set; the inner addition is vectorized.
    With threads > 1 the outer index range is partitioned across a process
    pool; the boolean-OR merge makes the result independent of the split.
    """
    if a.ctx is not b.ctx:
        raise ValueError("sumset operands belong to different field contexts")
    ctx = a.ctx
    if a.size == 0 or b.size == 0:
        return MatSet.empty(ctx)
    small, big = (a, b) if a.size <= b.size else (b, a)
    sp = mat_space(ctx)
    big_idx = big.indices()
    b_digits = sp.decode(big_idx)
    small_idx = small.indices()
    if threads <= 1 or len(small_idx) < 2 * threads:
        return MatSet(ctx, _sumset_mask_chunk(ctx, small_idx, b_digits))
    chunks = np.array_split(small_idx, threads)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        masks = list(
            pool.map(_sumset_mask_chunk, [ctx] * len(chunks), chunks,
                     [b_digits] * len(chunks))
        )
    mask = masks[0]
    for m in masks[1:]:
        mask |= m
    return MatSet(ctx, mask)


def sum_counts(a: MatSet, b: MatSet) -> np.ndarray:
    """Representation counts c[v] = #{(x, y) in A x B : x + y = v}."""
    if a.ctx is not b.ctx:
        raise ValueError("operands belong to different field contexts")
    ctx = a.ctx
    sp = mat_space(ctx)
    counts = np.zeros(sp.size, dtype=np.int64)
    small, big = (a, b) if a.size <= b.size else (b, a)
    b1, b2, b3, b4 = sp.decode(big.indices())
    for idx in small.indices():
        x = Mat2.from_index(ctx, int(idx))
        out = _mat_add_digits(ctx, x.x1, x.x2, x.x3, x.x4, b1, b2, b3, b4)
        counts[out] += 1  # x + y injective in y, so no duplicate indices here
    return counts


def iterate_sumset(e: MatSet, k: int, threads: int = 1) -> MatSet:
    """k-fold iterated sumset kE = E + ... + E via repeated doubling."""
    if k < 1:
        raise ValueError("k must be >= 1")
    result: MatSet | None = None
    base = e
    while k:
        if k & 1:
            result = base if result is None else sumset(result, base, threads)
        k >>= 1
        if k:
            base = sumset(base, base, threads)
    assert result is not None
    return result
