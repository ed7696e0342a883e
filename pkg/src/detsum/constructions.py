"""Explicit matrix sets: the sharpness construction on the trace-slice
variety H_i, product-type sets, prime-subfield examples, SL2(F_p) inside
F_{p^2}, and seeded random subsets.

Random sampling goes through numpy's PCG64 generator so (seed, parent, size)
determines the subset across runs and platforms; OS entropy is never used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldCtx
from .matrices import Mat2, MatSet, mat_space, odot_with_all


def smallest_nonsquare(ctx: FieldCtx) -> int:
    """The nonsquare of F_q* with the smallest element index."""
    for t in range(1, ctx.q):
        if ctx.quad_char(t) == -1:
            return t
    raise RuntimeError("no nonsquare found (q must be odd)")


@dataclass
class SharpnessSet:
    """H_i = {x : x2 + x3 = 0, x1 x4 + x2^2 = i} for nonsquare i, together
    with a maximal subset E with E and -E disjoint (E union -E covers H_i)."""

    ctx: FieldCtx
    i: int
    h: MatSet
    e: MatSet


def build_sharpness(ctx: FieldCtx, i: int) -> SharpnessSet:
    """Scan H_i and keep one member of each {x, -x} pair (the smaller index).

    Since i is a nonsquare, 0 is not on H_i, and x = -x only at 0 in odd
    characteristic, so H_i splits into |H_i|/2 antipodal pairs.
    """
    if i == 0 or ctx.quad_char(i) != -1:
        raise ValueError(f"i = {i} must be a nonsquare of F_q*")
    sp = mat_space(ctx)
    on_h = (sp.x3 == ctx.neg_table[sp.x2]) & (sp.det == i)
    h = MatSet(ctx, on_h)
    keep = on_h & (np.arange(sp.size) < sp.neg_map)
    return SharpnessSet(ctx, i, h, MatSet(ctx, keep))


def verify_unique_solution(sh: SharpnessSet) -> dict:
    """Check that for every y in H_i the equation x (.) y = -2i has exactly
    one solution x in H_i, namely x = -y; and that restricted to E the
    equation has no solutions at all."""
    ctx, i = sh.ctx, sh.i
    sp = mat_space(ctx)
    target = ctx.neg(ctx.add(i, i))
    h_idx = sh.h.indices()
    unique_ok = True
    for yi in h_idx:
        y = Mat2.from_index(ctx, int(yi))
        sols = h_idx[odot_with_all(ctx, y, h_idx) == target]
        if len(sols) != 1 or int(sols[0]) != int(sp.neg_map[yi]):
            unique_ok = False
            break
    e_idx = sh.e.indices()
    within_e = 0
    for yi in e_idx:
        y = Mat2.from_index(ctx, int(yi))
        within_e += int(np.count_nonzero(odot_with_all(ctx, y, e_idx) == target))
    return {
        "unique_in_h": unique_ok,
        "solutions_within_e": within_e,
        "h_size": sh.h.size,
        "e_size": sh.e.size,
    }


# -- product-type and prime-subfield sets ---------------------------------------


def row_index(ctx: FieldCtx, a: int, b: int) -> int:
    """Index of the row (a, b) in F_q^2."""
    return a + ctx.q * b


def product_set(ctx: FieldCtx, s1, s2) -> MatSet:
    """The product-type set {[[a1,a2],[b1,b2]] : (a1,a2) in S1, (b1,b2) in S2}.

    S1 and S2 are iterables of row indices in [0, q^2) or (a, b) pairs.
    """
    q = ctx.q

    def rows(s):
        out = []
        for item in s:
            out.append(row_index(ctx, *item) if isinstance(item, tuple) else int(item))
        return np.asarray(sorted(set(out)), dtype=np.int64)

    r1 = rows(s1)
    r2 = rows(s2)
    idx = (r1[:, None] + q * q * r2[None, :]).ravel()
    return MatSet.from_indices(ctx, idx)


def all_rows(ctx: FieldCtx) -> np.ndarray:
    return np.arange(ctx.q * ctx.q, dtype=np.int64)


def prime_subfield_rows(ctx: FieldCtx) -> np.ndarray:
    """Row indices of F_p x F_p inside F_q^2 (entries = constant polynomials)."""
    p = ctx.p
    a = np.arange(p, dtype=np.int64)
    return (a[:, None] + ctx.q * a[None, :]).ravel()


def prime_subfield_matrices(ctx: FieldCtx) -> MatSet:
    """All p^4 matrices with entries in the prime subfield (needs n >= 2)."""
    if ctx.n < 2:
        raise ValueError("prime-subfield example needs a proper extension (n >= 2)")
    sp = mat_space(ctx)
    p = ctx.p
    mask = (sp.x1 < p) & (sp.x2 < p) & (sp.x3 < p) & (sp.x4 < p)
    return MatSet(ctx, mask)


def sl2_prime_subfield(ctx: FieldCtx) -> MatSet:
    """SL2(F_p) embedded in M2(F_{p^n}) for even n; |result| = p(p^2 - 1)."""
    if ctx.n % 2 != 0:
        raise ValueError("SL2 prime-subfield example needs even extension degree")
    sub = prime_subfield_matrices(ctx)
    sp = mat_space(ctx)
    return MatSet(ctx, sub.mask & (sp.det == 1))


# -- seeded sampling --------------------------------------------------------------


def seeded_sample(pool: np.ndarray, size: int, seed: int) -> np.ndarray:
    """Uniform sample without replacement from a sorted index pool (PCG64)."""
    pool = np.asarray(pool, dtype=np.int64)
    if size > len(pool):
        raise ValueError(f"sample size {size} exceeds pool size {len(pool)}")
    rng = np.random.Generator(np.random.PCG64(seed))
    perm = rng.permutation(len(pool))
    return np.sort(pool[perm[:size]])


def random_subset(parent: MatSet, size: int, seed: int) -> MatSet:
    """Seeded uniform subset of a MatSet; deterministic for fixed inputs."""
    return MatSet.from_indices(
        parent.ctx, seeded_sample(parent.indices(), size, seed)
    )
