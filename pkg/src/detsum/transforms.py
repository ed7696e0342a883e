"""Gauss and Kloosterman sums, the dot- and Odot-flavor Fourier transforms,
closed-form transforms of the determinant varieties, and the proof-sum
auditors.  Every sum lands in Z[zeta_p] and is exact; floats appear only in
magnitude inequalities driven by callers.

Transform tables are stored unnormalized with an explicit power-of-q
denominator (value = table / q^norm_k) so identity checks stay integer-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycInt
from .field import FieldCtx
from .matrices import Mat2, MatSet, mat_space, odot_with_all


def char_sum(ctx: FieldCtx, vals, weights=None) -> CycInt:
    """sum chi(vals[k]) (optionally weighted by integer weights), exact.

    Accumulated as a histogram over trace residues, then read off as a
    cyclotomic integer.
    """
    vals = np.asarray(vals, dtype=np.int64)
    tr = ctx.trace_table[vals]
    p = ctx.p
    if weights is None:
        hist = np.bincount(tr, minlength=p)
    else:
        weights = np.asarray(weights, dtype=np.int64)
        hist = np.zeros(p, dtype=np.int64)
        np.add.at(hist, tr, weights)
    return CycInt.from_hist(p, hist)


def gauss_sum(ctx: FieldCtx, a: int) -> CycInt:
    """G_a = sum_{t != 0} eta(t) chi(a*t)."""
    if a == 0:
        raise ValueError("gauss_sum requires a != 0")
    t = np.arange(1, ctx.q, dtype=np.int64)
    return char_sum(ctx, ctx.mul_vec(a, t), weights=ctx.quad_table[t])


def gauss_sum_predicted(ctx: FieldCtx) -> CycInt | None:
    """The explicit G_1 value (-1)^(n-1) q^(1/2) or (-1)^(n-1) i^n q^(1/2),
    as an exact cyclotomic integer when that value is rational (even n for
    p = 3 mod 4, any n for p = 1 mod 4 with n even); None otherwise."""
    p, n, q = ctx.p, ctx.n, ctx.q
    sign = (-1) ** (n - 1)
    root = p ** (n // 2)
    if n % 2 == 0:
        if p % 4 == 3:
            # i^n in {1, -1} for even n
            sign *= (-1) ** (n // 2)
        return CycInt.integer(p, sign * root)
    return None


def kloosterman(ctx: FieldCtx, a: int, b: int, twisted: bool = False) -> CycInt:
    """sum_{t != 0} chi(a*t + b/t), optionally twisted by eta(t).

    The untwisted sum requires a, b != 0 (the Weil bound hypothesis); the
    twisted variant is defined for any a, b.
    """
    if not twisted and (a == 0 or b == 0):
        raise ValueError("untwisted Kloosterman sum requires a, b != 0")
    t = np.arange(1, ctx.q, dtype=np.int64)
    vals = ctx.add_vec(ctx.mul_vec(a, t), ctx.mul_vec(b, ctx.inv_table[t]))
    w = ctx.quad_table[t] if twisted else None
    return char_sum(ctx, vals, weights=w)


def complete_square_check(ctx: FieldCtx, a: int, b: int) -> bool:
    """Completing the square: sum_{s != 0} chi(a s^2 + b s) = eta(a) G1
    chi(b^2 / (-4a)) - 1, plus the same sum over all of F_q without the -1."""
    if a == 0:
        raise ValueError("complete_square_check requires a != 0")
    s = np.arange(1, ctx.q, dtype=np.int64)
    vals = ctx.add_vec(ctx.mul_vec(a, ctx.mul_vec(s, s)), ctx.mul_vec(b, s))
    lhs = char_sum(ctx, vals)
    shift = ctx.mul(
        ctx.mul(b, b), ctx.inv(ctx.neg(ctx.mul(4 % ctx.p, a)))
    )
    rhs_full = gauss_sum(ctx, 1).scale(ctx.quad_char(a)) * ctx.add_char(shift)
    full = lhs + CycInt.integer(ctx.p, 1)  # adds the s = 0 term chi(0) = 1
    return lhs == rhs_full - 1 and full == rhs_full


def eta_chi_sum_check(ctx: FieldCtx, a: int, b: int) -> bool:
    """sum_{s != 0} eta(a s) chi(b s) = eta(ab) G1 for a, b != 0."""
    if a == 0 or b == 0:
        raise ValueError("requires a, b != 0")
    s = np.arange(1, ctx.q, dtype=np.int64)
    lhs = char_sum(
        ctx, ctx.mul_vec(b, s), weights=ctx.quad_table[ctx.mul_vec(a, s)]
    )
    return lhs == gauss_sum(ctx, 1).scale(ctx.quad_char(ctx.mul(a, b)))


# -- Fourier transforms over M2(F_q) -------------------------------------------


def dot_with_all(ctx: FieldCtx, x: Mat2, idx: np.ndarray) -> np.ndarray:
    """Ordinary dot product <m, x> = m1 x1 + m2 x2 + m3 x3 + m4 x4."""
    sp = mat_space(ctx)
    m1, m2, m3, m4 = sp.decode(idx)
    acc = ctx.add_vec(ctx.mul_vec(x.x1, m1), ctx.mul_vec(x.x2, m2))
    acc = ctx.add_vec(acc, ctx.mul_vec(x.x3, m3))
    return ctx.add_vec(acc, ctx.mul_vec(x.x4, m4))


_FORMS = {"dot": dot_with_all, "odot": odot_with_all}
_NORM_K = {"dot": 4, "odot": 0}


@dataclass
class TransformTable:
    """Unnormalized transform: divide entry(m) by q^norm_k for the
    conventionally normalized value."""

    ctx: FieldCtx
    flavor: str
    norm_k: int
    coeffs: np.ndarray  # shape (q^4, p), int64, rows not yet canonical

    def entry(self, m: int) -> CycInt:
        return CycInt.from_hist(self.ctx.p, self.coeffs[m])

    def conj_coeffs(self) -> np.ndarray:
        return self.coeffs[:, (-np.arange(self.ctx.p)) % self.ctx.p]

    def total_norm_sq(self) -> CycInt:
        """sum_m entry(m) * conj(entry(m)), exact."""
        p = self.ctx.p
        c = self.coeffs
        hist = [
            int((c * np.roll(c, -d, axis=1)).sum()) for d in range(p)
        ]
        return CycInt.from_hist(p, hist)

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "norm_k": self.norm_k,
            "p": self.ctx.p,
            "entries": {
                str(m): CycInt.from_hist(self.ctx.p, row).to_json()["coeffs"]
                for m, row in enumerate(self.coeffs)
            },
        }


def fourier(f, flavor: str, ctx: FieldCtx | None = None) -> TransformTable:
    """Unnormalized transform T(m) = sum_x chi(-<m, x>) f(x) over the full
    ring, for f an indicator MatSet or an integer-valued array of length q^4."""
    if flavor not in _FORMS:
        raise ValueError(f"unknown flavor {flavor!r}")
    if isinstance(f, MatSet):
        ctx = f.ctx
        support = f.indices()
        values = np.ones(len(support), dtype=np.int64)
    else:
        if ctx is None:
            raise ValueError("ctx required for array-valued f")
        f = np.asarray(f, dtype=np.int64)
        support = np.flatnonzero(f)
        values = f[support]
    sp = mat_space(ctx)
    form = _FORMS[flavor]
    coeffs = np.zeros((sp.size, ctx.p), dtype=np.int64)
    rows = np.arange(sp.size)
    neg = ctx.neg_table
    tr = ctx.trace_table
    for xi, w in zip(support, values):
        x = Mat2.from_index(ctx, int(xi))
        k = tr[neg[form(ctx, x, rows)]]
        coeffs[rows, k] += int(w)  # row indices are distinct: safe fancy add
    return TransformTable(ctx, flavor, _NORM_K[flavor], coeffs)


def tilde_variety_closed(ctx: FieldCtx, i: int, y: Mat2) -> CycInt:
    """Closed form of the Odot transform of D_i (i != 0) at y:
    q^3 delta_0(y) + q * sum_{r != 0} chi(-i r - det(y)/r)."""
    if i == 0:
        raise ValueError("closed form is stated only for i != 0")
    from .matrices import det as mat_det

    q = ctx.q
    dy = mat_det(ctx, y)
    r = np.arange(1, q, dtype=np.int64)
    vals = ctx.add_vec(
        ctx.mul_vec(ctx.neg(i), r), ctx.mul_vec(ctx.neg(dy), ctx.inv_table[r])
    )
    out = char_sum(ctx, vals).scale(q)
    if y.index(ctx) == 0:
        out = out + q**3
    return out


def hat_variety_closed(ctx: FieldCtx, t: int, m: Mat2) -> tuple[CycInt, int]:
    """Closed form of the dot transform of D_t at m as (numerator, k = 3):
    value = numerator / q^3 = delta_0(m)/q + q^-3 sum_{s != 0} chi(-st - det(m)/s)."""
    from .matrices import det as mat_det

    q = ctx.q
    dm = mat_det(ctx, m)
    s = np.arange(1, q, dtype=np.int64)
    vals = ctx.add_vec(
        ctx.mul_vec(ctx.neg(t), s), ctx.mul_vec(ctx.neg(dm), ctx.inv_table[s])
    )
    num = char_sum(ctx, vals)
    if m.index(ctx) == 0:
        num = num + q**2
    return num, 3


# -- proof-sum auditors ---------------------------------------------------------


@dataclass
class AuditorSums:
    i_sum: CycInt  # I(l),  bound 2 q |F|
    a_sum: CycInt  # A(l),  bound   q |F|^2
    b_sum: CycInt  # B(i),  bound 2 q |F|^2
    i_bound: float
    a_bound: float
    b_bound: float


def _variety_of(f: MatSet) -> int | None:
    """The j with F a subset of D_j, or None if dets are mixed / F empty."""
    sp = mat_space(f.ctx)
    dets = np.unique(sp.det[f.mask])
    return int(dets[0]) if len(dets) == 1 else None


def proof_sum_auditors(ctx: FieldCtx, f: MatSet, i: int, ell: int) -> AuditorSums:
    """The three auditing sums, each by its literal definition (terms grouped
    by equal character argument, never algebraically simplified):

      I(l) = sum_{y,y' in F; s,s' != 0} delta_0(s'y' - sy) chi(l(s'-s))
      A(l) = sum_{y,y' in F; r,s,s' != 0; det(s'y'-sy)=0} chi(-ir) chi(l(s'-s))
      B(i) = sum_{y,y' in F; det(y'-y) != 0; r,s != 0} chi(-ir - s^2 det(y'-y)/r)
    """
    if i == 0:
        raise ValueError("auditor sums require i != 0")
    j = _variety_of(f)
    if j is None or j == 0:
        raise ValueError("I(l) and A(l) require F to sit inside D_j with j != 0")
    q, p = ctx.q, ctx.p
    sp = mat_space(ctx)
    f_idx = f.indices()
    nf = len(f_idx)
    y1, y2, y3, y4 = sp.decode(f_idx)

    scaled = {}
    scaled_mask = {}
    for s in range(1, q):
        scaled[s] = sp.encode(
            ctx.mul_vec(s, y1), ctx.mul_vec(s, y2),
            ctx.mul_vec(s, y3), ctx.mul_vec(s, y4),
        )
        m = np.zeros(sp.size, dtype=bool)
        m[scaled[s]] = True
        scaled_mask[s] = m

    # per (s, s'): number of (y, y') pairs with s'y' = sy, and with
    # det(s'y' - sy) = 0; both scalings of F are bijections.
    i_hist = np.zeros(p, dtype=np.int64)
    zero_det_counts = np.zeros((q, q), dtype=np.int64)
    tr = ctx.trace_table
    for s in range(1, q):
        ds1, ds2, ds3, ds4 = sp.decode(scaled[s])
        for sp_ in range(1, q):
            n_equal = int(np.count_nonzero(scaled_mask[s] & scaled_mask[sp_]))
            dp1, dp2, dp3, dp4 = sp.decode(scaled[sp_])
            z = sp.encode(
                ctx.sub_vec(dp1[:, None], ds1[None, :]),
                ctx.sub_vec(dp2[:, None], ds2[None, :]),
                ctx.sub_vec(dp3[:, None], ds3[None, :]),
                ctx.sub_vec(dp4[:, None], ds4[None, :]),
            )
            n_detzero = int(np.count_nonzero(sp.det[z] == 0))
            arg = tr[ctx.mul(ell, ctx.sub(sp_, s))]
            i_hist[arg] += n_equal
            zero_det_counts[s, sp_] = n_detzero
    i_sum = CycInt.from_hist(p, i_hist)

    r = np.arange(1, q, dtype=np.int64)
    chi_r = char_sum(ctx, ctx.mul_vec(ctx.neg(i), r))  # sum_{r != 0} chi(-ir)
    a_hist = np.zeros(p, dtype=np.int64)
    for s in range(1, q):
        for sp_ in range(1, q):
            arg = tr[ctx.mul(ell, ctx.sub(sp_, s))]
            a_hist[arg] += zero_det_counts[s, sp_]
    a_sum = chi_r * CycInt.from_hist(p, a_hist)

    # B(i): histogram the pair determinants first, then sum over (r, s, v).
    d1 = ctx.sub_vec(y1[:, None], y1[None, :])
    d2 = ctx.sub_vec(y2[:, None], y2[None, :])
    d3 = ctx.sub_vec(y3[:, None], y3[None, :])
    d4 = ctx.sub_vec(y4[:, None], y4[None, :])
    pair_det = sp.det[sp.encode(d1, d2, d3, d4)]
    det_hist = np.bincount(pair_det.ravel(), minlength=q)
    b_hist = np.zeros(p, dtype=np.int64)
    v = np.arange(1, q, dtype=np.int64)
    for rr in range(1, q):
        lead = ctx.mul(ctx.neg(i), rr)
        inv_r = ctx.inv(rr)
        for s in range(1, q):
            s2 = ctx.mul(s, s)
            vals = ctx.add_vec(
                lead, ctx.mul_vec(ctx.neg(ctx.mul(s2, inv_r)), v)
            )
            np.add.at(b_hist, tr[vals], det_hist[1:])
    b_sum = CycInt.from_hist(p, b_hist)

    return AuditorSums(
        i_sum=i_sum,
        a_sum=a_sum,
        b_sum=b_sum,
        i_bound=2.0 * q * nf,
        a_bound=float(q) * nf * nf,
        b_bound=2.0 * q * nf * nf,
    )
