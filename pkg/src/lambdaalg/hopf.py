"""The algebraic Hopf map on the sphere-level spans, and the span checks built on it.

hopf_map strips a leading mu_2 and kills monomials led by lam_1, lam_2,
mu_0 or mu_1. On basis monomials with first index <= 2 this realizes the
short exact sequence

    0 -> span(first index <= 1) + lam_2 * span(first index <= 2p - 1)
      -> span(first index <= 2)  ->  span(first index <= 2p)  ->  0

where the image cell sits 4(p-1) lower in degree and 1 lower in length
(the bidegree of the stripped mu_2). ses_dimension_check verifies the
dimension bookkeeping cell by cell, and the map commutes with d (asserted
over sweeps in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .algebra import (
    BasisKey,
    Ideal,
    Word,
    basis,
    default_length_cap,
    dimension_table,
    format_word,
    gen_degree,
    lam,
    mu,
)
from .differential import DEFAULT_SIGN_CONVENTION, SignConvention, d_word
from .fparith import Fp, PrimeContext, get_context
from .homology import FpMatrix, d_matrix, rank_fp
from .rewrite import Element

_KERNEL_LEADS = frozenset({lam(1), lam(2), mu(0), mu(1)})


def hopf_map(x: Element) -> Element:
    """Strip a leading mu_2; kill the unit and monomials led by lam_1, lam_2, mu_0, mu_1.

    Input terms must have first index <= 2. Output words are admissible with
    first index <= 2p, so the result lives in the span modeling the target
    sphere of the degree-(4p-4, 1) shift.
    """
    ctx = x.ctx
    p = ctx.p
    out: dict = {}
    for word, c in x.terms.items():
        if not word:
            continue  # the unit has first index <= 1, hence maps to zero
        head = word[0]
        if head == mu(2):
            w2 = word[1:]
            nc = (out.get(w2, 0) + c) % p
            if nc:
                out[w2] = nc
            else:
                out.pop(w2, None)
        elif head not in _KERNEL_LEADS:
            raise ValueError(
                f"term {format_word(word)} has first index {head >> 1} > 2"
            )
    return Element(ctx, out)


@dataclass
class SesCell:
    m: int
    l: int
    dim_total: int  # first index <= 2
    dim_low: int  # first index <= 1
    dim_lam2: int  # lam_2-led words
    dim_image: int  # mu_2-stripped image
    ok: bool


@dataclass
class SesReport:
    p: int
    max_degree: int
    max_length: int
    cells: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def ses_dimension_check(p: int, max_degree: int, max_length: int | None = None) -> SesReport:
    """Per-cell dimension count for the short exact sequence of hopf_map.

    For every (m, l) in the window: dim(first <= 2) must equal
    dim(first <= 1) + dim(lam_2-led) + dim(mu_2-led), the last two read off
    from the spans with bounds 2p - 1 and 2p at the shifted bidegrees.
    Failing cells are collected in the report, not raised.
    """
    ctx = get_context(p)
    L = max_length if max_length is not None else default_length_cap(p, max_degree, Ideal.FULL)
    deg_l2 = gen_degree(lam(2), p)  # 4p - 5
    deg_m2 = gen_degree(mu(2), p)  # 4p - 4
    t2 = dimension_table(p, 2, max_degree, Ideal.FULL, L)
    t1 = dimension_table(p, 1, max_degree, Ideal.FULL, L)
    t5 = dimension_table(p, 2 * p - 1, max(max_degree - deg_l2, 0), Ideal.FULL, max(L - 1, 0))
    t2p = dimension_table(p, 2 * p, max(max_degree - deg_m2, 0), Ideal.FULL, max(L - 1, 0))
    report = SesReport(p, max_degree, L)
    cells = set(t2)
    cells.update((m + deg_l2, l + 1) for (m, l) in t5)
    cells.update((m + deg_m2, l + 1) for (m, l) in t2p)
    for m, l in sorted(cells):
        if m > max_degree or l > L:
            continue
        total = t2.get((m, l), 0)
        low = t1.get((m, l), 0)
        via_l2 = t5.get((m - deg_l2, l - 1), 0)
        image = t2p.get((m - deg_m2, l - 1), 0)
        cell = SesCell(m, l, total, low, via_l2, image, total == low + via_l2 + image)
        report.cells.append(cell)
        if not cell.ok:
            report.failures.append(cell)
    return report


def lemma_u_basis(k: int, p: int) -> list[Word]:
    """u_0 = mu_1^k lam_2 and u_i = mu_1^(k-i) mu_2 mu_1^(i-1) lam_1, i = 1..k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m1, m2, l1, l2 = mu(1), mu(2), lam(1), lam(2)
    out = [(m1,) * k + (l2,)]
    for i in range(1, k + 1):
        out.append((m1,) * (k - i) + (m2,) + (m1,) * (i - 1) + (l1,))
    return out


def lemma_v_basis(k: int, p: int) -> list[Word]:
    """v_i = mu_1^(k-i) lam_1 mu_1^i lam_1 for i = 0..k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m1, l1 = mu(1), lam(1)
    return [(m1,) * (k - i) + (l1,) + (m1,) * i + (l1,) for i in range(k + 1)]


def lemma_matrix(
    k: int,
    ctx: PrimeContext,
    sign: SignConvention = DEFAULT_SIGN_CONVENTION,
) -> FpMatrix:
    """Matrix of d restricted to span(u_0..u_k), written in the v-basis.

    Computed from the differential, not transcribed. If d of some u_i had a
    component outside span(v_0..v_k) that would be raised here.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    us = lemma_u_basis(k, ctx.p)
    vs = lemma_v_basis(k, ctx.p)
    index = {w: i for i, w in enumerate(vs)}
    mat = FpMatrix(k + 1, k + 1)
    for j, u in enumerate(us):
        for w, c in d_word(u, ctx, sign).items():
            i = index.get(w)
            if i is None:
                raise AssertionError(
                    f"d(u_{j}) has a component outside the v-span: {format_word(w)}"
                )
            mat.entries[i, j] = c
    return mat


def lemma_verdict(k: int, ctx: PrimeContext) -> tuple[Fp, bool]:
    """(det of the span matrix mod p, whether d restricted to the span is invertible).

    The determinant from elimination is cross-checked against the rank: it
    is nonzero exactly when the rank is full.
    """
    mat = lemma_matrix(k, ctx)
    dense = mat.to_dense()
    det = _kernels.det_mod_p(dense, ctx.p)
    rank = rank_fp(mat, ctx)
    if (det != 0) != (rank == k + 1):
        raise AssertionError(f"det/rank disagree at k={k}: det={det}, rank={rank}")
    return det, det != 0


def proposition_check(
    k: int,
    ctx: PrimeContext,
    sign: SignConvention = DEFAULT_SIGN_CONVENTION,
) -> bool:
    """Whether the homology cell of mu_2 mu_1^(k-3) lam_1 hits mu_1^(k-3) lam_1 under hopf_map.

    Source: lambda-ending cell of the span with first index <= 2 at
    (2(p-1)k - 1, k - 1). Target: the same homology construction one mu_2
    lower, in the span with first index <= 2p. Returns True when some cycle
    z of the source cell has hopf_map(z) equal to the target monomial modulo
    boundaries, and the target class is itself nonzero. For k < 3 the target
    monomial does not exist and the answer is False.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    p = ctx.p
    if k < 3:
        return False
    m = 2 * (p - 1) * k - 1
    l = k - 1
    shift = gen_degree(mu(2), p)
    src_key = BasisKey(p, 2, m, l, Ideal.LAMBDA_IDEAL)
    tgt_key = BasisKey(p, 2 * p, m - shift, l - 1, Ideal.LAMBDA_IDEAL)
    target_word = (mu(1),) * (k - 3) + (lam(1),)
    tgt_basis = basis(tgt_key)
    if target_word not in tgt_basis:
        return False
    tgt_index = {w: i for i, w in enumerate(tgt_basis)}
    v = np.zeros(len(tgt_basis), dtype=np.int64)
    v[tgt_index[target_word]] = 1

    src_basis = basis(src_key)
    d_src = d_matrix(src_key, ctx, sign)
    kernel = _kernels.nullspace_mod_p(d_src.to_dense(), p)

    # images of kernel vectors under hopf_map, in target coordinates
    cols = []
    for idx in range(kernel.shape[1]):
        el = Element(ctx, {w: int(c) for w, c in zip(src_basis, kernel[:, idx]) if c})
        img = hopf_map(el)
        col = np.zeros(len(tgt_basis), dtype=np.int64)
        for w, c in img.terms.items():
            col[tgt_index[w]] = c
        cols.append(col)
    h_cols = (
        np.stack(cols, axis=1) if cols else np.zeros((len(tgt_basis), 0), dtype=np.int64)
    )

    boundaries = d_matrix(
        BasisKey(p, 2 * p, tgt_key.m + 1, tgt_key.l - 1, Ideal.LAMBDA_IDEAL), ctx, sign
    ).to_dense()
    if _kernels.in_span_mod_p(boundaries, v, p):
        return False  # the target class is already a boundary
    return _kernels.in_span_mod_p(np.hstack([h_cols, boundaries]), v, p)
