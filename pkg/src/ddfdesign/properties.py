"""Structural laws of Galois rings and difference families, as checkable predicates.

Each ``law_*`` function returns None when the law holds and a short
description of the first counterexample otherwise.
"""

from __future__ import annotations

import numpy as np

from .families import BlockFamily
from .galois_ring import RingCtx, ideal_elements, principal_units, subring, unit_decompose, units
from .groups import ring_group
from .verification import delta_set


def _teich_delta(ctx: RingCtx):
    return delta_set(ring_group(ctx), ctx.teichmuller[1:])


def law_unit_difference(ctx: RingCtx) -> str | None:
    """u - u' is a unit exactly when the Teichmüller parts of u and u' differ."""
    U = np.array(sorted(units(ctx)))
    head = np.array([unit_decompose(ctx, int(u))[0] for u in U])
    diff = ctx.sub(U[:, None], U[None, :])
    is_unit = ctx.residue(diff) != 0
    expect = head[:, None] != head[None, :]
    bad = np.argwhere(is_unit != expect)
    if len(bad):
        i, j = bad[0]
        return f"u={U[i]}, u'={U[j]}: unit difference {bool(is_unit[i, j])}"
    return None


def law_teich_delta_cosets(ctx: RingCtx) -> str | None:
    """Delta T* consists of units and is constant on every coset (1 + p b) T*."""
    counts = _teich_delta(ctx).counts
    support = np.flatnonzero(counts)
    nonunit = support[ctx.residue(support) == 0]
    if len(nonunit):
        return f"non-unit difference {int(nonunit[0])}"
    tstar = np.array(ctx.teichmuller[1:])
    for d in support:
        coset = ctx.mul(tstar, int(d))
        if np.any(counts[coset] != counts[d]):
            return f"multiplicity not constant on the coset of {int(d)}"
    return None


def law_teich_symmetric(ctx: RingCtx) -> str | None:
    """T* = -T* for odd p; -1 is a principal unit for p = 2."""
    if ctx.p == 2:
        return None if ctx.neg(1) in principal_units(ctx) else "-1 is not a principal unit"
    tstar = set(ctx.teichmuller[1:])
    neg = {int(x) for x in ctx.neg(np.array(sorted(tstar)))}
    return None if neg == tstar else "T* != -T*"


def law_odd_multiplicity(ctx: RingCtx) -> str | None:
    """For odd p, d has odd multiplicity in Delta T* exactly when d lies in 2T*."""
    if ctx.p == 2:
        return None
    counts = _teich_delta(ctx).counts
    two_t = {int(x) for x in ctx.scale(np.array(ctx.teichmuller[1:]), 2)}
    for d in range(1, ctx.order):
        if (counts[d] % 2 == 1) != (d in two_t):
            return f"d={d} has multiplicity {int(counts[d])}"
    return None


def law_no_full_multiplicity(ctx: RingCtx) -> str | None:
    """For odd p other than GR(9, 1), no d occurs p^r - 2 times in Delta T*."""
    if ctx.p == 2 or (ctx.p, ctx.r) == (3, 1):
        return None
    counts = _teich_delta(ctx).counts
    hit = np.flatnonzero(counts == ctx.p**ctx.r - 2)
    return f"d={int(hit[0])} has multiplicity {ctx.p ** ctx.r - 2}" if len(hit) else None


def law_squares_are_teichmuller(ctx: RingCtx) -> str | None:
    """In GR(4, r) the set of squares is exactly T."""
    if ctx.p != 2:
        return None
    elems = np.arange(ctx.order)
    squares = {int(x) for x in ctx.mul(elems, elems)}
    return None if squares == set(ctx.teichmuller) else "squares differ from T"


def law_subring_sumset(ctx: RingCtx) -> str | None:
    """R_n^* + xi^a(1+pb) R_n^* = R_2n^* minus (V | xi^a V) in GR(p^2, 2n).

    Checked for every 0 <= a <= p^n - 2 and b in T with xi^a outside T_n and
    xi^a(1+pb) outside R_n^*; V is the union of the cosets (1 + p x_j) R_n^*.
    """
    emb = subring(ctx)
    pn = ctx.p**emb.n
    Rn = np.array(sorted(emb.units))
    all_units = units(ctx)
    V = set()
    for x in emb.reps_S:
        V.update(int(c) for c in ctx.mul(Rn, ctx.add(1, ctx.scale(x, ctx.p))))
    V_arr = np.array(sorted(V))
    for a in range(pn - 1):
        xa = ctx.xi_pow(a)
        if xa in emb.teich_sub:
            continue
        xaV = {int(c) for c in ctx.mul(V_arr, xa)}
        target = all_units - V - xaV
        for b in ctx.teichmuller:
            u = ctx.mul(xa, ctx.add(1, ctx.scale(b, ctx.p)))
            if u in emb.units:
                continue
            uR = ctx.mul(Rn, u)
            sums = {int(c) for c in ctx.add(Rn[:, None], uR[None, :]).ravel()}
            if sums != target:
                return f"a={a}, b={b}: sumset differs"
    return None


RING_LAWS = {
    "unit-difference": law_unit_difference,
    "teich-delta-cosets": law_teich_delta_cosets,
    "teich-symmetric": law_teich_symmetric,
    "odd-multiplicity": law_odd_multiplicity,
    "no-full-multiplicity": law_no_full_multiplicity,
    "squares-are-teichmuller": law_squares_are_teichmuller,
}


def law_translation_invariance(family: BlockFamily) -> str | None:
    """Delta(D + g) = Delta D for every base block D and every g."""
    group = family.group
    for i, blk in enumerate(family.blocks):
        base = delta_set(group, blk)
        shifted = group.add(np.asarray(blk)[None, :], np.arange(family.v)[:, None])
        for g, row in enumerate(shifted):
            if delta_set(group, row.tolist()) != base:
                return f"block {i}, g={g}"
    return None


def nonzero_ideal(ctx: RingCtx) -> frozenset[int]:
    return ideal_elements(ctx) - {0}
