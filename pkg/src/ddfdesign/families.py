"""Disjoint difference families in finite fields and Galois rings."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateParameters, DoesNotDivide, SizeExceeded
from .field import DEFAULT_MAX_ORDER, check_prime, make_field
from .galois_ring import coset_P, make_ring, subring
from .groups import GroupView, field_group, ring_group


@dataclass(frozen=True, eq=False)
class BlockFamily:
    group: GroupView
    blocks: tuple[tuple[int, ...], ...]
    label: dict = field(default_factory=dict)

    @property
    def v(self) -> int:
        return self.group.order

    @property
    def k(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    @property
    def b(self) -> int:
        return len(self.blocks)

    def union(self) -> frozenset[int]:
        return frozenset(x for blk in self.blocks for x in blk)

    def is_disjoint(self) -> bool:
        return len(self.union()) == sum(len(blk) for blk in self.blocks)

    def is_near_complete(self) -> bool:
        return self.is_disjoint() and self.union() == frozenset(range(1, self.v))


def _family(group, blocks, **label) -> BlockFamily:
    return BlockFamily(group, tuple(tuple(sorted(int(x) for x in blk)) for blk in blocks), label)


def wilson_family(p: int, m: int, e: int, max_order: int = DEFAULT_MAX_ORDER) -> BlockFamily:
    """Cyclotomic classes of order e in GF(p^m): a (q, f, f-1) near-complete DDF."""
    check_prime(p)
    q = p**m
    if e < 1 or (q - 1) % e:
        raise DoesNotDivide(f"e = {e} does not divide q - 1 = {q - 1}")
    f = (q - 1) // e
    if e < 2 or f < 2:
        raise DegenerateParameters(f"need e >= 2 and f >= 2, got e = {e}, f = {f}")
    ctx = make_field(p, m, max_order)
    # index t + 1 holds alpha^t
    blocks = [range(i + 1, q, e) for i in range(e)]
    return _family(field_group(ctx), blocks, construction="wilson", p=p, m=m, e=e)


def momihara_family(p: int, n: int, max_order: int = DEFAULT_MAX_ORDER) -> BlockFamily:
    """D_i = xi^i (P | U) in GR(p^2, 2n), i = 0..p^n."""
    check_prime(p)
    if n < 1:
        raise DegenerateParameters("n must be positive")
    if p ** (4 * n) > max_order:
        raise SizeExceeded(f"ring order {p ** (4 * n)} exceeds bound {max_order}")
    ctx = make_ring(p, 2 * n, max_order)
    emb = subring(ctx)
    pn = p**n
    sub_units = np.array(sorted(emb.units))
    base = set(coset_P(ctx, emb))
    for j, x in enumerate(emb.reps_S):
        factor = ctx.mul(ctx.xi_pow(j), ctx.add(1, ctx.scale(x, p)))
        base.update(int(c) for c in ctx.mul(sub_units, factor))
    base_arr = np.array(sorted(base))
    blocks = [ctx.mul(base_arr, ctx.xi_pow(i)) for i in range(pn + 1)]
    return _family(ring_group(ctx), blocks, construction="momihara", p=p, n=n)


def davis_family(p: int, r: int, max_order: int = DEFAULT_MAX_ORDER) -> BlockFamily:
    """{(1 + p alpha) T* : alpha in T} together with p T*, in GR(p^2, r)."""
    check_prime(p)
    if r < 1 or p**r == 2:
        raise DegenerateParameters("p^r = 2 gives blocks of size 1")
    if p ** (2 * r) > max_order:
        raise SizeExceeded(f"ring order {p ** (2 * r)} exceeds bound {max_order}")
    ctx = make_ring(p, r, max_order)
    tstar = np.array(ctx.teichmuller[1:])
    blocks = [ctx.mul(tstar, ctx.add(1, ctx.scale(a, p))) for a in ctx.teichmuller]
    blocks.append(ctx.scale(tstar, p))
    return _family(ring_group(ctx), blocks, construction="davis", p=p, r=r)


def build_family(kind: str, **params) -> BlockFamily:
    builders = {"wilson": wilson_family, "momihara": momihara_family, "davis": davis_family}
    return builders[kind](**params)
