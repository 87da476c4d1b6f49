"""Indexed views of the additive groups of fields and rings.

Group elements are addressed by index ``0..v-1``:

* field GF(p^r): index 0 is zero, index ``t + 1`` is ``alpha^t``;
* ring GR(p^2, r): index equals the element code (integer constants keep
  their value, so Z_9 is indexed 0..8 in the usual way).
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx, make_field
from .galois_ring import RingCtx, make_ring

FIELD_INDEXING = "field: index 0 is zero, index t+1 is alpha^t"
RING_INDEXING = "ring: index is sum(c_i * (p^2)^i) over power-basis coefficients c_i"


class GroupView:
    """Abelian group on indices ``0..v-1`` with coordinate-wise addition.

    ``coords[i]`` holds the coordinate vector of element ``i`` modulo
    ``modulus``; ``to_index`` inverts the base-``modulus`` encoding.
    """

    def __init__(self, ctx, coords: np.ndarray, modulus: int, to_index: np.ndarray, indexing: str):
        self.ctx = ctx
        self.coords = coords
        self.modulus = modulus
        self._weights = modulus ** np.arange(coords.shape[1], dtype=np.int64)
        self._to_index = to_index
        self.indexing = indexing

    @property
    def order(self) -> int:
        return len(self.coords)

    v = order

    zero = 0

    def describe(self) -> dict:
        return dict(self.ctx.describe(), indexing=self.indexing)

    def _index(self, coords: np.ndarray):
        out = self._to_index[coords @ self._weights]
        return int(out) if np.ndim(out) == 0 else out

    def add(self, a, b):
        return self._index((self.coords[a] + self.coords[b]) % self.modulus)

    def sub(self, a, b):
        return self._index((self.coords[a] - self.coords[b]) % self.modulus)

    def neg(self, a):
        return self._index((-self.coords[a]) % self.modulus)

    def translate(self, block, g):
        return self.add(np.asarray(block), g)

    def pairwise(self, A, B, op="sub") -> np.ndarray:
        """|A| x |B| table of a - b (or a + b)."""
        A = np.asarray(sorted(A), dtype=np.int64)
        B = np.asarray(sorted(B), dtype=np.int64)
        f = self.sub if op == "sub" else self.add
        if len(A) == 0 or len(B) == 0:
            return np.zeros((len(A), len(B)), dtype=np.int64)
        return f(A[:, None], B[None, :])

    def translations(self) -> np.ndarray:
        """Row g is the permutation x -> x + g of the indices."""
        idx = np.arange(self.order)
        return self.add(idx[None, :], idx[:, None])


def field_group(ctx: FieldCtx) -> GroupView:
    codes = np.concatenate([[0], ctx.exp_table])
    to_index = np.zeros(ctx.q, dtype=np.int64)
    to_index[codes] = np.arange(ctx.q)
    # coordinate weights are p^i, matching field codes
    return GroupView(ctx, ctx.digits[codes], ctx.p, to_index, FIELD_INDEXING)


def ring_group(ctx: RingCtx) -> GroupView:
    return GroupView(ctx, ctx.digits, ctx.m, np.arange(ctx.order), RING_INDEXING)


def field_index(ctx: FieldCtx, code: int) -> int:
    return 0 if code == 0 else ctx.dlog(code) + 1


def field_code(ctx: FieldCtx, index: int) -> int:
    return 0 if index == 0 else ctx.exp(index - 1)


def group_from_description(desc: dict) -> GroupView:
    """Rebuild a group view from its serialized description."""
    kind = desc["kind"]
    if kind == "field":
        return field_group(make_field(int(desc["p"]), int(desc["r"])))
    if kind == "ring":
        return ring_group(make_ring(int(desc["p"]), int(desc["r"])))
    raise ValueError(f"unknown group kind {kind!r}")
