"""Difference and sum multisets, and certification of difference structures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CertificationFailure,
    NotASubgroup,
    NotConstant,
    NotDisjoint,
    UnequalBlockSizes,
)
from .families import BlockFamily
from .groups import GroupView


class DiffMultiset:
    """Multiplicity of every group element, stored densely by index."""

    def __init__(self, counts: np.ndarray):
        self.counts = np.asarray(counts, dtype=np.int64)

    def __getitem__(self, x) -> int:
        return int(self.counts[x])

    def __add__(self, other: "DiffMultiset") -> "DiffMultiset":
        return DiffMultiset(self.counts + other.counts)

    def __sub__(self, other: "DiffMultiset") -> "DiffMultiset":
        return DiffMultiset(self.counts - other.counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffMultiset) and np.array_equal(self.counts, other.counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def support(self) -> frozenset[int]:
        return frozenset(int(x) for x in np.flatnonzero(self.counts))

    def as_dict(self) -> dict[int, int]:
        return {int(x): int(self.counts[x]) for x in np.flatnonzero(self.counts)}

    def __repr__(self) -> str:
        return f"DiffMultiset({self.as_dict()})"


def _multiset(group: GroupView, values: np.ndarray) -> DiffMultiset:
    return DiffMultiset(np.bincount(np.asarray(values, dtype=np.int64).ravel(), minlength=group.order))


def delta_set(group: GroupView, A) -> DiffMultiset:
    """All a - a' for ordered pairs of distinct a, a' in A."""
    A = sorted(set(A))
    table = group.pairwise(A, A, "sub")
    off = ~np.eye(len(A), dtype=bool)
    return _multiset(group, table[off])


def delta_plus_set(group: GroupView, A) -> DiffMultiset:
    """All a + a' for ordered pairs with a != -a'; a = a' is allowed."""
    A = sorted(set(A))
    table = group.pairwise(A, A, "add")
    return _multiset(group, table[table != group.zero])


def cross_differences(group: GroupView, A, B) -> DiffMultiset:
    """All a - b with a in A, b in B and a != b."""
    table = group.pairwise(A, B, "sub")
    return _multiset(group, table[table != group.zero])


def _check_family(family: BlockFamily) -> None:
    if not family.is_disjoint():
        raise NotDisjoint("blocks are not pairwise disjoint")
    if len({len(blk) for blk in family.blocks}) > 1:
        raise UnequalBlockSizes("blocks have different sizes")


def internal_delta(family: BlockFamily) -> DiffMultiset:
    total = DiffMultiset(np.zeros(family.v, dtype=np.int64))
    for blk in family.blocks:
        total = total + delta_set(family.group, blk)
    return total


def external_delta(family: BlockFamily) -> DiffMultiset:
    """Multiset union of D_i - D_j over ordered pairs of distinct blocks."""
    if not family.is_disjoint():
        raise NotDisjoint("blocks are not pairwise disjoint")
    total = DiffMultiset(np.zeros(family.v, dtype=np.int64))
    for i, blk in enumerate(family.blocks):
        others = [x for j, other in enumerate(family.blocks) if j != i for x in other]
        total = total + cross_differences(family.group, blk, others)
    return total


def constant_value(counts: np.ndarray, indices: np.ndarray) -> int:
    """The common value of counts[indices], or raise NotConstant.

    The witness is the smallest index whose count differs from the most
    frequent value (ties broken towards the smaller value).
    """
    vals = counts[indices]
    if len(vals) == 0:
        return 0
    uniq, freq = np.unique(vals, return_counts=True)
    if len(uniq) == 1:
        return int(uniq[0])
    mode = uniq[np.argmax(freq)]
    bad = indices[vals != mode][0]
    raise NotConstant(int(bad), int(counts[bad]))


def is_ddf(family: BlockFamily) -> int:
    """lambda of a disjoint difference family; raises NotConstant otherwise."""
    _check_family(family)
    return constant_value(internal_delta(family).counts, np.arange(1, family.v))


def is_edf(family: BlockFamily) -> int:
    """lambda of an external difference family; raises NotConstant otherwise."""
    _check_family(family)
    return constant_value(external_delta(family).counts, np.arange(1, family.v))


def is_difference_set(group: GroupView, A, within=None) -> int:
    """lambda' of A as a difference set in the group, or in the subgroup ``within``."""
    counts = delta_set(group, A).counts
    if within is None:
        targets = np.arange(1, group.order)
    else:
        within = frozenset(int(x) for x in within)
        _check_subgroup(group, within)
        outside = np.setdiff1d(np.flatnonzero(counts), sorted(within))
        if len(outside):
            raise CertificationFailure(int(outside[0]), int(counts[outside[0]]), "outside-subgroup")
        targets = np.array(sorted(within - {group.zero}), dtype=np.int64)
    return constant_value(counts, targets)


def _check_subgroup(group: GroupView, N: frozenset[int]) -> None:
    if group.zero not in N:
        raise NotASubgroup("does not contain 0")
    diffs = group.pairwise(N, N, "sub")
    if not set(np.unique(diffs).tolist()) <= N:
        raise NotASubgroup("not closed under subtraction")


def is_relative_difference_set(group: GroupView, A, N) -> tuple[int, int, int, int]:
    """(m, n, k, lambda) when A is a relative difference set w.r.t. subgroup N."""
    N = frozenset(int(x) for x in N)
    _check_subgroup(group, N)
    counts = delta_set(group, A).counts
    forbidden = np.array(sorted(N - {group.zero}), dtype=np.int64)
    hit = forbidden[counts[forbidden] != 0] if len(forbidden) else forbidden
    if len(hit):
        raise CertificationFailure(int(hit[0]), int(counts[hit[0]]), "forbidden-subgroup-difference")
    rest = np.setdiff1d(np.arange(group.order), sorted(N))
    lam = constant_value(counts, rest)
    return group.order // len(N), len(N), len(set(A)), lam


@dataclass
class BridgeReport:
    lambda_ddf: int | None
    lambda_edf: int | None
    lambda_ds: int | None
    holds: bool


def check_edf_ddf_bridge(family: BlockFamily) -> BridgeReport:
    """Check lambda_edf = lambda'_ds - lambda_ddf, each computed separately."""

    def attempt(fn):
        try:
            return fn()
        except NotConstant:
            return None

    lam_ddf = attempt(lambda: is_ddf(family))
    lam_edf = attempt(lambda: is_edf(family))
    lam_ds = attempt(lambda: is_difference_set(family.group, family.union()))
    holds = None not in (lam_ddf, lam_edf, lam_ds) and lam_edf == lam_ds - lam_ddf
    return BridgeReport(lam_ddf, lam_edf, lam_ds, holds)
