"""Developments of difference families into 2-designs, and design invariants."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import NotConstant
from .families import BlockFamily
from .field import check_prime
from .groups import GroupView


@dataclass(frozen=True, eq=False)
class Design:
    v: int
    blocks: tuple[tuple[int, ...], ...]
    origin: dict = field(default_factory=dict)
    group: GroupView | None = field(default=None, repr=False)

    def __post_init__(self):
        sizes = {len(b) for b in self.blocks}
        if len(sizes) > 1:
            raise ValueError("blocks have different sizes")
        for blk in self.blocks:
            if len(set(blk)) != len(blk) or any(not 0 <= x < self.v for x in blk):
                raise ValueError(f"invalid block {blk!r}")

    @property
    def k(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_array(self) -> np.ndarray:
        return np.array(self.blocks, dtype=np.int64).reshape(self.b, self.k)

    def relabel(self, perm) -> "Design":
        """Image of the design under the point permutation ``x -> perm[x]``."""
        perm = np.asarray(perm)
        blocks = tuple(tuple(sorted(int(perm[x]) for x in blk)) for blk in self.blocks)
        return Design(self.v, blocks, dict(self.origin))

    def block_multiset(self) -> Counter:
        return Counter(self.blocks)


def make_design(v: int, blocks, origin=None) -> Design:
    return Design(v, tuple(tuple(sorted(int(x) for x in blk)) for blk in blocks), origin or {})


def develop(family: BlockFamily) -> Design:
    """All translates D_i + g, base blocks outermost and g in index order."""
    group = family.group
    g = np.arange(family.v)
    blocks = []
    for base in family.blocks:
        table = group.add(np.asarray(base)[None, :], g[:, None])
        blocks.extend(tuple(sorted(row)) for row in table.tolist())
    origin = dict(family.label, group=group.describe())
    return Design(family.v, tuple(blocks), origin, group)


def has_full_orbits(design: Design, n_base: int) -> bool:
    """True when every base block has v distinct translates."""
    v = design.v
    return all(len(set(design.blocks[i * v : (i + 1) * v])) == v for i in range(n_base))


def incidence_matrix(design: Design) -> np.ndarray:
    """v x b 0/1 matrix, rows are points and columns blocks."""
    M = np.zeros((design.v, design.b), dtype=np.uint8)
    if design.b:
        cols = np.repeat(np.arange(design.b), design.k)
        M[design.block_array().ravel(), cols] = 1
    return M


def _gram(A: np.ndarray) -> np.ndarray:
    # float64 BLAS is exact here: entries are bounded by the number of points
    F = A.astype(np.float64)
    return np.rint(F @ F.T).astype(np.int64)


def verify_2design(design: Design) -> int:
    """lambda when every pair of points lies in exactly lambda blocks."""
    if design.v < 2:
        return 0
    pairs = _gram(incidence_matrix(design))
    iu = np.triu_indices(design.v, 1)
    vals = pairs[iu]
    uniq, freq = np.unique(vals, return_counts=True)
    if len(uniq) == 1:
        return int(uniq[0])
    mode = uniq[np.argmax(freq)]
    bad = int(np.flatnonzero(vals != mode)[0])
    raise NotConstant((int(iu[0][bad]), int(iu[1][bad])), int(vals[bad]))


@dataclass(frozen=True)
class IntersectionProfile:
    histogram: dict[int, int]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.histogram))

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    def to_json(self) -> dict:
        return {
            "histogram": {str(s): c for s, c in sorted(self.histogram.items())},
            "support": list(self.support),
        }


def intersection_profile(design: Design, chunk: int = 2048, threads: int = 1) -> IntersectionProfile:
    """Histogram of |B_i & B_j| over unordered pairs of distinct block positions.

    Rows of block pairs are split into chunks; with ``threads > 1`` the chunks
    run on a thread pool.  The counts are exact, whatever the split.
    """
    M = incidence_matrix(design).T.astype(np.float64)
    b, k = design.b, design.k

    def part(start: int) -> np.ndarray:
        rows = M[start : start + chunk]
        inter = np.rint(rows @ M.T).astype(np.int64)
        # keep only j > i
        mask = np.arange(b)[None, :] > np.arange(start, start + len(rows))[:, None]
        return np.bincount(inter[mask], minlength=k + 1)

    starts = range(0, b, chunk)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(part, starts))
    else:
        parts = [part(s) for s in starts]
    counts = np.sum(parts, axis=0) if parts else np.zeros(k + 1, dtype=np.int64)
    return IntersectionProfile({s: int(c) for s, c in enumerate(counts) if c})


def profile_support(design: Design) -> tuple[int, ...]:
    return intersection_profile(design).support


def rank_mod(matrix: np.ndarray, ell: int) -> int:
    """Rank over GF(ell) by row reduction."""
    check_prime(ell)
    A = np.array(matrix, dtype=np.int64) % ell
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(A[rank:, c])
        if len(nz) == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), -1, ell)) % ell
        below = A[rank + 1 :, c].copy()
        hit = np.flatnonzero(below)
        if len(hit):
            A[rank + 1 + hit] = (A[rank + 1 + hit] - below[hit, None] * A[rank]) % ell
        rank += 1
    return rank


def incidence_p_rank(design: Design, ell: int) -> int:
    check_prime(ell)
    if design.b == 0 or design.v == 0:
        return 0
    return rank_mod(incidence_matrix(design), ell)

