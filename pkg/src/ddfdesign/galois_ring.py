"""Galois rings GR(p^2, r): Teichmüller set, ideal, units and the subring GR(p^2, n).

The ring is ``Z_{p^2}[x]/(f)`` where ``f`` is the primitive polynomial of the
matching finite field with its coefficients read modulo p^2.  Elements are
``int`` codes: ``c_0 + c_1 x + ... + c_{r-1} x^{r-1}`` has code
``sum(c_i * (p^2)**i)``, so an integer constant ``c`` has code ``c`` and code
order is lexicographic in the coefficients read from the top degree down.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotAUnit, OddDegree, ParameterError, SizeExceeded
from .field import DEFAULT_MAX_ORDER, check_prime, find_primitive_polynomial


@dataclass(frozen=True, eq=False)
class RingCtx:
    p: int
    r: int
    modulus: tuple[int, ...]
    digits: np.ndarray = field(repr=False)
    reduction: np.ndarray = field(repr=False)
    teichmuller: tuple[int, ...] = field(repr=False)
    teich_index: dict = field(repr=False)
    _teich_by_residue: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.p * self.p

    @property
    def order(self) -> int:
        return self.m**self.r

    @property
    def xi(self) -> int:
        return self.teichmuller[2] if len(self.teichmuller) > 2 else 1

    @property
    def teich_order(self) -> int:
        """Multiplicative order p^r - 1 of xi."""
        return self.p**self.r - 1

    def describe(self) -> dict:
        return {
            "kind": "ring",
            "p": self.p,
            "r": self.r,
            "modulus": list(self.modulus),
            "xi": list(self.coeffs(self.xi)),
        }

    # -- encoding -------------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[a])

    def element(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.r - len(coeffs))
        if len(coeffs) != self.r:
            raise ParameterError(f"expected at most {self.r} coefficients")
        return sum((int(c) % self.m) * self.m**i for i, c in enumerate(coeffs))

    def _encode(self, digits: np.ndarray):
        out = digits @ (self.m ** np.arange(self.r, dtype=np.int64))
        return int(out) if np.ndim(out) == 0 else out

    # -- arithmetic -----------------------------------------------------
    def add(self, a, b):
        return self._encode((self.digits[a] + self.digits[b]) % self.m)

    def sub(self, a, b):
        return self._encode((self.digits[a] - self.digits[b]) % self.m)

    def neg(self, a):
        return self._encode((-self.digits[a]) % self.m)

    def scale(self, a, k: int):
        """Integer multiple k*a."""
        return self._encode((self.digits[a] * k) % self.m)

    def mul(self, a, b):
        A = self.digits[a]
        B = self.digits[b]
        A, B = np.broadcast_arrays(A, B)
        r = self.r
        prod = np.zeros(A.shape[:-1] + (2 * r - 1,), dtype=np.int64)
        for i in range(r):
            prod[..., i : i + r] += A[..., i : i + 1] * B
        out = prod[..., :r] + prod[..., r:] @ self.reduction
        return self._encode(out % self.m)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a = self.inv(a)
            k = -k
        result, base = 1, int(a)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, u: int) -> int:
        a0, a1 = unit_decompose(self, u)
        # (a0 (1 + p a1))^{-1} = a0^{-1} (1 - p a1)
        inv0 = self.xi_pow(-(self.teich_index[a0] - 1))
        return self.mul(inv0, self.sub(1, self.scale(a1, self.p)))

    def xi_pow(self, k: int) -> int:
        return self.teichmuller[1 + k % self.teich_order]

    # -- structure ------------------------------------------------------
    def residue(self, a):
        """Reduction modulo the maximal ideal, as a base-p code."""
        d = self.digits[a] % self.p
        out = d @ (self.p ** np.arange(self.r, dtype=np.int64))
        return int(out) if np.ndim(out) == 0 else out

    def teich_of_residue(self, res):
        return self._teich_by_residue[res]

    def is_unit(self, a) -> bool:
        return bool(self.residue(a) != 0)

    def elements(self) -> range:
        return range(self.order)


def _reduction_matrix(modulus: tuple[int, ...], m: int) -> np.ndarray:
    """Rows k - r (k = r..2r-2): coefficients of x^k modulo the monic modulus."""
    r = len(modulus) - 1
    neg = [(-c) % m for c in modulus[:-1]]
    rows = []
    cur = neg[:]  # x^r
    for _ in range(r - 1):
        rows.append(cur)
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c + top * n) % m for c, n in zip(cur, neg)]
    return np.array(rows, dtype=np.int64).reshape(r - 1, r)


def make_ring(p: int, r: int, max_order: int = DEFAULT_MAX_ORDER) -> RingCtx:
    check_prime(p)
    if r < 1:
        raise ParameterError("degree must be positive")
    m = p * p
    order = m**r
    if order > max_order:
        raise SizeExceeded(f"ring order {order} exceeds bound {max_order}")
    modulus = find_primitive_polynomial(p, r)
    codes = np.arange(order, dtype=np.int64)
    digits = np.stack([(codes // m**i) % m for i in range(r)], axis=1)
    reduction = _reduction_matrix(modulus, m)
    stub = RingCtx(p, r, modulus, digits, reduction, (0, 1), {}, np.zeros(0, dtype=np.int64))
    x = stub.element([0, 1]) if r > 1 else (-modulus[0]) % m
    # x = a0 (1 + p a1) with a0 Teichmüller; principal units have exponent p
    xi = stub.pow(x, p**r)
    teich = [0, 1]
    cur = 1
    for _ in range(p**r - 2):
        cur = stub.mul(cur, xi)
        teich.append(cur)
    teich = tuple(int(t) for t in teich)
    if stub.mul(cur, xi) != 1 or len(set(teich)) != p**r:
        raise RuntimeError("Teichmüller generator has the wrong order")  # pragma: no cover
    teich_index = {t: i for i, t in enumerate(teich)}
    by_residue = np.zeros(p**r, dtype=np.int64)
    by_residue[stub.residue(np.array(teich))] = np.array(teich)
    return RingCtx(p, r, modulus, digits, reduction, teich, teich_index, by_residue)


def padic(ctx: RingCtx, a: int) -> tuple[int, int]:
    """(a0, a1) with a = a0 + p*a1 and a0, a1 Teichmüller elements."""
    a0 = int(ctx.teich_of_residue(ctx.residue(a)))
    rest = ctx.digits[ctx.sub(a, a0)] // ctx.p
    res = int(rest @ (ctx.p ** np.arange(ctx.r, dtype=np.int64)))
    return a0, int(ctx.teich_of_residue(res))


def unit_decompose(ctx: RingCtx, u: int) -> tuple[int, int]:
    """(a0, a1) with u = a0 * (1 + p*a1), a0 in T* and a1 in T."""
    res = ctx.residue(u)
    if res == 0:
        raise NotAUnit(f"element {u} lies in the maximal ideal")
    a0 = int(ctx.teich_of_residue(res))
    a0_inv = ctx.xi_pow(-(ctx.teich_index[a0] - 1))
    w = ctx.mul(a0_inv, u)
    _, a1 = padic(ctx, w)
    return a0, a1


def ideal_elements(ctx: RingCtx) -> frozenset[int]:
    return frozenset(int(c) for c in np.flatnonzero(ctx.residue(np.arange(ctx.order)) == 0))


def principal_units(ctx: RingCtx) -> frozenset[int]:
    return frozenset(int(c) for c in ctx.add(np.array(sorted(ideal_elements(ctx))), 1))


def units(ctx: RingCtx) -> frozenset[int]:
    return frozenset(int(c) for c in np.flatnonzero(ctx.residue(np.arange(ctx.order)) != 0))


def teich_star(ctx: RingCtx) -> tuple[int, ...]:
    return ctx.teichmuller[1:]


@dataclass(frozen=True, eq=False)
class SubringEmbedding:
    parent: RingCtx
    n: int
    teich_sub: tuple[int, ...]
    elements: frozenset[int]
    units: frozenset[int]
    ideal: frozenset[int]
    reps_S: tuple[int, ...]


def subring(ctx: RingCtx) -> SubringEmbedding:
    """The unique subring GR(p^2, n) of GR(p^2, 2n) and a transversal S."""
    if ctx.r % 2:
        raise OddDegree(f"degree {ctx.r} is odd")
    n = ctx.r // 2
    p, pn = ctx.p, ctx.p**n
    teich_sub = (0,) + tuple(ctx.xi_pow(j * (pn + 1)) for j in range(pn - 1))
    T = np.array(teich_sub)
    a0, a1 = np.meshgrid(T, T, indexing="ij")
    elems = ctx.add(a0.ravel(), ctx.scale(a1.ravel(), p))
    elements = frozenset(int(c) for c in elems)
    sub_units = frozenset(c for c in elements if ctx.is_unit(c))
    ideal = frozenset(c for c in elements if not ctx.is_unit(c))
    ideal_arr = np.array(sorted(ideal))

    covered: set[frozenset] = set()
    reps: list[int] = []
    for x in ctx.teichmuller:
        px = ctx.scale(x, p)
        coset = frozenset(int(c) for c in ctx.add(np.full(len(ideal_arr), px), ideal_arr))
        if coset in covered:
            continue
        covered.add(coset)
        reps.append(x)
        if len(reps) == pn:
            break
    return SubringEmbedding(ctx, n, teich_sub, elements, sub_units, ideal, tuple(reps))


def coset_P(ctx: RingCtx, emb: SubringEmbedding) -> frozenset[int]:
    """P = p * xi^(p^n) * T_n^*, a set of p^n - 1 ideal elements."""
    shift = ctx.scale(ctx.xi_pow(ctx.p**emb.n), ctx.p)
    return frozenset(int(ctx.mul(shift, t)) for t in emb.teich_sub[1:])
