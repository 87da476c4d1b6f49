"""Finite fields GF(p^r) with log/exp tables, cyclotomic classes and numbers.

Elements are plain ``int`` codes: the element ``c_0 + c_1 x + ... + c_{r-1} x^{r-1}``
of ``GF(p)[x]/(modulus)`` has code ``sum(c_i * p**i)``.  Zero is code 0 and the
identity is code 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConditionsNotMet,
    DlogOfZero,
    DoesNotDivide,
    IndexOutOfRange,
    NotPrime,
    ParameterError,
    SizeExceeded,
)

DEFAULT_MAX_ORDER = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrime(f"{p} is not prime")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], neg_low: list[int], p: int) -> list[int]:
    r = len(neg_low)
    prod = [0] * (2 * r - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    # x^r = sum(neg_low[i] x^i)
    for k in range(2 * r - 2, r - 1, -1):
        top = prod[k] % p
        if top:
            for i, n in enumerate(neg_low):
                prod[k - r + i] += top * n
    return [c % p for c in prod[:r]]


def _polypow_x(k: int, neg_low: list[int], p: int) -> list[int]:
    r = len(neg_low)
    result = [1] + [0] * (r - 1)
    base = ([0, 1] + [0] * (r - 2)) if r > 1 else [neg_low[0] % p]
    while k:
        if k & 1:
            result = _polymulmod(result, base, neg_low, p)
        base = _polymulmod(base, base, neg_low, p)
        k >>= 1
    return result


def is_primitive(p: int, low: tuple[int, ...]) -> bool:
    """True when the root x of the monic polynomial with low coefficients
    ``low`` has multiplicative order exactly p^r - 1 (which forces the
    polynomial to be irreducible)."""
    r = len(low)
    if low[0] % p == 0:
        return False
    neg_low = [(-c) % p for c in low]
    one = [1] + [0] * (r - 1)
    order = p**r - 1
    if _polypow_x(order, neg_low, p) != one:
        return False
    return all(_polypow_x(order // ell, neg_low, p) != one for ell in _prime_factors(order))


def _power_sequence(p: int, r: int, low: tuple[int, ...]) -> list[int]:
    """Codes of x^0, x^1, ..., x^{q-2} modulo the polynomial."""
    q = p**r
    weights = [p**i for i in range(r)]
    neg_low = [(-c) % p for c in low]
    coeffs = [1] + [0] * (r - 1)
    seq = [1]
    for _ in range(q - 2):
        top = coeffs[-1]
        coeffs = [0] + coeffs[:-1]
        if top:
            coeffs = [(c + top * n) % p for c, n in zip(coeffs, neg_low)]
        seq.append(sum(c * w for c, w in zip(coeffs, weights)))
    return seq


def find_primitive_polynomial(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree r over GF(p).

    Candidates are the coefficient sequences (c_0, ..., c_{r-1}) in
    lexicographic order; the leading coefficient 1 is implicit.  Returns the
    full coefficient tuple, constant term first and ending in 1.
    """
    for low in itertools.product(range(p), repeat=r):
        if is_primitive(p, low):
            return tuple(low) + (1,)
    raise RuntimeError(f"no primitive polynomial of degree {r} over GF({p})")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    r: int
    modulus: tuple[int, ...]
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    digits: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def alpha(self) -> int:
        return int(self.exp_table[1 % (self.q - 1)])

    def describe(self) -> dict:
        return {"kind": "field", "p": self.p, "r": self.r, "modulus": list(self.modulus)}

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[a])

    def element(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.r - len(coeffs))
        if len(coeffs) != self.r:
            raise ParameterError(f"expected at most {self.r} coefficients")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return digits @ (self.p ** np.arange(self.r, dtype=np.int64))

    def add(self, a, b):
        out = self._encode((self.digits[a] + self.digits[b]) % self.p)
        return int(out) if np.ndim(out) == 0 else out

    def neg(self, a):
        out = self._encode((-self.digits[a]) % self.p)
        return int(out) if np.ndim(out) == 0 else out

    def sub(self, a, b):
        out = self._encode((self.digits[a] - self.digits[b]) % self.p)
        return int(out) if np.ndim(out) == 0 else out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * k) % (self.q - 1)])

    def inv(self, a: int) -> int:
        return self.pow(a, -1)

    def dlog(self, a: int) -> int:
        if a == 0:
            raise DlogOfZero("discrete logarithm of 0")
        return int(self.log_table[a])

    def exp(self, t: int) -> int:
        return int(self.exp_table[t % (self.q - 1)])

    def elements(self) -> range:
        return range(self.q)


def make_field(p: int, r: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldCtx:
    check_prime(p)
    if r < 1:
        raise ParameterError("degree must be positive")
    q = p**r
    if q > max_order:
        raise SizeExceeded(f"field order {q} exceeds bound {max_order}")
    modulus = find_primitive_polynomial(p, r)
    exp_table = np.array(_power_sequence(p, r, modulus[:-1]), dtype=np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(q - 1)
    codes = np.arange(q, dtype=np.int64)
    digits = np.stack([(codes // p**i) % p for i in range(r)], axis=1)
    return FieldCtx(p, r, modulus, exp_table, log_table, digits)


def _check_order(ctx: FieldCtx, e: int) -> int:
    if e < 1 or (ctx.q - 1) % e:
        raise DoesNotDivide(f"{e} does not divide q-1 = {ctx.q - 1}")
    return (ctx.q - 1) // e


def cyclotomic_classes(ctx: FieldCtx, e: int) -> list[frozenset[int]]:
    """Cosets C_i = {alpha^t : t = i mod e} of the subgroup of e-th powers."""
    _check_order(ctx, e)
    return [frozenset(int(c) for c in ctx.exp_table[i::e]) for i in range(e)]


def cyclotomic_number(ctx: FieldCtx, e: int, i: int, j: int) -> int:
    """(i, j)_e = |(C_i + 1) & C_j|, counted by enumerating C_i."""
    _check_order(ctx, e)
    if not (0 <= i < e and 0 <= j < e):
        raise IndexOutOfRange(f"indices ({i}, {j}) outside 0..{e - 1}")
    shifted = ctx.add(ctx.exp_table[i::e], 1)
    shifted = shifted[shifted != 0]
    return int(np.count_nonzero(ctx.log_table[shifted] % e == j))


def cyclotomic_matrix(ctx: FieldCtx, e: int) -> np.ndarray:
    """All cyclotomic numbers of order e as an e x e array."""
    _check_order(ctx, e)
    nonzero = ctx.exp_table
    shifted = ctx.add(nonzero, 1)
    keep = shifted != 0
    rows = (np.arange(ctx.q - 1) % e)[keep]
    cols = ctx.log_table[shifted[keep]] % e
    out = np.zeros((e, e), dtype=np.int64)
    np.add.at(out, (rows, cols), 1)
    return out


def uniform_parameters(p: int, m: int, e: int) -> tuple[int, int]:
    """Return (s, eta) for the uniform cyclotomy regime or raise ConditionsNotMet."""
    check_prime(p)
    q = p**m
    if e < 3:
        raise ConditionsNotMet("uniform cyclotomy needs e >= 3")
    if (q - 1) % e:
        raise DoesNotDivide(f"{e} does not divide {q - 1}")
    if not any(pow(p, k, e) == e - 1 for k in range(1, e + 1)):
        raise ConditionsNotMet(f"-1 is not a power of {p} modulo {e}")
    root = math.isqrt(q)
    if root * root != q:
        raise ConditionsNotMet(f"{q} is not a perfect square")
    for s in (root, -root):
        if (s - 1) % e == 0:
            return s, (s - 1) // e
    raise ConditionsNotMet(f"no square root of {q} is 1 modulo {e}")


def uniform_cyclotomic_number(p: int, m: int, e: int, i: int, j: int) -> int:
    _, eta = uniform_parameters(p, m, e)
    if not (0 <= i < e and 0 <= j < e):
        raise IndexOutOfRange(f"indices ({i}, {j}) outside 0..{e - 1}")
    if i == 0 and j == 0:
        return eta * eta - (e - 3) * eta - 1
    if i == 0 or j == 0 or i == j:
        return eta * eta + eta
    return eta * eta
