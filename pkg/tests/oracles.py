"""Slow, independent reference computations used to cross-check the package.

Nothing here touches the package's lookup tables: field and ring
arithmetic is schoolbook polynomial arithmetic on coefficient lists.
"""

from __future__ import annotations

import itertools
from collections import Counter


# -- polynomials over Z/n, coefficient lists with the constant term first ----

def poly_mulmod(a, b, modulus, n):
    """a*b reduced modulo the monic polynomial ``modulus`` and modulo n."""
    r = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for k in range(len(prod) - 1, r - 1, -1):
        c = prod[k] % n
        if c:
            for i in range(r + 1):
                prod[k - r + i] -= c * modulus[i]
        prod[k] = 0
    out = [c % n for c in prod[:r]]
    return out + [0] * (r - len(out))


def code_to_coeffs(code, base, r):
    return [(code // base**i) % base for i in range(r)]


def coeffs_to_code(coeffs, base):
    return sum(c * base**i for i, c in enumerate(coeffs))


def naive_field_mul(p, modulus, a, b):
    r = len(modulus) - 1
    out = poly_mulmod(code_to_coeffs(a, p, r), code_to_coeffs(b, p, r), modulus, p)
    return coeffs_to_code(out, p)


def naive_ring_mul(p, modulus, a, b):
    r = len(modulus) - 1
    m = p * p
    out = poly_mulmod(code_to_coeffs(a, m, r), code_to_coeffs(b, m, r), modulus, m)
    return coeffs_to_code(out, m)


def naive_ring_add(p, r, a, b):
    m = p * p
    return coeffs_to_code([(x + y) % m for x, y in zip(code_to_coeffs(a, m, r), code_to_coeffs(b, m, r))], m)


def multiplicative_order(p, modulus, a):
    one, x, k = 1, a, 1
    while x != one:
        x = naive_field_mul(p, modulus, x, a)
        k += 1
        if k > p ** (len(modulus) - 1):
            return None
    return k


def brute_primitive_polynomial(p, r):
    """First monic polynomial, in lexicographic order of (c_0..c_{r-1}), whose root has order p^r - 1."""
    x = p if r > 1 else None
    for low in itertools.product(range(p), repeat=r):
        modulus = list(low) + [1]
        if low[0] == 0:
            continue
        gen = x if r > 1 else (-low[0]) % p
        if multiplicative_order(p, modulus, gen) == p**r - 1:
            return tuple(modulus)
    return None


def naive_powers(p, modulus):
    """alpha^0, alpha^1, ..., alpha^(q-2) with alpha the class of x."""
    r = len(modulus) - 1
    alpha = p if r > 1 else (-modulus[0]) % p
    out, cur = [], 1
    for _ in range(p**r - 1):
        out.append(cur)
        cur = naive_field_mul(p, modulus, cur, alpha)
    return out


def naive_cyclotomic_numbers(p, modulus, e):
    r = len(modulus) - 1
    powers = naive_powers(p, modulus)
    log = {x: t for t, x in enumerate(powers)}
    one = 1
    table = [[0] * e for _ in range(e)]
    for t, x in enumerate(powers):
        y = coeffs_to_code([(c + d) % p for c, d in zip(code_to_coeffs(x, p, r), code_to_coeffs(one, p, r))], p)
        if y:
            table[t % e][log[y] % e] += 1
    return table


# -- designs -------------------------------------------------------------------

def pair_counts(v, blocks):
    counts = Counter()
    for blk in blocks:
        for a, b in itertools.combinations(sorted(blk), 2):
            counts[a, b] += 1
    return {pair: counts.get(pair, 0) for pair in itertools.combinations(range(v), 2)}


def naive_profile(blocks):
    sets = [frozenset(b) for b in blocks]
    return dict(Counter(len(sets[i] & sets[j]) for i in range(len(sets)) for j in range(i + 1, len(sets))))


def rank_gf2(v, blocks):
    """Rank over GF(2) of the incidence matrix, columns as int bitsets."""
    basis = {}
    rank = 0
    for blk in blocks:
        x = 0
        for pt in blk:
            x ^= 1 << pt
        while x:
            top = x.bit_length() - 1
            if top in basis:
                x ^= basis[top]
            else:
                basis[top] = x
                rank += 1
                break
    return rank


def naive_differences(add_neg, A):
    """Multiset of a - a' (a != a') computed with a user supplied subtraction."""
    return Counter(add_neg(a, b) for a in A for b in A if a != b)
