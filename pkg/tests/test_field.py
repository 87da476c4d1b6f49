import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddfdesign.errors import (
    ConditionsNotMet,
    DlogOfZero,
    DoesNotDivide,
    IndexOutOfRange,
    NotPrime,
    SizeExceeded,
)
from ddfdesign.field import (
    cyclotomic_classes,
    cyclotomic_matrix,
    cyclotomic_number,
    find_primitive_polynomial,
    make_field,
    uniform_cyclotomic_number,
    uniform_parameters,
)

from oracles import brute_primitive_polynomial, naive_cyclotomic_numbers, naive_field_mul, naive_powers

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)]


@pytest.mark.parametrize("p,r", SMALL_FIELDS)
def test_modulus_is_first_primitive_in_lex_order(p, r):
    assert find_primitive_polynomial(p, r) == brute_primitive_polynomial(p, r)


@pytest.mark.parametrize("p,r,q", [(2, 4, 16), (3, 4, 81)])
def test_make_field_order(p, r, q):
    ctx = make_field(p, r)
    assert ctx.q == q
    # alpha has order exactly q - 1
    assert len(set(ctx.exp_table.tolist())) == q - 1
    assert ctx.pow(ctx.alpha, q - 1) == 1


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(SizeExceeded):
        make_field(2, 20)
    assert make_field(2, 20, max_order=2**20).q == 2**20


@pytest.mark.parametrize("p,r", SMALL_FIELDS)
def test_tables_match_schoolbook_arithmetic(p, r):
    ctx = make_field(p, r)
    assert ctx.exp_table.tolist() == naive_powers(p, list(ctx.modulus))
    rng = np.random.default_rng(p * 100 + r)
    for a, b in rng.integers(0, ctx.q, size=(50, 2)):
        assert ctx.mul(int(a), int(b)) == naive_field_mul(p, list(ctx.modulus), int(a), int(b))


def test_exp_log_round_trip():
    ctx = make_field(3, 4)
    for t in range(ctx.q - 1):
        assert ctx.dlog(ctx.exp(t)) == t
    assert ctx.dlog(1) == 0
    with pytest.raises(DlogOfZero):
        ctx.dlog(0)


def test_gf16_examples():
    ctx = make_field(2, 4)
    a = ctx.alpha
    assert ctx.mul(ctx.pow(a, 3), ctx.pow(a, 13)) == a
    for x in ctx.elements():
        assert ctx.add(x, ctx.neg(x)) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (5, 2), (2, 5)]), st.data())
def test_field_axioms(pr, data):
    ctx = make_field(*pr)
    el = st.integers(0, ctx.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert ctx.add(a, b) == ctx.add(b, a)
    assert ctx.mul(a, b) == ctx.mul(b, a)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1


def test_cyclotomic_classes_partition():
    ctx = make_field(2, 4)
    classes = cyclotomic_classes(ctx, 3)
    assert [len(c) for c in classes] == [5, 5, 5]
    assert frozenset().union(*classes) == frozenset(range(1, 16))
    c0 = classes[0]
    assert all(ctx.mul(x, y) in c0 for x in c0 for y in c0)
    assert all(len(c) == 1 for c in cyclotomic_classes(ctx, 15))
    with pytest.raises(DoesNotDivide):
        cyclotomic_classes(ctx, 4)


@pytest.mark.parametrize(
    "p,m,e,expected",
    [(2, 4, 3, {(0, 0): 0, (0, 1): 2, (1, 2): 1}), (3, 4, 10, {(0, 0): 7, (0, 1): 0, (1, 2): 1})],
)
def test_cyclotomic_number_values(p, m, e, expected):
    ctx = make_field(p, m)
    for (i, j), val in expected.items():
        assert cyclotomic_number(ctx, e, i, j) == val
        assert uniform_cyclotomic_number(p, m, e, i, j) == val


@pytest.mark.parametrize("p,m,e", [(2, 4, 3), (2, 4, 5), (3, 2, 4), (3, 4, 10), (5, 2, 6), (2, 6, 9), (2, 6, 7)])
def test_cyclotomic_matrix_against_oracle(p, m, e):
    ctx = make_field(p, m)
    expect = naive_cyclotomic_numbers(p, list(ctx.modulus), e)
    assert cyclotomic_matrix(ctx, e).tolist() == expect
    assert [[cyclotomic_number(ctx, e, i, j) for j in range(e)] for i in range(e)] == expect


@pytest.mark.parametrize("p,m,e", [(2, 4, 3), (3, 4, 10), (5, 2, 3), (2, 6, 21), (7, 2, 4)])
def test_cyclotomic_total(p, m, e):
    # every element of C_i + 1 lies in some C_j except 0, which occurs once
    ctx = make_field(p, m)
    assert cyclotomic_matrix(ctx, e).sum() == ctx.q - 2


def test_cyclotomic_number_errors():
    ctx = make_field(2, 4)
    with pytest.raises(IndexOutOfRange):
        cyclotomic_number(ctx, 3, 3, 0)
    with pytest.raises(DoesNotDivide):
        cyclotomic_number(ctx, 7, 0, 0)


def test_uniform_parameters():
    assert uniform_parameters(2, 4, 3) == (4, 1)
    assert uniform_parameters(3, 4, 10) == (-9, -1)
    with pytest.raises(ConditionsNotMet):
        uniform_parameters(2, 4, 15)  # -1 is not a power of 2 mod 15
    with pytest.raises(ConditionsNotMet):
        uniform_parameters(2, 3, 7)  # 8 is not a square


def _admissible(limit=10**4):
    for p in (2, 3, 5, 7):
        for m in range(2, 14, 2):
            q = p**m
            if q > limit:
                break
            for e in range(3, q):
                if (q - 1) % e == 0:
                    try:
                        uniform_parameters(p, m, e)
                    except ConditionsNotMet:
                        continue
                    yield p, m, e


def test_uniform_cyclotomy_sweep():
    cases = list(_admissible())
    assert len(cases) > 10
    for p, m, e in cases:
        got = cyclotomic_matrix(make_field(p, m), e)
        want = [[uniform_cyclotomic_number(p, m, e, i, j) for j in range(e)] for i in range(e)]
        assert got.tolist() == want, (p, m, e)
