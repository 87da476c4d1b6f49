import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from ddfdesign.designs import develop, make_design
from ddfdesign.errors import BudgetExceeded, NotAPermutation
from ddfdesign.families import build_family, davis_family, momihara_family, wilson_family
from ddfdesign.iso import (
    are_isomorphic,
    automorphism_group_order,
    canonical,
    canonical_form,
    verify_isomorphism,
)

from test_families import SWEEP

ORDERS = {
    ("wilson", (2, 4, 3)): 960,
    ("wilson", (3, 4, 4)): 25920,
    ("wilson", (2, 4, 5)): 5760,
    ("wilson", (2, 6, 9)): 677376,
    ("wilson", (3, 2, 4)): 362880,
    ("wilson", (5, 2, 6)): 12000,
    ("momihara", (2, 1)): 192,
    ("momihara", (3, 1)): 3888,
    ("davis", (2, 2)): 384,
    ("davis", (2, 3)): 10752,
    ("davis", (3, 1)): 362880,
    ("davis", (5, 1)): 500,
    ("davis", (3, 2)): 11664,
}


def _shuffled(design, seed):
    rng = np.random.default_rng(seed)
    other = design.relabel(rng.permutation(design.v))
    order = rng.permutation(other.b)
    return make_design(other.v, [other.blocks[i] for i in order]), other


@pytest.mark.parametrize("kind,kw,shape", SWEEP)
def test_group_order_against_sympy(kind, kw, shape):
    d = develop(build_family(kind, **kw))
    res = canonical(d, max_blocks=1024)
    assert res.group_order == ORDERS[kind, tuple(kw.values())]
    for g in res.generators:
        assert verify_isomorphism(d, d, g)
    group = PermutationGroup([Permutation(list(map(int, g))) for g in res.generators])
    assert group.order() == res.group_order


@pytest.mark.parametrize("kind,kw,shape", SWEEP[:9])
def test_certificate_is_relabeling_invariant(kind, kw, shape):
    d = develop(build_family(kind, **kw))
    ref = canonical(d, max_blocks=1024)
    for seed in range(3):
        moved, _ = _shuffled(d, seed)
        res = canonical(moved, max_blocks=1024, seeds=())
        assert res.certificate == ref.certificate
        assert res.group_order == ref.group_order


def test_canonical_labeling_is_a_fixed_point():
    d = develop(davis_family(2, 2))
    res = canonical(d)
    again = canonical(d.relabel(res.labeling))
    assert again.certificate == res.certificate
    assert again.group_order == res.group_order


def test_isomorphism_queries():
    dd, dw = develop(davis_family(2, 2)), develop(wilson_family(2, 4, 5))
    assert are_isomorphic(dd, dw) is None
    assert are_isomorphic(develop(momihara_family(2, 1)), develop(wilson_family(2, 4, 3))) is None
    a, b = develop(davis_family(3, 1)), develop(wilson_family(3, 2, 4))
    bij = are_isomorphic(a, b)
    assert bij is not None and verify_isomorphism(a, b, bij)


def test_isomorphic_to_a_shuffled_copy():
    d = develop(wilson_family(5, 2, 6))
    moved, _ = _shuffled(d, 11)
    bij = are_isomorphic(d, moved)
    assert verify_isomorphism(d, moved, bij)


def test_shape_mismatch_is_not_isomorphic():
    assert are_isomorphic(make_design(4, [(0, 1)]), make_design(4, [(0, 1), (2, 3)])) is None
    assert are_isomorphic(make_design(4, [(0, 1, 2)]), make_design(5, [(0, 1, 2)])) is None


def test_verify_isomorphism():
    d = develop(davis_family(2, 2))
    ident = list(range(d.v))
    assert verify_isomorphism(d, d, ident)
    perm = np.random.default_rng(3).permutation(d.v)
    assert verify_isomorphism(d, d.relabel(perm), perm)
    # a transposition is not an automorphism of this design
    swap = ident[:]
    swap[1], swap[2] = swap[2], swap[1]
    assert not verify_isomorphism(d, d, swap)
    with pytest.raises(NotAPermutation):
        verify_isomorphism(d, d, [0] * d.v)
    with pytest.raises(NotAPermutation):
        verify_isomorphism(d, d, ident[:-1])


def test_small_designs():
    # the Fano plane has 168 automorphisms
    fano = make_design(7, [tuple(sorted(((0 + i) % 7, (1 + i) % 7, (3 + i) % 7))) for i in range(7)])
    assert automorphism_group_order(fano) == 168
    assert automorphism_group_order(make_design(5, [])) == 120
    assert automorphism_group_order(make_design(4, [(0, 1), (2, 3)])) == 8
    complete = make_design(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert automorphism_group_order(complete) == 120


def test_budget():
    d = develop(momihara_family(3, 1))
    with pytest.raises(BudgetExceeded):
        canonical(d, max_blocks=100)
    with pytest.raises(BudgetExceeded):
        canonical(d, max_points=80)
    with pytest.raises(BudgetExceeded):
        canonical(develop(davis_family(2, 3)), node_budget=1, seeds=())


def test_deterministic():
    d = develop(momihara_family(2, 1))
    assert canonical_form(d) == canonical_form(d)
    assert canonical(d).labeling.tolist() == canonical(d).labeling.tolist()


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1)])
def test_group_order_formulas(p, n):
    # field-side design: 4n p^{4n}(p^{4n} - 1); ring-side design: 2 p^{5n}(p^{2n} - 1)
    q = p**n
    field = develop(wilson_family(p, 4 * n, q + 1))
    ring = develop(momihara_family(p, n))
    assert automorphism_group_order(field, max_blocks=1024) == 4 * n * q**4 * (q**4 - 1)
    assert automorphism_group_order(ring, max_blocks=1024) == 2 * q**5 * (q**2 - 1)
