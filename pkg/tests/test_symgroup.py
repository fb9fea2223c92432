from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from declab.symgroup import (
    GF2_POLY,
    PermFamily,
    affine_family,
    all_perms,
    char_closed_forms,
    chi_r,
    class_size,
    classical_diamond_distance,
    compose,
    cycle_type,
    gf2_mul,
    hook_dimension,
    inverse,
    mn_character,
    pairwise_dependence,
    partition_to_counts,
    partitions,
    perm_operator,
)


def test_perm_operator_basics():
    assert np.array_equal(perm_operator((0, 1, 2)), np.eye(3))
    assert np.array_equal(perm_operator((1, 0)), np.array([[0.0, 1.0], [1.0, 0.0]]))


@given(st.permutations(list(range(5))), st.permutations(list(range(5))))
@settings(max_examples=40, deadline=None)
def test_perm_operator_homomorphism(p, q):
    p, q = tuple(p), tuple(q)
    lhs = perm_operator(compose(p, q))
    rhs = perm_operator(p) @ perm_operator(q)
    assert np.array_equal(lhs, rhs)
    u = perm_operator(p)
    assert np.array_equal(u @ u.T, np.eye(5))
    assert np.array_equal(perm_operator(inverse(p)), u.T)


def test_all_perms():
    assert len(list(all_perms(1))) == 1
    three = list(all_perms(3))
    assert len(three) == 6 and len(set(three)) == 6
    assert three == sorted(three)          # lexicographic
    total = sum(perm_operator(p) for p in all_perms(5))
    assert np.allclose(total, factorial(4) * np.ones((5, 5)))
    with pytest.raises(ValueError):
        all_perms(9)


def test_cycle_type_examples():
    assert cycle_type((0, 1, 2, 3)) == (4, 0, 0, 0)
    assert cycle_type((1, 0, 2, 3)) == (2, 1, 0, 0)


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
@settings(max_examples=40, deadline=None)
def test_cycle_type_conjugation_invariant(p, q):
    p, q = tuple(p), tuple(q)
    conj = compose(compose(q, p), inverse(q))
    assert cycle_type(conj) == cycle_type(p)


def test_mn_character_examples():
    # trivial representation is one on every class
    for d in (4, 5, 6):
        for lam in partitions(d):
            assert mn_character((d,), partition_to_counts(lam)) == 1
    # S_4 identity class: standard irrep dimension k1 - 1 = 3
    assert mn_character((3, 1), (4, 0, 0, 0)) == 3
    # S_4 class (2,2): chi_(2,2) = k1(k1-3)/2 + k2 = 2
    assert mn_character((2, 2), (0, 2, 0, 0)) == 2


@pytest.mark.parametrize("d", [4, 5, 6])
def test_char_closed_forms_match_mn(d):
    parts = [(d,), (d - 1, 1), (d - 2, 1, 1), (d - 2, 2)]
    for lam in partitions(d):
        counts = partition_to_counts(lam)
        closed = char_closed_forms(d, counts)
        assert closed == tuple(mn_character(p, counts) for p in parts)


def test_char_closed_forms_values():
    assert char_closed_forms(5, (5, 0, 0, 0, 0)) == (1, 4, 6, 5)
    assert char_closed_forms(5, (3, 1, 0, 0, 0)) == (1, 2, 0, 1)


def test_chi_r():
    assert chi_r(4, (4, 0, 0, 0), (2, 0)) == 16
    from declab.linalg import swap_operator, tensor

    for lam in partitions(4):
        counts = partition_to_counts(lam)
        rep = None
        for p in all_perms(4):
            if cycle_type(p) == counts:
                rep = perm_operator(p)
                break
        assert np.isclose(np.trace(tensor(rep, rep)).real, chi_r(4, counts, (2, 0)))
        assert np.isclose(np.trace(tensor(rep, rep) @ swap_operator(4)).real,
                          chi_r(4, counts, (0, 1)))


def test_character_orthogonality_s4():
    d = 4
    parts = partitions(d)
    for lam in parts:
        for mu in parts:
            total = sum(class_size(partition_to_counts(c))
                        * mn_character(lam, partition_to_counts(c))
                        * mn_character(mu, partition_to_counts(c)) for c in parts)
            assert total == (factorial(d) if lam == mu else 0)


def test_hook_dimension():
    assert hook_dimension((7,)) == 1
    assert hook_dimension((3, 2)) == 5        # k1(k1-3)/2 at k1 = 5
    for d in (4, 5, 6):
        identity = tuple([d] + [0] * (d - 1))
        for lam in partitions(d):
            assert hook_dimension(lam) == mn_character(lam, identity)
    # dimensions of irreps square-sum to the group order
    for d in (4, 5):
        assert sum(hook_dimension(lam) ** 2 for lam in partitions(d)) == factorial(d)


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
@settings(max_examples=60, deadline=None)
def test_gf2_field_axioms(a, b, c):
    n = 6
    assert gf2_mul(a, b, n) == gf2_mul(b, a, n)
    assert gf2_mul(a, gf2_mul(b, c, n), n) == gf2_mul(gf2_mul(a, b, n), c, n)
    assert gf2_mul(a, b ^ c, n) == gf2_mul(a, b, n) ^ gf2_mul(a, c, n)
    assert gf2_mul(a, 1, n) == a


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_gf2_inverses_exist(n):
    d = 1 << n
    for a in range(1, d):
        assert any(gf2_mul(a, b, n) == 1 for b in range(1, d))
    assert n in GF2_POLY


def test_affine_family_small():
    fam1 = affine_family(1)
    assert sorted(fam1.perms) == [(0, 1), (1, 0)]
    fam2 = affine_family(2)
    assert len(fam2) == 12
    assert len(set(fam2.perms)) == 12
    for p in fam2.perms:
        assert sorted(p) == [0, 1, 2, 3]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_affine_family_pairwise_independent(n):
    fam = affine_family(n)
    d = 1 << n
    assert len(fam) == (d - 1) * d
    assert pairwise_dependence(fam, d) < 1e-12


def test_pairwise_dependence_reference_cases():
    full = PermFamily(tuple(all_perms(3)))
    assert pairwise_dependence(full, 3) < 1e-12
    singleton = PermFamily(((0, 1, 2),))
    # point mass vs uniform over six ordered pairs
    assert np.isclose(pairwise_dependence(singleton, 3), 5.0 / 3.0)


def test_classical_diamond_distance():
    full = PermFamily(tuple(all_perms(4)))
    assert classical_diamond_distance(full, 4) < 1e-12
    assert classical_diamond_distance(affine_family(2), 4) < 1e-12
    singleton = PermFamily(((0, 1, 2, 3),))
    assert classical_diamond_distance(singleton, 4) > 1.0
    with pytest.raises(ValueError):
        classical_diamond_distance(full, 8)


def test_diamond_dominates_pairwise_and_mixtures():
    # the vertex maximum dominates the distinct-pair statistic, and any
    # classical mixture never exceeds the vertex maximum
    rng = np.random.default_rng(0)
    members = tuple(tuple(p) for p in
                    (rng.permutation(4) for _ in range(5)))
    fam = PermFamily(tuple(dict.fromkeys(members)))
    d = 4
    eps_vertex = classical_diamond_distance(fam, d)
    eps_pairs = pairwise_dependence(fam, d)
    assert eps_pairs <= eps_vertex + 1e-12
    # random mixtures of basis pair-states
    from declab.symgroup import _pair_distributions

    dist_w = _pair_distributions(fam.perms, fam.weights, d)
    group = list(all_perms(d))
    dist_h = _pair_distributions(group, np.full(len(group), 1 / len(group)), d)
    for _ in range(50):
        mix = rng.dirichlet(np.ones(d * d))
        dev = np.abs(mix @ (dist_w - dist_h)).sum()
        assert dev <= eps_vertex + 1e-10


def test_perm_family_validation():
    with pytest.raises(ValueError):
        PermFamily(((0, 1), (1, 0)), weights=np.array([0.7, 0.7]))
    with pytest.raises(ValueError):
        PermFamily(((0, 0, 1),))
