"""Induction of interior algebras: coset bases, products, comparison map."""

from fractions import Fraction

import pytest

import forge.induction as ind
from forge.groups import cyclic_group, symmetric_group_matrices


def s3_with_s2():
    G = symmetric_group_matrices(3)
    h2 = next(g for g in range(1, G.size) if G.mult[g][g] == 0)
    return G, (0, h2)


def sign_algebra(G, H, npow=3):
    return ind.truncated_polynomial_algebra(
        npow, sign_action_of={0: False, H[1]: True}, group=G)


def test_truncated_polynomial_algebra_validates():
    G, H = s3_with_s2()
    A = sign_algebra(G, H)
    assert A.dim == 3
    A.validate()
    # x * x^2 = 0 in C[x]/(x^3)
    assert A.product(A.basis_vec(1), A.basis_vec(2)) == {}
    # the nontrivial H generator acts by x -> -x
    assert A.act(H[1], A.basis_vec(1)) == {1: Fraction(-1)}


def test_coset_representatives():
    G, H = s3_with_s2()
    reps = ind.left_coset_reps(G, H)
    assert len(reps) == 3 and reps[0] == 0
    seen = {G.mult[r][h] for r in reps for h in H}
    assert seen == set(range(G.size))


def test_turull_dimension_and_unit():
    G, H = s3_with_s2()
    A = sign_algebra(G, H)
    T = ind.turull_induce(A, G, H)
    assert T.dim == 3 * A.dim
    one = T.one()
    for b in T.basis():
        assert one * b == b and b * one == b


def test_turull_g_action_is_multiplicative():
    G, H = s3_with_s2()
    A = sign_algebra(G, H)
    T = ind.turull_induce(A, G, H)
    for g in range(G.size):
        for x in T.basis()[:4]:
            for y in T.basis()[:4]:
                assert T.g_action(g, x * y) == \
                    T.g_action(g, x) * T.g_action(g, y)


def test_puig_requires_interior():
    G, H = s3_with_s2()
    A = sign_algebra(G, H)       # has an H-action but no interior map
    with pytest.raises(ValueError):
        ind.puig_induce(A, G, H)


def test_puig_dimension_and_associativity():
    G, H = s3_with_s2()
    A = ind.truncated_polynomial_algebra(3)
    A.interior = {h: dict(A.unit) for h in H}
    A.group, A.subgroup = G, H
    A.validate()
    P = ind.puig_induce(A, G, H)
    assert P.dim == 9 * A.dim
    bas = P.basis()
    for x in bas[:3]:
        for y in bas[3:6]:
            for z in bas[6:9]:
                assert (x * y) * z == x * (y * z)


def test_puig_basis_elements_are_zero_divisors():
    G, H = s3_with_s2()
    A = ind.truncated_polynomial_algebra(2)
    A.interior = {h: dict(A.unit) for h in H}
    A.group, A.subgroup = G, H
    A.validate()
    P = ind.puig_induce(A, G, H)
    rep = ind.zero_divisor_report(P)
    assert rep["ok"]


def test_smash_iso_small():
    G, H = s3_with_s2()
    A = sign_algebra(G, H)
    rep = ind.verify_smash_iso(A, G, H, seed=11, npairs=25)
    assert rep["ok"], rep


def test_smash_iso_cyclic():
    G = cyclic_group(4)
    h2 = next(g for g in range(1, G.size) if G.mult[g][g] == 0)
    H = (0, h2)
    A = sign_algebra(G, H, npow=2)
    rep = ind.verify_smash_iso(A, G, H, seed=3, npairs=25)
    assert rep["ok"], rep


def test_representative_independence():
    G, H = s3_with_s2()
    A = sign_algebra(G, H)
    assert ind.representative_independence(A, G, H)
