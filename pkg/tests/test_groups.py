"""Matrix groups, reflection data, and centralizer Lie algebras."""

import pytest

from forge.groups import (
    CycNum, cyclic_group, diagonal_group, group_from_config, mat_inv, mat_mul,
    symmetric_group_matrices,
)


def test_cyclic_group_reflections():
    G = cyclic_group(3)
    assert G.size == 3 and G.dim == 1
    # both nontrivial elements are (complex) reflections
    assert len(G.reflections) == 2
    for r in G.reflections:
        assert r.lam != CycNum.from_fraction(3, 1)


def test_minus_identity_has_no_reflections():
    G = diagonal_group([["-1", "-1"]], 2)
    assert G.size == 2
    assert G.reflections == []


def test_symmetric_group_basics():
    G = symmetric_group_matrices(3)
    assert G.size == 6 and G.dim == 3
    # the three transpositions are real reflections in one conjugacy class
    assert len(G.reflections) == 3
    assert len({r.cls for r in G.reflections}) == 1
    assert G.nclasses == 1


def test_group_closure_and_inverses():
    G = symmetric_group_matrices(3)
    ident = G.elements[0]
    for g in range(G.size):
        assert mat_mul(G.elements[g], G.elements[G.inv[g]]) == ident
        assert mat_inv(G.elements[g], G.order) == G.elements[G.inv[g]]


def test_root_coroot_pairing():
    # alpha_vee is normalized so <alpha_s, alpha_s_vee> = 2, and the moved
    # line is the lambda_s-eigenline of the reflection matrix
    for G in (cyclic_group(4), symmetric_group_matrices(3)):
        two = CycNum.from_fraction(G.order, 2)
        for r in G.reflections:
            pair = sum((a * b for a, b in zip(r.alpha, r.alpha_vee)),
                       CycNum.from_fraction(G.order, 0))
            assert pair == two
            assert G.act_vector(r.element, r.alpha_vee) == \
                tuple(r.lam * x for x in r.alpha_vee)


def test_reflection_conjugation_covariance():
    G = symmetric_group_matrices(3)
    for g in range(G.size):
        for r in G.reflections:
            ci = G.conj(g, r.element)
            rc = next(x for x in G.reflections if x.element == ci)
            # conjugate reflections stay in the same class
            assert rc.cls == r.cls


def test_centralizer_dimensions():
    assert len(cyclic_group(2).centralizer_lie_basis()) == 1
    assert len(symmetric_group_matrices(2).centralizer_lie_basis()) == 2
    assert len(diagonal_group([["-1", "1", "1"]], 2)
               .centralizer_lie_basis()) == 5
    # scalar matrices centralize everything: gl_2 has dimension 4
    assert len(diagonal_group([["-1", "-1"]], 2)
               .centralizer_lie_basis()) == 4


def test_group_from_config():
    G = group_from_config({
        "cyclotomic_order": 3, "dim": 1, "generators": [[["z"]]]})
    assert G.size == 3
    with pytest.raises(ValueError):
        group_from_config({"cyclotomic_order": 2, "dim": 1,
                           "generators": [[["2"]]]})
