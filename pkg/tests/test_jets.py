"""Jet spaces, formal automorphisms, differential-operator Taylor calculus."""

from fractions import Fraction

import forge.jets as jt
from forge.scalars import ScalarContext


def qspace(m, K):
    return jt.JetSpace(m, K, Fraction(1))


def test_jet_poly_arithmetic():
    sp = qspace(1, 4)
    x = sp.var(0)
    p = (sp.const(Fraction(1)) + x) ** 5
    # truncation at order 4 keeps binomial coefficients 1,5,10,10,5
    assert p.coeffs.get((0,)) == 1 and p.coeffs.get((1,)) == 5
    assert p.coeffs.get((4,)) == 5 and (5,) not in p.coeffs


def test_jet_inverse_series():
    sp = qspace(1, 4)
    x = sp.var(0)
    inv = (sp.const(Fraction(1)) + x).inverse()
    want = sp.const(Fraction(1)) - x + x * x - x ** 3 + x ** 4
    assert inv == want
    assert inv * (sp.const(Fraction(1)) + x) == sp.const(Fraction(1))


def test_automorphism_inversion():
    sp = qspace(1, 3)
    x = sp.var(0)
    phi = jt.JetAutomorphism(sp, (x + x * x,))
    inv = phi.invert()
    # (x + x^2)^{-1} = x - x^2 + 2x^3 + O(x^4)
    assert inv.components[0] == x - x * x + (x ** 3) * Fraction(2)
    assert phi.compose(inv).components[0] == x
    assert inv.compose(phi).components[0] == x


def test_vector_field_bracket():
    sp = qspace(2, 3)
    x, y = sp.var(0), sp.var(1)
    zero = sp.const(Fraction(0))
    v = jt.FormalVectorFieldJet(sp, (x, zero))      # x d/dx
    w = jt.FormalVectorFieldJet(sp, (zero, y))      # y d/dy
    assert v.bracket(w) == jt.FormalVectorFieldJet(sp, (zero, zero))
    u = jt.FormalVectorFieldJet(sp, (y, zero))      # y d/dx
    # [x d/dx, y d/dx] = -y d/dx
    assert v.bracket(u) == jt.FormalVectorFieldJet(sp, (-y, zero))


def test_diff_op_weyl_relations():
    sp = qspace(1, 3)
    x_op = jt.JetDiffOp.from_poly(sp.var(0))
    d_op = jt.JetDiffOp.deriv_op(sp, 0)
    one = jt.JetDiffOp.from_poly(sp.const(Fraction(1)))
    assert d_op.commutator(x_op) == one
    # [x d, d] = -d
    assert (x_op * d_op).commutator(d_op) == -d_op


def test_w_basis_dimensions():
    for m, K in ((1, 3), (2, 2), (3, 1)):
        sp = qspace(m, K)
        assert len(jt.w_basis(sp)) == m * sp.vol_dim()


def test_taylor_at_origin_is_truncation():
    sp = qspace(2, 2)
    x, y = sp.var(0), sp.var(1)
    D = jt.JetDiffOp.from_poly(x * y) * jt.JetDiffOp.deriv_op(sp, 1)
    chart = jt.Chart((Fraction(0), Fraction(0)), sp.identity_map())
    assert jt.taylor_of_operator(D, chart) == D


def test_taylor_multiplicativity_simple():
    sp = qspace(2, 3)
    x = sp.var(0)
    D1 = jt.JetDiffOp.from_poly(x * x) * jt.JetDiffOp.deriv_op(sp, 0)
    D2 = jt.JetDiffOp.deriv_op(sp, 1) * jt.JetDiffOp.from_poly(sp.var(1))
    chart = jt.Chart((Fraction(1), Fraction(-2)),
                     jt.JetAutomorphism(sp, (x + sp.var(1) ** 2, sp.var(1))))
    assert not jt.taylor_multiplicativity_check(D1, D2, chart)


def test_maurer_cartan_translation_flow():
    # translation flow psi_t(x) = t + x through the identity chart on C^1:
    # omega evaluates to the constant field -d/dx
    sc = ScalarContext(1, 0)
    sp = jt.JetSpace(1, 3, sc.one())
    x = sp.var(0)
    D = jt.JetDiffOp.deriv_op(sp, 0)
    chart = jt.Chart((sc.zero(),), jt.JetAutomorphism(sp, (x,)))
    frames = jt.auto_frames(D, chart, sc, 0)
    assert len(frames) == 1
    xi = frames[0].xi
    assert xi.components[0] == sp.const(sc.from_int(-1))
    # x d/dx pushes forward trivially along the identity at the origin, so
    # the section derivative equals [omega, x d/dx] under flatness
    res = jt.flatness_residual(D, jt.Chart((sc.t(),), chart.auto), 0)
    assert not res


def test_maurer_cartan_nonlinear_chart():
    # chart x -> x + x^2 translated along t: omega picks up the inverse
    # Jacobian 1/(1+2x) = 1 - 2x + 4x^2 - ...
    sc = ScalarContext(1, 0)
    sp = jt.JetSpace(1, 3, sc.one())
    x = sp.var(0)
    auto = jt.JetAutomorphism(sp, (x + x * x,))
    path = jt.Chart((sc.t(),), auto)
    omega = jt.maurer_cartan_value(path, 0)
    want = -(sp.const(sc.one()) + sp.const(sc.from_int(2)) * x).inverse()
    assert omega.components[0] == want


def test_semidirect_bracket():
    sc = ScalarContext(2, 1)
    sp = jt.JetSpace(1, 3, sc.one())
    x = sp.var(0)
    # bracket of pure vector fields matches the vector-field bracket
    v = jt.FormalVectorFieldJet(sp, (x * x,))
    w = jt.FormalVectorFieldJet(sp, (x,))
    e1 = jt.SemidirectElement(sp, v, [])
    e2 = jt.SemidirectElement(sp, w, [])
    br = e1.bracket(e2)
    assert br.v == v.bracket(w)
    assert not br.pairs or all(not p for _, p in br.pairs)
