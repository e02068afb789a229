"""Two-sided gluing comparison for the rank-2 slice with a Z/2 fiber."""

from fractions import Fraction

import pytest

import forge.gluing as gl
import forge.jets as jt


@pytest.fixture(scope="module")
def model():
    return gl.SliceModel(2)


def test_model_shape(model):
    assert model.alg.dim == 2
    assert model.fiber_group.size == 2
    # both sides share one scalar context so parameters line up exactly
    assert model.alg.scalars is model.fiber_alg.scalars


def test_generators_glue(model):
    alg = model.alg
    for D in [alg.y(0), alg.y(1), alg.u(0), alg.u(1), alg.g(1)]:
        rep = gl.check_gluing(model, D, 4, 4)
        assert rep["ok"], rep


def test_commutation_relation_glues(model):
    alg = model.alg
    rep = gl.check_gluing(model, alg.u(1) * alg.y(1), 4, 4)
    assert rep["ok"]
    assert rep["condition_i"]["ok"] and rep["condition_ii"]["ok"]
    assert rep["filtration_preserved"]


def test_condition_i_bounds_poles(model):
    alg = model.alg
    rep = gl.condition_i_report(model, alg.u(1) * alg.u(1))
    assert rep["ok"]
    for term in rep["terms"]:
        assert term["pole_order"] <= term["u_degree"]


def test_injected_pole_control(model):
    alg = model.alg
    ctl = gl.injected_pole_control(model, alg.u(1), 4, 4)
    assert ctl["ok"]
    assert ctl["clean"]["ok"] and not ctl["injected"]["ok"]


def test_chart_independence(model):
    sp = jt.JetSpace(1, 4, model.scalars.one())
    x = sp.var(0)
    rho = jt.JetAutomorphism(sp, (x + x * x,))
    alg = model.alg
    for D in [alg.u(0), alg.y(0) * alg.u(1), alg.g(1) * alg.y(1)]:
        rep = gl.check_gluing(model, D, 4, 4, chart=rho)
        assert rep["condition_ii"]["ok"], rep


def test_uniqueness_shadow_small(model):
    sh = gl.uniqueness_shadow(model, 1, 1, 5, 5)
    assert sh["ok"]
    assert sh["rank"] == sh["expected"] == len(gl.pbw_basis_keys(model, 1, 1))
