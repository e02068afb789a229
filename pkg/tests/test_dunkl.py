"""Dunkl operators, the localized operator algebra, and the embedding."""

import pytest

from forge.cherednik import CherednikContext
from forge.dunkl import DunklContext, resolve_commutator_sign
from forge.groups import cyclic_group, symmetric_group_matrices


@pytest.fixture(scope="module")
def rank1():
    alg = CherednikContext(cyclic_group(2))
    return alg, DunklContext(alg)


def test_commutator_sign_oracle():
    # rank-1 oracle pinning the sign convention in [u, y] = t - sum_s (...) s
    assert resolve_commutator_sign() == -1


def test_rank_one_dunkl_values(rank1):
    alg, d = rank1
    sc = alg.scalars
    D = d.dunkl_operator(0)
    y = d.coeff({(1,): sc.one()})
    # D(y) = t - 2c, D(y^2) = 2ty (the reflection part cancels on evens)
    assert D.apply(y) == d.coeff_scalar(sc.t() - sc.from_int(2) * sc.c(1))
    y2 = y * y
    assert D.apply(y2) == y.scale(sc.from_int(2) * sc.t())


def test_dunkl_operators_commute(rank1):
    alg = CherednikContext(symmetric_group_matrices(2))
    d = DunklContext(alg)
    D0, D1 = d.dunkl_operator(0), d.dunkl_operator(1)
    assert not D0.commutator(D1)


def test_theta_on_defining_relation(rank1):
    alg, d = rank1
    lhs = d.theta(alg.u(0)).commutator(d.theta(alg.y(0)))
    assert lhs == d.theta(alg.u(0).commutator(alg.y(0)))


def test_theta_equivariance():
    alg = CherednikContext(symmetric_group_matrices(2))
    d = DunklContext(alg)
    G = alg.group
    s = next(r.element for r in G.reflections)
    # theta(g) theta(y_i) theta(g)^-1 = theta(g y_i g^-1)
    conj = d.theta(alg.g(s)) * d.theta(alg.y(0)) * d.theta(alg.g(G.inv[s]))
    assert conj == d.theta(alg.g(s) * alg.y(0) * alg.g(G.inv[s]))


def test_localized_coeff_reduction(rank1):
    alg, d = rank1
    sc = alg.scalars
    y = d.coeff({(1,): sc.one()})
    pole = d.coeff({(0,): sc.one()}, (1,))       # 1/y
    assert (y * pole) == d.coeff_scalar(sc.one())
    assert pole.reduced().pole_order() == 1
    assert (y * y * pole).reduced().pole_order() == 0


def test_theta_is_injective_on_group_algebra():
    alg = CherednikContext(cyclic_group(3))
    d = DunklContext(alg)
    seen = [d.theta(alg.g(i)) for i in range(3)]
    assert seen[1] != seen[2] and seen[0] != seen[1]
