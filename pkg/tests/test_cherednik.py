"""PBW-normalized algebra elements: products, filtration, parsing."""

import random

import pytest

from forge.cherednik import CherednikContext
from forge.groups import cyclic_group, symmetric_group_matrices
from forge.suites import _random_element


@pytest.fixture(scope="module")
def z2():
    return CherednikContext(cyclic_group(2))


def test_rank_one_commutator(z2):
    sc = z2.scalars
    lhs = z2.u(0) * z2.y(0) - z2.y(0) * z2.u(0)
    want = z2.one() * sc.t() - z2.g(1) * (sc.from_int(2) * sc.c(1))
    assert lhs == want
    assert str(lhs) == "t - 2*c1*s1"


def test_group_relations(z2):
    assert z2.g(1) * z2.g(1) == z2.one()
    # s y s^-1 = -y, s u s^-1 = -u for the sign representation
    assert z2.g(1) * z2.y(0) == -(z2.y(0) * z2.g(1))
    assert z2.g(1) * z2.u(0) == -(z2.u(0) * z2.g(1))


def test_pbw_normal_form_keys(z2):
    e = z2.u(0) * z2.g(1) * z2.y(0)
    for (a, g, b) in e.terms:
        assert isinstance(a, tuple) and isinstance(b, tuple)
        assert 0 <= g < 2


def test_filtration_degree(z2):
    # u-filtration: commutators drop the u-degree
    e = z2.u(0) * z2.u(0) * z2.y(0)
    assert e.u_degree() == 2
    comm = z2.u(0).commutator(z2.y(0))
    assert comm.u_degree() == 0


def test_polynomial_subalgebra_is_commutative():
    alg = CherednikContext(symmetric_group_matrices(3))
    assert alg.y(0) * alg.y(1) == alg.y(1) * alg.y(0)
    assert alg.u(0) * alg.u(2) == alg.u(2) * alg.u(0)


def test_associativity_spot_checks():
    alg = CherednikContext(symmetric_group_matrices(2))
    rng = random.Random(7)
    for _ in range(10):
        a = _random_element(alg, rng, 3, 2)
        b = _random_element(alg, rng, 3, 2)
        c = _random_element(alg, rng, 3, 2)
        assert (a * b) * c == a * (b * c)


def test_parser_round_trip(z2):
    sc = z2.scalars
    e = z2.parse("u1*y1 + t*s1 - 2*c1")
    want = z2.u(0) * z2.y(0) + z2.g(1) * sc.t() - z2.one() * (
        sc.from_int(2) * sc.c(1))
    assert e == want
    assert z2.parse(str(e)) == e


def test_parser_rejects_unknown_symbol(z2):
    with pytest.raises(ValueError):
        z2.parse("q1 + y1")
