"""End-to-end acceptance battery.

Every check is exact (zero residual) and seeded; the timed checks assert the
wall-clock budgets they are required to meet on desk hardware.
"""

import json
import time

import pytest

import forge.hc as hc
import forge.jets as jt
from forge import suites
from forge.cherednik import CherednikContext
from forge.groups import cyclic_group, diagonal_group, symmetric_group_matrices

SEED = 20260826


def _ok(report):
    assert report["ok"], json.dumps(report, indent=2, default=str)
    return report


def _check(report, name):
    entry = next(c for c in report["checks"] if c["check"].startswith(name))
    assert entry["ok"], json.dumps(entry, indent=2, default=str)
    return entry


def four_groups():
    return [
        ("Z2 on C^1", cyclic_group(2)),
        ("Z3 on C^1", cyclic_group(3)),
        ("S2 on C^2", symmetric_group_matrices(2)),
        ("S3 on C^3", symmetric_group_matrices(3)),
    ]


@pytest.fixture(scope="module")
def hc_reports():
    """Centralizer-calculus battery for both test subgroups, 50 random
    semidirect elements each at truncation K = 3."""
    gl3 = diagonal_group([["-1", "1", "1"]], 2)
    gl1 = cyclic_group(3)
    return {
        "GL3": suites.verify_hc(gl3, codim=3, order=3, seed=SEED, nelems=50),
        "GL1": suites.verify_hc(gl1, codim=1, order=3, seed=SEED, nelems=50),
    }


@pytest.fixture(scope="module")
def jet_recursion_reports():
    """Flat-section recursion on C^1 and C^2: auto frames, reconstruction
    up to total coefficient order 4, flatness on 20 seeded paths."""
    return {dim: suites.verify_jets(dim=dim, order=4, seed=SEED,
                                    nops=0, npaths=20)
            for dim in (1, 2)}


def test_01_pbw_associativity_four_groups():
    t0 = time.monotonic()
    for label, G in four_groups():
        rep = suites.verify_pbw(G, seed=SEED, ntriples=125, maxdeg=3)
        _ok(rep)
    assert time.monotonic() - t0 < 60.0


def test_02_dunkl_commutativity():
    t0 = time.monotonic()
    for G in (symmetric_group_matrices(2), symmetric_group_matrices(3)):
        _ok(suites.verify_dunkl_commute(G))
    assert time.monotonic() - t0 < 30.0


def test_03_dunkl_embedding_homomorphism():
    for label, G in four_groups():
        rep = suites.verify_dunkl_embed(G, seed=SEED, npairs=100, maxdeg=2)
        _ok(rep)
        _check(rep, "generator pairs")
        assert _check(rep, "random pairs")["count"] == 100


def test_04_lie_homomorphism_basis_pairs():
    t0 = time.monotonic()
    for G, want_dim in ((diagonal_group([["-1", "1", "1"]], 2), 5),
                        (cyclic_group(3), 1)):
        alg = hc.hc_context(G)
        basis = G.centralizer_lie_basis()
        assert len(basis) == want_dim
        for A in basis:
            for B in basis:
                assert not hc.lie_bracket_residual(alg, A, B)
    assert time.monotonic() - t0 < 30.0


def test_05_generator_equivariance(hc_reports):
    for rep in hc_reports.values():
        _check(rep, "equivariance")


def test_06_tensor_factorization(hc_reports):
    for rep in hc_reports.values():
        entry = _check(rep, "sigma = ")
        assert entry["elements"] == 50 and entry["order"] == 3


def test_07_bracket_eigenvalues_and_central_term(hc_reports):
    for rep in hc_reports.values():
        _check(rep, "lambda_[A,B] = 0")


def test_08_taylor_multiplicativity_100_ops():
    rep = suites.verify_jets(dim=2, order=3, seed=SEED, nops=100, npaths=0)
    assert _check(rep, "taylor multiplicativity")["ops"] == 100


def test_09_flat_section_recursion(jet_recursion_reports):
    for dim, rep in jet_recursion_reports.items():
        entry = _check(rep, "flat-section reconstruction")
        assert entry["order"] == 4
        assert _check(rep, "flatness")["paths"] == 20
        _check(rep, "reconstruction deterministic")


def test_10_gluing_model():
    rep = suites.verify_gluing(n=2, orders=(4, 4), seed=SEED,
                               nrandom=50, maxdeg=2)
    _ok(rep)
    _check(rep, "generators")
    assert _check(rep, "random elements")["count"] == 50
    _check(rep, "negative control")


def test_11_induction_functors():
    for gname, hname, index in (("S3", "S2", 3), ("Z4", "Z2", 2)):
        rep = suites.verify_induction(gname, hname, seed=SEED,
                                      ntriples=500, npairs=200)
        _ok(rep)
        tur = _check(rep, "turull dimension")
        pug = _check(rep, "puig dimension")
        assert tur["value"] == index * 3 and pug["value"] == index * index * 3
        assert _check(rep, "puig associativity")["triples"] == 500
        iso = _check(rep, "comparison")
        assert iso["detail"]["pairs_checked"] == 200


def test_12_jet_module_dimensions():
    for m, K in ((1, 3), (2, 2), (3, 1)):
        sp = jt.JetSpace(m, K)
        assert len(jt.w_basis(sp)) == m * sp.vol_dim()
