import pytest
from hypothesis import given, settings, strategies as st

from dgres.algebra import (Augmentation, a2_path_algebra, cyclic_group_algebra, ground,
                           group_augmentation, is_isomorphism, truncated_polynomial, validate)
from dgres.field import GF, QQ
from dgres.graded import DegreeWindow
from dgres.module import validate_bimodule
from dgres.smooth import (auto_filtration, break_filtration, glue, glued_diagonal_cone,
                          glued_product_check, ground_bimodule, koszul_dual_resolution,
                          module_triple_check, random_triple_module, refined_power_filtration,
                          tor_obstruction, trivial_resolution, a2_diagonal_resolution,
                          verify_filtration_certificate, verify_free_resolution, zero_bimodule)

from helpers import corpus, dg_free, rng_for, scrambled, tor_oracle

W = DegreeWindow(-4, 1)


# -- Tor ----------------------------------------------------------------------------------------

def test_tor_of_kx2_is_one_in_every_degree():
    aug = corpus()["kx2"]
    r = tor_obstruction(aug, 8)
    assert r.dims == [1] * 9
    assert r.dims == tor_oracle(aug.algebra, aug.eps, 8)
    assert r.verdict.startswith("obstruction")


def test_tor_of_ground_field_vanishes():
    r = tor_obstruction(Augmentation(ground(QQ)), 8)
    assert r.dims == [1] + [0] * 8
    assert r.verdict == "no obstruction up to n=8"


@pytest.mark.parametrize("name", ["kx2", "kx5", "trunc2", "z2", "z3"])
def test_tor_matches_oracle(name):
    aug = corpus()[name]
    n = {"trunc2": 4, "kx5": 3}.get(name, 5)
    assert tor_obstruction(aug, n).dims == tor_oracle(aug.algebra, aug.eps, n)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["kx2", "kx5", "z3"]))
def test_tor_invariant_under_basis_change(seed, name):
    aug = corpus()[name]
    assert tor_obstruction(scrambled(aug, rng_for(seed)), 4).dims == tor_obstruction(aug, 4).dims


def test_tor_inapplicable_for_graded_algebras():
    r = tor_obstruction(Augmentation(dg_free()), 3)
    assert not r.applicable


def test_tor_of_a2_product_ground():
    A = ground(GF(5))
    assert tor_obstruction(Augmentation(A), 3).dims == [1, 0, 0, 0]


# -- filtrations --------------------------------------------------------------------------------

@pytest.mark.parametrize("name,steps", [("kx2", 2), ("kx5", 5), ("trunc2", 2), ("z2", 2), ("z3", 3)])
def test_refined_power_filtration_lengths(name, steps):
    s, A, n = refined_power_filtration(corpus()[name])
    assert len(s) - 1 == steps


def test_dg_free_filtration_refines_powers():
    s, A, n = refined_power_filtration(Augmentation(dg_free()))
    assert len(s) - 1 == 5


@pytest.mark.parametrize("name", ["kx2", "trunc2", "z2", "z3"])
def test_auto_filtration_certified_and_broken_rejected(name):
    cert = auto_filtration(corpus()[name], W)
    checks = verify_filtration_certificate(cert)
    assert checks.ok, checks.lines()
    broken = verify_filtration_certificate(break_filtration(cert, 1))
    assert not broken.ok


def test_auto_filtration_dg_free():
    cert = auto_filtration(Augmentation(dg_free()), DegreeWindow(-3, 1))
    assert verify_filtration_certificate(cert).ok


def test_auto_filtration_refuses_non_nilpotent():
    with pytest.raises(ValueError):
        auto_filtration(group_augmentation(cyclic_group_algebra(2, QQ)), W)


def test_filtration_with_wrong_generator_rejected():
    cert = auto_filtration(corpus()["kx2"], W)
    g = cert.generators[0][0]
    cert.generators[0][0] = (g[0], {}, g[2])
    assert not verify_filtration_certificate(cert).ok


# -- resolutions -------------------------------------------------------------------------------

def test_a2_resolution_certified():
    checks, P = verify_free_resolution(a2_diagonal_resolution(a2_path_algebra()))
    assert checks.ok, checks.lines()
    assert P.dims() == {-1: 1, 0: 4}


def test_a2_resolution_with_bad_differential_rejected():
    cert = a2_diagonal_resolution(a2_path_algebra())
    cert.dgen["h"] = {("a", "g2", "e2"): 1}
    checks, _ = verify_free_resolution(cert)
    assert not checks.ok


def test_trivial_resolution():
    checks, _ = verify_free_resolution(trivial_resolution(ground(QQ)))
    assert checks.ok


@pytest.mark.parametrize("name", ["kx2", "z2"])
def test_koszul_dual_diagonal_resolution(name):
    cert = auto_filtration(corpus()[name], W)
    checks, _ = verify_free_resolution(koszul_dual_resolution(cert))
    assert checks.ok, checks.lines()


# -- gluing -------------------------------------------------------------------------------------

def test_glue_kkk_is_a2():
    k = ground(QQ)
    ga = glue(k, k, ground_bimodule(k, k))
    assert ga.C.dim == 3
    assert validate(ga.C, exhaustive=True).ok
    A2 = a2_path_algebra()
    images = {("A", "1"): {"e1": 1}, ("B", "1"): {"e2": 1}, ("N", "n"): {"a": 1}}
    assert is_isomorphism(ga.C, A2, images).ok


@pytest.mark.parametrize("pair", [("k", "k"), ("kx2", "k"), ("kx2", "z2q")])
def test_glue_with_zero_is_product(pair):
    algs = {"k": ground(QQ), "kx2": truncated_polynomial(2), "z2q": cyclic_group_algebra(2, QQ)}
    A, B = algs[pair[0]], algs[pair[1]]
    ga = glue(A, B, zero_bimodule(A, B))
    assert validate(ga.C, exhaustive=True).ok
    assert glued_product_check(ga).ok


def test_glue_rejects_invalid_bimodule():
    from dgres.module import DGBimodule
    A = truncated_polynomial(2)
    k = ground(QQ)
    bad = DGBimodule(A, k, {"n": 0}, lambda a, m: {m: 1}, lambda m, b: {m: 1}, {}, "bad")
    assert not validate_bimodule(bad).ok
    with pytest.raises(ValueError):
        glue(A, k, bad)


@pytest.mark.parametrize("case", ["kkk", "kx2k"])
def test_glued_diagonal_cone(case):
    k = ground(QQ)
    A = k if case == "kkk" else truncated_polynomial(2)
    ga = glue(A, k, ground_bimodule(A, k))
    checks = glued_diagonal_cone(ga)
    assert checks.ok, checks.lines()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_module_triples_round_trip(seed):
    k = ground(QQ)
    ga = glue(k, k, ground_bimodule(k, k))
    S = random_triple_module(ga, rng_for(seed))
    checks, _ = module_triple_check(ga, S)
    assert checks.ok, checks.lines()
