import pytest
from hypothesis import given, settings, strategies as st

from dgres.algebra import Augmentation, a2_path_algebra, exterior, truncated_polynomial
from dgres.field import QQ
from dgres.graded import DegreeWindow, cohomology, is_acyclic
from dgres.module import (DGModule, ModuleMap, check_zigzag, cone, diagonal_bimodule,
                          endomorphism_algebra, free_module, hom_complex, regular_module, tensor_over,
                          trivial_module, validate_bimodule, validate_module,
                          verify_zigzag_hypotheses)

from helpers import dg_free, random_complex, rng_for, zigzag_instance


@pytest.mark.parametrize("A", [truncated_polynomial(3), exterior(-1), a2_path_algebra(), dg_free()],
                         ids=["kx3", "ext", "A2", "free"])
def test_regular_and_diagonal_validate(A):
    assert validate_module(regular_module(A), exhaustive=True).ok
    assert validate_bimodule(diagonal_bimodule(A), exhaustive=True).ok
    assert validate_module(free_module(A, [0, 2]), exhaustive=True).ok


def test_trivial_module_and_broken_action():
    A = truncated_polynomial(2)
    aug = Augmentation(A)
    assert validate_module(trivial_module(A, aug.eps)).ok
    # x acting by 1 on k is not associative since x·x = 0
    bad = DGModule(A, {"m": 0}, lambda m, a: {"m": 1}, {}, "bad")
    assert "associativity" in validate_module(bad).kinds()


def test_module_map_checks_linearity():
    A = truncated_polynomial(2)
    R = regular_module(A)
    mult_x = ModuleMap(R, R, lambda m: A.mul("x", m))
    assert mult_x.check().ok
    proj = ModuleMap(R, R, {"1": {"1": 1}})
    assert not proj.check().ok


def test_cone_of_identity_is_acyclic_and_of_zero_is_not():
    A = dg_free()
    R = regular_module(A)
    w = DegreeWindow(-4, 2)
    c = cone(ModuleMap(R, R, lambda m: {m: 1}))
    assert validate_module(c).ok
    assert is_acyclic(c.complex(), w)
    c0 = cone(ModuleMap(R, R, {}))
    assert not is_acyclic(c0.complex(), w)


def test_tensor_with_diagonal_is_identity():
    A = truncated_polynomial(3)
    aug = Augmentation(A)
    k = trivial_module(A, aug.eps)
    T = tensor_over(k, diagonal_bimodule(A))
    assert T.dims() == {0: 1}
    T2 = tensor_over(regular_module(A), diagonal_bimodule(A))
    assert T2.dims() == A.dims()


def test_hom_from_free_module():
    A = dg_free()
    R = regular_module(A)
    w = DegreeWindow(-3, 3)
    H = hom_complex(R, R, w)
    # Hom_A(A, A) = A
    assert cohomology(H.complex, w).dims == cohomology(A.complex(), w).dims
    assert H.complex.dims() == {n: d for n, d in A.dims().items() if n in w}


def test_endomorphism_algebra_cohomology():
    X, h = random_complex(rng_for(3), QQ, degrees=(-1, 0), max_dim=1)
    E = endomorphism_algebra(X)
    w = DegreeWindow(-3, 3)
    HE = cohomology(E.complex(), w).dims
    expect = {n: sum(h[a] * h[b] for a in h for b in h if a - b == n) for n in w.interior()}
    assert HE == expect


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_zigzag_passing_instances(seed):
    f, phi = zigzag_instance(rng_for(seed), passing=True)
    assert verify_zigzag_hypotheses(f, phi).ok
    checks, C = check_zigzag(f, phi)
    assert checks.ok, checks.lines()


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_zigzag_failing_instances_report_not_established(seed):
    f, phi = zigzag_instance(rng_for(seed), passing=False)
    checks, _ = check_zigzag(f, phi)
    by = {c.name: c for c in checks.items}
    assert not (by["hypothesis: f* quasi-isomorphism"].ok and by["hypothesis: f∘phi quasi-isomorphism"].ok)
    # each projection tracks its own hypothesis
    assert by["p_A quasi-isomorphism"].ok == by["hypothesis: f* quasi-isomorphism"].ok
    assert by["p_Y quasi-isomorphism"].ok == by["hypothesis: f∘phi quasi-isomorphism"].ok
    assert any(c.detail == "not established" for c in checks.failures())


def test_zigzag_identity_on_ground_field():
    from dgres.algebra import DGAlgebraHom, ground
    from dgres.graded import GradedMap, point
    X = point(0)
    f = GradedMap.from_function(X, X, 0, lambda n, x: {x: 1}, QQ)
    k = ground(QQ)
    E = endomorphism_algebra(X)
    checks, C = check_zigzag(f, DGAlgebraHom(k, E, {x: dict(E.unit) for x in k.basis}))
    assert checks.ok
    # End(Y), A and the Hom(X[1], Y) line in degree 1
    assert C.dims() == {0: 2, 1: 1}


def test_zigzag_acyclic_source_into_zero():
    from dgres.algebra import DGAlgebraHom
    from dgres.graded import Complex, GradedMap, GradedSpace, zero_complex
    X = Complex.from_function(GradedSpace({0: ["a"], 1: ["b"]}),
                              lambda n, x: {"b": 1} if x == "a" else {}, QQ)
    f = GradedMap.from_function(X, zero_complex(QQ), 0, lambda n, x: {}, QQ)
    E = endomorphism_algebra(X)
    checks, _ = check_zigzag(f, DGAlgebraHom(E, E, {e: {e: 1} for e in E.basis}))
    assert checks.ok


def test_koszul_functor_of_ground_field():
    from dgres.bar import koszul_functor
    aug = Augmentation(truncated_polynomial(2)).normalized()
    w = DegreeWindow(-4, 1)
    K = koszul_functor(aug, trivial_module(aug.algebra, aug.eps), w)
    assert cohomology(K.complex(), K.window).dims == {-3: 1, -2: 1, -1: 1, 0: 1}
