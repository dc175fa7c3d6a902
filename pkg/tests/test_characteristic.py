"""Characteristic classes: genera, Chern characters, Newton identities."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fracindex.characteristic import (
    BundleData,
    BundleError,
    a_hat,
    chern_character,
    direct_sum,
    evaluate_series,
    integrate_tstar,
    newton_power_sums,
    pontryagin_from_chern,
    projective_tangent_bundle,
    tensor_line,
    thom_reduce,
    todd_class,
)
from fracindex.cohomology import (
    CohClass,
    parse_expression,
    point_model,
    product_model,
    projective_space_model,
    transport,
    transport_right,
)
from fracindex.scalars import genus_series

from oracles import a_hat_series_oracle, cpn_integral, cpn_mul, evaluate_series_at_x


@pytest.fixture
def cp1():
    return projective_space_model(1)


@pytest.fixture
def cp2():
    return projective_space_model(2)


def k3_like_model():
    """A formal four-manifold with one degree-4 generator q, integral 1,
    and Chern data c_1 = 0, c_2 = 24 q (so p_1 integrates to -48)."""
    from fracindex.cohomology import build_model

    model = build_model(4, [("q", 4)], [], ("q", 1))
    chern = [model.zero(), parse_expression("24*q", model)]
    return model, BundleData("TK", 2, chern=chern)


# ---------------------------------------------------------------------------
# a-hat


def test_a_hat_trivial_bundle(cp2):
    trivial = BundleData("triv", 3, roots=[cp2.zero()] * 3)
    assert a_hat(trivial) == 1


def test_a_hat_cp1_is_one(cp1):
    assert a_hat(projective_tangent_bundle(cp1)) == 1


def test_a_hat_cp2_value(cp2):
    cls = a_hat(projective_tangent_bundle(cp2))
    assert cls == parse_expression("1 - 1/8*x^2", cp2)
    assert cls.integrate() == Fraction(-1, 8)


def test_a_hat_roots_vs_pontryagin_agree(cp2):
    via_roots = a_hat(projective_tangent_bundle(cp2))
    p1 = parse_expression("3*x^2", cp2)
    via_pontryagin = a_hat(BundleData("TR", 4, pontryagin=[p1]))
    assert via_roots == via_pontryagin


def test_a_hat_from_chern_data_k3():
    model, bundle = k3_like_model()
    cls = a_hat(bundle)
    assert cls == parse_expression("1 + 2*q", model)
    assert cls.integrate() == 2


def test_a_hat_requires_data(cp2):
    with pytest.raises(BundleError):
        BundleData("nothing", 2)


# ---------------------------------------------------------------------------
# Todd


def test_todd_trivial(cp2):
    assert todd_class(BundleData("triv", 2, roots=[cp2.zero()] * 2)) == 1


def test_todd_cp1(cp1):
    assert todd_class(projective_tangent_bundle(cp1)) == parse_expression("1 + x", cp1)


def test_todd_cp2(cp2):
    cls = todd_class(projective_tangent_bundle(cp2))
    assert cls == parse_expression("1 + 3/2*x + x^2", cp2)
    assert cls.integrate() == 1


def test_todd_from_chern_matches_roots(cp2):
    tangent = projective_tangent_bundle(cp2)
    chern = tangent.chern_classes(2)
    assert chern[0] == parse_expression("3*x", cp2)
    assert chern[1] == parse_expression("3*x^2", cp2)
    via_chern = todd_class(BundleData("TC", 3, chern=chern))
    assert via_chern == todd_class(tangent)


def test_todd_genus_of_k3_like_surface():
    _, bundle = k3_like_model()
    assert todd_class(bundle).integrate() == 2


# ---------------------------------------------------------------------------
# Chern character


def test_chern_character_trivial_rank(cp2):
    assert chern_character(BundleData("triv", 5, roots=[cp2.zero()] * 5)) == 5


def test_chern_character_line_bundle(cp1):
    root = parse_expression("3*x", cp1)
    assert chern_character(BundleData("L3", 1, roots=[root])) == parse_expression("1 + 3*x", cp1)


def test_chern_character_additive(cp2):
    x = cp2.generator_class("x")
    a = BundleData("a", 1, roots=[x])
    b = BundleData("b", 1, roots=[2 * x])
    total = direct_sum("a+b", a, b)
    assert chern_character(total) == chern_character(a) + chern_character(b)


def test_chern_character_multiplicative_on_lines(cp2):
    x = cp2.generator_class("x")
    a = BundleData("a", 1, roots=[x])
    b = BundleData("b", 1, roots=[2 * x])
    product = tensor_line("ab", a, b)
    assert chern_character(product) == chern_character(a) * chern_character(b)


def test_chern_character_from_chern_classes(cp2):
    tangent = projective_tangent_bundle(cp2)
    # rank bookkeeping: the root presentation has formal rank 3
    via_chern = chern_character(BundleData("TC", 3, chern=tangent.chern_classes(2)))
    assert via_chern == chern_character(tangent)


# ---------------------------------------------------------------------------
# Newton identities


def test_newton_first_power_sum(cp2):
    c1 = parse_expression("3*x", cp2)
    sums = newton_power_sums([c1], 1)
    assert sums[0] == c1


def test_newton_second_power_sum(cp2):
    c1 = parse_expression("3*x", cp2)
    c2 = parse_expression("3*x^2", cp2)
    sums = newton_power_sums([c1, c2], 2)
    assert sums[1] == c1 * c1 - 2 * c2


def test_newton_matches_explicit_roots():
    model = product_model(projective_space_model(2), projective_space_model(2, "y"))
    rng = random.Random(3)
    for _ in range(10):
        roots = [
            CohClass(model, {(1, 0): Fraction(rng.randint(-3, 3)), (0, 1): Fraction(rng.randint(-3, 3))})
            for _ in range(3)
        ]
        bundle = BundleData("R", 3, roots=roots)
        chern = bundle.chern_classes(3)
        sums = newton_power_sums(chern, 4)
        for k in range(1, 5):
            direct = model.zero()
            for root in roots:
                direct = direct + root**k
            assert sums[k - 1] == direct


def test_pontryagin_from_chern_cp2(cp2):
    c1 = parse_expression("3*x", cp2)
    c2 = parse_expression("3*x^2", cp2)
    p = pontryagin_from_chern([c1, c2], 1)
    assert p[0] == parse_expression("3*x^2", cp2)


def test_pontryagin_from_chern_matches_squared_roots():
    model = product_model(projective_space_model(2), projective_space_model(2, "y"))
    rng = random.Random(5)
    for _ in range(8):
        roots = [
            CohClass(model, {(1, 0): Fraction(rng.randint(-2, 2)), (0, 1): Fraction(rng.randint(-2, 2))})
            for _ in range(2)
        ]
        bundle = BundleData("R", 2, roots=roots)
        p = pontryagin_from_chern(bundle.chern_classes(2), 2)
        # e_1(r^2) and e_2(r^2) directly
        assert p[0] == roots[0] ** 2 + roots[1] ** 2
        assert p[1] == roots[0] ** 2 * roots[1] ** 2


# ---------------------------------------------------------------------------
# multiplicativity invariants


def test_genus_multiplicative_on_direct_sums():
    model = product_model(projective_space_model(2), projective_space_model(2, "y"))
    rng = random.Random(9)
    for _ in range(8):
        def random_root():
            return CohClass(
                model,
                {(1, 0): Fraction(rng.randint(-2, 2)), (0, 1): Fraction(rng.randint(-2, 2))},
            )

        a = BundleData("a", 2, roots=[random_root(), random_root()])
        b = BundleData("b", 1, roots=[random_root()])
        ab = direct_sum("ab", a, b)
        assert a_hat(ab) == a_hat(a) * a_hat(b)
        assert todd_class(ab) == todd_class(a) * todd_class(b)


def test_genus_multiplicative_across_products():
    cp1 = projective_space_model(1)
    cp2 = projective_space_model(2, "y")
    prod = product_model(cp1, cp2)
    t1 = projective_tangent_bundle(cp1, "x")
    t2 = projective_tangent_bundle(cp2, "y")
    roots = [transport(r, prod) for r in t1.roots] + [
        transport_right(r, prod) for r in t2.roots
    ]
    tangent = BundleData("T", len(roots), roots=roots)
    assert todd_class(tangent).integrate() == (
        todd_class(t1).integrate() * todd_class(t2).integrate()
    )
    assert a_hat(tangent).integrate() == (
        a_hat(t1).integrate() * a_hat(t2).integrate()
    )


def test_todd_genus_cp1_cp1_is_one():
    cp1a = projective_space_model(1)
    cp1b = projective_space_model(1, "y")
    prod = product_model(cp1a, cp1b)
    roots = [transport(r, prod) for r in projective_tangent_bundle(cp1a).roots] + [
        transport_right(r, prod) for r in projective_tangent_bundle(cp1b, "y").roots
    ]
    assert todd_class(BundleData("T", 4, roots=roots)).integrate() == 1


# ---------------------------------------------------------------------------
# series evaluation against the list oracle


def test_evaluate_series_matches_oracle(cp2):
    series = genus_series("a_hat", 4)
    x = cp2.generator_class("x")
    value = evaluate_series(series, x)
    oracle = evaluate_series_at_x(a_hat_series_oracle(4), 2)
    assert [value.terms.get((k,), Fraction(0)) for k in range(3)] == oracle[:3]


def test_evaluate_series_rejects_unit(cp2):
    with pytest.raises(ValueError):
        evaluate_series(genus_series("todd", 2), cp2.one())


def test_a_hat_cp2_against_list_oracle(cp2):
    series = a_hat_series_oracle(2)
    one_root = evaluate_series_at_x(series, 2)
    product = cpn_mul(cpn_mul(one_root, one_root, 2), one_root, 2)
    engine = a_hat(projective_tangent_bundle(cp2))
    assert [engine.terms.get((k,), Fraction(0)) for k in range(3)] == product
    assert engine.integrate() == cpn_integral(product, 2)


# ---------------------------------------------------------------------------
# validation and cotangent reduction


def test_bundle_rejects_wrong_root_count(cp2):
    with pytest.raises(BundleError, match="roots"):
        BundleData("bad", 2, roots=[cp2.generator_class("x")])


def test_bundle_rejects_inhomogeneous_root(cp2):
    with pytest.raises(BundleError, match="homogeneous"):
        BundleData("bad", 1, roots=[parse_expression("1 + x", cp2)])


def test_bundle_rejects_chern_root_mismatch(cp2):
    x = cp2.generator_class("x")
    with pytest.raises(BundleError, match="disagrees"):
        BundleData("bad", 2, roots=[x, x], chern=[parse_expression("3*x", cp2)])


def test_bundle_accepts_consistent_chern_and_roots(cp2):
    x = cp2.generator_class("x")
    bundle = BundleData("ok", 2, roots=[x, x], chern=[2 * x, x * x])
    assert bundle.chern_classes(2) == [2 * x, x * x]


def test_thom_reduction_round_trip(cp1, cp2):
    assert integrate_tstar(thom_reduce(cp1.one())) == 0
    assert integrate_tstar(thom_reduce(parse_expression("x^2", cp2))) == 1
    td = todd_class(projective_tangent_bundle(cp1))
    assert integrate_tstar(thom_reduce(td)) == 1


def test_point_tangent_bundle():
    pt = point_model()
    tangent = projective_tangent_bundle(pt)
    assert a_hat(tangent) == 1
    assert todd_class(tangent) == 1
    assert chern_character(tangent) == 0
