"""The index distribution engine: pairings, moments, distributions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fracindex.characteristic import BundleData, a_hat, projective_tangent_bundle, todd_class
from fracindex.cohomology import (
    CohClass,
    build_model,
    parse_expression,
    point_model,
    projective_space_model,
)
from fracindex.engine import (
    EngineError,
    IndexProblem,
    InternalConsistencyError,
    MomentTable,
    SymbolData,
    dirac_problem,
    projective_dirac,
)
from fracindex.groups import (
    FiniteAbelianGroup,
    InvariantGeneratorDecl,
    TestJet,
    WeightSystem,
    bracket,
)
from fracindex.scalars import Cyclotomic

from oracles import a_hat_series_oracle, cpn_integral, cpn_mul, evaluate_series_at_x


def cp2_dirac_problem():
    cp2 = projective_space_model(2)
    gens = [
        InvariantGeneratorDecl("P1", 2, parse_expression("3*x^2", cp2)),
        InvariantGeneratorDecl("E", 2, parse_expression("3*x^2", cp2)),
    ]
    return cp2, dirac_problem(cp2, projective_tangent_bundle(cp2), gens)


def k3_like_dirac_problem():
    model = build_model(4, [("q", 4)], [], ("q", 1))
    tangent = BundleData("TK", 2, chern=[model.zero(), parse_expression("24*q", model)])
    return model, dirac_problem(model, tangent)


# ---------------------------------------------------------------------------
# reduced integrands


def test_reduced_integrand_trivial_symbol():
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([2])
    tangent = projective_tangent_bundle(cp2)
    genus = a_hat(tangent)
    symbol = SymbolData(group, {(0,): cp2.one()})
    problem = IndexProblem(cp2, group, (), symbol, genus * genus)
    assert problem.reduced_integrand((0,)) == genus * genus


def test_reduced_integrand_dirac_identity_is_a_hat():
    cp2, problem = cp2_dirac_problem()
    assert problem.reduced_integrand((0,)) == a_hat(projective_tangent_bundle(cp2))


def test_reduced_integrand_dirac_flips_sign():
    cp2, problem = cp2_dirac_problem()
    assert problem.reduced_integrand((1,)) == -a_hat(projective_tangent_bundle(cp2))


# ---------------------------------------------------------------------------
# fractional index


def test_cp2_dirac_fractional_index():
    _, problem = cp2_dirac_problem()
    assert problem.fractional_index((0,)) == Fraction(-1, 8)
    assert problem.fractional_index((1,)) == Fraction(1, 8)


def test_k3_like_dirac_fractional_index():
    _, problem = k3_like_dirac_problem()
    assert problem.fractional_index((0,)) == 2
    assert problem.fractional_index((1,)) == -2


def test_point_trivial_symbol():
    pt = point_model()
    group = FiniteAbelianGroup([])
    problem = IndexProblem(pt, group, (), SymbolData(group, {(): pt.one()}))
    assert problem.fractional_index(()) == 1


def test_unit_bump_pairing_equals_mass():
    _, problem = cp2_dirac_problem()
    for gamma in [(0,), (1,)]:
        assert problem.fractional_index(gamma) == problem.moments(gamma).mass()


def test_high_weight_jet_pairs_to_zero():
    cp2, problem = cp2_dirac_problem()
    # P1^2 has cohomological weight 8 > 4
    assert problem.pair_with_jet((0,), TestJet.monomial(("P1", 2))) == 0


# ---------------------------------------------------------------------------
# moment tables


def test_cp2_dirac_moment_table():
    _, problem = cp2_dirac_problem()
    table = problem.moments((0,))
    assert table.values[(0, 0)] == Fraction(-1, 8)
    assert table.values[(1, 0)] == 3
    assert table.values[(0, 1)] == 3
    assert table.values[(2, 0)] == 0
    assert table.values[(1, 1)] == 0
    assert table.values[(0, 2)] == 0


def test_cp2_moment_against_hand_integral():
    # direct list arithmetic: (1 - x^2/8) * 3x^2 integrates to 3 on CP^2
    a_hat_coeffs = evaluate_series_at_x(a_hat_series_oracle(2), 2)
    genus = cpn_mul(cpn_mul(a_hat_coeffs, a_hat_coeffs, 2), a_hat_coeffs, 2)
    image = [Fraction(0), Fraction(0), Fraction(3)]
    assert cpn_integral(cpn_mul(genus, image, 2), 2) == 3
    _, problem = cp2_dirac_problem()
    assert problem.moments((0,)).values[(1, 0)] == 3


def test_moment_table_ordering():
    _, problem = cp2_dirac_problem()
    keys = list(problem.moments((0,)).values)
    # graded, with the first-declared generator's powers first
    assert keys == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_moments_on_point():
    pt = point_model()
    group = FiniteAbelianGroup([])
    problem = IndexProblem(pt, group, (), SymbolData(group, {(): pt.one()}))
    table = problem.moments(())
    assert table.values == {(): Fraction(1)}


def test_cp1_moments_vanish_past_dimension():
    cp1 = projective_space_model(1)
    gens = [InvariantGeneratorDecl("P", 1, parse_expression("2*x", cp1))]
    group = FiniteAbelianGroup([2])
    symbol = SymbolData(group, {(0,): cp1.one()})
    problem = IndexProblem(cp1, group, gens, symbol)
    table = problem.moments((0,), max_degree=3)
    assert table.values[(1,)] == 2
    assert table.values[(2,)] == 0
    assert table.values[(3,)] == 0


def test_sphere_euler_style_generator():
    sphere = build_model(2, [("v", 2)], [("v^2", "0")], ("v", 1))
    tangent = BundleData("TS", 1, pontryagin=[sphere.zero()])
    gens = [
        InvariantGeneratorDecl("P1", 1, sphere.zero()),
        InvariantGeneratorDecl("E", 1, parse_expression("2*v", sphere)),
    ]
    problem = dirac_problem(sphere, tangent, gens)
    table = problem.moments((0,))
    assert table.mass() == 0
    assert table.values[(1, 0)] == 0
    assert table.values[(0, 1)] == 2


# ---------------------------------------------------------------------------
# full distributions


def test_dirac_distribution_antisymmetry():
    cp2, _ = cp2_dirac_problem()
    gens = [
        InvariantGeneratorDecl("P1", 2, parse_expression("3*x^2", cp2)),
        InvariantGeneratorDecl("E", 2, parse_expression("3*x^2", cp2)),
    ]
    dist = projective_dirac(cp2, projective_tangent_bundle(cp2), gens)
    plus, minus = dist.table((0,)), dist.table((1,))
    assert plus.mass() == Fraction(-1, 8)
    assert minus.mass() == Fraction(1, 8)
    for key, value in plus.values.items():
        assert minus.values[key] == -value


def test_k3_like_dirac_distribution_masses():
    model, _ = k3_like_dirac_problem()
    tangent = BundleData("TK", 2, chern=[model.zero(), parse_expression("24*q", model)])
    dist = projective_dirac(model, tangent)
    assert dist.mass((0,)) == 2
    assert dist.mass((1,)) == -2
    assert dist.total_mass() == 0


def test_trivial_character_symbol_gives_identical_tables():
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([4])
    symbol = SymbolData(group, {(0,): parse_expression("1 + x", cp2)})
    problem = IndexProblem(cp2, group, (), symbol)
    dist = problem.full_distribution()
    tables = list(dist.tables.values())
    for table in tables[1:]:
        assert table.values == tables[0].values


def test_z4_bracket_scaling():
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([4])
    tangent = projective_tangent_bundle(cp2)
    genus = a_hat(tangent)
    symbol = SymbolData(group, {(1,): parse_expression("x^2", cp2)})
    problem = IndexProblem(cp2, group, (), symbol, genus * genus)
    dist = problem.full_distribution()
    base = (genus * genus * parse_expression("x^2", cp2)).integrate()
    assert base == 1
    zeta = Cyclotomic.root_of_unity(4)
    assert dist.mass((0,)) == 1
    assert dist.mass((1,)) == zeta
    assert dist.mass((2,)) == -1
    assert dist.mass((3,)) == zeta**3


def test_distribution_linearity():
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([2])
    rng = random.Random(61)

    def random_symbol():
        return SymbolData(
            group,
            {
                (k,): CohClass(
                    cp2, {(d,): Fraction(rng.randint(-3, 3)) for d in range(3)}
                )
                for k in range(2)
            },
        )

    for _ in range(10):
        s1, s2 = random_symbol(), random_symbol()
        p1 = IndexProblem(cp2, group, (), s1)
        p2 = IndexProblem(cp2, group, (), s2)
        p12 = IndexProblem(cp2, group, (), s1 + s2)
        d1, d2, d12 = p1.full_distribution(), p2.full_distribution(), p12.full_distribution()
        for gamma in group.elements():
            for key in d12.table(gamma).values:
                assert d12.table(gamma).values[key] == (
                    d1.table(gamma).values[key] + d2.table(gamma).values[key]
                )


def test_reconstruction_identity_explicit():
    """Moments at gamma equal the bracket-weighted sum of the identity
    moments of the single-character restrictions."""
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([2, 2])
    rng = random.Random(67)
    components = {
        chi: CohClass(cp2, {(d,): Fraction(rng.randint(-4, 4)) for d in range(3)})
        for chi in group.characters()
    }
    symbol = SymbolData(group, components)
    tangent = projective_tangent_bundle(cp2)
    genus = a_hat(tangent)
    problem = IndexProblem(cp2, group, (), symbol, genus * genus)
    for gamma in group.elements():
        direct = problem.moments(gamma)
        for key in direct.values:
            combined = Fraction(0)
            for chi, u_chi in symbol.components.items():
                restricted = IndexProblem(
                    cp2, group, (), SymbolData(group, {chi: u_chi}), genus * genus
                )
                weight = bracket(group, chi, gamma)
                combined = combined + weight * restricted.moments(group.identity()).values[key]
            from fracindex.scalars import demote

            assert demote(combined) == direct.values[key]


# ---------------------------------------------------------------------------
# single-character (projective) distributions


def test_projective_single_character_matches_full():
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([3])
    symbol = SymbolData(group, {(1,): parse_expression("x^2 + 1", cp2)})
    problem = IndexProblem(cp2, group, (), symbol)
    assert problem.mms_projective().tables == problem.full_distribution().tables


def test_projective_bracket_masses_z3():
    pt = point_model()
    group = FiniteAbelianGroup([3])
    symbol = SymbolData(group, {(1,): scalar_times_one(pt, Fraction(5, 7))})
    problem = IndexProblem(pt, group, (), symbol)
    dist = problem.mms_projective()
    zeta = Cyclotomic.root_of_unity(3)
    assert dist.mass((0,)) == Fraction(5, 7)
    assert dist.mass((1,)) == Fraction(5, 7) * zeta
    assert dist.mass((2,)) == Fraction(5, 7) * zeta**2
    assert dist.total_mass() == 0


def scalar_times_one(model, value):
    return CohClass(model, {model.zero_monomial(): value})


@pytest.mark.parametrize("order", [2, 3, 4, 6])
def test_projective_mass_balance(order):
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([order])
    symbol = SymbolData(group, {(1,): parse_expression("1 - x + x^2", cp2)})
    tangent = projective_tangent_bundle(cp2)
    genus = a_hat(tangent)
    problem = IndexProblem(cp2, group, (), symbol, genus * genus)
    assert problem.mms_projective().total_mass() == 0


def test_projective_requires_single_component():
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([2])
    symbol = SymbolData(group, {(0,): cp2.one(), (1,): cp2.one()})
    problem = IndexProblem(cp2, group, (), symbol)
    with pytest.raises(EngineError, match="single character"):
        problem.mms_projective()


# ---------------------------------------------------------------------------
# character pairings with a trivial center


def hopf_problem():
    cp1 = projective_space_model(1)
    group = FiniteAbelianGroup([])
    u = todd_class(projective_tangent_bundle(cp1))  # a-hat square is 1 on a surface
    symbol = SymbolData(group, {(): u})
    return cp1, IndexProblem(cp1, group, (), symbol)


def test_hopf_riemann_roch_values():
    cp1, problem = hopf_problem()
    system = WeightSystem("torus", [cp1.generator_class("x")])
    assert problem.atiyah_pairing(system, 0) == 1
    assert problem.atiyah_pairing(system, 3) == 4
    assert problem.atiyah_pairing(system, -1) == 0
    assert problem.atiyah_pairing(system, -2) == -1


def test_atiyah_pairing_rejects_nontrivial_center():
    cp2, problem = cp2_dirac_problem()
    system = WeightSystem("torus", [cp2.generator_class("x")])
    with pytest.raises(EngineError, match="trivial"):
        problem.atiyah_pairing(system, 1)


def test_trivial_center_degeneration():
    """With a trivial center the distribution is one table, and the unit
    bump pairing agrees with the trivial-weight character pairing."""
    cp1, problem = hopf_problem()
    dist = problem.full_distribution()
    assert list(dist.tables) == [()]
    system = WeightSystem("torus", [cp1.generator_class("x")])
    assert problem.fractional_index(()) == problem.atiyah_pairing(system, 0)
    assert dist.table(()).mass() == problem.fractional_index(())


# ---------------------------------------------------------------------------
# validation


def test_symbol_requires_rational_coefficients():
    cp1 = projective_space_model(1)
    group = FiniteAbelianGroup([2])
    zeta = Cyclotomic.root_of_unity(4)
    cls = CohClass(cp1, {(0,): zeta})
    with pytest.raises(EngineError, match="rational"):
        SymbolData(group, {(0,): cls})


def test_symbol_reduces_character_exponents():
    cp1 = projective_space_model(1)
    group = FiniteAbelianGroup([2])
    symbol = SymbolData(group, {(3,): cp1.one()})
    assert list(symbol.components) == [(1,)]


def test_problem_rejects_model_mismatch():
    cp1 = projective_space_model(1)
    cp2 = projective_space_model(2)
    group = FiniteAbelianGroup([2])
    symbol = SymbolData(group, {(0,): cp1.one()})
    with pytest.raises(EngineError):
        IndexProblem(cp2, group, (), symbol)


def test_problem_rejects_group_mismatch():
    cp1 = projective_space_model(1)
    symbol = SymbolData(FiniteAbelianGroup([2]), {(0,): cp1.one()})
    with pytest.raises(EngineError):
        IndexProblem(cp1, FiniteAbelianGroup([3]), (), symbol)


def test_moment_table_scaled_and_at():
    table = MomentTable((0,), ("P",), {(0,): Fraction(2), (1,): Fraction(-1)})
    scaled = table.scaled(Fraction(1, 2)).at((1,))
    assert scaled.gamma == (1,)
    assert scaled.values == {(0,): Fraction(1), (1,): Fraction(-1, 2)}
