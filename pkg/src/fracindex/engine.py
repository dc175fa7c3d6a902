"""The index distribution of a twisted symbol as exact moment data.

A symbol enters as a family of base-reduced classes u_chi indexed by
characters of the finite center; the distribution it induces on the group
is supported on the center and is described, at each central element, by
a moment table: the exact pairings of the local invariant distribution
against monomials in the declared invariant generators.

The two equivalent routes to the table at a central element gamma --
integrating the bracket-weighted combination of the u_chi directly, or
combining the per-character tables at the identity with bracket scalars --
are both computed on every full run and compared exactly; a mismatch can
only be an arithmetic bug, never bad input data.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from fracindex.characteristic import BundleData, a_hat
from fracindex.cohomology import CohClass, ManifoldModel, scalar_class
from fracindex.groups import (
    Element,
    FiniteAbelianGroup,
    InvariantGeneratorDecl,
    TestJet,
    WeightSystem,
    bracket,
    character_jet,
    chern_weil_eval,
)
from fracindex.scalars import Scalar, demote

#: Moment-table keys: exponent tuples over the declared generator order.
MomentKey = tuple[int, ...]


def _moment_key_order(key: MomentKey):
    """Graded order: total degree first, then declaration precedence (an
    earlier generator's power sorts before a later one's)."""
    return (sum(key), tuple(-e for e in key))


class EngineError(ValueError):
    """A symbol or task request is inconsistent with the declared data."""


class InternalConsistencyError(RuntimeError):
    """The two computation routes for a distribution disagreed; this is an
    arithmetic fault in the engine, not a data problem."""


class SymbolData:
    """A symbol presented by its base-reduced classes, one per character of
    the finite center; only finitely many components, all with rational
    coefficients."""

    __slots__ = ("group", "components", "label")

    def __init__(
        self,
        group: FiniteAbelianGroup,
        components: Mapping[Sequence[int], CohClass],
        label: str | None = None,
    ) -> None:
        clean: dict[Element, CohClass] = {}
        model = None
        for raw, cls in components.items():
            chi = group.reduce(tuple(raw))
            if model is None:
                model = cls.model
            elif cls.model is not model:
                raise EngineError("symbol components live on different models")
            if not cls.has_rational_coefficients():
                raise EngineError("symbol components must have rational coefficients")
            if chi in clean:
                cls = clean[chi] + cls
            if not cls.is_zero():
                clean[chi] = cls
            else:
                clean.pop(chi, None)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "components", dict(sorted(clean.items())))
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolData is immutable")

    def component(self, chi: Sequence[int]) -> CohClass | None:
        return self.components.get(self.group.reduce(tuple(chi)))

    def __add__(self, other: "SymbolData") -> "SymbolData":
        if not isinstance(other, SymbolData):
            return NotImplemented
        if other.group != self.group:
            raise EngineError("cannot add symbols over different groups")
        merged: dict[Element, CohClass] = dict(self.components)
        for chi, cls in other.components.items():
            merged[chi] = merged[chi] + cls if chi in merged else cls
        return SymbolData(self.group, merged, label=self.label)

    def __repr__(self):
        label = f" {self.label!r}" if self.label else ""
        return f"SymbolData({len(self.components)} components{label})"


class MomentTable:
    """Exact pairings of the invariant distribution at one central element
    against monomials in the declared generators, keyed by exponent tuple
    and ordered by (total degree, lexicographic)."""

    __slots__ = ("gamma", "generator_names", "values")

    def __init__(
        self,
        gamma: Element,
        generator_names: Sequence[str],
        values: Mapping[MomentKey, Scalar],
    ) -> None:
        ordered = {
            key: demote(values[key])
            for key in sorted(values, key=_moment_key_order)
        }
        object.__setattr__(self, "gamma", tuple(gamma))
        object.__setattr__(self, "generator_names", tuple(generator_names))
        object.__setattr__(self, "values", ordered)

    def __setattr__(self, name, value):
        raise AttributeError("MomentTable is immutable")

    def mass(self) -> Scalar:
        """The degree-zero moment: the coefficient of the point mass."""
        zero = (0,) * len(self.generator_names)
        return self.values.get(zero, Fraction(0))

    def monomial_name(self, key: MomentKey) -> str:
        parts = []
        for name, e in zip(self.generator_names, key):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def scaled(self, factor: Scalar) -> "MomentTable":
        return MomentTable(
            self.gamma,
            self.generator_names,
            {k: v * factor for k, v in self.values.items()},
        )

    def at(self, gamma: Element) -> "MomentTable":
        return MomentTable(gamma, self.generator_names, self.values)

    def __eq__(self, other):
        if not isinstance(other, MomentTable):
            return NotImplemented
        return (
            self.gamma == other.gamma
            and self.generator_names == other.generator_names
            and self.values == other.values
        )

    def __repr__(self):
        body = ", ".join(f"{self.monomial_name(k)}: {v}" for k, v in self.values.items())
        return f"MomentTable(gamma={self.gamma}, {{{body}}})"


class IndexDistribution:
    """The index distribution: one moment table per element of the finite
    center, ordered lexicographically by exponent tuple."""

    __slots__ = ("group", "tables")

    def __init__(self, group: FiniteAbelianGroup, tables: Mapping[Element, MomentTable]) -> None:
        ordered = {gamma: tables[gamma] for gamma in sorted(tables)}
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "tables", ordered)

    def __setattr__(self, name, value):
        raise AttributeError("IndexDistribution is immutable")

    def table(self, gamma: Sequence[int]) -> MomentTable:
        return self.tables[self.group.reduce(tuple(gamma))]

    def mass(self, gamma: Sequence[int]) -> Scalar:
        return self.table(gamma).mass()

    def total_mass(self) -> Scalar:
        total: Scalar = Fraction(0)
        for table in self.tables.values():
            total = total + table.mass()
        return demote(total)

    def __eq__(self, other):
        if not isinstance(other, IndexDistribution):
            return NotImplemented
        return self.group == other.group and self.tables == other.tables

    def __repr__(self):
        return f"IndexDistribution(over {self.group!r}, {len(self.tables)} tables)"


class IndexProblem:
    """Everything a distribution computation needs: the manifold model, the
    finite center, the declared invariant generators, the symbol, and the
    square of the tangent a-hat class."""

    __slots__ = ("model", "group", "generators", "symbol", "a_hat_squared")

    def __init__(
        self,
        model: ManifoldModel,
        group: FiniteAbelianGroup,
        generators: Sequence[InvariantGeneratorDecl],
        symbol: SymbolData,
        a_hat_squared: CohClass | None = None,
    ) -> None:
        if symbol.group != group:
            raise EngineError("symbol group does not match the problem group")
        for gen in generators:
            if gen.image.model is not model:
                raise EngineError(f"generator {gen.name!r} image lives on a different model")
        for cls in symbol.components.values():
            if cls.model is not model:
                raise EngineError("symbol classes live on a different model")
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise EngineError("duplicate invariant generator names")
        if a_hat_squared is None:
            a_hat_squared = model.one()
        if a_hat_squared.model is not model:
            raise EngineError("a-hat class lives on a different model")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "a_hat_squared", a_hat_squared)

    def __setattr__(self, name, value):
        raise AttributeError("IndexProblem is immutable")

    @classmethod
    def with_tangent(
        cls,
        model: ManifoldModel,
        group: FiniteAbelianGroup,
        generators: Sequence[InvariantGeneratorDecl],
        symbol: SymbolData,
        tangent: BundleData | None,
    ) -> "IndexProblem":
        """Build the problem with the a-hat square computed from tangent
        bundle data; absent data means a flat tangent contribution."""
        square = None
        if tangent is not None:
            genus = a_hat(tangent)
            square = genus * genus
        return cls(model, group, generators, symbol, square)

    # -- the core pairings ----------------------------------------------------

    def reduced_integrand(self, gamma: Sequence[int]) -> CohClass:
        """The base-manifold integrand at a central element: the a-hat square
        times the bracket-weighted sum of the symbol components."""
        gamma = self.group.reduce(tuple(gamma))
        acc = self.model.zero()
        for chi, u_chi in self.symbol.components.items():
            weight = demote(bracket(self.group, chi, gamma))
            acc = acc + u_chi * weight
        return self.a_hat_squared * acc

    def pair_with_jet(self, gamma: Sequence[int], jet: TestJet) -> Scalar:
        """Pair the distribution at gamma against an invariant test jet."""
        integrand = self.reduced_integrand(gamma) * chern_weil_eval(
            jet, self.generators, self.model
        )
        return demote(integrand.integrate())

    def fractional_index(self, gamma: Sequence[int]) -> Scalar:
        """Pair against a unit bump at gamma: the point-mass coefficient,
        and at the identity the analytical index of the underlying
        operator."""
        return self.pair_with_jet(gamma, TestJet.unit_bump())

    # -- moment tables ----------------------------------------------------------

    def default_degree(self) -> int:
        return self.model.dimension // 2

    def _moment_keys(self, max_degree: int) -> list[MomentKey]:
        keys: list[MomentKey] = []

        def walk(prefix: list[int], i: int, used: int) -> None:
            if i == len(self.generators):
                keys.append(tuple(prefix))
                return
            for e in range(max_degree - used + 1):
                walk(prefix + [e], i + 1, used + e)

        walk([], 0, 0)
        keys.sort(key=_moment_key_order)
        return keys

    def _monomial_images(self, max_degree: int) -> dict[MomentKey, CohClass]:
        images: dict[MomentKey, CohClass] = {}
        for key in self._moment_keys(max_degree):
            cls = self.model.one()
            for gen, e in zip(self.generators, key):
                if e:
                    cls = cls * gen.image**e
            images[key] = cls
        return images

    def moments(self, gamma: Sequence[int], max_degree: int | None = None) -> MomentTable:
        """The moment table at gamma: pairings against all generator
        monomials of total degree up to the bound (default: half the model
        dimension; higher monomials pair to zero by truncation)."""
        if max_degree is None:
            max_degree = self.default_degree()
        if max_degree < 0:
            raise EngineError("moment degree bound must be nonnegative")
        integrand = self.reduced_integrand(gamma)
        names = [g.name for g in self.generators]
        values = {
            key: (integrand * image).integrate()
            for key, image in self._monomial_images(max_degree).items()
        }
        return MomentTable(self.group.reduce(tuple(gamma)), names, values)

    def _per_character_tables(self, max_degree: int) -> dict[Element, MomentTable]:
        """Identity-route tables, one per symbol component."""
        names = [g.name for g in self.generators]
        images = self._monomial_images(max_degree)
        out: dict[Element, MomentTable] = {}
        for chi, u_chi in self.symbol.components.items():
            integrand = self.a_hat_squared * u_chi
            values = {key: (integrand * image).integrate() for key, image in images.items()}
            out[chi] = MomentTable(self.group.identity(), names, values)
        return out

    def full_distribution(self, max_degree: int | None = None) -> IndexDistribution:
        """Moment tables at every central element.

        Internally recomputes each table from the per-character tables and
        bracket scalars and verifies exact agreement with the direct route;
        disagreement raises InternalConsistencyError.
        """
        if max_degree is None:
            max_degree = self.default_degree()
        per_character = self._per_character_tables(max_degree)
        tables: dict[Element, MomentTable] = {}
        for gamma in self.group.elements():
            direct = self.moments(gamma, max_degree)
            recombined: dict[MomentKey, Scalar] = {
                key: Fraction(0) for key in direct.values
            }
            for chi, table in per_character.items():
                weight = demote(bracket(self.group, chi, gamma))
                for key, value in table.values.items():
                    recombined[key] = recombined[key] + value * weight
            for key, value in recombined.items():
                if demote(value) != direct.values[key]:
                    raise InternalConsistencyError(
                        "distribution routes disagree at gamma="
                        f"{gamma}, monomial {direct.monomial_name(key)}: "
                        f"direct {direct.values[key]!r} vs recombined {demote(value)!r}"
                    )
            tables[gamma] = direct
        return IndexDistribution(self.group, tables)

    def mms_projective(self, max_degree: int | None = None) -> IndexDistribution:
        """The distribution of a symbol concentrated on a single character,
        as for projective elliptic operators: one identity table scaled by
        the bracket value at each central element."""
        if len(self.symbol.components) != 1:
            raise EngineError(
                "projective form requires a symbol concentrated on a single character; "
                f"got {len(self.symbol.components)} components"
            )
        (chi_o,) = self.symbol.components
        base = self.moments(self.group.identity(), max_degree)
        tables = {
            gamma: base.scaled(demote(bracket(self.group, chi_o, gamma))).at(gamma)
            for gamma in self.group.elements()
        }
        return IndexDistribution(self.group, tables)

    def atiyah_pairing(self, system: WeightSystem, label) -> Fraction:
        """With a trivial center, the pairing of the index distribution
        against an irreducible character: the index of the symbol twisted
        by the associated bundle, an exact rational."""
        if not self.group.is_trivial():
            raise EngineError("character pairing requires a trivial center")
        u = self.symbol.component(self.group.identity())
        if u is None:
            u = self.model.zero()
        value = (self.a_hat_squared * u * character_jet(system, label)).integrate()
        value = demote(value)
        if not isinstance(value, Fraction):
            raise InternalConsistencyError("character pairing produced a non-rational value")
        return value


def dirac_problem(
    model: ManifoldModel,
    tangent: BundleData,
    generators: Sequence[InvariantGeneratorDecl] = (),
) -> IndexProblem:
    """The problem for the lifted Dirac symbol of an oriented even-
    dimensional manifold: center of order two, symbol concentrated on the
    nontrivial character with base reduction the inverse a-hat class, so
    the net integrand at the identity is the a-hat class itself."""
    genus = a_hat(tangent)
    group = FiniteAbelianGroup([2])
    symbol = SymbolData(group, {(1,): genus.inverse()}, label="dirac")
    return IndexProblem(model, group, generators, symbol, genus * genus)


def projective_dirac(
    model: ManifoldModel,
    tangent: BundleData,
    generators: Sequence[InvariantGeneratorDecl] = (),
    max_degree: int | None = None,
) -> IndexDistribution:
    """The index distribution of the lifted Dirac symbol: equal and
    opposite moment tables at the two central elements."""
    return dirac_problem(model, tangent, generators).full_distribution(max_degree)
