"""The group-theoretic inputs: the finite central subgroup, its character
group and duality bracket, declared invariant-polynomial generators with
their curvature images, invariant test jets, and weight systems for
representation characters.

The engine never sees the Lie algebra itself; invariant polynomials enter
only through their declared cohomology images, and representations only
through integer weights paired with degree-2 line classes.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from fracindex.cohomology import CohClass, ManifoldModel, scalar_class
from fracindex.scalars import Cyclotomic

#: Group elements and characters are exponent tuples over the cyclic factors.
Element = tuple[int, ...]


class GroupError(ValueError):
    """A group, character or jet declaration violates an invariant."""


class FiniteAbelianGroup:
    """A product of cyclic groups; elements are exponent tuples reduced
    modulo the cyclic orders.  The trivial group has no factors."""

    __slots__ = ("cyclic_orders",)

    def __init__(self, cyclic_orders: Iterable[int]) -> None:
        orders = tuple(int(n) for n in cyclic_orders)
        if any(n < 1 for n in orders):
            raise GroupError(f"cyclic orders must be positive, got {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAbelianGroup is immutable")

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        """lcm of the cyclic orders; 1 for the trivial group."""
        return math.lcm(*self.cyclic_orders) if self.cyclic_orders else 1

    def is_trivial(self) -> bool:
        return self.order == 1

    def identity(self) -> Element:
        return (0,) * len(self.cyclic_orders)

    def reduce(self, element: Sequence[int]) -> Element:
        if len(element) != len(self.cyclic_orders):
            raise GroupError(
                f"element {tuple(element)} has arity {len(element)}, expected {len(self.cyclic_orders)}"
            )
        return tuple(int(e) % n for e, n in zip(element, self.cyclic_orders))

    def contains(self, element: Sequence[int]) -> bool:
        return len(element) == len(self.cyclic_orders) and all(
            0 <= int(e) < n for e, n in zip(element, self.cyclic_orders)
        )

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def negate(self, a: Sequence[int]) -> Element:
        return self.reduce(tuple(-x for x in a))

    def elements(self) -> list[Element]:
        """All elements in lexicographic exponent order."""
        return list(itertools.product(*(range(n) for n in self.cyclic_orders)))

    characters = elements  # the character group has the same exponent tuples

    def __eq__(self, other):
        if not isinstance(other, FiniteAbelianGroup):
            return NotImplemented
        return self.cyclic_orders == other.cyclic_orders

    def __hash__(self):
        return hash(self.cyclic_orders)

    def __repr__(self):
        if not self.cyclic_orders:
            return "FiniteAbelianGroup(trivial)"
        body = " x ".join(f"Z/{n}" for n in self.cyclic_orders)
        return f"FiniteAbelianGroup({body})"


def bracket(group: FiniteAbelianGroup, character: Sequence[int], element: Sequence[int]) -> Cyclotomic:
    """The duality pairing between a character and a group element: the
    exact root of unity zeta_N^(sum_i k_i g_i N/n_i) with N the group
    exponent."""
    chi = group.reduce(character)
    g = group.reduce(element)
    n = group.exponent
    total = 0
    for k, e, order in zip(chi, g, group.cyclic_orders):
        total += k * e * (n // order)
    return Cyclotomic.root_of_unity(n, total % n)


class InvariantGeneratorDecl:
    """A declared generator of the invariant polynomials, carrying its
    degree in the symmetric algebra and its image class under the
    curvature evaluation (connection independence is assumed, not
    checked)."""

    __slots__ = ("name", "s_degree", "image")

    def __init__(self, name: str, s_degree: int, image: CohClass) -> None:
        if s_degree < 1:
            raise GroupError(f"generator {name!r}: s_degree must be positive")
        if not image.is_homogeneous(2 * s_degree):
            raise GroupError(
                f"generator {name!r}: image must be homogeneous of degree {2 * s_degree}"
            )
        object.__setattr__(self, "name", str(name))
        object.__setattr__(self, "s_degree", int(s_degree))
        object.__setattr__(self, "image", image)

    def __setattr__(self, name, value):
        raise AttributeError("InvariantGeneratorDecl is immutable")

    def __repr__(self):
        return f"InvariantGeneratorDecl({self.name!r}, s_degree={self.s_degree})"


class TestJet:
    """The Taylor jet of an invariant test function, as a polynomial in the
    declared generator names; a unit bump stands for a smooth invariant
    function equal to 1 near the base point with small support, whose jet
    is the constant 1.

    The averaging over the structure group is assumed already performed by
    whoever supplies the jet.
    """

    __test__ = False  # keep pytest from collecting this as a test class
    __slots__ = ("terms", "is_unit_bump")

    def __init__(
        self,
        terms: Mapping[tuple[tuple[str, int], ...], Fraction] | None = None,
        is_unit_bump: bool = False,
    ) -> None:
        clean: dict[tuple[tuple[str, int], ...], Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            key = tuple(sorted((str(n), int(e)) for n, e in mono if int(e) > 0))
            clean[key] = clean.get(key, Fraction(0)) + coeff
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v != 0})
        object.__setattr__(self, "is_unit_bump", bool(is_unit_bump))

    def __setattr__(self, name, value):
        raise AttributeError("TestJet is immutable")

    @classmethod
    def unit_bump(cls) -> "TestJet":
        return cls(None, is_unit_bump=True)

    @classmethod
    def constant(cls, value) -> "TestJet":
        return cls({(): Fraction(value)})

    @classmethod
    def monomial(cls, *factors: tuple[str, int]) -> "TestJet":
        return cls({tuple(factors): Fraction(1)})

    def __repr__(self):
        if self.is_unit_bump:
            return "TestJet(unit_bump)"
        parts = []
        for mono, coeff in self.terms.items():
            name = "*".join(f"{n}^{e}" if e > 1 else n for n, e in mono) or "1"
            parts.append(f"{coeff}*{name}")
        return f"TestJet({' + '.join(parts) or '0'})"


def chern_weil_eval(
    jet: TestJet,
    generators: Sequence[InvariantGeneratorDecl],
    model: ManifoldModel | None = None,
) -> CohClass:
    """Evaluate a jet on the curvature by substituting each generator name
    with its declared image class.  A unit bump evaluates to 1."""
    if model is None:
        if not generators:
            raise GroupError("chern_weil_eval needs a model when no generators are declared")
        model = generators[0].image.model
    if jet.is_unit_bump:
        return model.one()
    images = {gen.name: gen.image for gen in generators}
    out = model.zero()
    for mono, coeff in jet.terms.items():
        term = scalar_class(model, coeff)
        for name, exponent in mono:
            if name not in images:
                raise GroupError(f"jet references undeclared generator {name!r}")
            term = term * images[name] ** exponent
        out = out + term
    return out


class WeightSystem:
    """Weight data for representation characters: one degree-2 line class
    per torus coordinate, plus the family rule that turns a label into the
    multiset of integer weight vectors.

    kind "torus": the label is a weight vector (or a plain integer in rank
    one) and names the one-dimensional representation with that weight.
    kind "su2": the label is a nonnegative integer highest weight, with
    weight multiset (label, label-2, ..., -label) against the single
    declared line class.
    """

    __slots__ = ("kind", "line_classes")

    def __init__(self, kind: str, line_classes: Sequence[CohClass]) -> None:
        if kind not in ("torus", "su2"):
            raise GroupError(f"unknown weight-system kind {kind!r}")
        line_classes = tuple(line_classes)
        if not line_classes:
            raise GroupError("weight system needs at least one line class")
        if kind == "su2" and len(line_classes) != 1:
            raise GroupError("su2 weight systems take exactly one line class")
        for cls in line_classes:
            if not cls.is_homogeneous(2):
                raise GroupError("weight-system line classes must be homogeneous of degree 2")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "line_classes", line_classes)

    def __setattr__(self, name, value):
        raise AttributeError("WeightSystem is immutable")

    @property
    def rank(self) -> int:
        return len(self.line_classes)

    def weights_of(self, label) -> list[tuple[int, ...]]:
        if self.kind == "torus":
            if isinstance(label, int):
                if self.rank != 1:
                    raise GroupError(
                        f"integer label needs rank 1, this system has rank {self.rank}"
                    )
                return [(label,)]
            weight = tuple(int(w) for w in label)
            if len(weight) != self.rank:
                raise GroupError(
                    f"label {weight} has arity {len(weight)}, expected {self.rank}"
                )
            return [weight]
        label = int(label)
        if label < 0:
            raise GroupError("su2 labels are nonnegative integers")
        return [(m,) for m in range(label, -label - 1, -2)]

    def root_class(self, weight: Sequence[int]) -> CohClass:
        model = self.line_classes[0].model
        out = model.zero()
        for w, line in zip(weight, self.line_classes):
            if w:
                out = out + line * w
        return out

    def __repr__(self):
        return f"WeightSystem({self.kind!r}, rank={self.rank})"


def character_jet(system: WeightSystem, label) -> CohClass:
    """The curvature image of a representation character: the sum over the
    representation's weights of the exponential of the matching line
    class.  The dimension of the representation is the constant term."""
    model = system.line_classes[0].model
    out = model.zero()
    for weight in system.weights_of(label):
        out = out + system.root_class(weight).exponential()
    return out
