"""Finite graded-commutative algebras over F2 and Stiefel-Whitney calculus.

Two carriers live here: finite algebras with an explicit multiplication
table (cohomology rings of concrete manifold models, with Kunneth
products and the degree-4 integral-lift test), and free polynomial
algebras over F2 on w_1..w_k for symbolic bundle identities (line-bundle
twists and Whitney sums).  Integral cohomology is always declared input
data, never computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from .certificates import Certificate, Check, ESTABLISHED, EXCLUDED, INCONCLUSIVE


class AlgebraError(ValueError):
    pass


class ModelError(ValueError):
    pass


# -- finite F2 algebras --------------------------------------------------


class F2Algebra:
    """Graded-commutative unital algebra over F2 with a finite basis.

    The multiplication table is validated exhaustively at construction:
    commutativity, unit law, degree-additivity, and associativity on all
    basis triples.  Violations raise :class:`AlgebraError` naming the
    offending pair or triple.
    """

    def __init__(
        self,
        basis: Sequence[Tuple[str, int]],
        products: Mapping[Tuple[str, str], FrozenSet[str]],
        unit: str,
    ):
        self.names: Tuple[str, ...] = tuple(name for name, _ in basis)
        self.degrees: Dict[str, int] = {}
        for name, degree in basis:
            if name in self.degrees:
                raise AlgebraError(f"duplicate basis element {name!r}")
            if degree < 0:
                raise AlgebraError(f"negative degree for {name!r}")
            self.degrees[name] = degree
        if unit not in self.degrees:
            raise AlgebraError(f"unit {unit!r} is not a basis element")
        if self.degrees[unit] != 0:
            raise AlgebraError(f"unit {unit!r} must have degree 0")
        self.unit = unit
        self.table: Dict[Tuple[str, str], FrozenSet[str]] = dict(products)
        self._validate()

    def _validate(self) -> None:
        for (left, right), result in self.table.items():
            for name in (left, right, *result):
                if name not in self.degrees:
                    raise AlgebraError(f"product table mentions unknown element {name!r}")
        # symmetric completion; explicit conflicting entries are a commutativity error
        for (left, right), result in list(self.table.items()):
            mirror = self.table.get((right, left))
            if mirror is None:
                self.table[(right, left)] = result
            elif mirror != result:
                raise AlgebraError(
                    f"product table is not commutative on the pair ({left}, {right})"
                )
        for name in self.names:
            for pair in ((self.unit, name), (name, self.unit)):
                expected = frozenset([name])
                if self.table.setdefault(pair, expected) != expected:
                    raise AlgebraError(f"unit law fails on {name!r}")
        for left in self.names:
            for right in self.names:
                result = self.table.setdefault((left, right), frozenset())
                target = self.degrees[left] + self.degrees[right]
                for name in result:
                    if self.degrees[name] != target:
                        raise AlgebraError(
                            f"product ({left}, {right}) is not degree-additive: "
                            f"{name!r} has degree {self.degrees[name]}, expected {target}"
                        )
        for a in self.names:
            for b in self.names:
                for c in self.names:
                    left = self._mul_sets(self.table[(a, b)], frozenset([c]))
                    right = self._mul_sets(frozenset([a]), self.table[(b, c)])
                    if left != right:
                        raise AlgebraError(
                            f"product table is not associative on the triple ({a}, {b}, {c})"
                        )

    def _mul_sets(self, xs: FrozenSet[str], ys: FrozenSet[str]) -> FrozenSet[str]:
        acc: set = set()
        for x in xs:
            for y in ys:
                acc ^= self.table[(x, y)]
        return frozenset(acc)

    # -- elements ------------------------------------------------------

    def element(self, names: Iterable[str] = ()) -> "F2Element":
        names = frozenset(names)
        for name in names:
            if name not in self.degrees:
                raise AlgebraError(f"unknown basis element {name!r}")
        return F2Element(self, names)

    def zero(self) -> "F2Element":
        return self.element()

    def one(self) -> "F2Element":
        return self.element([self.unit])

    def basis_of_degree(self, degree: int) -> List[str]:
        return [n for n in self.names if self.degrees[n] == degree]

    def dim(self, degree: int) -> int:
        return len(self.basis_of_degree(degree))

    @property
    def top_degree(self) -> int:
        return max(self.degrees.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, F2Algebra)
            and self.names == other.names
            and self.degrees == other.degrees
            and self.unit == other.unit
            and self.table == other.table
        )

    def __repr__(self) -> str:
        return f"F2Algebra(basis={list(self.degrees.items())})"


@dataclass(frozen=True)
class F2Element:
    algebra: F2Algebra
    support: FrozenSet[str]

    def _check_compatible(self, other: "F2Element") -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "F2Element") -> "F2Element":
        self._check_compatible(other)
        return F2Element(self.algebra, self.support ^ other.support)

    def __mul__(self, other: "F2Element") -> "F2Element":
        self._check_compatible(other)
        acc: set = set()
        for x in self.support:
            for y in other.support:
                acc ^= self.algebra.table[(x, y)]
        return F2Element(self.algebra, frozenset(acc))

    def is_zero(self) -> bool:
        return not self.support

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, F2Element)
            and self.algebra == other.algebra
            and self.support == other.support
        )

    def __hash__(self):
        return hash(self.support)

    def __str__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(sorted(self.support))


def build_algebra(
    basis: Sequence[Tuple[str, int]],
    products: Mapping[Tuple[str, str], Iterable[str]],
    unit: str = "1",
) -> F2Algebra:
    """Validated algebra from a basis and a (possibly partial) product table.

    Pairs not listed default to zero; pairs involving the unit are
    filled in by the unit law.  Any axiom violation raises
    :class:`AlgebraError` naming the offending pair or triple.
    """
    table = {pair: frozenset(result) for pair, result in products.items()}
    return F2Algebra(basis, table, unit)


# -- total Stiefel-Whitney classes over a finite algebra -----------------


class SWTotal:
    """Total SW class 1 + w_1 + w_2 + ... with components in an F2Algebra."""

    def __init__(self, algebra: F2Algebra, components: Mapping[int, F2Element]):
        self.algebra = algebra
        self.components: Dict[int, F2Element] = {}
        for degree, element in components.items():
            if element.is_zero():
                continue
            if degree < 1:
                raise ModelError("positive-degree components only; w_0 is implicit")
            for name in element.support:
                if algebra.degrees[name] != degree:
                    raise ModelError(
                        f"sw component in degree {degree} contains {name!r} "
                        f"of degree {algebra.degrees[name]}"
                    )
            self.components[degree] = element

    def component(self, degree: int) -> F2Element:
        if degree == 0:
            return self.algebra.one()
        return self.components.get(degree, self.algebra.zero())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SWTotal)
            and self.algebra == other.algebra
            and self.components == other.components
        )


# -- declared integral cohomology ----------------------------------------


@dataclass(frozen=True)
class IntProfile:
    """Integral cohomology, declared: degree -> (free rank, torsion orders)."""

    groups: Tuple[Tuple[int, int, Tuple[int, ...]], ...]

    @staticmethod
    def from_mapping(data: Mapping[int, Tuple[int, Iterable[int]]]) -> "IntProfile":
        rows = []
        for degree in sorted(data):
            free, torsion = data[degree]
            torsion = tuple(sorted(int(t) for t in torsion))
            if degree < 0 or free < 0 or any(t < 2 for t in torsion):
                raise ModelError(f"malformed integral data in degree {degree}")
            if free or torsion:
                rows.append((degree, int(free), torsion))
        return IntProfile(tuple(rows))

    def free(self, degree: int) -> int:
        for d, f, _ in self.groups:
            if d == degree:
                return f
        return 0

    def torsion(self, degree: int) -> Tuple[int, ...]:
        for d, _, t in self.groups:
            if d == degree:
                return t
        return ()

    def mod2_dim(self, degree: int) -> int:
        # universal coefficients with F2: free part plus 2-torsion in this
        # degree and the next
        even_here = sum(1 for t in self.torsion(degree) if t % 2 == 0)
        even_next = sum(1 for t in self.torsion(degree + 1) if t % 2 == 0)
        return self.free(degree) + even_here + even_next

    def is_trivial(self, degree: int) -> bool:
        return self.free(degree) == 0 and not self.torsion(degree)

    def group_text(self, degree: int) -> str:
        free, torsion = self.free(degree), self.torsion(degree)
        parts = []
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        parts.extend(f"Z/{t}" for t in torsion)
        return " + ".join(parts) if parts else "0"


# -- manifold models -------------------------------------------------------


class SpaceModel:
    """Mod-2 cohomology ring, tangent SW class and declared integral data."""

    def __init__(
        self,
        name: str,
        algebra: F2Algebra,
        tangent_sw: SWTotal,
        int_profile: IntProfile,
        dimension: int,
    ):
        if tangent_sw.algebra != algebra:
            raise ModelError("tangent SW class lives in a different algebra")
        if algebra.top_degree > dimension:
            raise ModelError(
                f"basis degree {algebra.top_degree} exceeds the dimension {dimension}"
            )
        for degree, free, torsion in int_profile.groups:
            if degree > dimension:
                raise ModelError(f"integral data above the dimension, in degree {degree}")
        for degree in range(dimension + 1):
            expected = int_profile.mod2_dim(degree)
            actual = algebra.dim(degree)
            if actual != expected:
                raise ModelError(
                    f"universal-coefficient mismatch in degree {degree}: "
                    f"mod-2 dimension {actual}, integral profile predicts {expected}"
                )
        self.name = name
        self.algebra = algebra
        self.tangent_sw = tangent_sw
        self.int_profile = int_profile
        self.dimension = dimension

    def w(self, degree: int) -> F2Element:
        return self.tangent_sw.component(degree)

    def mod2_betti(self) -> Tuple[int, ...]:
        return tuple(self.algebra.dim(d) for d in range(self.dimension + 1))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpaceModel)
            and self.name == other.name
            and self.dimension == other.dimension
            and self.algebra == other.algebra
            and self.tangent_sw == other.tangent_sw
            and self.int_profile == other.int_profile
        )


def wu_manifold() -> SpaceModel:
    """The five-dimensional homogeneous space SU(3)/SO(3) as a model.

    Mod-2 cohomology has basis 1, z2, z3, z5 with z2*z3 = z5 and
    z2^2 = 0; the tangent SW class is 1 + z2 + z3; integrally there is a
    single order-2 class in degree 3 besides the free parts in degrees 0
    and 5.
    """
    algebra = build_algebra(
        basis=[("1", 0), ("z2", 2), ("z3", 3), ("z5", 5)],
        products={("z2", "z2"): [], ("z2", "z3"): ["z5"]},
    )
    return SpaceModel(
        name="wu-manifold",
        algebra=algebra,
        tangent_sw=SWTotal(
            algebra, {2: algebra.element(["z2"]), 3: algebra.element(["z3"])}
        ),
        int_profile=IntProfile.from_mapping({0: (1, ()), 3: (0, (2,)), 5: (1, ())}),
        dimension=5,
    )


def point_model() -> SpaceModel:
    algebra = build_algebra([("1", 0)], {})
    return SpaceModel(
        name="point",
        algebra=algebra,
        tangent_sw=SWTotal(algebra, {}),
        int_profile=IntProfile.from_mapping({0: (1, ())}),
        dimension=0,
    )


def sphere_model(n: int) -> SpaceModel:
    if n < 1:
        raise ModelError("sphere dimension must be >= 1")
    algebra = build_algebra([("1", 0), (f"v{n}", n)], {(f"v{n}", f"v{n}"): []})
    return SpaceModel(
        name=f"sphere-{n}",
        algebra=algebra,
        tangent_sw=SWTotal(algebra, {}),
        int_profile=IntProfile.from_mapping({0: (1, ()), n: (1, ())}),
        dimension=n,
    )


# -- Kunneth products -------------------------------------------------------


def _pair_name(a: str, b: str) -> str:
    return f"{a}⊗{b}"


def kunneth(a: SpaceModel, b: SpaceModel) -> SpaceModel:
    """Product model: tensor algebra, product SW class, combined profile."""
    basis = [
        (_pair_name(x, y), a.algebra.degrees[x] + b.algebra.degrees[y])
        for x in a.algebra.names
        for y in b.algebra.names
    ]
    products = {}
    for x1 in a.algebra.names:
        for y1 in b.algebra.names:
            for x2 in a.algebra.names:
                for y2 in b.algebra.names:
                    result = frozenset(
                        _pair_name(u, v)
                        for u in a.algebra.table[(x1, x2)]
                        for v in b.algebra.table[(y1, y2)]
                    )
                    products[(_pair_name(x1, y1), _pair_name(x2, y2))] = result
    algebra = F2Algebra(basis, products, _pair_name(a.algebra.unit, b.algebra.unit))

    dimension = a.dimension + b.dimension
    sw_components: Dict[int, F2Element] = {}
    for degree in range(1, dimension + 1):
        names: set = set()
        for i in range(degree + 1):
            left = a.tangent_sw.component(i)
            right = b.tangent_sw.component(degree - i)
            names ^= {_pair_name(u, v) for u in left.support for v in right.support}
        if names:
            sw_components[degree] = algebra.element(names)

    profile: Dict[int, Tuple[int, List[int]]] = {}
    for degree in range(dimension + 1):
        free = 0
        torsion: List[int] = []
        for i in range(degree + 1):
            j = degree - i
            fa, fb = a.int_profile.free(i), b.int_profile.free(j)
            ta, tb = a.int_profile.torsion(i), b.int_profile.torsion(j)
            free += fa * fb
            torsion.extend(list(tb) * fa)
            torsion.extend(list(ta) * fb)
            torsion.extend(
                gcd(s, t) for s in ta for t in tb if gcd(s, t) > 1
            )
        for i in range(degree + 2):
            j = degree + 1 - i
            torsion.extend(
                gcd(s, t)
                for s in a.int_profile.torsion(i)
                for t in b.int_profile.torsion(j)
                if gcd(s, t) > 1
            )
        if free or torsion:
            profile[degree] = (free, torsion)

    return SpaceModel(
        name=f"{a.name} x {b.name}",
        algebra=algebra,
        tangent_sw=SWTotal(algebra, sw_components),
        int_profile=IntProfile.from_mapping(profile),
        dimension=dimension,
    )


# -- integral lifts and the degree-5 obstruction ----------------------------


def w4_integral_lift_exists(model: SpaceModel) -> str:
    """'yes', 'no' or 'unknown': does w4 admit an integral lift?

    Sufficient criteria only: a zero class always lifts, and a non-zero
    class cannot lift through a zero group.  Anything else is reported
    as unknown, never guessed.
    """
    if model.w(4).is_zero():
        return "yes"
    if model.int_profile.is_trivial(4):
        return "no"
    return "unknown"


def w5_verdict(model: SpaceModel) -> Certificate:
    """Primary spin^h obstruction: W5 = 0 exactly when w4 lifts integrally."""
    lift = w4_integral_lift_exists(model)
    w4 = model.w(4)
    parameters = {
        "model": model.name,
        "dimension": model.dimension,
        "k": 3,
        "orientable": True,
        "w4": str(w4),
        "H4_integral": model.int_profile.group_text(4),
    }
    if lift == "yes":
        return Certificate(
            claim="w5-obstruction-vanishes",
            parameters=parameters,
            checks=[Check("w4 component", str(w4), "0", "=", True)],
            verdict=ESTABLISHED,
        )
    if lift == "no":
        return Certificate(
            claim="not-spin^h",
            parameters=parameters,
            checks=[
                Check("w4 component", str(w4), "0", "!=", True),
                Check(
                    "degree-4 integral cohomology",
                    model.int_profile.group_text(4),
                    "0",
                    "=",
                    True,
                ),
            ],
            verdict=EXCLUDED,
        )
    return Certificate(
        claim="w5-obstruction-undetermined",
        parameters=parameters,
        checks=[
            Check("w4 component", str(w4), "0", "!=", True),
            Check(
                "degree-4 integral cohomology",
                model.int_profile.group_text(4),
                "0",
                "!=",
                True,
            ),
        ],
        verdict=INCONCLUSIVE,
    )


# -- free F2 polynomial algebras and symbolic bundle identities -------------


class F2Ring:
    """Free polynomial ring over F2 on graded generators, degree-truncated."""

    def __init__(self, gens: Sequence[Tuple[str, int]], max_degree: int):
        self.gen_names = tuple(name for name, _ in gens)
        self.gen_degrees = tuple(degree for _, degree in gens)
        self.max_degree = max_degree

    def mono_degree(self, exps: Tuple[int, ...]) -> int:
        return sum(e * d for e, d in zip(exps, self.gen_degrees))

    def zero(self) -> "F2Poly":
        return F2Poly(self, frozenset())

    def one(self) -> "F2Poly":
        return F2Poly(self, frozenset({(0,) * len(self.gen_names)}))

    def gen(self, name: str) -> "F2Poly":
        index = self.gen_names.index(name)
        exps = tuple(1 if i == index else 0 for i in range(len(self.gen_names)))
        return F2Poly(self, frozenset({exps}))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, F2Ring)
            and self.gen_names == other.gen_names
            and self.gen_degrees == other.gen_degrees
            and self.max_degree == other.max_degree
        )


@dataclass(frozen=True)
class F2Poly:
    ring: F2Ring
    monos: FrozenSet[Tuple[int, ...]]

    def __add__(self, other: "F2Poly") -> "F2Poly":
        return F2Poly(self.ring, self.monos ^ other.monos)

    def __mul__(self, other: "F2Poly") -> "F2Poly":
        acc: set = set()
        for ma in self.monos:
            for mb in other.monos:
                m = tuple(x + y for x, y in zip(ma, mb))
                if self.ring.mono_degree(m) <= self.ring.max_degree:
                    acc ^= {m}
        return F2Poly(self.ring, frozenset(acc))

    def __pow__(self, n: int) -> "F2Poly":
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.monos

    def __str__(self) -> str:
        if not self.monos:
            return "0"
        pieces = []
        for mono in sorted(self.monos, key=lambda m: (self.ring.mono_degree(m), m)):
            factors = [
                name if exp == 1 else f"{name}^{exp}"
                for name, exp in zip(self.ring.gen_names, mono)
                if exp
            ]
            pieces.append("*".join(factors) if factors else "1")
        return " + ".join(pieces)


def sw_ring(k: int, extra_degree1: Tuple[str, ...] = ()) -> F2Ring:
    """Free SW algebra on w_1..w_k (deg w_i = i), truncated at degree k + 2."""
    gens = [(f"w{i}", i) for i in range(1, k + 1)]
    gens.extend((name, 1) for name in extra_degree1)
    return F2Ring(gens, k + 2)


@dataclass(frozen=True)
class SymbolicSW:
    """Total SW class of a rank-k bundle in a free F2 polynomial algebra."""

    rank: int
    components: Tuple[F2Poly, ...]

    def component(self, degree: int) -> F2Poly:
        if 0 <= degree < len(self.components):
            return self.components[degree]
        return self.components[0].ring.zero()

    @property
    def ring(self) -> F2Ring:
        return self.components[0].ring


def generic_bundle(ring: F2Ring, k: int) -> SymbolicSW:
    comps = [ring.one()]
    comps.extend(ring.gen(f"w{i}") for i in range(1, k + 1))
    return SymbolicSW(rank=k, components=tuple(comps))


def binom_mod2(n: int, k: int) -> int:
    """Binomial coefficient mod 2 via Lucas: odd iff k's bits sit inside n's."""
    if k < 0 or k > n:
        return 0
    return 1 if (n & k) == k else 0


def line_twist(bundle: SymbolicSW, t: F2Poly) -> SymbolicSW:
    """Total SW class of E tensor L for a line class with w_1(L) = t.

    Splitting-principle formula reduced mod 2:
    w_j(E ox L) = sum_i binom(k - i, j - i) w_i(E) t^(j-i).
    """
    ring = bundle.ring
    k = bundle.rank
    tpowers = [ring.one()]
    for _ in range(k):
        tpowers.append(tpowers[-1] * t)
    comps = []
    for j in range(k + 1):
        acc = ring.zero()
        for i in range(j + 1):
            if binom_mod2(k - i, j - i):
                acc = acc + bundle.component(i) * tpowers[j - i]
        comps.append(acc)
    return SymbolicSW(rank=k, components=tuple(comps))


def whitney_sum(a: SymbolicSW, b: SymbolicSW) -> SymbolicSW:
    rank = a.rank + b.rank
    ring = a.ring
    comps = []
    for j in range(rank + 1):
        acc = ring.zero()
        for i in range(j + 1):
            acc = acc + a.component(i) * b.component(j - i)
        comps.append(acc)
    return SymbolicSW(rank=rank, components=tuple(comps))


def line_total(t: F2Poly) -> SymbolicSW:
    return SymbolicSW(rank=1, components=(t.ring.one(), t))


def tensor_with_det(k: int) -> SymbolicSW:
    """w(E ox det E) for a generic rank-k bundle, in the free SW algebra."""
    if k < 1:
        raise ValueError("rank must be >= 1")
    ring = sw_ring(k)
    return line_twist(generic_bundle(ring, k), ring.gen("w1"))


def sum_with_det(k: int) -> SymbolicSW:
    """w(E + det E) = w(E) * (1 + w_1(E))."""
    if k < 1:
        raise ValueError("rank must be >= 1")
    ring = sw_ring(k)
    return whitney_sum(generic_bundle(ring, k), line_total(ring.gen("w1")))


def twist_then_sum(k: int) -> SymbolicSW:
    """w((E ox det E) + det E)."""
    if k < 1:
        raise ValueError("rank must be >= 1")
    ring = sw_ring(k)
    twisted = line_twist(generic_bundle(ring, k), ring.gen("w1"))
    return whitney_sum(twisted, line_total(ring.gen("w1")))


# -- document interface -----------------------------------------------------


def space_model_to_dict(model: SpaceModel) -> Dict:
    algebra = model.algebra
    non_unit = [n for n in algebra.names if n != algebra.unit]
    products = []
    for i, left in enumerate(non_unit):
        for right in non_unit[i:]:
            products.append([left, right, sorted(algebra.table[(left, right)])])
    sw = {
        str(d): sorted(model.tangent_sw.components[d].support)
        for d in sorted(model.tangent_sw.components)
    }
    profile = {
        str(d): {"free": free, "torsion": list(tors)}
        for d, free, tors in model.int_profile.groups
    }
    return {
        "name": model.name,
        "dimension": model.dimension,
        "basis": [[n, algebra.degrees[n]] for n in algebra.names],
        "unit": algebra.unit,
        "products": products,
        "sw": sw,
        "int_profile": profile,
    }


def space_model_to_json(model: SpaceModel) -> str:
    return json.dumps(space_model_to_dict(model), indent=2, ensure_ascii=True) + "\n"


def _require(doc: Mapping, field: str, kind) -> object:
    if field not in doc:
        raise ModelError(f"field {field!r}: missing")
    value = doc[field]
    if not isinstance(value, kind):
        raise ModelError(f"field {field!r}: expected {kind.__name__}")
    return value


def space_model_from_dict(doc: Mapping) -> SpaceModel:
    name = _require(doc, "name", str)
    dimension = _require(doc, "dimension", int)
    raw_basis = _require(doc, "basis", list)
    basis = []
    for i, entry in enumerate(raw_basis):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not isinstance(entry[0], str)
            or not isinstance(entry[1], int)
        ):
            raise ModelError(f"field 'basis[{i}]': expected [name, degree]")
        basis.append((entry[0], entry[1]))
    unit = _require(doc, "unit", str)
    products = {}
    for i, entry in enumerate(_require(doc, "products", list)):
        if (
            not isinstance(entry, list)
            or len(entry) != 3
            or not isinstance(entry[0], str)
            or not isinstance(entry[1], str)
            or not isinstance(entry[2], list)
        ):
            raise ModelError(f"field 'products[{i}]': expected [left, right, [names]]")
        pair = (entry[0], entry[1])
        value = frozenset(entry[2])
        if pair in products and products[pair] != value:
            raise ModelError(f"field 'products[{i}]': duplicate pair {pair}")
        products[pair] = value
    try:
        algebra = build_algebra(basis, products, unit)
    except AlgebraError as err:
        raise ModelError(f"field 'products': {err}") from err

    sw_components = {}
    for key, names in _require(doc, "sw", dict).items():
        try:
            degree = int(key)
        except ValueError:
            raise ModelError(f"field 'sw': non-integer degree key {key!r}") from None
        if not isinstance(names, list):
            raise ModelError(f"field 'sw[{key}]': expected a list of basis names")
        try:
            sw_components[degree] = algebra.element(names)
        except AlgebraError as err:
            raise ModelError(f"field 'sw[{key}]': {err}") from err

    profile_data = {}
    for key, entry in _require(doc, "int_profile", dict).items():
        try:
            degree = int(key)
        except ValueError:
            raise ModelError(
                f"field 'int_profile': non-integer degree key {key!r}"
            ) from None
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("free"), int)
            or not isinstance(entry.get("torsion"), list)
        ):
            raise ModelError(
                f"field 'int_profile[{key}]': expected {{'free': int, 'torsion': [...]}}"
            )
        profile_data[degree] = (entry["free"], entry["torsion"])
    try:
        profile = IntProfile.from_mapping(profile_data)
        sw = SWTotal(algebra, sw_components)
        return SpaceModel(name, algebra, sw, profile, dimension)
    except ModelError:
        raise
    except (AlgebraError, ValueError) as err:
        raise ModelError(str(err)) from err
