"""Multiplicative-sequence engine over formal Pontryagin classes.

A multiplicative sequence is determined by its characteristic power
series Q(z) = 1 + q1*z + q2*z^2 + ...; the polynomial K_j of the
sequence is the degree-4j part of the product of Q over formal roots,
rewritten in the elementary symmetric polynomials of those roots.  The
variable z always stands for the *square* of a formal Chern-style root,
so every series here has integral powers of z and no fractional powers
ever appear; z has weight 4 and p_i = e_i(z_1, z_2, ...) has weight 4i.

The engine computes K_j by the log/power-sum route: take log Q
termwise, sum over roots (turning z^k into the k-th power sum), convert
power sums to elementary symmetric polynomials with Newton's
identities, and exponentiate.  The naive many-root expansion is kept
out of the library on purpose: it serves as the independent test
oracle.

Built-in series:

* signature sequence: sqrt(z)/tanh(sqrt(z)), the series whose genus is
  the signature;
* roof sequence ("A-hat"): (sqrt(z)/2)/sinh(sqrt(z)/2);
* normal-bundle factor: cosh(sqrt(z)/2), the multiplier appearing in
  the immersion integrality theorem.

Extra weight-4 formal classes ("gamma" for the spin^h lift class, "e"
for a 4-manifold Euler class) live in the same polynomial type so that
twisted expansions stay exact and purely symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Tuple

from .certificates import Certificate, Check, ESTABLISHED, EXCLUDED, spin_label
from .exact import bernoulli

Monomial = Tuple[Tuple[str, int], ...]

_EXTRA_WEIGHT4 = ("gamma", "e")


def class_degree(name: str) -> int:
    """Cohomological degree of a formal generator (p_i has degree 4i)."""
    if name.startswith("p") and name[1:].isdigit() and int(name[1:]) >= 1:
        return 4 * int(name[1:])
    if name in _EXTRA_WEIGHT4:
        return 4
    raise ValueError(f"unknown characteristic-class generator {name!r}")


def _mono_from_mapping(spec: Mapping[str, int]) -> Monomial:
    items = []
    for name, exp in spec.items():
        class_degree(name)  # validates the name
        if exp < 0:
            raise ValueError(f"negative exponent for {name!r}")
        if exp > 0:
            items.append((name, int(exp)))
    return tuple(sorted(items))


def _mono_degree(mono: Monomial) -> int:
    return sum(class_degree(name) * exp for name, exp in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: Dict[str, int] = dict(a)
    for name, exp in b:
        exps[name] = exps.get(name, 0) + exp
    return tuple(sorted(exps.items()))


class PontryaginPolynomial:
    """Graded polynomial in formal classes with exact rational coefficients.

    Zero coefficients are never stored.  Instances are treated as
    immutable; all arithmetic returns new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "PontryaginPolynomial":
        return PontryaginPolynomial()

    @staticmethod
    def one() -> "PontryaginPolynomial":
        return PontryaginPolynomial({(): Fraction(1)})

    @staticmethod
    def variable(name: str) -> "PontryaginPolynomial":
        return PontryaginPolynomial({_mono_from_mapping({name: 1}): Fraction(1)})

    @staticmethod
    def monomial(spec: Mapping[str, int], coeff: Fraction | int = 1) -> "PontryaginPolynomial":
        return PontryaginPolynomial({_mono_from_mapping(spec): Fraction(coeff)})

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "PontryaginPolynomial") -> "PontryaginPolynomial":
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return PontryaginPolynomial(terms)

    def __neg__(self) -> "PontryaginPolynomial":
        return PontryaginPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "PontryaginPolynomial") -> "PontryaginPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def scale(self, c: Fraction) -> "PontryaginPolynomial":
        return PontryaginPolynomial({m: c * v for m, v in self.terms.items()})

    def mul_truncated(
        self, other: "PontryaginPolynomial", max_degree: int | None
    ) -> "PontryaginPolynomial":
        terms: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            da = _mono_degree(ma)
            for mb, cb in other.terms.items():
                if max_degree is not None and da + _mono_degree(mb) > max_degree:
                    continue
                m = _mono_mul(ma, mb)
                terms[m] = terms.get(m, Fraction(0)) + ca * cb
        return PontryaginPolynomial(terms)

    def truncate(self, max_degree: int) -> "PontryaginPolynomial":
        return PontryaginPolynomial(
            {m: c for m, c in self.terms.items() if _mono_degree(m) <= max_degree}
        )

    def homogeneous_part(self, degree: int) -> "PontryaginPolynomial":
        return PontryaginPolynomial(
            {m: c for m, c in self.terms.items() if _mono_degree(m) == degree}
        )

    # -- queries -------------------------------------------------------

    def coefficient(self, spec: Mapping[str, int]) -> Fraction:
        return self.terms.get(_mono_from_mapping(spec), Fraction(0))

    def evaluate(self, values: Mapping[str, Fraction | int]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            prod = coeff
            for name, exp in mono:
                if name not in values:
                    raise ValueError(f"no value supplied for generator {name!r}")
                prod *= Fraction(values[name]) ** exp
            total += prod
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def variables(self) -> set:
        return {name for mono in self.terms for name, _ in mono}

    def __eq__(self, other) -> bool:
        return isinstance(other, PontryaginPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"PontryaginPolynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: List[str] = []
        for mono in sorted(self.terms, key=lambda m: (_mono_degree(m), m)):
            coeff = self.terms[mono]
            body = "*".join(
                name if exp == 1 else f"{name}^{exp}" for name, exp in mono
            )
            mag = abs(coeff)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            if not parts:
                parts.append(piece if coeff > 0 else f"-{piece}")
            else:
                parts.append(f"+ {piece}" if coeff > 0 else f"- {piece}")
        return " ".join(parts)


# -- characteristic power series ---------------------------------------


@dataclass(frozen=True)
class CharacteristicSeries:
    """Formal power series 1 + q1*z + ... + q_max*z^max, coefficients exact."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("characteristic series must have constant term 1")

    @property
    def max_degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> Fraction:
        return self.coefficients[k]


def _series_mul(a: List[Fraction], b: List[Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: n + 1 - i]):
            out[i + j] += ai * bj
    return out

def _series_inverse(a: List[Fraction], n: int) -> List[Fraction]:
    if a[0] != 1:
        raise ValueError("inversion needs constant term 1")
    out = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, k + 1) if i < len(a))
    return out

def _series_log(a: List[Fraction], n: int) -> List[Fraction]:
    # c = log a with a_0 = 1, via k*a_k = sum_{i<=k} i*c_i*a_{k-i}
    out = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        acc = k * a[k] if k < len(a) else Fraction(0)
        for i in range(1, k):
            if k - i < len(a):
                acc -= i * out[i] * a[k - i]
        out[k] = acc / k
    return out


@lru_cache(maxsize=None)
def signature_series(max_degree: int) -> CharacteristicSeries:
    """sqrt(z)/tanh(sqrt(z)) as a z-series: cosh-type over sinh-type factorials."""
    num = [Fraction(1, factorial(2 * k)) for k in range(max_degree + 1)]
    den = [Fraction(1, factorial(2 * k + 1)) for k in range(max_degree + 1)]
    coeffs = _series_mul(num, _series_inverse(den, max_degree), max_degree)
    return CharacteristicSeries(tuple(coeffs))


@lru_cache(maxsize=None)
def ahat_series(max_degree: int) -> CharacteristicSeries:
    """(sqrt(z)/2)/sinh(sqrt(z)/2) as a z-series."""
    den = [Fraction(1, 4**k * factorial(2 * k + 1)) for k in range(max_degree + 1)]
    return CharacteristicSeries(tuple(_series_inverse(den, max_degree)))


@lru_cache(maxsize=None)
def mayer_series(max_degree: int) -> CharacteristicSeries:
    """cosh(sqrt(z)/2): z^k-coefficient 1/(4^k (2k)!)."""
    return CharacteristicSeries(
        tuple(Fraction(1, 4**k * factorial(2 * k)) for k in range(max_degree + 1))
    )


def trivial_series(max_degree: int) -> CharacteristicSeries:
    return CharacteristicSeries(
        tuple([Fraction(1)] + [Fraction(0)] * max_degree)
    )


# Aliases under the traditional names.
l_series = signature_series


# -- genus polynomials -------------------------------------------------


@lru_cache(maxsize=None)
def _power_sums(n: int) -> Tuple[PontryaginPolynomial, ...]:
    # Newton's identities: s_k = sum_{i<k} (-1)^{i-1} p_i s_{k-i} + (-1)^{k-1} k p_k
    sums: List[PontryaginPolynomial] = []
    for k in range(1, n + 1):
        acc = PontryaginPolynomial.monomial({f"p{k}": 1}, Fraction((-1) ** (k - 1) * k))
        for i in range(1, k):
            term = PontryaginPolynomial.variable(f"p{i}") * sums[k - i - 1]
            acc = acc + term.scale(Fraction((-1) ** (i - 1)))
        sums.append(acc)
    return tuple(sums)


def _exp_graded(g: PontryaginPolynomial, max_degree: int) -> PontryaginPolynomial:
    # exp of a polynomial with no constant term, truncated by degree
    result = PontryaginPolynomial.one()
    term = PontryaginPolynomial.one()
    j = 0
    while True:
        j += 1
        term = term.mul_truncated(g, max_degree).scale(Fraction(1, j))
        if term.is_zero():
            return result
        result = result + term


@lru_cache(maxsize=None)
def _genus_polynomials_cached(
    series: CharacteristicSeries, n: int
) -> Tuple[PontryaginPolynomial, ...]:
    logs = _series_log(list(series.coefficients), n)
    sums = _power_sums(n)
    g = PontryaginPolynomial.zero()
    for k in range(1, n + 1):
        if logs[k]:
            g = g + sums[k - 1].scale(logs[k])
    total = _exp_graded(g, 4 * n)
    return tuple(total.homogeneous_part(4 * j) for j in range(1, n + 1))


def genus_polynomials(
    series: CharacteristicSeries, n: int
) -> List[PontryaginPolynomial]:
    """The polynomials K_1..K_n of the multiplicative sequence of ``series``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if series.max_degree < n:
        raise ValueError(
            f"series tracked through degree {series.max_degree}, need {n}"
        )
    return list(_genus_polynomials_cached(series, n))


def genus_total(series: CharacteristicSeries, n: int) -> PontryaginPolynomial:
    """1 + K_1 + ... + K_n."""
    total = PontryaginPolynomial.one()
    for poly in genus_polynomials(series, n):
        total = total + poly
    return total


def series_applied_to(
    series: CharacteristicSeries, poly: PontryaginPolynomial, max_degree: int
) -> PontryaginPolynomial:
    """Q(X) for a polynomial argument X with positive degree, truncated."""
    result = PontryaginPolynomial.one().scale(series.coefficient(0))
    power = PontryaginPolynomial.one()
    for k in range(1, series.max_degree + 1):
        power = power.mul_truncated(poly, max_degree)
        if power.is_zero():
            break
        result = result + power.scale(series.coefficient(k))
    return result.truncate(max_degree)


# -- signature-sequence coefficients -----------------------------------


@dataclass(frozen=True)
class SCoefficients:
    """Coefficients of p_m, p_m^2 and p_{2m} in the signature sequence."""

    s_m: Fraction
    s_mm: Fraction
    s_2m: Fraction


@lru_cache(maxsize=None)
def l_coefficients(m: int) -> SCoefficients:
    if m < 1:
        raise ValueError("m must be >= 1")
    polys = genus_polynomials(signature_series(2 * m), 2 * m)
    return SCoefficients(
        s_m=polys[m - 1].coefficient({f"p{m}": 1}),
        s_mm=polys[2 * m - 1].coefficient({f"p{m}": 2}),
        s_2m=polys[2 * m - 1].coefficient({f"p{2 * m}": 1}),
    )


def s2m_bernoulli(m: int) -> Fraction:
    """s_{2m} from the closed Bernoulli-number formula.

    s_{2m} = 2^{4m} (2^{4m-1} - 1) / (4m)! times the 2m-th Bernoulli
    number in the unsigned classical convention (B_1 = 1/6, ...).  Kept
    independent of the genus engine so the two can be checked against
    each other.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return Fraction(2 ** (4 * m) * (2 ** (4 * m - 1) - 1), factorial(4 * m)) * bernoulli(2 * m)


# -- twist class and rationally-highly-connected integrals --------------


@lru_cache(maxsize=None)
def twist_class_e1(max_degree: int) -> PontryaginPolynomial:
    """First K-theoretic twist class, 2*sum_j (cosh y_j - 1), in p-classes.

    With z_j = y_j^2 this is 2 * sum_{r>=1} ps_r(z) / (2r)! where ps_r is
    the r-th power sum; the degree-4 part is p_1.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    n = max_degree // 4
    if n == 0:
        return PontryaginPolynomial.zero()
    sums = _power_sums(n)
    out = PontryaginPolynomial.zero()
    for r in range(1, n + 1):
        out = out + sums[r - 1].scale(Fraction(2, factorial(2 * r)))
    return out


@lru_cache(maxsize=None)
def rhc_ahat_twist_coeffs(m: int, twist_power: int) -> Tuple[Fraction, Fraction]:
    """Coefficients (a, b) with integral(e1^t * Ahat) = a*P2 + b*Q.

    On an 8m-dimensional rationally highly connected model only the
    monomials p_m^2 and p_{2m} survive rationally; everything else is
    torsion and integrates to zero.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if twist_power not in (0, 1, 2):
        raise ValueError("only twists 1, e1, e1^2 are supported")
    deg = 8 * m
    integrand = genus_total(ahat_series(2 * m), 2 * m)
    for _ in range(twist_power):
        integrand = integrand.mul_truncated(twist_class_e1(deg), deg)
    top = integrand.homogeneous_part(deg)
    return (
        top.coefficient({f"p{m}": 2}),
        top.coefficient({f"p{2 * m}": 1}),
    )


def ahat_rhc_coeffs(m: int) -> Tuple[Fraction, Fraction]:
    """(a, b) with integral(Ahat) = a*P2 + b*Q on the 8m-dimensional model."""
    return rhc_ahat_twist_coeffs(m, 0)


def mayer_integrality_check(model, k: int) -> Certificate:
    """Integrality test excluding spin^k on a rationally highly connected model.

    For dimension 8m and k < 2m the normal-bundle factor is rationally
    trivial, so the only content is that 2^l * integral(Ahat) and
    2^l * integral(e1^2 * Ahat) are integers, with l = floor(k/2).
    Failure of either excludes a spin^k structure on any closed manifold
    realizing the model.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k >= 2 * model.m:
        raise ValueError(
            f"k = {k} is not below 2m = {2 * model.m}: "
            "the normal-bundle factor need not be rationally trivial"
        )
    l = k // 2
    scale = Fraction(2) ** l
    values = {}
    checks = []
    all_integral = True
    for twist_power, tag in ((0, "ahat"), (2, "e1^2*ahat")):
        a, b = rhc_ahat_twist_coeffs(model.m, twist_power)
        value = a * model.P2 + b * model.Q
        values[tag] = value
        scaled = scale * value
        integral = scaled.denominator == 1
        all_integral = all_integral and integral
        checks.append(
            Check(
                name=f"2^{l} * integral({tag})",
                lhs=scaled,
                rhs="Z",
                relation="in" if integral else "not in",
                passed=True,
            )
        )
    parameters = {
        "m": model.m,
        "k": k,
        "l": l,
        "dimension": 8 * model.m,
        "P2": model.P2,
        "Q": model.Q,
        "integral(ahat)": values["ahat"],
        "integral(e1^2*ahat)": values["e1^2*ahat"],
        "orientable": True,
    }
    if all_integral:
        return Certificate(
            claim="mayer-integrality-consistent",
            parameters=parameters,
            checks=checks,
            verdict=ESTABLISHED,
        )
    return Certificate(
        claim=f"not-{spin_label(k)}",
        parameters=parameters,
        checks=checks,
        verdict=EXCLUDED,
    )


# -- dimension-8 twisted integrand and the 4-manifold indicator ----------


@lru_cache(maxsize=None)
def spinh_integrand_coefficients() -> Tuple[Fraction, Fraction, Fraction]:
    """Coefficients of (p1^2, p2, gamma^2) in the degree-8 twisted integrand.

    The integrand is 2 * cosh(sqrt(p1 + 2*gamma)/2) * Ahat expanded
    symbolically, gamma being an independent weight-4 class.  The mixed
    gamma*p1 coefficient vanishes identically; this is asserted rather
    than assumed.
    """
    arg = PontryaginPolynomial.variable("p1") + PontryaginPolynomial.variable(
        "gamma"
    ).scale(Fraction(2))
    expansion = series_applied_to(mayer_series(2), arg, 8)
    expansion = expansion.mul_truncated(genus_total(ahat_series(2), 2), 8)
    top = expansion.homogeneous_part(8).scale(Fraction(2))
    cross = top.coefficient({"p1": 1, "gamma": 1})
    if cross != 0:
        raise AssertionError(f"gamma*p1 coefficient expected to vanish, got {cross}")
    return (
        top.coefficient({"p1": 2}),
        top.coefficient({"p2": 1}),
        top.coefficient({"gamma": 2}),
    )


def spinh_integrand_dim8(P2sqrt_x: int, y: int, c: int) -> Fraction:
    """Value of the dimension-8 spin^h integrality expression.

    Evaluates the symbolically derived expansion at integral(p1^2) = x^2,
    integral(p2) = y and integral(gamma^2) = c^2.
    """
    cxx, cy, cgg = spinh_integrand_coefficients()
    return cxx * P2sqrt_x**2 + cy * y + cgg * c**2


@lru_cache(maxsize=None)
def mayer_indicator_coefficients(sign: str) -> Tuple[Fraction, Fraction]:
    """(p1, e)-coefficients of 2 * cosh(sqrt(p1 +- 2e)/2) * Ahat in degree 4."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    s = Fraction(2) if sign == "+" else Fraction(-2)
    arg = PontryaginPolynomial.variable("p1") + PontryaginPolynomial.variable("e").scale(s)
    expansion = series_applied_to(mayer_series(1), arg, 4)
    expansion = expansion.mul_truncated(genus_total(ahat_series(1), 1), 4)
    top = expansion.homogeneous_part(4).scale(Fraction(2))
    extras = top.variables() - {"p1", "e"}
    if extras:
        raise AssertionError(f"unexpected generators {extras} in the indicator")
    return top.coefficient({"p1": 1}), top.coefficient({"e": 1})


def mayer_indicator_4d(p1: int, euler: int, sign: str) -> Fraction:
    """Degree-4 twisted integrand on a 4-manifold; equals (p1/3 +- e)/2."""
    cp, ce = mayer_indicator_coefficients(sign)
    return cp * p1 + ce * euler
