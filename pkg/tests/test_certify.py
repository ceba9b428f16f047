import json
from fractions import Fraction

import pytest

from spincert import certify, genus, mod2
from spincert.certificates import Certificate, CertificateError, Check


class TestRealizationConditions:
    def test_family_member(self):
        cert = certify.realization_conditions(1, 57600, 8235)
        assert cert.verdict == "established"
        assert cert.parameters["sigma"] == 1
        assert cert.check("condition (ii) value").lhs == Fraction(45255, 2)

    def test_quaternionic_plane(self):
        cert = certify.realization_conditions(1, 4, 7)
        assert cert.verdict == "established"
        assert cert.parameters["sigma"] == 1
        assert cert.check("condition (ii) value").lhs == Fraction(1, 2)

    def test_zero_model(self):
        cert = certify.realization_conditions(1, 0, 0)
        assert cert.verdict == "established"
        assert cert.parameters["sigma"] == 0

    def test_non_integer_sigma_is_inconclusive(self):
        cert = certify.realization_conditions(1, 1, 0)
        assert cert.verdict == "inconclusive"
        assert cert.parameters["sigma"] == Fraction(-1, 45)

    def test_non_dyadic_condition_recorded(self):
        cert = certify.realization_conditions(1, 45, 45)
        # sigma = -1 + 7 = 6 integral, but (ii) = 45*5/12 - 45/6 = 85/8? dyadic;
        # use a case violating (ii): P2 = 2, Q = 31 gives sigma = 467/45
        cert = certify.realization_conditions(1, 2, 31)
        assert cert.verdict == "inconclusive"


class TestRealizationSearch:
    @pytest.mark.parametrize("m", [1, 2])
    def test_revalidates(self, m):
        witness = certify.realization_search(m)
        cert = certify.realization_conditions(m, witness.P2, witness.Q)
        assert cert.verdict == "established"
        assert cert.parameters["sigma"] == witness.sigma
        assert witness.sigma % 2 == 1 and witness.sigma > 4
        assert sum(a * a for a in witness.four_square) == witness.P2

    def test_m1_satisfies_family_equation(self):
        witness = certify.realization_search(1)
        assert 7 * witness.Q - witness.P2 == 45 * witness.sigma

    def test_sigma_min(self):
        witness = certify.realization_search(1, sigma_min=101)
        assert witness.sigma >= 101
        assert witness.sigma % 2 == 1

    def test_not_power_of_two(self):
        with pytest.raises(ValueError):
            certify.realization_search(3)
        with pytest.raises(ValueError):
            certify.realization_search(0)

    def test_deterministic(self):
        assert certify.realization_search(1) == certify.realization_search(1)


class TestPoincareWitness:
    def test_example(self):
        witness = certify.poincare_witness(5, 45, 9)
        assert witness.four_square == (6, 2, 2, 1)
        assert "alpha_1..alpha_5" in witness.algebra_note

    def test_zero(self):
        assert certify.poincare_witness(5, 0, 0).four_square == (0, 0, 0, 0)

    def test_sigma_too_small(self):
        with pytest.raises(ValueError):
            certify.poincare_witness(3, 45, 9)

    def test_negative_p2(self):
        with pytest.raises(ValueError):
            certify.poincare_witness(5, -4, 9)


class TestSignatureBound:
    def test_dimension_32_spin7(self):
        cert = certify.signature_bound_verdict(4, 7, 1)
        assert cert.verdict == "excluded"
        assert cert.claim == "not-spin^7"
        check = cert.checks[0]
        assert (check.lhs, check.rhs) == (1, 4)

    def test_vacuous_bound(self):
        cert = certify.signature_bound_verdict(1, 1, 1)
        assert cert.verdict == "inconclusive"
        assert cert.checks[0].rhs == -1

    def test_dimension_64(self):
        cert = certify.signature_bound_verdict(8, 3, 1)
        assert cert.verdict == "excluded"
        assert cert.checks[0].rhs == 20

    def test_preconditions(self):
        with pytest.raises(ValueError):
            certify.signature_bound_verdict(1, 2, 1)
        with pytest.raises(ValueError):
            certify.signature_bound_verdict(4, 7, 0)

    def test_monotone_in_l(self):
        # excluding at l excludes at every smaller l with the same (m, sigma)
        for m in (2, 4, 8):
            for sigma in (1, 3, 6):
                excluded_at = [
                    k
                    for k in range(1, 2 * m)
                    if certify.signature_bound_verdict(m, k, sigma).verdict
                    == "excluded"
                ]
                if excluded_at:
                    top = max(excluded_at)
                    assert excluded_at == list(range(1, top + 1))


class TestBoundExclusionDimension:
    def test_known_values(self):
        assert certify.bound_exclusion_dimension(7) == 32
        assert certify.bound_exclusion_dimension(3) == 32
        assert certify.bound_exclusion_dimension(1) == 32

    def test_consistency_with_verdict(self):
        for k in (1, 2, 3, 7, 9, 15):
            dimension = certify.bound_exclusion_dimension(k)
            m = dimension // 8
            assert certify.signature_bound_verdict(m, k, 1).verdict == "excluded"
            # no smaller power of two works
            smaller = m // 2
            while smaller >= 1:
                if k < 2 * smaller:
                    assert (
                        certify.signature_bound_verdict(smaller, k, 1).verdict
                        == "inconclusive"
                    )
                smaller //= 2


class TestNonSpinh8Family:
    def test_a0(self):
        cert = certify.nonspinh8_certificate(0)
        assert cert.verdict == "excluded"
        assert cert.claim == "not-spin^h"
        assert (cert.parameters["x"], cert.parameters["y"]) == (240, 8235)
        assert cert.check("(y - 6) mod 48").lhs == 21

    def test_a1(self):
        cert = certify.nonspinh8_certificate(1)
        assert (cert.parameters["x"], cert.parameters["y"]) == (72, 747)
        assert 7 * 747 - 72 * 72 == 45

    def test_family_range(self):
        seen = set()
        for a in range(-50, 51):
            cert = certify.nonspinh8_certificate(a)
            x, y = cert.parameters["x"], cert.parameters["y"]
            assert 7 * y - x * x == 45
            assert (y - 6) % 48 == 21
            assert cert.verdict == "excluded"
            seen.add((x * x, y))
        assert len(seen) == 101  # distinct Pontryagin numbers for distinct a


class TestW4Lift:
    def test_spin_case(self):
        assert certify.w4_lift(-48, 0) == -24

    def test_spinc_case(self):
        lift = certify.w4_lift(3, 9)
        assert lift == -3
        assert lift % 2 == 1

    def test_zero(self):
        assert certify.w4_lift(0, 0) == 0

    def test_spin4_variants(self):
        assert certify.w4_lift(3, 3, "spin4_plus", euler_E=2) == -2
        assert certify.w4_lift(3, 3, "spin4_minus", euler_E=2) == 2

    def test_odd_difference_rejected(self):
        with pytest.raises(certify.InconsistentLiftError, match="inconsistent input"):
            certify.w4_lift(3, 0)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            certify.w4_lift(0, 0, "dual")

    def test_parity_matches_euler_on_shipped_data(self):
        # on a closed oriented 4-manifold w4 reduces to the Euler number mod 2
        for datum in certify.FOUR_MANIFOLD_DATA:
            lift = certify.w4_lift(datum.p1, datum.p1_E)
            assert lift % 2 == datum.euler % 2
            assert datum.p1 == 3 * datum.sigma


class TestGuaranteedStructures:
    def test_table_row_labels(self):
        rows = [certify.guaranteed_structures(n) for n in range(2, 8)]
        assert [r.pin_structure for r in rows] == [
            "pin^-",
            "pin^-",
            "pin^{3+}",
            "pin^{3+}",
            "pin^{5-}",
            "pin^{5-}",
        ]
        assert [r.orientable_label for r in rows] == [
            "spin",
            "spin",
            "spin^c",
            "spin^h",
            "spin^h",
            "spin^h",
        ]

    def test_cohen_codimension(self):
        assert certify.guaranteed_structures(5).cohen_k == 3
        assert certify.guaranteed_structures(8).cohen_k == 7

    def test_higher_dimensions(self):
        row8 = certify.guaranteed_structures(8)
        assert row8.orientable_label == "spin^7"
        assert row8.pin_structure == "pin^{7+}"
        row12 = certify.guaranteed_structures(12)  # k = 10 = 2 mod 4
        assert row12.pin_structure == "pin^{11+}"
        row16 = certify.guaranteed_structures(16)  # k = 15 = 3 mod 4
        assert row16.pin_structure == "pin^{15+}"
        row17 = certify.guaranteed_structures(17)  # k = 15
        assert row17.pin_structure == "pin^{15+}"
        row20 = certify.guaranteed_structures(20)  # k = 18 = 2 mod 4
        assert row20.pin_structure == "pin^{19+}"
        row21 = certify.guaranteed_structures(21)  # k = 18
        assert row21.pin_structure == "pin^{19+}"
        row24 = certify.guaranteed_structures(24)  # k = 22 = 2 mod 4
        assert row24.pin_structure == "pin^{23+}"
        row9 = certify.guaranteed_structures(9)  # k = 7 = 3 mod 4
        assert row9.pin_structure == "pin^{7+}"
        row11 = certify.guaranteed_structures(11)  # k = 8 = 0 mod 4
        assert row11.pin_structure == "pin^{9-}"
        row13 = certify.guaranteed_structures(13)  # k = 10 = 2 mod 4
        assert row13.pin_structure == "pin^{11+}"

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            certify.guaranteed_structures(1)


class TestCombinators:
    def test_product_adds_exponents(self):
        a = certify.structure_certificate(3, 5, "immersion")
        b = certify.structure_certificate(2, 4, "complex structure")
        product = certify.product_combinator(a, b)
        assert product.claim == "spin^5"
        assert product.parameters["dimension"] == 9

    def test_spin_factor_absorbed(self):
        spin = certify.structure_certificate(1, 3, "parallelizable")
        other = certify.structure_certificate(4, 7, "g2")
        assert certify.product_combinator(spin, other).claim == "spin^4"
        assert certify.product_combinator(other, spin).claim == "spin^4"

    def test_exponent_associativity(self):
        a = certify.structure_certificate(2, 4, "a")
        b = certify.structure_certificate(3, 5, "b")
        c = certify.structure_certificate(4, 6, "c")
        left = certify.product_combinator(certify.product_combinator(a, b), c)
        right = certify.product_combinator(a, certify.product_combinator(b, c))
        assert left.claim == right.claim == "spin^9"
        assert left.parameters["dimension"] == right.parameters["dimension"] == 15

    def test_connected_sum(self):
        a = certify.structure_certificate(3, 8, "family member")
        b = certify.structure_certificate(3, 8, "family member")
        summed = certify.connected_sum_combinator(a, b)
        assert summed.claim == "spin^h"
        assert summed.parameters["dimension"] == 8

    def test_connected_sum_dimension_mismatch(self):
        a = certify.structure_certificate(3, 8, "x")
        b = certify.structure_certificate(3, 10, "y")
        with pytest.raises(CertificateError):
            certify.connected_sum_combinator(a, b)

    def test_factor_reduction(self):
        product = certify.structure_certificate(4, 12, "product data")
        spin = certify.structure_certificate(1, 4, "spin factor")
        factor = certify.product_factor_combinator(product, spin)
        assert factor.claim == "spin^4"
        assert factor.parameters["dimension"] == 8

    def test_rejects_non_established_inputs(self):
        excluded = certify.nonspinh8_certificate(0)
        good = certify.structure_certificate(3, 8, "x")
        with pytest.raises(CertificateError):
            certify.product_combinator(excluded, good)
        with pytest.raises(CertificateError):
            certify.connected_sum_combinator(good, excluded)
        mayer = genus.mayer_integrality_check(
            certify.RHCModel(1, 1, 1, 4, 7), 1
        )  # established but not a spin^k claim
        with pytest.raises(CertificateError):
            certify.product_combinator(mayer, good)


class TestKleinObstruction:
    def test_from_dimension8_family(self):
        base = certify.nonspinh8_certificate(0)
        cert = certify.klein_product_pin_obstruction(base)
        assert cert.verdict == "excluded"
        assert cert.claim == "not-pin^{3+}-and-not-pin^{3-}"
        assert cert.parameters["dimension"] == 10
        assert cert.witnesses["factor_certificate"]["claim"] == "not-spin^h"

    def test_from_wu_square(self):
        base = mod2.w5_verdict(mod2.kunneth(mod2.wu_manifold(), mod2.wu_manifold()))
        cert = certify.klein_product_pin_obstruction(base)
        assert cert.parameters["dimension"] == 12
        assert cert.claim == "not-pin^{3+}-and-not-pin^{3-}"

    def test_from_signature_bound(self):
        base = certify.signature_bound_verdict(4, 7, 1)
        cert = certify.klein_product_pin_obstruction(base)
        assert cert.claim == "not-pin^{7+}-and-not-pin^{7-}"
        assert cert.parameters["dimension"] == 34

    def test_rejects_inconclusive(self):
        base = certify.signature_bound_verdict(1, 1, 1)
        with pytest.raises(CertificateError):
            certify.klein_product_pin_obstruction(base)


class TestRHCModel:
    def test_betti_bound(self):
        with pytest.raises(ValueError):
            certify.RHCModel(1, 0, 1, 4, 7)

    def test_dimension(self):
        assert certify.RHCModel(2, 1, 1, 0, 0).dimension == 16

    def test_notation_bridge_on_dim8_family(self):
        # theorem notation: x = P2, y = Q; the dimension-8 section's x has P2 = x^2
        cert = certify.nonspinh8_certificate(2)
        x = cert.parameters["x"]
        assert cert.parameters["P2"] == x * x
        assert cert.parameters["Q"] == cert.parameters["y"]


class TestCertificateType:
    def test_verdict_requires_passing_checks(self):
        with pytest.raises(CertificateError):
            Certificate(
                claim="x",
                parameters={},
                checks=[Check("failing", 1, 2, "=", False)],
                verdict="established",
            )

    def test_inconclusive_may_fail(self):
        cert = Certificate(
            claim="x",
            parameters={},
            checks=[Check("failing", 1, 2, "=", False)],
            verdict="inconclusive",
        )
        assert not cert.checks[0].passed

    def test_json_round_trip(self):
        cert = certify.nonspinh8_certificate(0)
        doc = json.loads(cert.to_json())
        assert doc["claim"] == "not-spin^h"
        assert doc["verdict"] == "excluded"
        assert doc["parameters"]["P2"] == 57600
        assert doc["checks"][0]["lhs"] == 45

    def test_rationals_serialize_as_strings(self):
        cert = genus.mayer_integrality_check(
            certify.RHCModel(1, 1, 1, 57600, 8235), 1
        )
        doc = json.loads(cert.to_json())
        assert doc["parameters"]["integral(ahat)"] == "2057/32"

    def test_floats_rejected(self):
        from spincert.certificates import exact_to_json

        with pytest.raises(CertificateError):
            exact_to_json(0.5)
