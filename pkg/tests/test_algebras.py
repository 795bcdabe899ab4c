import random
from fractions import Fraction

import pytest

from liefactor import (
    AffinePlugin,
    ConfigError,
    GrassmannScalar,
    NSPlugin,
    VirasoroPlugin,
    sl2_plugin,
    validate_plugin,
)


@pytest.fixture
def vir():
    return VirasoroPlugin()


@pytest.fixture
def sl2():
    return sl2_plugin()


@pytest.fixture
def ns():
    return NSPlugin()


class TestVirasoroBracket:
    def test_central_term(self, vir):
        out = vir.bracket_basis(vir.L(2), vir.L(-2))
        assert out == {vir.L(0): Fraction(4), vir.c: Fraction(1, 2)}

    def test_central_element_commutes(self, vir):
        assert vir.bracket_basis(vir.L(3), vir.c) == {}
        assert vir.bracket_basis(vir.c, vir.L(3)) == {}

    def test_no_central_term_at_one(self, vir):
        assert vir.bracket_basis(vir.L(1), vir.L(-1)) == {vir.L(0): Fraction(2)}

    def test_degrees_are_doubled(self, vir):
        assert vir.L(-3).degree == -6
        assert vir.c.degree == 0 and vir.c.central


class TestAffineBracket:
    def test_trace_form_central_term(self, sl2):
        e, f, k = sl2.G(0, 1), sl2.G(2, -1), sl2.k
        out = sl2.bracket_basis(e, f)
        assert out == {sl2.G(1, 0): Fraction(1), k: Fraction(1)}

    def test_cartan_pairing(self, sl2):
        out = sl2.bracket_basis(sl2.G(1, 2), sl2.G(1, -2))
        assert out == {sl2.k: Fraction(4)}

    def test_central_element(self, sl2):
        assert sl2.bracket_basis(sl2.G(0, 3), sl2.k) == {}

    def test_basis_names(self, sl2):
        assert sl2.basis_name(sl2.G(0, 2)) == "e@2"
        assert sl2.basis_name(sl2.k) == "k"
        assert sl2.basis_from_name("h@-1") == sl2.G(1, -1)

    def test_construction_rejects_asymmetric_form(self):
        with pytest.raises(ConfigError):
            AffinePlugin(["x", "y"], {}, [[0, 1], [2, 0]])

    def test_construction_rejects_non_antisymmetric_constants(self):
        with pytest.raises(ConfigError):
            AffinePlugin(
                ["x", "y"],
                {(0, 1): {0: Fraction(1)}, (1, 0): {0: Fraction(1)}},
                [[0, 0], [0, 0]],
            )

    def test_construction_rejects_jacobi_violation(self):
        # sl2 with [h, e] = 3e breaks the (e, h, f) Jacobi sum
        brackets = {
            (0, 2): {1: Fraction(1)},
            (1, 0): {0: Fraction(3)},
            (1, 2): {2: Fraction(-2)},
        }
        with pytest.raises(ConfigError):
            AffinePlugin(["e", "h", "f"], brackets, [[0, 0, 1], [0, 2, 0], [1, 0, 0]])


class TestNSBracket:
    def test_odd_odd_no_central_at_half(self, ns):
        out = ns.bracket_basis(ns.G(1), ns.G(-1))
        assert out == {ns.L(0): Fraction(2)}

    def test_odd_even(self, ns):
        out = ns.bracket_basis(ns.G(3), ns.L(-1))
        assert out == {ns.G(1): Fraction(2)}

    def test_odd_odd_with_central(self, ns):
        out = ns.bracket_basis(ns.G(3), ns.G(-3))
        assert out == {ns.L(0): Fraction(2), ns.c: Fraction(2, 3)}

    def test_even_sector_matches_virasoro(self, ns, vir):
        for m in range(-4, 5):
            for n in range(-4, 5):
                got = ns.bracket_basis(ns.L(m), ns.L(n))
                want = vir.bracket_basis(vir.L(m), vir.L(n))
                translated = {}
                for b, v in want.items():
                    translated[ns.c if b.central else ns.L(b.n)] = v
                assert got == translated, (m, n)

    def test_parity_and_degree(self, ns):
        assert ns.G(1).parity == 1 and ns.G(1).degree == 1
        assert ns.L(2).parity == 0 and ns.L(2).degree == 4
        with pytest.raises(ConfigError):
            ns.G(2)

    def test_default_generators(self, ns):
        basis, coeff = ns.default_generator(3)
        assert basis == ns.G(3) and coeff == GrassmannScalar.generator(3)
        basis, coeff = ns.default_generator(4)
        assert basis == ns.L(2) and coeff == 1


class TestValidatePlugin:
    def test_virasoro_window_passes(self, vir):
        report = validate_plugin(vir, max_abs_degree=12)
        assert report.ok, report.failures

    def test_sl2_window_passes(self, sl2):
        report = validate_plugin(sl2, max_abs_degree=8)
        assert report.ok, report.failures

    def test_ns_window_passes(self, ns):
        report = validate_plugin(ns, max_abs_degree=8)
        assert report.ok, report.failures

    def test_corrupted_constant_is_detected(self):
        # doubling [e, f] keeps the finite-dimensional Jacobi identity but
        # breaks invariance of the form, hence the affine Jacobi identity
        brackets = {
            (0, 2): {1: Fraction(2)},
            (1, 0): {0: Fraction(2)},
            (1, 2): {2: Fraction(-2)},
        }
        plugin = AffinePlugin(
            ["e", "h", "f"], brackets, [[0, 0, 1], [0, 2, 0], [1, 0, 0]], name="corrupt"
        )
        report = validate_plugin(plugin, max_abs_degree=4)
        assert not report.ok
        laws = {f["law"] for f in report.failures}
        assert laws & {"graded-jacobi", "form-invariance"}
        witness_failure = next(f for f in report.failures if f["law"] == "form-invariance")
        assert set(witness_failure["witness"]) == {"e", "f", "h"}

    def test_degree_additivity_random_pairs(self, sl2):
        rng = random.Random(11)
        basis = sl2.basis_in_window(8)
        for _ in range(50):
            x, y = rng.choice(basis), rng.choice(basis)
            for z in sl2.bracket_basis(x, y):
                assert z.degree == x.degree + y.degree

    def test_report_serialization(self, vir):
        obj = validate_plugin(vir, max_abs_degree=4).to_obj()
        assert obj["ok"] is True and obj["plugin"] == "virasoro"
