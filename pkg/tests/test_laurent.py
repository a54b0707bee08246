"""Exact-arithmetic checks for the bivariate Laurent kernel."""

import numpy as np
import pytest

from hullforge import (
    LaurentPoly2,
    LaurentSyntaxError,
    PoleError,
    det2,
    default_symbol,
    default_unit,
    format_canonical,
    parse,
)

z = LaurentPoly2.z()
w = LaurentPoly2.w()
one = LaurentPoly2.constant(1.0)


def random_torus_points(n, seed=0):
    rng = np.random.default_rng(seed)
    return np.exp(1j * rng.uniform(0, 2 * np.pi, n)), np.exp(
        1j * rng.uniform(0, 2 * np.pi, n)
    )


def random_bidisc_points(n, seed=1):
    # radii bounded away from 0 so negative exponents stay finite
    rng = np.random.default_rng(seed)
    rz = rng.uniform(0.2, 1.0, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    rw = rng.uniform(0.2, 1.0, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    return rz, rw


class TestConstruction:
    def test_zero_and_constant(self):
        assert LaurentPoly2.zero().is_zero
        assert not LaurentPoly2.constant(2.0).is_zero
        assert LaurentPoly2.constant(0.0).is_zero
        assert dict(LaurentPoly2.constant(3 - 1j).terms) == {(0, 0): 3 - 1j}

    def test_monomial_and_generators(self):
        assert dict(z.terms) == {(1, 0): 1.0}
        assert dict(w.terms) == {(0, 1): 1.0}
        m = LaurentPoly2.monomial(2 + 0j, -3, 5)
        assert dict(m.terms) == {(-3, 5): 2 + 0j}
        assert m.is_monomial

    def test_zero_coefficient_dropped(self):
        p = z + (-1.0) * z
        assert p.is_zero
        assert len(p) == 0
        assert not p

    def test_float_dust_below_modulus_floor_dropped(self):
        # coefficients with modulus under 1e-12 are absorbed as float dust
        assert LaurentPoly2.constant(1e-13).is_zero
        a = LaurentPoly2.constant(1.0) + LaurentPoly2.constant(1e-13)
        assert dict(a.terms) == {(0, 0): 1.0}
        assert not LaurentPoly2.constant(1e-11).is_zero
        b = (one + z) - (one + z)
        assert b.is_zero

    def test_exponent_guard(self):
        with pytest.raises(OverflowError):
            LaurentPoly2.monomial(1.0, 10**7, 0)


class TestArithmetic:
    def test_ring_axioms_on_random_points(self):
        # distributivity / associativity / commutativity sampled on the bidisc
        rng = np.random.default_rng(7)
        zs, ws = random_bidisc_points(100)
        polys = []
        for _ in range(3):
            terms = LaurentPoly2.zero()
            for _ in range(4):
                c = rng.standard_normal() + 1j * rng.standard_normal()
                j, k = rng.integers(-2, 3, 2)
                terms = terms + LaurentPoly2.monomial(c, int(j), int(k))
            polys.append(terms)
        P, Q, R = polys
        lhs = (P * (Q + R))(zs, ws)
        rhs = (P * Q)(zs, ws) + (P * R)(zs, ws)
        scale = np.maximum(np.abs(lhs), 1.0)
        assert np.max(np.abs(lhs - rhs) / scale) <= 1e-12
        lhs = ((P * Q) * R)(zs, ws)
        rhs = (P * (Q * R))(zs, ws)
        scale = np.maximum(np.abs(lhs), 1.0)
        assert np.max(np.abs(lhs - rhs) / scale) <= 1e-12
        assert (P * Q - Q * P).is_zero
        assert (P + Q - (Q + P)).is_zero

    def test_pow_matches_repeated_product(self):
        p = one + z * w
        assert (p**3 - p * p * p).is_zero
        assert (p**0 - one).is_zero

    def test_negative_power_monomial_only(self):
        m = LaurentPoly2.monomial(2.0, 1, -1)
        inv = m**-1
        assert dict(inv.terms) == {(-1, 1): 0.5}
        with pytest.raises(ValueError):
            (one + z) ** -1

    def test_scalar_coercion(self):
        p = 2 * z + 1
        assert dict(p.terms) == {(0, 0): 1.0, (1, 0): 2.0}
        q = 1 - z
        assert dict(q.terms) == {(0, 0): 1.0, (1, 0): -1.0}


class TestCalculus:
    def test_derivative_of_symbol(self):
        p = default_symbol()
        dz = p.derive("z")
        # -8z - 2zw^2
        assert dict(dz.terms) == {(1, 0): -8.0, (1, 2): -2.0}

    def test_derivative_of_reflection(self):
        h = default_symbol().reflect()
        dw = h.derive("w")
        # -8/w^3 + 2/(z^2 w^3)
        assert dict(dw.terms) == {(0, -3): -8.0, (-2, -3): 2.0}

    def test_leibniz_rule_exact(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            P = LaurentPoly2.zero()
            Q = LaurentPoly2.zero()
            for _ in range(4):
                c = complex(rng.standard_normal(), rng.standard_normal())
                j, k = (int(v) for v in rng.integers(-3, 4, 2))
                P = P + LaurentPoly2.monomial(c, j, k)
                c = complex(rng.standard_normal(), rng.standard_normal())
                j, k = (int(v) for v in rng.integers(-3, 4, 2))
                Q = Q + LaurentPoly2.monomial(c, j, k)
            for var in ("z", "w"):
                lhs = (P * Q).derive(var)
                rhs = P.derive(var) * Q + P * Q.derive(var)
                assert (lhs - rhs).is_zero

    def test_derivative_kills_constants(self):
        assert one.derive("z").is_zero
        assert one.derive("w").is_zero


class TestReflection:
    def test_reflect_symbol_terms(self):
        h = default_symbol().reflect()
        assert dict(h.terms) == {
            (0, 0): 1.0,
            (-2, 0): -4.0,
            (0, -2): 4.0,
            (-2, -2): -1.0,
        }

    def test_reflect_is_involution(self):
        p = default_symbol()
        assert (p.reflect().reflect() - p).is_zero
        q = LaurentPoly2.monomial(2 - 3j, 1, -2) + LaurentPoly2.monomial(1j, 0, 4)
        assert (q.reflect().reflect() - q).is_zero

    def test_reflection_equals_conjugate_on_torus(self):
        p = default_symbol()
        h = p.reflect()
        zs, ws = random_torus_points(1000, seed=3)
        dev = np.abs(h(zs, ws) - np.conj(p(zs, ws)))
        assert float(dev.max()) <= 1e-12

    def test_reflection_conjugate_identity_generic(self):
        q = LaurentPoly2.monomial(1 - 2j, 3, -1) + LaurentPoly2.monomial(0.5j, -2, 2)
        zs, ws = random_torus_points(200, seed=4)
        dev = np.abs(q.reflect()(zs, ws) - np.conj(q(zs, ws)))
        assert float(dev.max()) <= 1e-12


class TestDeterminant:
    def test_det2_of_symbol_factors_exactly(self):
        p = default_symbol()
        h = p.reflect()
        delta = det2(p, h)
        factored = (
            default_unit()
            * (z - 1j * w)
            * (z + 1j * w)
            * p
        )
        assert (delta - factored).is_zero

    def test_det2_antisymmetry_and_identity(self):
        p = default_symbol()
        assert det2(p, p).is_zero
        assert dict(det2(z, w).terms) == {(0, 0): 1.0}

    def test_det2_simple_reflection_pair(self):
        p = z + w
        h = p.reflect()
        delta = det2(p, h)
        # d_z p * d_w h - d_w p * d_z h = z^-2 - w^-2
        assert dict(delta.terms) == {(-2, 0): 1.0, (0, -2): -1.0}


class TestEvaluation:
    def test_broadcasting_and_scalars(self):
        p = default_symbol()
        val = p(0.5, 0.5j)
        assert isinstance(val, complex)
        assert abs(val - (1 - 1 - 1 + 0.0625)) <= 1e-15
        grid = p(np.array([0.5, 1.0]), np.array([0.5j, 1.0]))
        assert grid.shape == (2,)

    def test_reflection_value_at_interior_point(self):
        h = default_symbol().reflect()
        assert abs(h(0.5, 0.5j) - (-15.0)) <= 1e-12

    def test_pole_raises(self):
        h = default_symbol().reflect()
        with pytest.raises(PoleError):
            h(0.0, 1.0)
        with pytest.raises(PoleError):
            h(np.array([0.5, 0.0]), np.array([1.0, 1.0]))

    def test_nonnegative_exponents_allow_zero(self):
        p = default_symbol()
        assert abs(p(0.0, 0.0) - 1.0) <= 1e-15


class TestParsing:
    def test_default_symbol_roundtrip(self):
        p = parse("1 - 4*z^2 + 4*w^2 - z^2*w^2")
        assert (p - default_symbol()).is_zero

    def test_canonical_form_roundtrip(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            P = LaurentPoly2.zero()
            for _ in range(5):
                c = complex(rng.standard_normal(), rng.standard_normal())
                j, k = (int(v) for v in rng.integers(-4, 5, 2))
                P = P + LaurentPoly2.monomial(c, j, k)
            assert (parse(format_canonical(P)) - P).is_zero

    def test_zero_formats_as_zero(self):
        assert format_canonical(LaurentPoly2.zero()) == "0"
        assert (parse("0") - LaurentPoly2.zero()).is_zero

    def test_imaginary_literals(self):
        p = parse("i")
        assert dict(p.terms) == {(0, 0): 1j}
        q = parse("2i*z - (1+0.5i)")
        assert dict(q.terms) == {(1, 0): 2j, (0, 0): -(1 + 0.5j)}

    def test_negative_exponents(self):
        p = parse("-16*z^-3*w^-3")
        assert dict(p.terms) == {(-3, -3): -16.0}

    def test_parenthesized_powers_and_products(self):
        p = parse("(z + w)^2")
        assert dict(p.terms) == {(2, 0): 1.0, (1, 1): 2.0, (0, 2): 1.0}
        q = parse("(1 - z)*(1 + z)")
        assert dict(q.terms) == {(0, 0): 1.0, (2, 0): -1.0}

    def test_syntax_error_carries_position(self):
        with pytest.raises(LaurentSyntaxError) as info:
            parse("1 + * z")
        assert info.value.position == 4
        with pytest.raises(LaurentSyntaxError):
            parse("z^w")
        with pytest.raises(LaurentSyntaxError):
            parse("(z + w")
        with pytest.raises(LaurentSyntaxError):
            parse("2 ** z")

    def test_whitespace_insensitive(self):
        a = parse("1-4*z^2+4*w^2-z^2*w^2")
        b = parse("  1 - 4 * z ^ 2 + 4 * w ^ 2 - z ^ 2 * w ^ 2  ")
        assert (a - b).is_zero


class TestStructure:
    def test_collect_w_groups_by_w_exponent(self):
        p = default_symbol()
        groups = p.collect_w()
        assert set(groups) == {0, 2}
        assert groups[0] == {0: 1.0, 2: -4.0}
        assert groups[2] == {0: 4.0, 2: -1.0}

    def test_exponent_range(self):
        h = default_symbol().reflect()
        assert h.exponent_range() == ((-2, 0), (-2, 0))
        assert h.has_negative_exponents()
        assert not default_symbol().has_negative_exponents()

    def test_hash_consistent_with_eq(self):
        a = parse("1 + z*w")
        b = parse("z*w + 1")
        assert a == b
        assert hash(a) == hash(b)
        assert a != parse("1 - z*w")

    def test_iteration_sorted(self):
        p = parse("w + z + z^2*w^-1")
        keys = [jk for jk, _ in p]
        assert keys == sorted(keys)
