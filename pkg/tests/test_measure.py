import math

import numpy as np
import pytest

from qspectra import I, J, K, ONE, Quaternion, SliceFrame, STANDARD_FRAME
from qspectra import generate as gen
from qspectra.errors import ShapeError, SliceMembershipError
from qspectra.measure import (
    AtomicMeasureSpace,
    L2Element,
    Symbol,
    ess_ran,
    ess_sup,
    l2_inner,
    l2_slice_split,
    m_phi,
    m_phi_norm,
    pushforward,
)
from qspectra.transform import xi

from conftest import assert_qclose


def two_atom_space(w=(1.0, 2.0)):
    return AtomicMeasureSpace.from_labels([Quaternion(0), Quaternion(1)], list(w))


class TestSpaces:
    def test_rejects_negative_weight(self):
        with pytest.raises(ShapeError):
            AtomicMeasureSpace.from_labels([Quaternion(0)], [-1.0])

    def test_rejects_all_zero_weights(self):
        with pytest.raises(ShapeError):
            AtomicMeasureSpace.from_labels([Quaternion(0)], [0.0])

    def test_counting_space(self):
        sp = AtomicMeasureSpace.counting(3)
        assert sp.n_atoms == 3
        assert sp.total_mass() == 3.0
        assert sp.label(0) == Quaternion(1)


class TestL2Inner:
    def test_weighted_example(self):
        sp = two_atom_space()
        f = L2Element(sp, np.stack([ONE.to_array(), ONE.to_array()]))
        g = L2Element(sp, np.stack([I.to_array(), J.to_array()]))
        assert_qclose(l2_inner(f, g), I + 2 * J, 0.0)

    def test_self_inner_real_nonnegative(self, rng):
        sp = two_atom_space()
        for _ in range(10):
            f = L2Element(sp, gen.random_qvector(rng, 2))
            val = l2_inner(f, f)
            assert val.re >= 0.0 and abs(val.im()) <= 1e-13

    def test_zero_weight_atoms_contribute_nothing(self):
        sp = AtomicMeasureSpace.from_labels([Quaternion(0), Quaternion(1)], [1.0, 0.0])
        f = L2Element(sp, np.stack([ONE.to_array(), ONE.to_array()]))
        g1 = L2Element(sp, np.stack([I.to_array(), J.to_array()]))
        g2 = L2Element(sp, np.stack([I.to_array(), (5 * K).to_array()]))
        assert_qclose(l2_inner(f, g1), l2_inner(f, g2), 0.0)

    def test_space_mismatch(self):
        f = L2Element(two_atom_space(), np.zeros((2, 4)) + [1, 0, 0, 0])
        g = L2Element(two_atom_space((3.0, 1.0)), np.zeros((2, 4)) + [1, 0, 0, 0])
        with pytest.raises(ShapeError):
            l2_inner(f, g)


class TestMultiplicationOperator:
    def test_pointwise_products(self):
        sp = two_atom_space((1.0, 1.0))
        phi = Symbol.from_values(sp, [I, 2 * I], STANDARD_FRAME)
        g = L2Element(sp, np.stack([J.to_array(), J.to_array()]))
        out = m_phi(phi, g)
        assert_qclose(Quaternion.from_array(out.values[0]), K, 0.0)
        assert_qclose(Quaternion.from_array(out.values[1]), 2 * K, 0.0)

    def test_right_linear(self, rng):
        sp = two_atom_space()
        phi = Symbol.from_values(sp, [I, Quaternion(0.5, -2)], STANDARD_FRAME)
        g = L2Element(sp, gen.random_qvector(rng, 2))
        q = gen.random_quaternion(rng)
        lhs = m_phi(phi, g.scale_right(q))
        rhs = m_phi(phi, g).scale_right(q)
        np.testing.assert_allclose(lhs.values, rhs.values, atol=1e-13)

    def test_constant_one_is_identity(self, rng):
        sp = two_atom_space()
        phi = Symbol.from_values(sp, [ONE, ONE], STANDARD_FRAME)
        g = L2Element(sp, gen.random_qvector(rng, 2))
        np.testing.assert_allclose(m_phi(phi, g).values, g.values, atol=0)

    def test_symbol_must_stay_in_slice(self):
        sp = two_atom_space()
        with pytest.raises(SliceMembershipError):
            Symbol.from_values(sp, [J, I], STANDARD_FRAME)


class TestEssentialQuantities:
    def test_zero_weight_atom_excluded(self):
        sp = AtomicMeasureSpace.from_labels(
            [Quaternion(0), Quaternion(1), Quaternion(2)], [1.0, 1.0, 0.0]
        )
        phi = Symbol.from_values(sp, [I, 2 * I, 5 * I], STANDARD_FRAME)
        assert ess_sup(phi) == 2.0
        ran = ess_ran(phi)
        assert len(ran) == 2
        assert_qclose(ran[0], I, 0.0)
        assert_qclose(ran[1], 2 * I, 0.0)

    def test_constant_symbol(self):
        sp = two_atom_space()
        c = Quaternion(0.5) + STANDARD_FRAME.m * 1.5
        phi = Symbol.from_values(sp, [c, c], STANDARD_FRAME)
        assert ess_sup(phi) == pytest.approx(abs(c), rel=1e-15)
        assert len(ess_ran(phi)) == 1

    def test_segment_grid_with_tilted_direction(self):
        direction = (I - J - K) / math.sqrt(3.0)
        frame = SliceFrame.from_m(direction)
        n = 64
        grid = [t / (n - 1) for t in range(n)]
        sp = AtomicMeasureSpace.from_labels([Quaternion(t) for t in grid], [1.0 / n] * n)
        phi = Symbol.from_values(
            sp, [direction * (math.sqrt(3.0) * t) for t in grid], frame
        )
        assert ess_sup(phi) == pytest.approx(math.sqrt(3.0), rel=1e-14)


class TestOperatorNormIdentity:
    def test_two_point_symbol(self):
        sp = two_atom_space((1.0, 1.0))
        phi = Symbol.from_values(sp, [I, 2 * I], STANDARD_FRAME)
        assert m_phi_norm(phi) == pytest.approx(2.0, rel=1e-15)

    def test_real_scaling(self):
        sp = two_atom_space()
        phi = Symbol.from_values(sp, [I, Quaternion(0.5, 0.5)], STANDARD_FRAME)
        base = m_phi_norm(phi)
        phi3 = Symbol(sp, 3.0 * phi.values, STANDARD_FRAME)
        assert m_phi_norm(phi3) == pytest.approx(3.0 * base, rel=1e-13)

    def test_agrees_with_ess_sup(self, rng):
        for _ in range(10):
            f = gen.random_frame(rng)
            n = int(rng.integers(2, 10))
            sp = AtomicMeasureSpace(gen.random_qvector(rng, n), np.abs(rng.normal(size=n)) + 0.05)
            values = [Quaternion(rng.uniform(-2, 2)) + f.m * rng.uniform(-2, 2) for _ in range(n)]
            phi = Symbol.from_values(sp, values, f)
            assert abs(m_phi_norm(phi) - ess_sup(phi)) <= 1e-12

    def test_normality_of_multiplier(self, rng):
        sp = two_atom_space()
        values = [Quaternion(0.3, 1.2), Quaternion(-1, 2)]
        phi = Symbol.from_values(sp, values, STANDARD_FRAME)
        phistar = Symbol.from_values(sp, [v.conjugate() for v in values], STANDARD_FRAME)
        g = L2Element(sp, gen.random_qvector(rng, 2))
        lhs = m_phi(phistar, m_phi(phi, g))
        rhs = m_phi(phi, m_phi(phistar, g))
        assert (lhs - rhs).norm() <= 1e-13


class TestSliceSplit:
    def test_constant_function(self):
        sp = two_atom_space()
        f = L2Element(sp, np.tile(Quaternion(1, 2, 3, 4).to_array(), (2, 1)))
        f1, f2 = l2_slice_split(f, STANDARD_FRAME)
        assert_qclose(Quaternion.from_array(f1.values[0]), Quaternion(1, 2), 0.0)
        assert_qclose(Quaternion.from_array(f2.values[0]), Quaternion(3, 4), 0.0)

    def test_slice_valued_function_has_no_tail(self, rng):
        sp = two_atom_space()
        vals = [Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(2)]
        f = L2Element(sp, np.stack([v.to_array() for v in vals]))
        f1, f2 = l2_slice_split(f, STANDARD_FRAME)
        assert f2.norm() <= 1e-15
        np.testing.assert_allclose(f1.values, f.values, atol=1e-15)

    def test_pure_tail(self):
        sp = two_atom_space()
        g = Quaternion(0.7, -0.2)  # slice value
        f = L2Element(sp, np.tile((g * STANDARD_FRAME.n).to_array(), (2, 1)))
        f1, f2 = l2_slice_split(f, STANDARD_FRAME)
        assert f1.norm() <= 1e-15
        assert_qclose(Quaternion.from_array(f2.values[0]), g, 1e-15)

    def test_pythagoras(self, rng):
        for _ in range(10):
            f_frame = gen.random_frame(rng)
            sp = AtomicMeasureSpace(gen.random_qvector(rng, 5), np.abs(rng.normal(size=5)) + 0.1)
            f = L2Element(sp, gen.random_qvector(rng, 5))
            f1, f2 = l2_slice_split(f, f_frame)
            assert f.norm() ** 2 == pytest.approx(f1.norm() ** 2 + f2.norm() ** 2, rel=1e-12)


class TestPushforward:
    def test_merging_adds_mass(self):
        sp = two_atom_space((1.0, 2.0))
        image = pushforward(sp, lambda q: Quaternion(7))
        assert image.n_atoms == 1
        assert image.total_mass() == 3.0
        assert image.label(0) == Quaternion(7)

    def test_identity_map(self):
        sp = two_atom_space()
        image = pushforward(sp, lambda q: q)
        np.testing.assert_array_equal(image.atoms, sp.atoms)
        np.testing.assert_array_equal(image.weights, sp.weights)

    def test_radial_stretch_label(self):
        sp = AtomicMeasureSpace.from_labels([0.6 * I], [2.0])
        image = pushforward(sp, xi)
        assert image.n_atoms == 1
        assert_qclose(image.label(0), 0.75 * I, 1e-15)  # 0.6 / sqrt(1 - 0.36)
        assert image.weights[0] == 2.0

    def test_mass_preserved(self, rng):
        sp = AtomicMeasureSpace(gen.random_qvector(rng, 9), np.abs(rng.normal(size=9)) + 0.01)
        image = pushforward(sp, lambda q: Quaternion(round(q.re, 1)))
        assert image.total_mass() == pytest.approx(sp.total_mass(), rel=1e-14)
