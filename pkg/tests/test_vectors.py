import numpy as np
import pytest

from qspectra import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    expand,
    gram_schmidt,
    inner,
    norm,
    reconstruct,
    scale_right,
)
from qspectra import generate as gen
from qspectra.errors import IncompleteBasisError, RankDeficiencyError, ShapeError
from qspectra.vectors import basis_vector, orthonormality_defect

from conftest import assert_qclose


def qvec(*qs):
    return np.stack([q.to_array() for q in qs], axis=0)


class TestInnerProduct:
    def test_mixed_entries(self):
        # conj(1) * j + conj(i) * 1 = j - i
        assert_qclose(inner(qvec(ONE, I), qvec(J, ONE)), J - I, 0.0)

    def test_self_inner_is_squared_norm(self):
        assert_qclose(inner(qvec(ONE, J), qvec(ONE, J)), Quaternion(2), 0.0)

    def test_right_linearity(self, rng):
        for _ in range(25):
            x, y = gen.random_qvector(rng, 5), gen.random_qvector(rng, 5)
            q = gen.random_quaternion(rng)
            assert_qclose(inner(x, scale_right(y, q)), inner(x, y) * q, 1e-12)

    def test_conjugate_symmetry(self, rng):
        x, y = gen.random_qvector(rng, 6), gen.random_qvector(rng, 6)
        assert_qclose(inner(x, y), inner(y, x).conjugate(), 1e-13)

    def test_self_inner_real_nonnegative(self, rng):
        for _ in range(20):
            x = gen.random_qvector(rng, 4)
            g = inner(x, x)
            assert abs(g.im()) <= 1e-12 * max(1.0, g.re)
            assert g.re >= 0.0

    def test_cauchy_schwarz(self, rng):
        for _ in range(50):
            x, y = gen.random_qvector(rng, 7), gen.random_qvector(rng, 7)
            assert abs(inner(x, y)) <= norm(x) * norm(y) * (1.0 + 1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            inner(qvec(ONE), qvec(ONE, ONE))


class TestScaleRight:
    def test_unit_products(self):
        out = scale_right(qvec(ONE, I), J)
        assert_qclose(Quaternion.from_array(out[0]), J, 0.0)
        assert_qclose(Quaternion.from_array(out[1]), K, 0.0)  # i * j = k

    def test_identity_scalar(self, rng):
        x = gen.random_qvector(rng, 5)
        np.testing.assert_array_equal(scale_right(x, ONE), x)

    def test_module_associativity(self, rng):
        for _ in range(25):
            x = gen.random_qvector(rng, 4)
            p, q = gen.random_quaternion(rng), gen.random_quaternion(rng)
            np.testing.assert_allclose(
                scale_right(scale_right(x, p), q), scale_right(x, p * q), atol=1e-12
            )

    def test_norm_multiplicative(self, rng):
        x, q = gen.random_qvector(rng, 5), gen.random_quaternion(rng)
        assert norm(scale_right(x, q)) == pytest.approx(norm(x) * abs(q), rel=1e-13)


class TestGramSchmidt:
    def test_two_vector_example(self):
        out = gram_schmidt([qvec(ONE, Quaternion()), qvec(I, ONE)])
        np.testing.assert_allclose(out[0], qvec(ONE, Quaternion()), atol=1e-15)
        np.testing.assert_allclose(out[1], qvec(Quaternion(), ONE), atol=1e-15)

    def test_orthonormal_input_unchanged(self, rng):
        basis = gram_schmidt([gen.random_qvector(rng, 4) for _ in range(4)])
        again = gram_schmidt(basis)
        for before, after in zip(basis, again):
            assert norm(before - after) <= 1e-14

    def test_rank_deficiency_reports_index(self):
        with pytest.raises(RankDeficiencyError) as err:
            gram_schmidt([qvec(ONE, Quaternion()), qvec(Quaternion(2), Quaternion())])
        assert err.value.index == 1

    def test_produces_orthonormal_family(self, rng):
        basis = gram_schmidt([gen.random_qvector(rng, 6) for _ in range(6)])
        assert orthonormality_defect(basis) <= 1e-13

    def test_right_coefficient_convention(self, rng):
        # the projection must kill <z|v> exactly on the right
        z, v = gen.random_qvector(rng, 5), gen.random_qvector(rng, 5)
        z = z / norm(z)
        residual = v - scale_right(z, inner(z, v))
        assert abs(inner(z, residual)) <= 1e-13


class TestExpand:
    def test_standard_basis(self):
        basis = [basis_vector(2, 0), basis_vector(2, 1)]
        coeffs = expand(qvec(I, J), basis)
        assert_qclose(coeffs[0], I, 0.0)
        assert_qclose(coeffs[1], J, 0.0)

    def test_rotated_first_vector(self):
        phase = (ONE + K) / abs(ONE + K)
        basis = [scale_right(basis_vector(2, 0), phase), basis_vector(2, 1)]
        coeffs = expand(basis_vector(2, 0), basis)
        # <(1+k)/sqrt(2) e1 | e1> = conj((1+k)/sqrt(2)) = (1 - k)/sqrt(2)
        assert_qclose(coeffs[0], (ONE - K) / abs(ONE + K), 1e-15)
        assert_qclose(coeffs[1], Quaternion(), 0.0)

    def test_zero_vector(self, rng):
        basis = gram_schmidt([gen.random_qvector(rng, 3) for _ in range(3)])
        for c in expand(np.zeros((3, 4)), basis):
            assert abs(c) == 0.0

    def test_reconstruction_identity(self, rng):
        for _ in range(20):
            basis = gram_schmidt([gen.random_qvector(rng, 5) for _ in range(5)])
            x = gen.random_qvector(rng, 5)
            coeffs = expand(x, basis)
            assert norm(x - reconstruct(basis, coeffs)) <= 1e-10

    def test_incomplete_basis_detected(self):
        basis = [basis_vector(2, 0)]
        with pytest.raises(IncompleteBasisError):
            expand(basis_vector(2, 1), basis)
