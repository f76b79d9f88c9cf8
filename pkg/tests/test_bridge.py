import numpy as np
import pytest

from qspectra import I, J, K, ONE, QMatrix, Quaternion, STANDARD_FRAME, inner, norm
from qspectra import generate as gen
from qspectra.bridge import (
    CMatrix,
    chi,
    eig_normal_complex,
    iota,
    iota_inv,
    spectral_decompose,
)
from qspectra.errors import NotNormalError, ShapeError, SliceMembershipError
from qspectra.quaternion import cm_to_complex
from qspectra.vectors import scale_right

from conftest import assert_qclose


def rand_matrix(rng, n):
    return QMatrix(gen.random_qvector(rng, n * n).reshape(n, n, 4))


class TestChi:
    def test_pure_j_entry(self):
        z = chi(QMatrix.from_rows([[J]]), STANDARD_FRAME).cm.to_complex()
        np.testing.assert_allclose(z, np.array([[0, -1], [1, 0]], dtype=complex), atol=0)

    def test_pure_i_entry(self):
        z = chi(QMatrix.from_rows([[I]]), STANDARD_FRAME).cm.to_complex()
        np.testing.assert_allclose(z, np.diag([1j, -1j]), atol=0)

    def test_identity(self, frame):
        # frame products carry ~1e-16 rounding for non-axis frames
        z = chi(QMatrix.identity(3), frame).cm.to_complex()
        np.testing.assert_allclose(z, np.eye(6), atol=1e-15)

    def test_intertwines_action(self, frame, rng):
        for _ in range(10):
            a = rand_matrix(rng, 4)
            x = gen.random_qvector(rng, 4)
            z = chi(a, frame).cm.to_complex()
            np.testing.assert_allclose(
                iota(a.apply(x), frame), z @ iota(x, frame), atol=1e-12
            )

    def test_intertwines_slice_scalars(self, frame, rng):
        lam = Quaternion(0.3) + frame.m * (-1.7)
        x = gen.random_qvector(rng, 5)
        np.testing.assert_allclose(
            iota(scale_right(x, lam), frame),
            iota(x, frame) * cm_to_complex(lam, frame),
            atol=1e-13,
        )

    def test_iota_inverse(self, frame, rng):
        x = gen.random_qvector(rng, 6)
        np.testing.assert_allclose(iota_inv(iota(x, frame), frame), x, atol=1e-14)

    def test_multiplicative_and_star(self, frame, rng):
        a, b = rand_matrix(rng, 4), rand_matrix(rng, 4)
        za = chi(a, frame).cm.to_complex()
        zb = chi(b, frame).cm.to_complex()
        np.testing.assert_allclose(
            chi(a @ b, frame).cm.to_complex(), za @ zb, atol=1e-12
        )
        np.testing.assert_allclose(
            chi(a.H, frame).cm.to_complex(), np.conj(za.T), atol=1e-14
        )

    def test_isometry(self, frame, rng):
        a = rand_matrix(rng, 5)
        z = chi(a, frame).cm.to_complex()
        assert np.linalg.norm(z, 2) == pytest.approx(a.op_norm(), rel=1e-12)


class TestCMatrix:
    def test_rejects_off_slice_entries(self):
        with pytest.raises(SliceMembershipError):
            CMatrix(QMatrix.from_rows([[J]]).a, STANDARD_FRAME)

    def test_complex_roundtrip(self, frame, rng):
        z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        back = CMatrix.from_complex(z, frame).to_complex()
        np.testing.assert_allclose(back, z, atol=1e-15)


class TestEigNormalComplex:
    def test_diagonal_imaginary_pair(self):
        n = CMatrix.from_complex(np.diag([1j, -1j]), STANDARD_FRAME)
        w, vals = eig_normal_complex(n)
        assert_qclose(vals[0], I, 1e-14)
        assert_qclose(vals[1], -I, 1e-14)

    def test_rotation_block(self):
        n = CMatrix.from_complex(np.array([[0, -1], [1, 0]], dtype=complex), STANDARD_FRAME)
        _, vals = eig_normal_complex(n)
        got = sorted((cm_to_complex(v, STANDARD_FRAME) for v in vals), key=lambda z: z.imag)
        assert got == pytest.approx([-1j, 1j])

    def test_textbook_hermitian(self):
        n = CMatrix.from_complex(np.array([[2, 1], [1, 2]], dtype=complex), STANDARD_FRAME)
        w, vals = eig_normal_complex(n)
        assert_qclose(vals[0], Quaternion(3), 1e-12)
        assert_qclose(vals[1], Quaternion(1), 1e-12)
        wc = w.to_complex()
        sym = np.array([1, 1]) / np.sqrt(2)
        anti = np.array([1, -1]) / np.sqrt(2)
        assert abs(np.vdot(wc[:, 0], sym)) == pytest.approx(1.0, abs=1e-12)
        assert abs(np.vdot(wc[:, 1], anti)) == pytest.approx(1.0, abs=1e-12)

    def test_descending_lexicographic_order(self, rng):
        vals_in = rng.permutation([3.0, 1.0, 1.0, -2.0]) + 0j
        n = CMatrix.from_complex(np.diag(vals_in), STANDARD_FRAME)
        _, vals = eig_normal_complex(n)
        res = [v.re for v in vals]
        assert res == sorted(res, reverse=True)

    def test_non_normal_rejected(self):
        z = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(NotNormalError):
            eig_normal_complex(CMatrix.from_complex(z, STANDARD_FRAME))

    def test_requires_square(self):
        with pytest.raises(ShapeError):
            eig_normal_complex(CMatrix.from_complex(np.zeros((2, 3)), STANDARD_FRAME))

    def test_residual_contract_on_random_normal(self, frame, rng):
        for n in (3, 8, 16):
            z = gen.random_complex_normal(rng, n)
            w, vals = eig_normal_complex(CMatrix.from_complex(z, frame))
            wc = w.to_complex()
            vc = np.array([cm_to_complex(v, frame) for v in vals])
            resid = np.linalg.norm(z @ wc - wc * vc)
            assert resid <= 1e-10 * np.linalg.norm(z)
            assert np.linalg.norm(np.conj(wc.T) @ wc - np.eye(n)) <= 1e-12 * n

    def test_degenerate_clusters(self, rng):
        vals_in = np.array([2.0, 2.0, 2.0, -1j, -1j, 1j, 1j, 0.5 + 0.5j])
        g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        q, _ = np.linalg.qr(g)
        z = (q * vals_in) @ np.conj(q.T)
        w, vals = eig_normal_complex(CMatrix.from_complex(z, STANDARD_FRAME))
        wc = w.to_complex()
        vc = np.array([cm_to_complex(v, STANDARD_FRAME) for v in vals])
        assert np.linalg.norm(z @ wc - wc * vc) <= 1e-10 * np.linalg.norm(z)


class TestSpectralDecompose:
    def test_left_j_matrix(self):
        a = QMatrix.from_rows([[J]])
        dec = spectral_decompose(a, STANDARD_FRAME)
        assert len(dec.d) == 1
        assert_qclose(dec.d[0], I, 1e-13)
        v = dec.V.col(0)
        assert norm(v) == pytest.approx(1.0, abs=1e-13)
        np.testing.assert_allclose(
            a.apply(v), scale_right(v, dec.d[0]), atol=1e-12
        )
        # the eigenline is spanned by (1 + k)/sqrt(2)
        ref = np.array([(ONE + K).to_array()]) / abs(ONE + K)
        assert abs(inner(ref, v)) == pytest.approx(1.0, abs=1e-12)

    def test_mixed_axes_share_an_orbit(self):
        a = QMatrix.diag([I, J])
        dec = spectral_decompose(a, STANDARD_FRAME)
        for d in dec.d:
            assert_qclose(d, I, 1e-12)

    def test_real_scalar_matrix(self):
        a = 2.5 * QMatrix.identity(3)
        dec = spectral_decompose(a, STANDARD_FRAME)
        for d in dec.d:
            assert_qclose(d, Quaternion(2.5), 1e-12)
        assert ((dec.V.H @ dec.V) - QMatrix.identity(3)).frobenius() <= 1e-12

    def test_rejects_non_normal(self):
        arr = np.zeros((2, 2, 4))
        arr[0, 1, 0] = 1.0
        with pytest.raises(NotNormalError):
            spectral_decompose(QMatrix(arr), STANDARD_FRAME)

    def test_orbit_recovery(self, frame, rng):
        for n in (2, 5, 9):
            d = gen.random_standard_values(rng, n, frame)
            v = gen.random_unitary(rng, n)
            a = v @ QMatrix.diag(d) @ v.H
            dec = spectral_decompose(a, frame)
            want = sorted((q.re, q.im_norm()) for q in d)
            got = sorted((q.re, q.im_norm()) for q in dec.d)
            for w, g in zip(want, got):
                assert w == pytest.approx(g, abs=1e-8)

    def test_upper_half_values(self, frame, rng):
        a = gen.random_normal(rng, 7, frame)
        dec = spectral_decompose(a, frame)
        for d in dec.d:
            assert cm_to_complex(d, frame).imag >= 0.0

    def test_degenerate_quaternionic_spectrum(self, rng):
        f = gen.random_frame(rng)
        lam = Quaternion(0.4) + f.m * 1.1
        d = [lam, lam, Quaternion(-0.7), Quaternion(-0.7), lam]
        v = gen.random_unitary(rng, 5)
        a = v @ QMatrix.diag(d) @ v.H
        dec = spectral_decompose(a, f)
        rec = dec.V @ QMatrix.diag(dec.d) @ dec.V.H
        assert (a - rec).frobenius() <= 1e-10 * a.frobenius()

    def test_frame_covariance_of_orbits(self, rng, random_frames):
        a = gen.random_normal(rng, 6, random_frames[0])
        reference = None
        for f in random_frames:
            dec = spectral_decompose(a, f)
            orbits = sorted((q.re, q.im_norm()) for q in dec.d)
            if reference is None:
                reference = orbits
            else:
                for r, o in zip(reference, orbits):
                    assert r == pytest.approx(o, abs=1e-9)

    def test_conjugate_pairing_of_chi_eigenvalues(self, frame, rng):
        a = gen.random_normal(rng, 6, frame)
        vals = np.linalg.eigvals(chi(a, frame).cm.to_complex())
        for lam in vals[vals.imag > 1e-9]:
            assert np.min(np.abs(vals - np.conj(lam))) <= 1e-9
