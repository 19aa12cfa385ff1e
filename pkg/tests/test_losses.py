import math

import numpy as np
import pytest

from oracles import dct2 as naive_dct2
from pcl_srtool.errors import DivergedLossError, ImageTooSmallError, ScoreRangeError, ShapeMismatchError
from pcl_srtool.losses import (
    LOSS_PRESETS,
    AdversarialForm,
    DctConfig,
    DctMode,
    DctNorm,
    LossWeights,
    adversarial_logit_grad,
    adversarial_loss,
    combined_loss,
    content_loss,
    content_loss_grad,
    dct2,
    dct2_adjoint,
    dct_loss,
    dct_loss_grad,
    differential_content_loss,
    differential_content_loss_grad,
    idct2,
)

ORTHO = DctConfig(normalization=DctNorm.ORTHONORMAL)
RAW = DctConfig(normalization=DctNorm.UNNORMALIZED)
BLOCK_RAW = DctConfig(normalization=DctNorm.UNNORMALIZED, mode=DctMode.BLOCK8)


def numeric_gradient(f, hr: np.ndarray, sr: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central differences of f(hr, sr) with respect to every sr sample."""
    grad = np.zeros_like(sr)
    for index in np.ndindex(sr.shape):
        plus, minus = sr.copy(), sr.copy()
        plus[index] += h
        minus[index] -= h
        grad[index] = (f(hr, plus) - f(hr, minus)) / (2.0 * h)
    return grad


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))


@pytest.fixture
def pair(rng):
    return rng.random((1, 8, 8)), rng.random((1, 8, 8))


class TestContentLoss:
    def test_identical_is_zero(self, pair):
        hr, _ = pair
        assert content_loss(hr, hr) == 0.0

    def test_single_pixel(self):
        assert content_loss(np.array([[0.75]]), np.array([[0.25]])) == 0.5

    def test_two_by_two(self):
        assert content_loss(np.array([[1.0, 0.0], [0.0, 1.0]]), np.zeros((2, 2))) == 0.5

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            content_loss(np.zeros((2, 2)), np.zeros((2, 3)))

    def test_gradient_at_ties(self, pair):
        hr, _ = pair
        assert not np.any(content_loss_grad(hr, hr, eps=0.0).data)

    def test_gradient_sign_rule(self):
        assert content_loss_grad(np.array([[1.0]]), np.array([[0.0]]), eps=0.0).data[0, 0, 0] == -1.0

    def test_gradient_matches_finite_differences(self, pair):
        hr, sr = pair
        analytic = content_loss_grad(hr, sr, eps=1e-3).data
        numeric = numeric_gradient(lambda a, b: content_loss(a, b, eps=1e-3), hr, sr)
        assert relative_error(analytic, numeric) < 1e-5


class TestDifferentialLoss:
    def test_identical_is_zero(self, pair):
        hr, _ = pair
        assert differential_content_loss(hr, hr) == 0.0

    def test_two_by_one_row(self):
        assert differential_content_loss(np.array([[0.0, 1.0]]), np.array([[0.0, 0.0]])) == 0.5

    def test_single_pixel_rejected(self):
        with pytest.raises(ImageTooSmallError):
            differential_content_loss(np.zeros((1, 1)), np.zeros((1, 1)))

    def test_matches_double_loop(self, pair):
        hr, sr = pair
        a, b = hr[0], sr[0]
        total = 0.0
        for i in range(8):
            for j in range(8):
                if j + 1 < 8:
                    total += abs((a[i, j + 1] - a[i, j]) - (b[i, j + 1] - b[i, j]))
                if i + 1 < 8:
                    total += abs((a[i + 1, j] - a[i, j]) - (b[i + 1, j] - b[i, j]))
        assert differential_content_loss(hr, sr) == pytest.approx(total / 64.0, abs=1e-12)

    def test_gradient_of_constants_vanishes(self):
        grad = differential_content_loss_grad(np.full((5, 6), 0.8), np.full((5, 6), 0.1), eps=0.0)
        assert not np.any(grad.data)

    def test_gradient_at_ties(self, pair):
        hr, _ = pair
        assert not np.any(differential_content_loss_grad(hr, hr, eps=0.0).data)

    def test_gradient_matches_finite_differences(self, pair):
        hr, sr = pair
        analytic = differential_content_loss_grad(hr, sr, eps=1e-3).data
        numeric = numeric_gradient(lambda a, b: differential_content_loss(a, b, eps=1e-3), hr, sr)
        assert relative_error(analytic, numeric) < 1e-5


class TestDct:
    def test_constant_orthonormal_dc(self):
        coeffs = dct2(np.full((2, 2), 0.5), ORTHO)
        assert coeffs[0, 0] == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(coeffs.ravel()[1:], 0.0, atol=1e-12)

    def test_length_two_unnormalized(self):
        a, b = 0.3, 0.9
        coeffs = dct2(np.array([[a, b]]), RAW)
        assert coeffs[0, 0] == pytest.approx(a + b, abs=1e-12)
        assert coeffs[0, 1] == pytest.approx((a - b) / math.sqrt(2.0), abs=1e-12)

    @pytest.mark.parametrize("ortho", [False, True])
    def test_matches_naive_transform(self, rng, ortho):
        x = rng.random((32, 32))
        cfg = ORTHO if ortho else RAW
        assert np.max(np.abs(dct2(x, cfg) - naive_dct2(x, ortho))) < 1e-9

    @pytest.mark.parametrize("cfg", [ORTHO, RAW, BLOCK_RAW])
    def test_inverse(self, rng, cfg):
        x = rng.random((16, 24))
        assert np.allclose(idct2(dct2(x, cfg), cfg), x, atol=1e-12)

    @pytest.mark.parametrize("cfg", [RAW, DctConfig(mode=DctMode.BLOCK8)])
    def test_adjoint_identity(self, rng, cfg):
        x, y = rng.random((16, 16)), rng.random((16, 16))
        assert np.sum(dct2(x, cfg) * y) == pytest.approx(np.sum(x * dct2_adjoint(y, cfg)), rel=1e-12)

    def test_blockwise_works_per_block(self, rng):
        x = rng.random((16, 16))
        coeffs = dct2(x, BLOCK_RAW)
        assert np.allclose(coeffs[8:, :8], naive_dct2(x[8:, :8]), atol=1e-10)

    def test_blockwise_pads_odd_sizes(self, rng):
        assert dct2(rng.random((10, 13)), BLOCK_RAW).shape == (16, 16)


class TestDctLoss:
    def test_identical_is_zero(self, pair):
        hr, _ = pair
        assert dct_loss(hr, hr) == 0.0

    def test_parseval(self, rng):
        hr = rng.uniform(0.2, 0.8, (12, 12))
        assert dct_loss(hr, hr + 0.1, ORTHO) == pytest.approx(0.01, abs=1e-12)

    def test_matches_naive_sum(self, rng):
        hr, sr = rng.random((16, 16)), rng.random((16, 16))
        expected = np.sum(naive_dct2(hr - sr) ** 2) / 256.0
        assert dct_loss(hr, sr, RAW) == pytest.approx(expected, abs=1e-10)

    def test_gradient_at_ties(self, pair):
        hr, _ = pair
        assert not np.any(dct_loss_grad(hr, hr).data)

    def test_orthonormal_gradient_is_scaled_residual(self, pair):
        hr, sr = pair
        assert np.allclose(dct_loss_grad(hr, sr, ORTHO).data, -2.0 / 64.0 * (hr - sr), atol=1e-14)

    @pytest.mark.parametrize("cfg", [RAW, ORTHO, BLOCK_RAW])
    def test_gradient_matches_finite_differences(self, pair, cfg):
        hr, sr = pair
        analytic = dct_loss_grad(hr, sr, cfg).data
        numeric = numeric_gradient(lambda a, b: dct_loss(a, b, cfg), hr, sr)
        assert relative_error(analytic, numeric) < 1e-6

    def test_blockwise_gradient_on_padded_size(self, rng):
        hr, sr = rng.random((1, 10, 9)), rng.random((1, 10, 9))
        analytic = dct_loss_grad(hr, sr, BLOCK_RAW).data
        numeric = numeric_gradient(lambda a, b: dct_loss(a, b, BLOCK_RAW), hr, sr)
        assert relative_error(analytic, numeric) < 1e-6


class TestAdversarialLoss:
    def test_certain_real(self):
        assert adversarial_loss(1.0) == 0.0

    def test_half(self):
        assert adversarial_loss(0.5) == pytest.approx(0.693147, abs=1e-6)

    def test_logit_zero(self):
        assert adversarial_loss(0.0, AdversarialForm.LOGIT) == pytest.approx(math.log(2.0), abs=1e-15)

    def test_logit_agrees_with_probability(self, rng):
        for z in rng.uniform(-8.0, 8.0, 20):
            d = 1.0 / (1.0 + math.exp(-z))
            assert adversarial_loss(z, AdversarialForm.LOGIT) == pytest.approx(adversarial_loss(d), abs=1e-12)

    def test_zero_probability_diverges(self):
        with pytest.raises(DivergedLossError):
            adversarial_loss(0.0)

    @pytest.mark.parametrize("d", [-0.1, 1.5])
    def test_out_of_range(self, d):
        with pytest.raises(ScoreRangeError):
            adversarial_loss(d)

    def test_logit_gradient(self):
        h = 1e-6
        for z in (-3.0, 0.0, 2.5):
            numeric = (adversarial_loss(z + h, AdversarialForm.LOGIT) - adversarial_loss(z - h, AdversarialForm.LOGIT)) / (2 * h)
            assert adversarial_logit_grad(z) == pytest.approx(numeric, abs=1e-8)


class TestWeights:
    def test_parse(self):
        assert LossWeights.parse("1, 0.5, 2, 0").as_tuple() == (1.0, 0.5, 2.0, 0.0)

    @pytest.mark.parametrize("text", ["1,2,3", "1,-1,0,0", "0,0,0,0", "a,b,c,d"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            LossWeights.parse(text)

    def test_presets(self):
        assert LOSS_PRESETS["content"].as_tuple() == (1.0, 0.0, 0.0, 0.0)
        assert LOSS_PRESETS["pcl"].w_adv > 0.0


class TestCombinedLoss:
    def test_content_only(self, pair):
        hr, sr = pair
        report, grad = combined_loss(hr, sr, LossWeights(1.0, 0.0, 0.0, 0.0))
        assert report.total == report.l_c == content_loss(hr, sr)
        assert np.array_equal(grad.data, content_loss_grad(hr, sr).data)

    def test_identical_pair(self, pair):
        hr, _ = pair
        report, grad = combined_loss(hr, hr, LossWeights(1.0, 2.0, 3.0, 0.0))
        assert report.total == 0.0
        assert not np.any(grad.data)

    def test_total_is_sum_of_parts(self, pair):
        hr, sr = pair
        report, _ = combined_loss(hr, sr, LossWeights(1.0, 1.0, 1.0, 0.0))
        expected = content_loss(hr, sr) + differential_content_loss(hr, sr) + dct_loss(hr, sr)
        assert report.total == pytest.approx(expected, abs=1e-12)

    def test_adversarial_term(self, pair):
        hr, sr = pair
        weights = LossWeights(1.0, 0.0, 0.0, 0.5)
        report, _ = combined_loss(hr, sr, weights, d=0.5)
        assert report.l_adv == pytest.approx(math.log(2.0))
        assert report.total == pytest.approx(report.l_c + 0.5 * math.log(2.0), abs=1e-12)

    def test_adversarial_weight_needs_d(self, pair):
        hr, sr = pair
        with pytest.raises(ValueError):
            combined_loss(hr, sr, LossWeights(1.0, 0.0, 0.0, 0.1))

    def test_report_dict(self, pair):
        hr, sr = pair
        report, _ = combined_loss(hr, sr, LossWeights(1.0, 1.0, 1.0, 0.0))
        assert set(report.to_dict()) == {"l_c", "l_d", "l_dct", "l_adv", "total", "weights"}


def random_pair(rng: np.random.Generator, low: int, high: int) -> tuple[np.ndarray, np.ndarray]:
    h, w = rng.integers(low, high + 1, size=2)
    return rng.random((1, h, w)), rng.random((1, h, w))


class TestLossProperties:
    @pytest.mark.parametrize("loss", [content_loss, differential_content_loss, dct_loss], ids=["l_c", "l_d", "l_dct"])
    def test_symmetric(self, rng, loss):
        for _ in range(20):
            a, b = random_pair(rng, 2, 16)
            assert loss(a, b) == pytest.approx(loss(b, a), rel=1e-15, abs=0.0)

    @pytest.mark.parametrize("alpha", [0.25, 2.0, 7.5])
    def test_content_loss_scales_linearly(self, rng, alpha):
        a, b = random_pair(rng, 2, 16)
        assert content_loss(alpha * a, alpha * b) == pytest.approx(alpha * content_loss(a, b), rel=1e-12)

    @pytest.mark.parametrize("shift", [-0.3, 0.05, 0.5])
    def test_differential_loss_ignores_constant_offsets(self, rng, shift):
        a, _ = random_pair(rng, 2, 16)
        assert differential_content_loss(a, a + shift) == pytest.approx(0.0, abs=1e-12)
        assert content_loss(a, a + shift) == pytest.approx(abs(shift), abs=1e-12)

    def test_parseval_over_random_sizes(self, rng):
        for _ in range(200):
            a, b = random_pair(rng, 4, 64)
            mse = float(np.mean((a - b) ** 2))
            assert dct_loss(a, b, ORTHO) == pytest.approx(mse, rel=1e-10)

    @pytest.mark.parametrize(
        "loss,grad",
        [
            (lambda a, b: content_loss(a, b, eps=1e-3), lambda a, b: content_loss_grad(a, b, eps=1e-3)),
            (lambda a, b: differential_content_loss(a, b, eps=1e-3), lambda a, b: differential_content_loss_grad(a, b, eps=1e-3)),
            (lambda a, b: dct_loss(a, b, RAW), lambda a, b: dct_loss_grad(a, b, RAW)),
        ],
        ids=["l_c", "l_d", "l_dct"],
    )
    def test_gradients_on_many_pairs(self, rng, loss, grad):
        # relative error in the Frobenius norm; step 1e-5 central differences
        worst = 0.0
        for _ in range(50):
            a, b = rng.random((1, 8, 8)), rng.random((1, 8, 8))
            worst = max(worst, relative_error(grad(a, b).data, numeric_gradient(loss, a, b, h=1e-5)))
        assert worst < 1e-5

    def test_adversarial_strictly_decreasing(self):
        values = [adversarial_loss(d) for d in np.linspace(1e-6, 1.0, 200)]
        assert all(x > y for x, y in zip(values, values[1:]))
        assert values[-1] == 0.0
