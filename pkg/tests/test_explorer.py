import numpy as np
import pytest

from pcl_srtool.errors import NonFiniteGradientError
from pcl_srtool.explorer import DescentConfig, descend, sweep
from pcl_srtool.harness import bicubic_baseline
from pcl_srtool.image import ImageBuffer, LumaPlane
from pcl_srtool.losses import LOSS_PRESETS, LossWeights, content_loss
from pcl_srtool.tools import TaskRunner
from samples import textured

CONTENT = LossWeights(1.0, 0.0, 0.0, 0.0)


@pytest.fixture
def hr(rng) -> ImageBuffer:
    return ImageBuffer(textured(rng, 16, 16))


class TestDescend:
    def test_start_at_target(self, hr):
        result = descend(hr, hr, CONTENT)
        assert result.steps == 0
        assert result.objective == 0.0
        assert result.stop_reason == "exact"

    def test_content_only_converges_to_target(self, hr):
        start = bicubic_baseline(hr, 4)
        result = descend(hr, start, CONTENT, DescentConfig(max_steps=500))
        assert content_loss(hr, result.image) < 1e-4

    def test_trace_is_non_increasing(self, rng, hr):
        start = ImageBuffer(rng.random((16, 16)))
        result = descend(hr, start, LossWeights(1.0, 1.0, 1.0, 0.0), DescentConfig(max_steps=50))
        trace = np.array(result.trace)
        assert np.all(np.diff(trace) <= 0.0)
        assert len(result.trace_frame()) == result.steps + 1

    def test_iterates_stay_in_range(self, rng, hr):
        start = ImageBuffer(rng.random((16, 16)))
        result = descend(hr, start, LossWeights(0.0, 0.0, 1.0, 0.0), DescentConfig(max_steps=20, initial_step=50.0))
        assert result.image.data.min() >= 0.0 and result.image.data.max() <= 1.0

    def test_adversarial_weight_is_ignored(self, rng, hr):
        start = ImageBuffer(rng.random((16, 16)))
        with_adv = descend(hr, start, LossWeights(1.0, 1.0, 0.0, 0.5), DescentConfig(max_steps=10))
        without = descend(hr, start, LossWeights(1.0, 1.0, 0.0, 0.0), DescentConfig(max_steps=10))
        assert with_adv.trace == without.trace

    def test_non_finite_gradient(self, monkeypatch, rng, hr):
        from pcl_srtool.explorer import descent
        from pcl_srtool.losses import GradientField

        monkeypatch.setattr(descent, "objective_grad", lambda *args: GradientField(np.full((1, 16, 16), np.nan)))
        with pytest.raises(NonFiniteGradientError):
            descend(hr, ImageBuffer(rng.random((16, 16))), CONTENT)

    @pytest.mark.parametrize("kwargs", [{"max_steps": 0}, {"initial_step": 0.0}, {"backtrack": 1.0}, {"stop_tol": 0.0}])
    def test_config_validation(self, kwargs):
        with pytest.raises(ValueError):
            DescentConfig(**kwargs)

    def test_luma_plane_target(self, hr):
        result = descend(LumaPlane(hr.data[0]), hr, CONTENT)
        assert result.stop_reason == "exact"

    def test_reruns_are_bit_identical(self, rng, hr):
        start = ImageBuffer(rng.random((16, 16)))
        weights = LossWeights(1.0, 1.0, 1.0, 0.0)
        first = descend(hr, start, weights, DescentConfig(max_steps=30))
        second = descend(hr, start, weights, DescentConfig(max_steps=30))
        assert first.trace == second.trace
        assert np.array_equal(first.image.data, second.image.data)

    def test_five_crops_converge_from_bicubic(self, rng):
        scene = textured(rng, 48, 48)
        crops = [scene[:16, :16], scene[:16, 32:], scene[32:, :16], scene[32:, 32:], scene[16:32, 16:32]]
        cfg = DescentConfig(max_steps=500)
        for crop in crops:
            target = ImageBuffer(crop)
            result = descend(target, bicubic_baseline(target, 4), CONTENT, cfg)
            assert result.steps <= 500
            assert content_loss(target, result.image) < 1e-4
            assert np.all(np.diff(result.trace) <= cfg.stop_tol)


class TestSweep:
    def test_single_point(self, hr):
        result = sweep(hr, bicubic_baseline(hr, 4), [CONTENT], DescentConfig(max_steps=500))
        assert len(result.points) == 1
        assert result.points[0].rmse < 0.5

    def test_duplicates_agree(self, rng, hr):
        start = ImageBuffer(rng.random((16, 16)))
        weights = LossWeights(1.0, 0.5, 0.5, 0.0)
        result = sweep(hr, start, [weights, weights], DescentConfig(max_steps=30), runner=TaskRunner(threads=2))
        first, second = result.points
        assert first.trace == second.trace
        assert np.array_equal(first.report.total, second.report.total)

    def test_five_points_with_niqe(self, rng, niqe_model):
        target = ImageBuffer(textured(rng, 64, 64))
        start = bicubic_baseline(target, 4)
        settings = [LossWeights(1.0, w, w, 0.0) for w in (0.0, 0.25, 0.5, 1.0, 2.0)]
        result = sweep(target, start, settings, DescentConfig(max_steps=15), model=niqe_model)
        frame = result.frame()
        assert len(frame) == 5
        assert np.all(np.isfinite(frame["rmse"].astype(float)))
        assert np.all(np.isfinite(frame["niqe"].astype(float)))
        assert frame["point"].tolist() == [0, 1, 2, 3, 4]

    def test_failed_point_is_recorded(self, rng, niqe_model):
        target = ImageBuffer(textured(rng, 8, 8))
        result = sweep(target, ImageBuffer(rng.random((8, 8))), [CONTENT, LOSS_PRESETS["content+dct"]], DescentConfig(max_steps=3), model=niqe_model)
        assert result.failures == [0, 1]
        assert "ImageTooSmallError" in result.points[0].error

    def test_empty_request(self, hr):
        with pytest.raises(ValueError):
            sweep(hr, hr, [])
