import numpy as np
import pytest

from pcl_srtool.image import ImageBuffer, LumaPlane
from pcl_srtool.metrics import fit_niqe_model
from samples import NIQE_PATCH, textured, textured_rgb, write_dataset


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20181019)


@pytest.fixture
def rgb_image(rng) -> ImageBuffer:
    return textured_rgb(rng, 32, 32)


@pytest.fixture
def hr_dataset(tmp_path, rng):
    """Directory with two 32x32 RGB images, `a` and `b`."""
    return write_dataset(tmp_path / "hr", {stem: textured_rgb(rng, 32, 32) for stem in ("a", "b")})


@pytest.fixture(scope="session")
def niqe_corpus() -> list[LumaPlane]:
    corpus_rng = np.random.default_rng(7)
    return [LumaPlane(textured(corpus_rng, 64, 64)) for _ in range(10)]


@pytest.fixture(scope="session")
def niqe_model(niqe_corpus):
    """Small-patch pristine model fitted on synthetic textures."""
    return fit_niqe_model(niqe_corpus, patch_size=NIQE_PATCH)
