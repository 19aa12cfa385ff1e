from __future__ import annotations

from dataclasses import dataclass
import logging
from pathlib import Path

from ..errors import DatasetError

log = logging.getLogger(__name__)

IMAGE_SUFFIX = ".png"


@dataclass(frozen=True)
class ImagePair:
    image_id: str
    hr: Path
    sr: Path


@dataclass(frozen=True)
class DatasetManifest:
    """HR/SR pairs matched by file stem, in lexicographic stem order."""

    name: str
    pairs: tuple[ImagePair, ...]
    unmatched_hr: tuple[str, ...] = ()
    unmatched_sr: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.pairs)


def list_images(directory: Path) -> dict[str, Path]:
    """PNG files of `directory` keyed by stem."""
    directory = Path(directory)
    if not directory.is_dir():
        raise DatasetError(f"Not a directory: {directory}")
    try:
        entries = list(directory.iterdir())
    except OSError as exc:
        raise DatasetError(f"Cannot read {directory}: {exc}") from exc
    return {p.stem: p for p in sorted(entries) if p.is_file() and p.suffix.lower() == IMAGE_SUFFIX}


def scan_dataset(hr_dir: Path, sr_dir: Path, name: str | None = None) -> DatasetManifest:
    """Pair HR and SR images sharing a file stem."""
    hr_files = list_images(hr_dir)
    sr_files = list_images(sr_dir)
    common = sorted(hr_files.keys() & sr_files.keys())
    if not common:
        raise DatasetError(f"No matching image stems between {hr_dir} and {sr_dir}")

    manifest = DatasetManifest(
        name=name or Path(sr_dir).name,
        pairs=tuple(ImagePair(stem, hr_files[stem], sr_files[stem]) for stem in common),
        unmatched_hr=tuple(sorted(hr_files.keys() - sr_files.keys())),
        unmatched_sr=tuple(sorted(sr_files.keys() - hr_files.keys())),
    )
    for stem in manifest.unmatched_hr:
        log.warning(f"HR image without SR partner: {stem}")
    for stem in manifest.unmatched_sr:
        log.warning(f"SR image without HR partner: {stem}")
    log.info(f"Dataset '{manifest.name}': {len(manifest)} pairs")
    return manifest
