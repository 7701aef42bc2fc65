"""Image-scale presets.

Two geometries are supported everywhere:

* ``full``  - native B-scan resolution, 2133x1466 px over a 16x11 mm field
  of view.
* ``desk``  - every pixel constant scaled by 512/2133 so the whole pipeline
  (including training) runs in minutes on a CPU.  Physical sizes in mm are
  identical; only the rasters shrink.

Crop dimensions are rounded so that after the half split and the factor-2
downsample the segmenter input divides evenly through a four-level pooling
ladder (multiples of 16).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidConfig

#: scale factor between the desk preset and native resolution
DESK_SCALE = 512.0 / 2133.0


@dataclass(frozen=True)
class Preset:
    name: str
    # B-scan raster
    slice_w: int
    slice_h: int
    pitch_mm: float
    # locator input raster
    locator_w: int
    locator_h: int
    locator_pitch_mm: float
    # spur-anchored crop raster (full-resolution pitch)
    crop_w: int
    crop_h: int
    anchor_row: int
    # registry pitch of the downsampled half-crop frame
    crop_half_pitch_mm: float
    # band width of detachment annotation masks
    band_px: int
    # segmentation augmentation: +/- uniform integer spur jitter
    seg_noise_px: int
    # locator augmentation: +/- translation in locator px
    loc_trans_px: int

    @property
    def half_w(self) -> int:
        return self.crop_w // 2

    @property
    def half_ds_w(self) -> int:
        """Width of one downsampled half crop (segmenter input)."""
        return self.crop_w // 4

    @property
    def half_ds_h(self) -> int:
        return self.crop_h // 2

    @property
    def center_col(self) -> float:
        """Horizontal center of the B-scan raster in px."""
        return (self.slice_w - 1) / 2.0


FULL = Preset(
    name="full",
    slice_w=2133,
    slice_h=1466,
    pitch_mm=16.0 / 2133.0,
    locator_w=512,
    locator_h=352,
    locator_pitch_mm=16.0 / 512.0,
    crop_w=1920,
    crop_h=768,
    anchor_row=600,
    crop_half_pitch_mm=0.015,
    band_px=15,
    seg_noise_px=60,
    loc_trans_px=20,
)

DESK = Preset(
    name="desk",
    slice_w=512,
    slice_h=352,
    pitch_mm=16.0 / 512.0,
    locator_w=128,
    locator_h=80,
    locator_pitch_mm=16.0 / 128.0,
    crop_w=448,
    crop_h=192,
    anchor_row=144,
    crop_half_pitch_mm=0.0625,
    band_px=3,
    seg_noise_px=14,
    loc_trans_px=5,
)

_PRESETS = {"full": FULL, "desk": DESK}


def get_preset(name: str) -> Preset:
    try:
        return _PRESETS[name]
    except KeyError:
        raise InvalidConfig(f"unknown preset {name!r} (expected 'full' or 'desk')") from None
