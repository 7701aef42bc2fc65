"""Raster primitives shared by the whole pipeline.

Images are single-channel float rasters with intensities in [0, 1] and an
isotropic physical pixel pitch in mm.  Masks are boolean rasters tagged with
the coordinate frame they live in.  All operations here are pure functions on
immutable inputs and safe to call concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import FormatError, InvalidDimensions, UnsupportedFormat

# coordinate frame tags
FRAME_FULL = "full_res"
FRAME_LOCATOR = "locator_res"
FRAME_CROP_HALF = "crop_half"

HALF_INFERIOR = "inferior"
HALF_SUPERIOR = "superior"


@dataclass(frozen=True)
class Image:
    """Single-channel intensity raster; ``pixels`` is (height, width)."""

    pixels: np.ndarray
    pitch_mm: float

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2:
            raise InvalidDimensions(f"image pixels must be 2-D, got shape {px.shape}")
        if not np.isfinite(px).all():
            raise InvalidDimensions("image contains non-finite intensities")
        if px.size and (px.min() < 0.0 or px.max() > 1.0):
            raise InvalidDimensions("image intensities must lie in [0, 1]")
        if not self.pitch_mm > 0:
            raise InvalidDimensions(f"pitch_mm must be positive, got {self.pitch_mm}")
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class Mask:
    """Boolean raster tagged with the geometry frame it belongs to."""

    bits: np.ndarray
    frame: str = FRAME_FULL

    def __post_init__(self):
        b = np.asarray(self.bits)
        if b.ndim != 2:
            raise InvalidDimensions(f"mask bits must be 2-D, got shape {b.shape}")
        object.__setattr__(self, "bits", b.astype(bool))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def count(self) -> int:
        return int(self.bits.sum())


@dataclass(frozen=True)
class CropTransform:
    """Affine bookkeeping from full-resolution px to (half-)crop px.

    The forward map is: subtract the crop origin, optionally select and
    mirror one half, then apply the factor-``downsample`` block average.
    Coordinates are continuous px (pixel centers at integers); the round
    trip through :meth:`apply` and :meth:`invert` is exact.
    """

    origin_x: int
    origin_y: int
    crop_w: int
    crop_h: int
    slice_index: Optional[int] = None
    half: Optional[str] = None  # None | "inferior" | "superior"
    mirrored: bool = False
    downsample: int = 1

    def apply(self, x: float, y: float) -> Tuple[float, float]:
        u = x - self.origin_x
        v = y - self.origin_y
        if self.half is not None:
            hw = self.crop_w // 2
            if self.half == HALF_INFERIOR:
                u = (hw - 1) - u
            else:
                u = u - hw
        if self.downsample != 1:
            d = float(self.downsample)
            u = (u - (d - 1) / 2.0) / d
            v = (v - (d - 1) / 2.0) / d
        return u, v

    def invert(self, u: float, v: float) -> Tuple[float, float]:
        if self.downsample != 1:
            d = float(self.downsample)
            u = u * d + (d - 1) / 2.0
            v = v * d + (d - 1) / 2.0
        if self.half is not None:
            hw = self.crop_w // 2
            if self.half == HALF_INFERIOR:
                u = (hw - 1) - u
            else:
                u = u + hw
        return u + self.origin_x, v + self.origin_y


def resize_bilinear(img: Image, out_w: int, out_h: int) -> Image:
    """Resample to (out_w, out_h) with bilinear weights and edge clamping.

    Pixel centers follow the half-pixel convention, so resizing to the same
    dimensions is the identity and constant images stay constant.  The pitch
    is rescaled by the width ratio.
    """
    if out_w < 1 or out_h < 1:
        raise InvalidDimensions(f"resize target must be >= 1x1, got {out_w}x{out_h}")
    src = img.pixels
    h, w = src.shape
    if (out_w, out_h) == (w, h):
        return Image(src.copy(), img.pitch_mm)

    xs = (np.arange(out_w) + 0.5) * (w / out_w) - 0.5
    ys = (np.arange(out_h) + 0.5) * (h / out_h) - 0.5
    x0 = np.clip(np.floor(xs).astype(int), 0, w - 1)
    y0 = np.clip(np.floor(ys).astype(int), 0, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = np.clip(xs - x0, 0.0, 1.0)
    fy = np.clip(ys - y0, 0.0, 1.0)

    top = src[y0][:, x0] * (1 - fx) + src[y0][:, x1] * fx
    bot = src[y1][:, x0] * (1 - fx) + src[y1][:, x1] * fx
    out = top * (1 - fy)[:, None] + bot * fy[:, None]
    out = np.clip(out, 0.0, 1.0)
    return Image(out.astype(src.dtype), img.pitch_mm * (w / out_w))


def downsample2(img: Image) -> Image:
    """Average 2x2 blocks; dims must be even.  Pitch doubles."""
    h, w = img.pixels.shape
    if h % 2 or w % 2:
        raise InvalidDimensions(f"downsample2 needs even dims, got {w}x{h}")
    px = img.pixels
    out = (
        px.reshape(h // 2, 2, w // 2, 2).astype(np.float64).mean(axis=(1, 3))
    ).astype(px.dtype)
    return Image(out, img.pitch_mm * 2.0)


def downsample2_mask(mask: Mask) -> Mask:
    """Union-pool a mask by 2x2 blocks: true if any source bit is true."""
    h, w = mask.bits.shape
    if h % 2 or w % 2:
        raise InvalidDimensions(f"downsample2 needs even dims, got {w}x{h}")
    out = mask.bits.reshape(h // 2, 2, w // 2, 2).any(axis=(1, 3))
    return Mask(out, mask.frame)


def crop_window(
    img: Image,
    center_x: float,
    anchor_y: float,
    crop_w: int = 1920,
    crop_h: int = 768,
    anchor_row: int = 600,
) -> Tuple[Image, CropTransform]:
    """Extract a crop with ``center_x`` at the horizontal middle and the
    anchor row placed at ``anchor_row``.  Out-of-bounds regions fill with 0.
    """
    ox = int(round(center_x)) - crop_w // 2
    oy = int(round(anchor_y)) - anchor_row
    out = _window(img.pixels, ox, oy, crop_w, crop_h, fill=0.0)
    tf = CropTransform(origin_x=ox, origin_y=oy, crop_w=crop_w, crop_h=crop_h)
    return Image(out, img.pitch_mm), tf


def crop_mask(mask: Mask, tf: CropTransform) -> Mask:
    """Apply the crop part of a transform to a mask (no half split)."""
    out = _window(mask.bits, tf.origin_x, tf.origin_y, tf.crop_w, tf.crop_h, fill=False)
    return Mask(out, mask.frame)


def _window(arr: np.ndarray, ox: int, oy: int, w: int, h: int, fill):
    out = np.full((h, w), fill, dtype=arr.dtype)
    sx0, sx1 = max(ox, 0), min(ox + w, arr.shape[1])
    sy0, sy1 = max(oy, 0), min(oy + h, arr.shape[0])
    if sx0 < sx1 and sy0 < sy1:
        out[sy0 - oy : sy1 - oy, sx0 - ox : sx1 - ox] = arr[sy0:sy1, sx0:sx1]
    return out


def mirror_horizontal(img: Image) -> Image:
    """Swap column c with column width-1-c."""
    return Image(img.pixels[:, ::-1].copy(), img.pitch_mm)


def mirror_horizontal_mask(mask: Mask) -> Mask:
    return Mask(mask.bits[:, ::-1].copy(), mask.frame)


def draw_band(
    width: int,
    height: int,
    polyline: Sequence[Tuple[float, float]],
    band_width: int,
    frame: str = FRAME_FULL,
) -> Mask:
    """Rasterize a band of odd width ``band_width`` around a polyline.

    A pixel is set iff the Euclidean distance from its center to the
    polyline is <= band_width / 2.  An empty polyline gives an empty mask.
    """
    if band_width < 1 or band_width % 2 == 0:
        raise ValueError(f"band_width must be odd and >= 1, got {band_width}")
    bits = np.zeros((height, width), dtype=bool)
    pts = [(float(x), float(y)) for x, y in polyline]
    if not pts:
        return Mask(bits, frame)
    radius = band_width / 2.0
    segments = list(zip(pts, pts[1:])) if len(pts) > 1 else [(pts[0], pts[0])]
    for (x0, y0), (x1, y1) in segments:
        _mark_segment(bits, x0, y0, x1, y1, radius)
    return Mask(bits, frame)


def _mark_segment(bits, x0, y0, x1, y1, radius):
    h, w = bits.shape
    lo_x = max(int(np.floor(min(x0, x1) - radius)), 0)
    hi_x = min(int(np.ceil(max(x0, x1) + radius)), w - 1)
    lo_y = max(int(np.floor(min(y0, y1) - radius)), 0)
    hi_y = min(int(np.ceil(max(y0, y1) + radius)), h - 1)
    if lo_x > hi_x or lo_y > hi_y:
        return
    ys, xs = np.mgrid[lo_y : hi_y + 1, lo_x : hi_x + 1]
    dx, dy = x1 - x0, y1 - y0
    seg_len2 = dx * dx + dy * dy
    if seg_len2 == 0.0:
        d2 = (xs - x0) ** 2 + (ys - y0) ** 2
    else:
        t = np.clip(((xs - x0) * dx + (ys - y0) * dy) / seg_len2, 0.0, 1.0)
        d2 = (xs - (x0 + t * dx)) ** 2 + (ys - (y0 + t * dy)) ** 2
    bits[lo_y : hi_y + 1, lo_x : hi_x + 1] |= d2 <= radius * radius


# ---------------------------------------------------------------------------
# PGM I/O: binary P5, 8-bit, maxval 255.  Masks are stored as 0/255.

_PGM_HEADER = re.compile(rb"^P5\s+(?:#.*\n\s*)*(\d+)\s+(\d+)\s+(\d+)\s")


def write_pgm(path, obj) -> None:
    """Write an Image (quantized to 8 bits) or a Mask (0/255) as binary PGM."""
    if isinstance(obj, Image):
        data = np.clip(np.rint(obj.pixels * 255.0), 0, 255).astype(np.uint8)
    elif isinstance(obj, Mask):
        data = np.where(obj.bits, 255, 0).astype(np.uint8)
    else:
        data = np.asarray(obj, dtype=np.uint8)
    h, w = data.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(data.tobytes())


def read_pgm(path) -> np.ndarray:
    """Read a binary P5 PGM with maxval 255; returns a (h, w) uint8 array."""
    with open(path, "rb") as f:
        raw = f.read()
    m = _PGM_HEADER.match(raw)
    if m is None:
        raise FormatError(f"{path}: not a binary P5 PGM")
    w, h, maxval = (int(g) for g in m.groups())
    if maxval != 255:
        raise UnsupportedFormat(f"{path}: maxval {maxval} unsupported (want 255)")
    body = raw[m.end() :]
    if len(body) < w * h:
        raise FormatError(f"{path}: truncated pixel data ({len(body)} < {w * h})")
    return np.frombuffer(body[: w * h], dtype=np.uint8).reshape(h, w)


def image_from_u8(data: np.ndarray, pitch_mm: float) -> Image:
    return Image(np.asarray(data, dtype=np.float64) / 255.0, pitch_mm)


def mask_from_u8(data: np.ndarray, frame: str = FRAME_FULL) -> Mask:
    return Mask(np.asarray(data) >= 128, frame)
