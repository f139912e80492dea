"""Axis-aligned bounding boxes and the geometry used throughout the toolkit.

Boxes are ``[x, y, w, h]`` with a top-left origin.  Coordinates are either
absolute pixels (``normalized=False``) or fractions of the frame dimensions
in ``[0, 1]`` (``normalized=True``); every box carries its own mode flag so
mixed-mode arithmetic can be rejected instead of silently producing garbage.
"""

from __future__ import annotations

from dataclasses import dataclass

NORMALIZED_EPS = 1e-6


@dataclass(frozen=True)
class BoundingBox:
    """An ``[x, y, w, h]`` box, pixel-space or normalized to frame size."""

    x: float
    y: float
    w: float
    h: float
    normalized: bool = False

    def __post_init__(self) -> None:
        if self.w < 0 or self.h < 0:
            raise ValueError(f"box has negative size: w={self.w}, h={self.h}")
        if self.normalized:
            if not (-NORMALIZED_EPS <= self.x and -NORMALIZED_EPS <= self.y):
                raise ValueError(f"normalized box origin out of range: ({self.x}, {self.y})")
            if self.x > 1 + NORMALIZED_EPS or self.y > 1 + NORMALIZED_EPS:
                raise ValueError(f"normalized box origin out of range: ({self.x}, {self.y})")
            if self.x + self.w > 1 + NORMALIZED_EPS or self.y + self.h > 1 + NORMALIZED_EPS:
                raise ValueError(
                    f"normalized box exceeds unit square: x+w={self.x + self.w}, y+h={self.y + self.h}"
                )

    @property
    def area(self) -> float:
        return self.w * self.h

    def as_list(self) -> list[float]:
        return [self.x, self.y, self.w, self.h]

    def clamped(self, width: float, height: float) -> "BoundingBox":
        """Clip a pixel box to the frame rectangle, keeping w, h non-negative."""
        if self.normalized:
            raise ValueError("clamped() applies to pixel boxes; use clamp bounds of 1.0 manually")
        x = min(max(self.x, 0.0), width)
        y = min(max(self.y, 0.0), height)
        x2 = min(max(self.x + self.w, 0.0), width)
        y2 = min(max(self.y + self.h, 0.0), height)
        return BoundingBox(x, y, max(x2 - x, 0.0), max(y2 - y, 0.0), normalized=False)


def iou(a: BoundingBox, b: BoundingBox) -> float:
    """Intersection over union of two boxes in the same coordinate mode.

    Degenerate boxes (zero width or height) are legal and score 0 against
    everything; a pair of zero-area boxes also scores 0 so that downstream
    metric averages never see NaN.
    """
    if a.normalized != b.normalized:
        raise ValueError("cannot compute IoU of a normalized and a pixel box")
    if a == b:
        return 1.0 if a.area > 0 else 0.0
    ix = max(a.x, b.x)
    iy = max(a.y, b.y)
    ix2 = min(a.x + a.w, b.x + b.w)
    iy2 = min(a.y + a.h, b.y + b.h)
    inter = max(ix2 - ix, 0.0) * max(iy2 - iy, 0.0)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    # rounding can push the ratio a hair past 1; the true value never exceeds it
    return min(inter / union, 1.0)


def normalize_box(b: BoundingBox, width: float, height: float) -> BoundingBox:
    """Convert a pixel box to fractions of the frame dimensions."""
    if b.normalized:
        raise ValueError("box is already normalized")
    if width < 1 or height < 1:
        raise ValueError(f"frame dimensions must be >= 1, got {width}x{height}")
    return BoundingBox(b.x / width, b.y / height, b.w / width, b.h / height, normalized=True)


def denormalize_box(b: BoundingBox, width: float, height: float) -> BoundingBox:
    """Convert a normalized box back to absolute pixels."""
    if not b.normalized:
        raise ValueError("box is already in pixel coordinates")
    if width < 1 or height < 1:
        raise ValueError(f"frame dimensions must be >= 1, got {width}x{height}")
    return BoundingBox(b.x * width, b.y * height, b.w * width, b.h * height, normalized=False)
