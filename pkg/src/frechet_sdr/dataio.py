"""File formats: UCI optdigits, headerless CSV matrices, SVG scatter plots."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._errors import ParseError, ValidationError
from .metrics import check_distance_matrix

ORIENTATIONS = ("upper-as-x", "lower-as-x")
PALETTE = ("red", "green", "blue", "orange", "purple", "brown", "magenta",
           "olive", "cyan", "gray")


@dataclass(frozen=True)
class DigitImage:
    pixels: np.ndarray  # (8, 8) integers in [0, 16]
    label: int

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=int).reshape(8, 8)
        if px.min() < 0 or px.max() > 16:
            raise ValidationError("pixel values must lie in [0, 16]")
        if not 0 <= self.label <= 9:
            raise ValidationError("label must lie in [0, 9]")
        object.__setattr__(self, "pixels", px)


@dataclass(frozen=True)
class HalfSplit:
    X: np.ndarray
    Y: np.ndarray
    orientation: str


def load_optdigits(path, classes=None):
    """Read an optdigits ``.tra``/``.tes`` file.

    Each line holds 64 pixel counts followed by the label. Returns the
    images whose label is in ``classes`` (all if ``None``), in file order.
    """
    wanted = None if classes is None else {int(c) for c in classes}
    images = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 65:
                raise ParseError(f"{path}:{lineno}: expected 65 fields, got {len(parts)}")
            try:
                values = [int(v) for v in parts]
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-integer field") from exc
            label = values[64]
            if wanted is not None and label not in wanted:
                continue
            try:
                images.append(DigitImage(np.array(values[:64]), label))
            except ValidationError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}") from exc
    return images


def split_halves(img, orientation="upper-as-x"):
    if orientation not in ORIENTATIONS:
        raise ValidationError(f"orientation must be one of {ORIENTATIONS}")
    upper = img.pixels[:4].ravel().astype(float)
    lower = img.pixels[4:].ravel().astype(float)
    if orientation == "upper-as-x":
        return HalfSplit(upper, lower, orientation)
    return HalfSplit(lower, upper, orientation)


def digits_arrays(images, orientation="upper-as-x"):
    """Stack the halves of many images: ``(X, Y, labels)``."""
    splits = [split_halves(img, orientation) for img in images]
    X = np.array([s.X for s in splits]).reshape(len(splits), 32)
    Y = np.array([s.Y for s in splits]).reshape(len(splits), 32)
    return X, Y, np.array([img.label for img in images], dtype=int)


def write_csv_matrix(path, matrix):
    A = np.asarray(matrix, dtype=float)
    if A.ndim == 1:
        A = A[:, None]
    with open(path, "w") as fh:
        for row in A:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")


def read_csv_matrix(path):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(v) for v in line.split(",")])
            except ValueError as exc:
                raise ParseError(f"{path}: row {lineno}: not a number") from exc
            if len(rows[-1]) != len(rows[0]):
                raise ParseError(
                    f"{path}: row {lineno} has {len(rows[-1])} values, expected {len(rows[0])}")
    if not rows:
        raise ParseError(f"{path}: empty input")
    return np.array(rows)


def read_distance_matrix(path):
    return check_distance_matrix(read_csv_matrix(path))


def emit_scatter_svg(points, labels, path, size=400, radius=2.5):
    """Write a standalone SVG scatter plot, one colour per label.

    Labels are coloured in sorted order from a fixed palette (red, green,
    blue, ...), which cycles if there are more labels than colours.
    """
    P = np.asarray(points, dtype=float)
    labels = np.asarray(labels).ravel()
    if P.ndim != 2 or P.shape[1] != 2 or P.shape[0] < 1:
        raise ValidationError("points must have shape (n, 2) with n >= 1")
    if labels.shape[0] != P.shape[0]:
        raise ValidationError("one label per point is required")

    lo, hi = P.min(axis=0), P.max(axis=0)
    span = hi - lo
    span[span == 0] = 1.0
    lo = lo - 0.05 * span
    span = span * 1.1
    colour = {lab: PALETTE[i % len(PALETTE)] for i, lab in enumerate(sorted(set(labels.tolist())))}

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect x="0" y="0" width="{size}" height="{size}" fill="white" stroke="black"/>']
    for (x, y), lab in zip(P, labels.tolist()):
        cx = (x - lo[0]) / span[0] * size
        cy = size - (y - lo[1]) / span[1] * size
        out.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{radius}" '
                   f'fill="{colour[lab]}" fill-opacity="0.7"/>')
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")
