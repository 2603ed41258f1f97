"""Rasterize symbolic panels into 8-bit grayscale images.

Entities are regular polygons (or circles) drawn inside their slot
rectangles: scaled by the Size fraction, filled with the Color intensity,
outlined in black, rotated about the slot center by the Orientation angle.
Rendering is anti-alias free so identical states give identical bytes.
"""

import io
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from PIL import Image, ImageDraw, ImageFont

from .attributes import ANGLE_DEGREES, COLOR_VALUES, SIZE_VALUES
from .grammar import PanelState

PANEL_SIZE = 160
_STROKE = 2
_BACKGROUND = 255

# sheet geometry: 3x3 matrix over a 2x4 candidate strip with index labels
_PAD = 16
_GAP = 8
_LABEL_H = 24
_MATRIX_W = 3 * PANEL_SIZE + 2 * _GAP
_STRIP_W = 4 * PANEL_SIZE + 3 * _GAP
SHEET_W = _STRIP_W + 2 * _PAD
_MATRIX_X = (SHEET_W - _MATRIX_W) // 2
_STRIP_Y = _PAD + 3 * PANEL_SIZE + 2 * _GAP + _LABEL_H
SHEET_H = _STRIP_Y + 2 * (PANEL_SIZE + _LABEL_H) + _PAD


@dataclass(eq=False)
class PanelImage:
    width: int
    height: int
    pixels: np.ndarray  # uint8, row-major (height, width)


def _vertices(type_idx: int, cx: float, cy: float, r: float,
              angle_deg: float) -> List[Tuple[float, float]]:
    sides = (3, 4, 5, 6)[type_idx]
    # squares sit axis-aligned at angle 0, the other polygons apex-up
    start = -90.0 + (45.0 if sides == 4 else 0.0) + angle_deg
    pts = []
    for k in range(sides):
        a = math.radians(start + 360.0 * k / sides)
        pts.append((cx + r * math.cos(a), cy + r * math.sin(a)))
    return pts


def _draw_entity(draw: ImageDraw.ImageDraw, rect, entity) -> None:
    x0, y0, x1, y1 = (v * PANEL_SIZE for v in rect)
    cx, cy = (x0 + x1) / 2.0, (y0 + y1) / 2.0
    r = SIZE_VALUES[entity.size_idx] * min(x1 - x0, y1 - y0) / 2.0
    fill = COLOR_VALUES[entity.color_idx]
    if entity.type_idx == 4:  # circle; rotation is a no-op
        box = (cx - r, cy - r, cx + r, cy + r)
        draw.ellipse(box, fill=fill, outline=0, width=_STROKE)
        return
    pts = _vertices(entity.type_idx, cx, cy, r,
                    ANGLE_DEGREES[entity.angle_idx])
    draw.polygon(pts, fill=fill)
    draw.line(pts + pts[:1], fill=0, width=_STROKE, joint="curve")


def _render_to_pil(panel: PanelState) -> Image.Image:
    im = Image.new("L", (PANEL_SIZE, PANEL_SIZE), _BACKGROUND)
    draw = ImageDraw.Draw(im)
    # components in declaration order: outside layouts first, inside on top
    for spec, comp in zip(panel.config.components, panel.components):
        for slot, entity in zip(comp.position, comp.entities):
            _draw_entity(draw, spec.slots[slot], entity)
    return im


def render_panel(panel: PanelState) -> PanelImage:
    im = _render_to_pil(panel)
    return PanelImage(PANEL_SIZE, PANEL_SIZE, np.asarray(im, dtype=np.uint8))


def sheet_panel_origins():
    """Pixel origins of the 9 matrix cells and the 8 candidate cells."""
    matrix = tuple(
        (_MATRIX_X + c * (PANEL_SIZE + _GAP), _PAD + r * (PANEL_SIZE + _GAP))
        for r in range(3) for c in range(3))
    strip = tuple(
        (_PAD + c * (PANEL_SIZE + _GAP),
         _STRIP_Y + r * (PANEL_SIZE + _LABEL_H))
        for r in range(2) for c in range(4))
    return matrix, strip


def _centered_text(draw, cx, cy, text, font):
    bbox = draw.textbbox((0, 0), text, font=font)
    draw.text((cx - (bbox[2] - bbox[0]) / 2.0 - bbox[0],
               cy - (bbox[3] - bbox[1]) / 2.0 - bbox[1]), text, fill=0,
              font=font)


def render_sheet(problem) -> PanelImage:
    """Preview: the 8 context panels with a question-mark cell, then the
    numbered answer candidates."""
    im = Image.new("L", (SHEET_W, SHEET_H), _BACKGROUND)
    draw = ImageDraw.Draw(im)
    big = ImageFont.load_default(size=64)
    small = ImageFont.load_default(size=16)

    matrix, strip = sheet_panel_origins()
    for (x, y) in matrix + strip:
        draw.rectangle((x - 1, y - 1, x + PANEL_SIZE, y + PANEL_SIZE),
                       outline=0, width=1)
    for i, (x, y) in enumerate(matrix[:8]):
        im.paste(_render_to_pil(problem.context[i]), (x, y))
    qx, qy = matrix[8]
    _centered_text(draw, qx + PANEL_SIZE / 2, qy + PANEL_SIZE / 2, "?", big)
    for i, (x, y) in enumerate(strip):
        im.paste(_render_to_pil(problem.candidates[i]), (x, y))
        _centered_text(draw, x + PANEL_SIZE / 2,
                       y + PANEL_SIZE + _LABEL_H / 2, str(i + 1), small)
    return PanelImage(SHEET_W, SHEET_H, np.asarray(im, dtype=np.uint8))


def png_bytes(image: PanelImage) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(image.pixels, mode="L").save(buf, format="PNG")
    return buf.getvalue()
