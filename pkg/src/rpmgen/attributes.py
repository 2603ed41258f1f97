"""Attribute vocabulary and value tables for the panel grammar.

Number and Position live on a component's layout; Type, Size and Color belong
to individual entities. Uniformity and Orientation are noise attributes: they
add visual variation but never carry a rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple


class Attribute(str, enum.Enum):
    NUMBER = "Number"
    POSITION = "Position"
    TYPE = "Type"
    SIZE = "Size"
    COLOR = "Color"
    UNIFORMITY = "Uniformity"
    ORIENTATION = "Orientation"


RULE_ATTRIBUTES: Tuple[Attribute, ...] = (
    Attribute.NUMBER,
    Attribute.POSITION,
    Attribute.TYPE,
    Attribute.SIZE,
    Attribute.COLOR,
)
NOISE_ATTRIBUTES: Tuple[Attribute, ...] = (Attribute.UNIFORMITY, Attribute.ORIENTATION)

# Entity-level value tables. Rules do index arithmetic on positions into these
# tables; the renderer maps indices back to shapes, fractions and intensities.
TYPE_NAMES = ("triangle", "square", "pentagon", "hexagon", "circle")
SIZE_VALUES = (0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
COLOR_VALUES = (255, 224, 196, 168, 140, 112, 84, 56, 28, 0)
ANGLE_DEGREES = (-135, -90, -45, 0, 45, 90, 135, 180)


@dataclass(frozen=True)
class AttributeDomain:
    """Ordered finite value set for one attribute of one component.

    Value representation varies by attribute: Number values are entity counts,
    Position values are sorted slot-index tuples, Type/Size/Color/Orientation
    values are indices into the tables above, Uniformity values are booleans.
    """

    attribute: Attribute
    values: tuple
    slot_count: Optional[int] = None  # set for Number and Position

    def __post_init__(self):
        if len(set(self.values)) != len(self.values):
            raise ValueError("domain values must be distinct")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.values)})

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, value) -> bool:
        return value in self._index

    def index_of(self, value) -> int:
        try:
            return self._index[value]
        except KeyError:
            raise ValueError(f"{value!r} not in {self.attribute.value} domain") from None
