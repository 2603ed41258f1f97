"""Figure configurations, panel states and constraint pruning.

The grammar has five levels: a scene holds one structure, a structure one or
two components, each component one layout whose slots hold entities. Seven
concrete figure configurations instantiate it. Pruning restricts each rule
slot's sampling space to start values from which a full row can be completed
without leaving any attribute domain.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

from .attributes import (
    ANGLE_DEGREES,
    Attribute,
    AttributeDomain,
    COLOR_VALUES,
    SIZE_VALUES,
    TYPE_NAMES,
)
from .rules import (
    DomainOverflowError,
    RuleGroup,
    RuleSpec,
    RuleType,
    apply_rule,
)


class Structure(str, enum.Enum):
    SINGLETON = "Singleton"
    LEFT_RIGHT = "LeftRight"
    UP_DOWN = "UpDown"
    OUT_IN = "OutIn"


class LayoutKind(str, enum.Enum):
    SINGLE_CENTER = "SingleCenter"
    SINGLE_LEFT = "SingleLeft"
    SINGLE_RIGHT = "SingleRight"
    SINGLE_UP = "SingleUp"
    SINGLE_DOWN = "SingleDown"
    SINGLE_OUT = "SingleOut"
    SINGLE_IN_CENTER = "SingleInCenter"
    GRID_2X2 = "Grid2x2"
    GRID_3X3 = "Grid3x3"


class ConfigName(str, enum.Enum):
    CENTER = "Center"
    GRID_2X2 = "Grid2x2"
    GRID_3X3 = "Grid3x3"
    LEFT_RIGHT = "LeftRight"
    UP_DOWN = "UpDown"
    OUT_IN_CENTER = "OutInCenter"
    OUT_IN_GRID = "OutInGrid"


class DomainLookupError(LookupError):
    """Unknown component index or attribute for a configuration."""


class UnsatisfiableRulesError(ValueError):
    """A rule slot admits no start value; the rule draw must be redone."""


Rect = Tuple[float, float, float, float]


@dataclass(frozen=True)
class ComponentSpec:
    """One component's layout: its kind and entity slot rectangles."""

    layout_kind: LayoutKind
    slots: Tuple[Rect, ...]

    @property
    def max_entities(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class FigureConfiguration:
    name: ConfigName
    structure: Structure
    components: Tuple[ComponentSpec, ...]


def _inset(cell: Rect, margin: float) -> Rect:
    x0, y0, x1, y1 = cell
    return (x0 + margin, y0 + margin, x1 - margin, y1 - margin)


def _grid(bounds: Rect, rows: int, cols: int, margin: float) -> Tuple[Rect, ...]:
    x0, y0, x1, y1 = bounds
    w = (x1 - x0) / cols
    h = (y1 - y0) / rows
    cells = []
    for r in range(rows):
        for c in range(cols):
            cell = (x0 + c * w, y0 + r * h, x0 + (c + 1) * w, y0 + (r + 1) * h)
            cells.append(_inset(cell, margin))
    return tuple(cells)


_FULL: Rect = (0.0, 0.0, 1.0, 1.0)
_INNER: Rect = (0.25, 0.25, 0.75, 0.75)

CONFIGURATIONS: Dict[ConfigName, FigureConfiguration] = {
    ConfigName.CENTER: FigureConfiguration(
        ConfigName.CENTER, Structure.SINGLETON,
        (ComponentSpec(LayoutKind.SINGLE_CENTER, (_FULL,)),)),
    ConfigName.GRID_2X2: FigureConfiguration(
        ConfigName.GRID_2X2, Structure.SINGLETON,
        (ComponentSpec(LayoutKind.GRID_2X2, _grid(_FULL, 2, 2, 0.02)),)),
    ConfigName.GRID_3X3: FigureConfiguration(
        ConfigName.GRID_3X3, Structure.SINGLETON,
        (ComponentSpec(LayoutKind.GRID_3X3, _grid(_FULL, 3, 3, 0.02)),)),
    ConfigName.LEFT_RIGHT: FigureConfiguration(
        ConfigName.LEFT_RIGHT, Structure.LEFT_RIGHT,
        (ComponentSpec(LayoutKind.SINGLE_LEFT, ((0.0, 0.0, 0.5, 1.0),)),
         ComponentSpec(LayoutKind.SINGLE_RIGHT, ((0.5, 0.0, 1.0, 1.0),)))),
    ConfigName.UP_DOWN: FigureConfiguration(
        ConfigName.UP_DOWN, Structure.UP_DOWN,
        (ComponentSpec(LayoutKind.SINGLE_UP, ((0.0, 0.0, 1.0, 0.5),)),
         ComponentSpec(LayoutKind.SINGLE_DOWN, ((0.0, 0.5, 1.0, 1.0),)))),
    ConfigName.OUT_IN_CENTER: FigureConfiguration(
        ConfigName.OUT_IN_CENTER, Structure.OUT_IN,
        (ComponentSpec(LayoutKind.SINGLE_OUT, (_FULL,)),
         ComponentSpec(LayoutKind.SINGLE_IN_CENTER, (_INNER,)))),
    ConfigName.OUT_IN_GRID: FigureConfiguration(
        ConfigName.OUT_IN_GRID, Structure.OUT_IN,
        (ComponentSpec(LayoutKind.SINGLE_OUT, (_FULL,)),
         ComponentSpec(LayoutKind.GRID_2X2, _grid(_INNER, 2, 2, 0.01)))),
}

CONFIG_ORDER: Tuple[ConfigName, ...] = tuple(CONFIGURATIONS)

_BY_SIGNATURE = {
    (cfg.structure, tuple(c.layout_kind for c in cfg.components)): cfg
    for cfg in CONFIGURATIONS.values()
}


def config_from_layouts(structure: Structure,
                        layout_kinds: Tuple[LayoutKind, ...]) -> FigureConfiguration:
    try:
        return _BY_SIGNATURE[(structure, tuple(layout_kinds))]
    except KeyError:
        raise DomainLookupError(
            f"no configuration with structure {structure.value} "
            f"and layouts {[k.value for k in layout_kinds]}") from None


def _is_outside(config: FigureConfiguration, component_index: int) -> bool:
    return config.components[component_index].layout_kind is LayoutKind.SINGLE_OUT


@lru_cache(maxsize=None)
def attribute_domain(config: FigureConfiguration, component_index: int,
                     attribute: Attribute) -> AttributeDomain:
    """The fixed ordered value domain for one attribute of one component.

    The outside component of OutIn structures is restricted to the two
    largest sizes and the lightest color so the inside stays visible.
    """
    if not 0 <= component_index < len(config.components):
        raise DomainLookupError(
            f"{config.name.value} has no component {component_index}")
    comp = config.components[component_index]
    n = len(comp.slots)
    if attribute is Attribute.NUMBER:
        return AttributeDomain(attribute, tuple(range(1, n + 1)), slot_count=n)
    if attribute is Attribute.POSITION:
        values = []
        for size in range(1, n + 1):
            values.extend(combinations(range(n), size))
        return AttributeDomain(attribute, tuple(values), slot_count=n)
    if attribute is Attribute.TYPE:
        return AttributeDomain(attribute, tuple(range(len(TYPE_NAMES))))
    if attribute is Attribute.SIZE:
        if _is_outside(config, component_index):
            return AttributeDomain(attribute, (len(SIZE_VALUES) - 2, len(SIZE_VALUES) - 1))
        return AttributeDomain(attribute, tuple(range(len(SIZE_VALUES))))
    if attribute is Attribute.COLOR:
        if _is_outside(config, component_index):
            return AttributeDomain(attribute, (0,))
        return AttributeDomain(attribute, tuple(range(len(COLOR_VALUES))))
    if attribute is Attribute.UNIFORMITY:
        return AttributeDomain(attribute, (False, True))
    if attribute is Attribute.ORIENTATION:
        return AttributeDomain(attribute, tuple(range(len(ANGLE_DEGREES))))
    raise DomainLookupError(f"unknown attribute {attribute!r}")


# --- panel state -----------------------------------------------------------

@dataclass(frozen=True)
class EntityState:
    """One shape instance; all fields index the tables in attributes.py."""

    type_idx: int
    size_idx: int
    color_idx: int
    angle_idx: int


@dataclass(frozen=True)
class ComponentState:
    number: int
    position: Tuple[int, ...]
    uniformity: bool
    entities: Tuple[EntityState, ...]

    def __post_init__(self):
        if self.number < 1:
            raise ValueError("a component holds at least one entity")
        if len(self.position) != self.number:
            raise ValueError("|position| must equal number")
        if tuple(sorted(set(self.position))) != self.position:
            raise ValueError("position must be a sorted set of slot indices")
        if len(self.entities) != self.number:
            raise ValueError("one entity per occupied slot")
        if self.uniformity:
            shared = {(e.type_idx, e.size_idx, e.color_idx) for e in self.entities}
            if len(shared) > 1:
                raise ValueError("uniformity=true entities must share type/size/color")


@dataclass(frozen=True)
class PanelState:
    config: FigureConfiguration
    components: Tuple[ComponentState, ...]

    def __post_init__(self):
        if len(self.components) != len(self.config.components):
            raise ValueError("component count must match the configuration")


# --- pruning ---------------------------------------------------------------

@dataclass(frozen=True)
class SlotSpace:
    """Admissible first-column values for one rule slot, per matrix row.

    For Arithmetic, `seconds` maps each admissible start to the second-column
    values that keep the row completable.
    """

    attribute: Attribute
    starts: Tuple[tuple, tuple, tuple]
    seconds: Optional[dict] = None


@dataclass(frozen=True)
class ComponentSpace:
    slots: Tuple[SlotSpace, SlotSpace, SlotSpace, SlotSpace]


@dataclass(frozen=True)
class PrunedSpace:
    config: FigureConfiguration
    components: Tuple[ComponentSpace, ...]


def _progression_starts(rule: RuleSpec, domain: AttributeDomain) -> tuple:
    ok = []
    for v0 in domain.values:
        try:
            v1 = apply_rule(rule, (v0,), domain)
            apply_rule(rule, (v0, v1), domain)
        except DomainOverflowError:
            continue
        ok.append(v0)
    return tuple(ok)


def _arithmetic_table(rule: RuleSpec, domain: AttributeDomain) -> dict:
    table = {}
    for v0 in domain.values:
        good = []
        for v1 in domain.values:
            try:
                apply_rule(rule, (v0, v1), domain)
            except DomainOverflowError:
                continue
            good.append(v1)
        if good:
            table[v0] = tuple(good)
    return table


@lru_cache(maxsize=None)
def _prune_fixed(rule: RuleSpec, domain: AttributeDomain) -> SlotSpace:
    if rule.rule_type is RuleType.CONSTANT:
        starts = domain.values
        seconds = None
    elif rule.rule_type is RuleType.PROGRESSION:
        starts = _progression_starts(rule, domain)
        seconds = None
    else:
        seconds = _arithmetic_table(rule, domain)
        starts = tuple(seconds)
    if not starts:
        raise UnsatisfiableRulesError(
            f"{rule.describe()} admits no start in the {domain.attribute.value} domain")
    return SlotSpace(domain.attribute, (starts,) * 3, seconds)


def prune_slot(rule: RuleSpec, domain: AttributeDomain) -> SlotSpace:
    """Admissible start values for one rule on one domain."""
    if rule.rule_type is RuleType.DISTRIBUTE_THREE:
        if rule.rows is None:
            raise ValueError("DistributeThree must be parameterized before pruning")
        for row in rule.rows:
            for v in row:
                if v not in domain:
                    raise UnsatisfiableRulesError(
                        f"DistributeThree value {v!r} outside the "
                        f"{domain.attribute.value} domain")
        return SlotSpace(domain.attribute,
                         tuple((rule.rows[r][0],) for r in range(3)))
    return _prune_fixed(rule, domain)


def prune_space(config: FigureConfiguration,
                rule_groups: Sequence[RuleGroup]) -> PrunedSpace:
    """Per-slot admissible start sets for a full rule draw.

    Raises UnsatisfiableRulesError when any slot ends up empty, in which case
    the caller must resample the rules.
    """
    if len(rule_groups) != len(config.components):
        raise ValueError("one rule group per component")
    comps = []
    for ci, group in enumerate(rule_groups):
        slots = tuple(
            prune_slot(slot, attribute_domain(config, ci, slot.target))
            for slot in group.slots)
        comps.append(ComponentSpace(slots))
    return PrunedSpace(config, tuple(comps))


# --- sampling --------------------------------------------------------------

def assemble_panel(config: FigureConfiguration, values: Sequence[dict],
                   rng) -> PanelState:
    """Build a PanelState from per-component attribute values.

    Each dict may give POSITION directly (NUMBER follows from it) or NUMBER
    alone (a slot subset of that size is drawn). TYPE/SIZE/COLOR of None mean
    the component is noise-released: each entity draws its own values.
    """
    comps = []
    for ci, spec in enumerate(config.components):
        v = values[ci]
        position = v.get(Attribute.POSITION)
        if position is None:
            number = v[Attribute.NUMBER]
            position = tuple(sorted(rng.sample(range(len(spec.slots)), number)))
        else:
            number = len(position)
        angle_values = attribute_domain(config, ci, Attribute.ORIENTATION).values
        free = {}
        for attr in (Attribute.TYPE, Attribute.SIZE, Attribute.COLOR):
            if v.get(attr) is None:
                free[attr] = attribute_domain(config, ci, attr).values
        entities = []
        for _ in position:
            t = rng.choice(free[Attribute.TYPE]) if Attribute.TYPE in free else v[Attribute.TYPE]
            s = rng.choice(free[Attribute.SIZE]) if Attribute.SIZE in free else v[Attribute.SIZE]
            c = rng.choice(free[Attribute.COLOR]) if Attribute.COLOR in free else v[Attribute.COLOR]
            entities.append(EntityState(t, s, c, rng.choice(angle_values)))
        comps.append(ComponentState(number, position, v[Attribute.UNIFORMITY],
                                    tuple(entities)))
    return PanelState(config, tuple(comps))


def sample_panel(space: PrunedSpace, rng, row_index: int = 0,
                 uniformity: Optional[Sequence[bool]] = None) -> PanelState:
    """Draw one first-column panel from the pruned space."""
    config = space.config
    if uniformity is None:
        uniformity = (True,) * len(config.components)
    values = []
    for ci, comp_space in enumerate(space.components):
        layout, type_slot, size_slot, color_slot = comp_space.slots
        v = {layout.attribute: rng.choice(layout.starts[row_index]),
             Attribute.UNIFORMITY: uniformity[ci]}
        for slot, attr in ((type_slot, Attribute.TYPE), (size_slot, Attribute.SIZE),
                           (color_slot, Attribute.COLOR)):
            v[attr] = None if not uniformity[ci] else rng.choice(slot.starts[row_index])
        values.append(v)
    return assemble_panel(config, values, rng)
