"""Sampling rule groups and composing the 3x3 problem matrix.

One rule group is drawn per component, the grammar is pruned to the values
the rules admit, then each of the three rows is generated by sampling a
first panel and applying every slot rule across the row.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .attributes import Attribute
from .grammar import (
    CONFIGURATIONS,
    ComponentSpec,
    FigureConfiguration,
    LayoutKind,
    PanelState,
    PrunedSpace,
    UnsatisfiableRulesError,
    assemble_panel,
    attribute_domain,
    prune_slot,
    prune_space,
)
from .rules import (
    RuleGroup,
    RuleSpec,
    RuleType,
    apply_rule,
    instantiation_classes,
    sample_distribute_three,
)

RETRY_BUDGET = 100

_ENTITY_ATTRS = (Attribute.TYPE, Attribute.SIZE, Attribute.COLOR)


class SamplerStuckError(RuntimeError):
    """Rule resampling exhausted its retry budget (domain misconfiguration)."""


@dataclass(frozen=True)
class MatrixDraft:
    """A complete 3x3 matrix; cell (2,2) is the correct answer panel."""

    config: FigureConfiguration
    rule_groups: Tuple[RuleGroup, ...]
    rows: Tuple[Tuple[PanelState, PanelState, PanelState], ...]
    seed: int

    @property
    def context(self) -> Tuple[PanelState, ...]:
        return self.rows[0] + self.rows[1] + self.rows[2][:2]

    @property
    def correct(self) -> PanelState:
        return self.rows[2][2]


@lru_cache(maxsize=None)
def _feasible_classes(config: FigureConfiguration, component_index: int,
                      attribute: Attribute) -> Tuple[RuleSpec, ...]:
    """Instantiation classes whose pruned start set is non-empty."""
    domain = attribute_domain(config, component_index, attribute)
    out = []
    for proto in instantiation_classes(attribute):
        if proto.rule_type is RuleType.DISTRIBUTE_THREE:
            if len(domain) >= 3:
                out.append(proto)
            continue
        try:
            prune_slot(proto, domain)
        except UnsatisfiableRulesError:
            continue
        out.append(proto)
    return tuple(out)


def _draw_slot(config, ci, attribute, rng) -> RuleSpec:
    proto = rng.choice(_feasible_classes(config, ci, attribute))
    if proto.rule_type is RuleType.DISTRIBUTE_THREE:
        domain = attribute_domain(config, ci, attribute)
        return sample_distribute_three(domain, rng, attribute)
    return proto


def sample_rule_groups(config: FigureConfiguration, rng) -> Tuple[RuleGroup, ...]:
    """One 4-slot rule group per component, admitting a non-empty space.

    Layout slots of single-slot components are pinned to Constant on Number
    (nothing else is observable there); the outside component of OutIn keeps
    its Color slot Constant so the inside component stays visible.
    """
    for _ in range(RETRY_BUDGET):
        groups = []
        for ci, comp in enumerate(config.components):
            slots = []
            if len(comp.slots) == 1:
                slots.append(RuleSpec(RuleType.CONSTANT, Attribute.NUMBER))
            else:
                attr = rng.choice((Attribute.NUMBER, Attribute.POSITION))
                slots.append(_draw_slot(config, ci, attr, rng))
            for attr in _ENTITY_ATTRS:
                if attr is Attribute.COLOR and comp.layout_kind is LayoutKind.SINGLE_OUT:
                    slots.append(RuleSpec(RuleType.CONSTANT, Attribute.COLOR))
                else:
                    slots.append(_draw_slot(config, ci, attr, rng))
            groups.append(RuleGroup(ci, tuple(slots)))
        try:
            prune_space(config, groups)
        except UnsatisfiableRulesError:
            continue
        return tuple(groups)
    raise SamplerStuckError(
        f"no satisfiable rule draw for {config.name.value} "
        f"after {RETRY_BUDGET} attempts")


def _release_allowed(comp: ComponentSpec, group: RuleGroup) -> bool:
    # releasing a single entity adds nothing, and non-Constant entity rules
    # must stay visible
    return len(comp.slots) > 1 and all(
        s.rule_type is RuleType.CONSTANT for s in group.slots[1:])


def generate_matrix(config: FigureConfiguration, seed: int,
                    rule_groups: Optional[Sequence[RuleGroup]] = None,
                    allow_release: bool = True) -> MatrixDraft:
    """Generate the full matrix for one problem, deterministically in seed."""
    rng = random.Random(seed)
    if rule_groups is None:
        groups = sample_rule_groups(config, rng)
    else:
        groups = tuple(rule_groups)
    space = prune_space(config, groups)
    uniform = []
    for ci, group in enumerate(groups):
        released = (allow_release and _release_allowed(config.components[ci], group)
                    and rng.random() < 0.5)
        uniform.append(not released)

    rows = []
    for r in range(3):
        triples: list = []
        for ci, group in enumerate(groups):
            comp_space = space.components[ci]
            t: Dict[Attribute, tuple] = {}
            for slot_space, rule in zip(comp_space.slots, group.slots):
                if not uniform[ci] and rule.target in _ENTITY_ATTRS:
                    continue  # released: per-entity noise, no row values
                domain = attribute_domain(config, ci, rule.target)
                v0 = rng.choice(slot_space.starts[r])
                if rule.rule_type is RuleType.ARITHMETIC:
                    v1 = rng.choice(slot_space.seconds[v0])
                else:
                    v1 = apply_rule(rule, (v0,), domain, r)
                v2 = apply_rule(rule, (v0, v1), domain, r)
                t[rule.target] = (v0, v1, v2)
            triples.append(t)

        prev_position = [None] * len(groups)
        row_panels = []
        for col in range(3):
            values = []
            for ci, group in enumerate(groups):
                t = triples[ci]
                v: dict = {Attribute.UNIFORMITY: uniform[ci]}
                layout_attr = group.slots[0].target
                layout_value = t[layout_attr][col]
                if layout_attr is Attribute.POSITION:
                    v[Attribute.POSITION] = layout_value
                else:
                    prev = prev_position[ci]
                    if uniform[ci] and prev is not None and len(prev) == layout_value:
                        v[Attribute.POSITION] = prev  # count unchanged: keep slots
                    else:
                        v[Attribute.NUMBER] = layout_value
                for attr in _ENTITY_ATTRS:
                    v[attr] = t[attr][col] if attr in t else None
                values.append(v)
            panel = assemble_panel(config, values, rng)
            for ci in range(len(groups)):
                prev_position[ci] = panel.components[ci].position
            row_panels.append(panel)
        rows.append(tuple(row_panels))
    return MatrixDraft(config, groups, tuple(rows), seed)
