"""Forge the 8-candidate answer set from a sampled matrix.

Each distractor copies the correct panel and re-renders exactly one rule
slot with an in-domain alternative that fails the slot's row-3 check, so
the correct answer stays the unique full scorer. Edits are drawn round-robin
across the checkable slots of all components to spread the decoys.
"""

import random
from collections import deque
from dataclasses import dataclass, replace
from typing import Tuple

from .attributes import ANGLE_DEGREES, Attribute
from .grammar import (
    ComponentState,
    EntityState,
    FigureConfiguration,
    PanelState,
    attribute_domain,
)
from .rules import RuleGroup
from .solver import (
    AmbiguityError,
    analyze_context,
    entity_slot_satisfied,
    layout_satisfied,
    solve,
)

_FIELDS = {Attribute.TYPE: "type_idx", Attribute.SIZE: "size_idx",
           Attribute.COLOR: "color_idx"}


class ForgeFailureError(RuntimeError):
    """Fewer than 7 distinct rule-breaking edits were available."""


@dataclass(frozen=True)
class Problem:
    id: str
    config: FigureConfiguration
    context: Tuple[PanelState, ...]
    candidates: Tuple[PanelState, ...]
    target: int
    rule_groups: Tuple[RuleGroup, ...]
    fold: int
    seed: int

    def __post_init__(self):
        if len(self.context) != 8:
            raise ValueError("a problem context holds exactly 8 panels")
        if len(self.candidates) != 8:
            raise ValueError("an answer set holds exactly 8 candidates")
        if not 0 <= self.target <= 7:
            raise ValueError("target must index a candidate")
        if not 0 <= self.fold <= 9:
            raise ValueError("fold must lie in 0..9")


def _fresh_entities(config, ci, count, template, uniformity, rng):
    """Entity tuple for a count-changed component; shared attributes are
    copied from the template when uniform, redrawn per entity otherwise."""
    type_dom = attribute_domain(config, ci, Attribute.TYPE)
    size_dom = attribute_domain(config, ci, Attribute.SIZE)
    color_dom = attribute_domain(config, ci, Attribute.COLOR)
    ents = []
    for _ in range(count):
        if uniformity:
            t, s, c = template.type_idx, template.size_idx, template.color_idx
        else:
            t = rng.choice(type_dom.values)
            s = rng.choice(size_dom.values)
            c = rng.choice(color_dom.values)
        ents.append(EntityState(t, s, c, rng.randrange(len(ANGLE_DEGREES))))
    return tuple(ents)


def _layout_edit(correct, config, ci, number, position, rng):
    comp = correct.components[ci]
    if number == comp.number:
        ents = comp.entities
    else:
        ents = _fresh_entities(config, ci, number, comp.entities[0],
                               comp.uniformity, rng)
    comps = list(correct.components)
    comps[ci] = ComponentState(number, position, comp.uniformity, ents)
    return replace(correct, components=tuple(comps))


def _entity_edit(correct, ci, attribute, value):
    comp = correct.components[ci]
    field = _FIELDS[attribute]
    ents = tuple(replace(e, **{field: value}) for e in comp.entities)
    comps = list(correct.components)
    comps[ci] = replace(comp, entities=ents)
    return replace(correct, components=tuple(comps))


def _layout_alternatives(correct, config, ci, rng):
    """Candidate (number, position) pairs differing from the correct panel
    in the layout dimension: either a new count with a resampled position,
    or the same count over a different slot subset."""
    comp = correct.components[ci]
    num_dom = attribute_domain(config, ci, Attribute.NUMBER)
    pos_dom = attribute_domain(config, ci, Attribute.POSITION)
    alts = []
    for n_alt in num_dom.values:
        if n_alt == comp.number:
            continue
        spots = [p for p in pos_dom.values if len(p) == n_alt]
        alts.append((n_alt, rng.choice(spots)))
    for p_alt in pos_dom.values:
        if len(p_alt) == comp.number and p_alt != comp.position:
            alts.append((comp.number, p_alt))
    rng.shuffle(alts)
    return alts


def build_answer_set(draft, rng: random.Random, problem_id: str = "",
                     fold: int = 0) -> Problem:
    """7 single-slot rule-breaking distractors plus the correct panel, with
    the target position drawn uniformly."""
    config = draft.config
    correct = draft.correct
    analysis = analyze_context(draft.context)

    buckets = []
    for ci, comp in enumerate(correct.components):
        layout = _layout_alternatives(correct, config, ci, rng)
        if layout:
            buckets.append((ci, Attribute.NUMBER, deque(layout)))
        if not comp.uniformity:
            continue  # released slots cannot be broken
        for attr in (Attribute.TYPE, Attribute.SIZE, Attribute.COLOR):
            dom = attribute_domain(config, ci, attr)
            current = getattr(comp.entities[0], _FIELDS[attr])
            values = [v for v in dom.values if v != current]
            rng.shuffle(values)
            if values:
                buckets.append((ci, attr, deque(values)))
    rng.shuffle(buckets)

    distractors = []
    while len(distractors) < 7:
        progressed = False
        for ci, dim, bucket in buckets:
            if len(distractors) == 7:
                break
            while bucket:
                alt = bucket.popleft()
                if dim is Attribute.NUMBER:
                    number, position = alt
                    if layout_satisfied(analysis, ci, number, position):
                        continue
                    panel = _layout_edit(correct, config, ci, number,
                                         position, rng)
                else:
                    if entity_slot_satisfied(analysis, ci, dim, alt):
                        continue
                    panel = _entity_edit(correct, ci, dim, alt)
                if panel == correct or panel in distractors:
                    continue
                distractors.append(panel)
                progressed = True
                break
        if not progressed:
            break
    if len(distractors) < 7:
        raise ForgeFailureError(
            "only %d rule-breaking edits available" % len(distractors))

    target = rng.randrange(8)
    candidates = tuple(distractors[:target] + [correct] + distractors[target:])
    return Problem(
        id=problem_id, config=config, context=draft.context,
        candidates=candidates, target=target, rule_groups=draft.rule_groups,
        fold=fold, seed=draft.seed)


def verify_unique(problem: Problem) -> bool:
    """True iff the solver picks the target by a strict margin."""
    try:
        result = solve(problem.context, problem.candidates)
    except AmbiguityError:
        return False
    return result.chosen_index == problem.target


def edit_distance(a: PanelState, b: PanelState) -> int:
    """Differing signal dimensions between two same-configuration panels.

    Per component: one layout dimension (number and position jointly) plus
    type/size/color when uniform. Orientation and released attributes are
    noise and never counted.
    """
    if a.config != b.config:
        raise ValueError("panels must share a configuration")
    dist = 0
    for ca, cb in zip(a.components, b.components):
        if (ca.number, ca.position) != (cb.number, cb.position):
            dist += 1
        if ca.uniformity and cb.uniformity:
            ea, eb = ca.entities[0], cb.entities[0]
            dist += int(ea.type_idx != eb.type_idx)
            dist += int(ea.size_idx != eb.size_idx)
            dist += int(ea.color_idx != eb.color_idx)
    return dist
