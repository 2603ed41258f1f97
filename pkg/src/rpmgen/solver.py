"""Heuristic solver: count satisfied rule slots per candidate.

The solver never sees pixels or the generating rules. It re-infers, for every
component, which rule instantiations are consistent with the first two rows,
then checks each candidate against the third-row prefix. Each component
contributes four slots: layout (number/position combined), type, size, color.
A candidate's score is the count of satisfied slots; the unique argmax wins.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .attributes import Attribute
from .grammar import AttributeDomain, FigureConfiguration, PanelState, attribute_domain
from .rules import RuleSpec, check_row, infer_rules

ENTITY_SLOTS = (Attribute.TYPE, Attribute.SIZE, Attribute.COLOR)

_FIELDS = {Attribute.TYPE: "type_idx", Attribute.SIZE: "size_idx",
           Attribute.COLOR: "color_idx"}


class ScoringError(ValueError):
    """Candidate and context disagree on the figure configuration."""


class AmbiguityError(RuntimeError):
    """Two or more candidates tie at the maximum score."""


@dataclass(frozen=True)
class SlotEvidence:
    """What rows 1-2 admit for one rule slot, plus the row-3 prefix."""

    attribute: Attribute
    domain: AttributeDomain
    prefix: tuple
    inferred: Tuple[RuleSpec, ...]

    def admits(self, value) -> bool:
        return bool(self.inferred) and any(
            check_row(rule, self.prefix + (value,), self.domain)
            for rule in self.inferred)


@dataclass(frozen=True)
class ContextAnalysis:
    config: FigureConfiguration
    # per component: (number evidence, position evidence)
    layout: Tuple[Tuple[SlotEvidence, SlotEvidence], ...]
    # per component: evidence keyed by entity attribute, or None when released
    entity: Tuple[Optional[Dict[Attribute, SlotEvidence]], ...]
    released: Tuple[bool, ...]


@dataclass(frozen=True)
class CandidateScore:
    candidate_index: int
    satisfied: int


@dataclass(frozen=True)
class SolveResult:
    chosen_index: int
    scores: Tuple[int, ...]


def _component_value(panel: PanelState, ci: int, attribute: Attribute):
    comp = panel.components[ci]
    if attribute is Attribute.NUMBER:
        return comp.number
    if attribute is Attribute.POSITION:
        return comp.position
    return getattr(comp.entities[0], _FIELDS[attribute])


def _evidence(panels: Sequence[PanelState], ci: int,
              attribute: Attribute) -> SlotEvidence:
    config = panels[0].config
    domain = attribute_domain(config, ci, attribute)
    values = [_component_value(p, ci, attribute) for p in panels]
    row1, row2 = tuple(values[0:3]), tuple(values[3:6])
    return SlotEvidence(
        attribute=attribute,
        domain=domain,
        prefix=tuple(values[6:8]),
        inferred=infer_rules(attribute, row1, row2, domain))


def analyze_context(context: Sequence[PanelState]) -> ContextAnalysis:
    if len(context) != 8:
        raise ScoringError("a context holds exactly 8 panels")
    config = context[0].config
    if any(p.config is not config and p.config != config for p in context):
        raise ScoringError("context panels span different configurations")

    layout, entity, released = [], [], []
    for ci in range(len(config.components)):
        layout.append((_evidence(context, ci, Attribute.NUMBER),
                       _evidence(context, ci, Attribute.POSITION)))
        free = not context[0].components[ci].uniformity
        released.append(free)
        entity.append(None if free else {
            attr: _evidence(context, ci, attr) for attr in ENTITY_SLOTS})
    return ContextAnalysis(config, tuple(layout), tuple(entity), tuple(released))


def layout_satisfied(analysis: ContextAnalysis, ci: int,
                     number: int, position: Tuple[int, ...]) -> bool:
    """Joint number/position slot: every non-empty evidence set must admit
    the candidate, and at least one of the two must be non-empty."""
    num_ev, pos_ev = analysis.layout[ci]
    if not num_ev.inferred and not pos_ev.inferred:
        return False
    if num_ev.inferred and not num_ev.admits(number):
        return False
    if pos_ev.inferred and not pos_ev.admits(position):
        return False
    return True


def entity_slot_satisfied(analysis: ContextAnalysis, ci: int,
                          attribute: Attribute, value: int) -> bool:
    views = analysis.entity[ci]
    if views is None:
        # released component: attribute is noise, the slot cannot be broken
        return True
    return views[attribute].admits(value)


def _score(analysis: ContextAnalysis, candidate: PanelState) -> int:
    if candidate.config != analysis.config:
        raise ScoringError("candidate configuration differs from the context")
    total = 0
    for ci in range(len(analysis.config.components)):
        comp = candidate.components[ci]
        if layout_satisfied(analysis, ci, comp.number, comp.position):
            total += 1
        for attr in ENTITY_SLOTS:
            if entity_slot_satisfied(
                    analysis, ci, attr, _component_value(candidate, ci, attr)):
                total += 1
    return total


def score_candidate(context: Sequence[PanelState], candidate: PanelState,
                    analysis: Optional[ContextAnalysis] = None,
                    candidate_index: int = 0) -> CandidateScore:
    if analysis is None:
        analysis = analyze_context(context)
    return CandidateScore(candidate_index, _score(analysis, candidate))


def solve(context: Sequence[PanelState],
          candidates: Sequence[PanelState]) -> SolveResult:
    """Pick the unique highest-scoring candidate out of eight."""
    if len(candidates) != 8:
        raise ScoringError("an answer set holds exactly 8 candidates")
    analysis = analyze_context(context)
    scores = tuple(_score(analysis, c) for c in candidates)
    best = max(scores)
    winners = [i for i, s in enumerate(scores) if s == best]
    if len(winners) > 1:
        raise AmbiguityError(
            "candidates %s tie at score %d" % (winners, best))
    return SolveResult(winners[0], scores)
