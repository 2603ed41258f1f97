"""Row rules: the four relation types, their application and inference.

A rule binds one relation to one target attribute and is applied along each
row of the 3x3 matrix. Eight distinct instantiations exist: Constant,
Progression with delta in {-2,-1,+1,+2}, Arithmetic with sign in {plus,minus},
and DistributeThree (which also covers the two-value variant by always
carrying a full value triple).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .attributes import (
    Attribute,
    AttributeDomain,
    NOISE_ATTRIBUTES,
    RULE_ATTRIBUTES,
)


class RuleType(str, enum.Enum):
    CONSTANT = "Constant"
    PROGRESSION = "Progression"
    ARITHMETIC = "Arithmetic"
    DISTRIBUTE_THREE = "DistributeThree"


PROGRESSION_DELTAS = (-2, -1, 1, 2)
ARITHMETIC_SIGNS = (1, -1)

# Arithmetic needs additive semantics: counts, set union/difference, or index
# offsets. Shape identity has none, so Type never carries it.
APPLICABLE_RULE_TYPES: Dict[Attribute, Tuple[RuleType, ...]] = {
    Attribute.NUMBER: (RuleType.CONSTANT, RuleType.PROGRESSION, RuleType.ARITHMETIC,
                       RuleType.DISTRIBUTE_THREE),
    Attribute.POSITION: (RuleType.CONSTANT, RuleType.PROGRESSION, RuleType.ARITHMETIC,
                         RuleType.DISTRIBUTE_THREE),
    Attribute.TYPE: (RuleType.CONSTANT, RuleType.PROGRESSION, RuleType.DISTRIBUTE_THREE),
    Attribute.SIZE: (RuleType.CONSTANT, RuleType.PROGRESSION, RuleType.ARITHMETIC,
                     RuleType.DISTRIBUTE_THREE),
    Attribute.COLOR: (RuleType.CONSTANT, RuleType.PROGRESSION, RuleType.ARITHMETIC,
                      RuleType.DISTRIBUTE_THREE),
}


class DomainOverflowError(ValueError):
    """Applying a rule left the attribute's domain (signals a pruning bug)."""


def _is_position_value(value) -> bool:
    return isinstance(value, tuple)


@dataclass(frozen=True)
class RuleSpec:
    """One rule instantiation bound to a target attribute.

    DistributeThree additionally carries its sampled value triple and the 3x3
    Latin arrangement of that triple across the matrix rows; a RuleSpec with
    only a triple (rows=None) is the inferred form, sufficient for checking.
    """

    rule_type: RuleType
    target: Attribute
    delta: Optional[int] = None
    sign: Optional[int] = None
    triple: Optional[tuple] = None
    rows: Optional[Tuple[tuple, tuple, tuple]] = None

    def __post_init__(self):
        if self.target in NOISE_ATTRIBUTES:
            raise ValueError(f"noise attribute {self.target.value} cannot carry a rule")
        if self.target not in RULE_ATTRIBUTES:
            raise ValueError(f"invalid rule target {self.target!r}")
        if self.rule_type not in APPLICABLE_RULE_TYPES[self.target]:
            raise ValueError(f"{self.rule_type.value} not applicable to {self.target.value}")
        if (self.delta is not None) != (self.rule_type is RuleType.PROGRESSION):
            raise ValueError("delta set iff rule is Progression")
        if self.rule_type is RuleType.PROGRESSION and self.delta not in PROGRESSION_DELTAS:
            raise ValueError(f"delta must be one of {PROGRESSION_DELTAS}")
        if (self.sign is not None) != (self.rule_type is RuleType.ARITHMETIC):
            raise ValueError("sign set iff rule is Arithmetic")
        if self.rule_type is RuleType.ARITHMETIC and self.sign not in ARITHMETIC_SIGNS:
            raise ValueError("sign must be +1 or -1")
        if self.triple is not None and self.rule_type is not RuleType.DISTRIBUTE_THREE:
            raise ValueError("triple only valid for DistributeThree")
        if self.triple is not None and len(set(self.triple)) != 3:
            raise ValueError("triple values must be pairwise distinct")
        if self.rows is not None:
            if self.triple is None:
                raise ValueError("rows require a triple")
            values = set(self.triple)
            for row in self.rows:
                if set(row) != values:
                    raise ValueError("every row must arrange the full triple")
            for col in range(3):
                if {self.rows[r][col] for r in range(3)} != values:
                    raise ValueError("rows must form a Latin arrangement")

    def describe(self) -> str:
        if self.rule_type is RuleType.PROGRESSION:
            return f"Progression({self.delta:+d})"
        if self.rule_type is RuleType.ARITHMETIC:
            return "Arithmetic(plus)" if self.sign > 0 else "Arithmetic(minus)"
        return self.rule_type.value


@dataclass(frozen=True)
class RuleGroup:
    """The four rule slots shared by all entities of one component.

    Slot order is fixed: layout (Number or Position), Type, Size, Color.
    """

    component_index: int
    slots: Tuple[RuleSpec, RuleSpec, RuleSpec, RuleSpec]

    def __post_init__(self):
        if len(self.slots) != 4:
            raise ValueError("a rule group has exactly 4 slots")
        layout, type_, size, color = self.slots
        if layout.target not in (Attribute.NUMBER, Attribute.POSITION):
            raise ValueError("slot 0 must target Number or Position")
        for slot, attr in ((type_, Attribute.TYPE), (size, Attribute.SIZE),
                           (color, Attribute.COLOR)):
            if slot.target is not attr:
                raise ValueError(f"slot for {attr.value} targets {slot.target.value}")

    @property
    def layout_slot(self) -> RuleSpec:
        return self.slots[0]


def instantiation_classes(attribute: Attribute) -> Tuple[RuleSpec, ...]:
    """All parameter classes applicable to the attribute, in a fixed order.

    DistributeThree appears unparameterized (no triple yet); the full table
    over any Arithmetic-capable attribute has 1 + 4 + 2 + 1 = 8 entries.
    """
    out = []
    for rule_type in APPLICABLE_RULE_TYPES[attribute]:
        if rule_type is RuleType.CONSTANT:
            out.append(RuleSpec(rule_type, attribute))
        elif rule_type is RuleType.PROGRESSION:
            out.extend(RuleSpec(rule_type, attribute, delta=d) for d in PROGRESSION_DELTAS)
        elif rule_type is RuleType.ARITHMETIC:
            out.extend(RuleSpec(rule_type, attribute, sign=s) for s in ARITHMETIC_SIGNS)
        else:
            out.append(RuleSpec(rule_type, attribute))
    return tuple(out)


def _shift_position(value: tuple, delta: int, slot_count: int) -> tuple:
    return tuple(sorted((i + delta) % slot_count for i in value))


def _step(rule: RuleSpec, value, domain: AttributeDomain):
    if _is_position_value(value):
        return _shift_position(value, rule.delta, domain.slot_count)
    nxt = value + rule.delta
    if nxt not in domain:
        raise DomainOverflowError(
            f"Progression({rule.delta:+d}) leaves the {domain.attribute.value} domain at {value}")
    return nxt


def _combine(a, b, sign: int, domain: AttributeDomain):
    if _is_position_value(a):
        if sign > 0:
            result = tuple(sorted(set(a) | set(b)))
        else:
            result = tuple(sorted(set(a) - set(b)))
            if not result:
                raise DomainOverflowError("Position difference produced the empty set")
        return result
    result = a + b if sign > 0 else a - b
    if result not in domain:
        raise DomainOverflowError(
            f"Arithmetic result {result} outside the {domain.attribute.value} domain")
    return result


def apply_rule(rule: RuleSpec, row_prefix: Sequence, domain: AttributeDomain,
               row_index: int = 0):
    """Produce the next value of a row from its 1- or 2-value prefix."""
    prefix = tuple(row_prefix)
    if not 1 <= len(prefix) <= 2:
        raise ValueError("row prefix must hold 1 or 2 values")
    if rule.rule_type is RuleType.CONSTANT:
        return prefix[-1]
    if rule.rule_type is RuleType.PROGRESSION:
        return _step(rule, prefix[-1], domain)
    if rule.rule_type is RuleType.ARITHMETIC:
        if len(prefix) != 2:
            raise ValueError("Arithmetic needs both prior values of the row")
        return _combine(prefix[0], prefix[1], rule.sign, domain)
    if rule.rows is None:
        raise ValueError("DistributeThree needs its row arrangement to be applied")
    return rule.rows[row_index][len(prefix)]


def check_row(rule: RuleSpec, row: Sequence, domain: AttributeDomain) -> bool:
    """True iff the 3-value row is producible by the rule."""
    a, b, c = row
    if rule.rule_type is RuleType.CONSTANT:
        return a == b == c
    if rule.rule_type is RuleType.PROGRESSION:
        try:
            return _step(rule, a, domain) == b and _step(rule, b, domain) == c
        except DomainOverflowError:
            return False
    if rule.rule_type is RuleType.ARITHMETIC:
        try:
            return _combine(a, b, rule.sign, domain) == c
        except DomainOverflowError:
            return False
    if rule.triple is None:
        raise ValueError("DistributeThree needs a triple to be checked")
    return sorted(row) == sorted(rule.triple)


def infer_rules(attribute: Attribute, row1: Sequence, row2: Sequence,
                domain: AttributeDomain) -> Tuple[RuleSpec, ...]:
    """Every instantiation consistent with both observed rows.

    DistributeThree is inferred only when both rows permute the same triple
    of three distinct values; the triple is returned in canonical order.
    """
    row1, row2 = tuple(row1), tuple(row2)
    out = []
    for proto in instantiation_classes(attribute):
        if proto.rule_type is RuleType.DISTRIBUTE_THREE:
            if len(set(row1)) == 3 and set(row1) == set(row2):
                triple = tuple(sorted(set(row1)))
                out.append(RuleSpec(proto.rule_type, attribute, triple=triple))
        elif check_row(proto, row1, domain) and check_row(proto, row2, domain):
            out.append(proto)
    return tuple(out)


def sample_distribute_three(domain: AttributeDomain, rng, target: Attribute) -> RuleSpec:
    """Draw a triple and a uniformly random Latin arrangement of it."""
    if len(domain) < 3:
        raise ValueError(f"{domain.attribute.value} domain too small for DistributeThree")
    first = tuple(rng.sample(domain.values, 3))
    rot = rng.choice((1, 2))
    rows = (first,
            first[rot:] + first[:rot],
            first[2 * rot % 3:] + first[:2 * rot % 3])
    return RuleSpec(RuleType.DISTRIBUTE_THREE, target,
                    triple=tuple(sorted(first)), rows=rows)
