"""Tree text serialization, training-target vectors and problem records.

A panel serializes to its grammar tree in pre-order, one token per node
label, with "/" emitted each time a branch closes. The token vocabulary is
frozen in the committed vocab.txt; serialization never emits a token outside
it. Problem records are versioned JSON documents holding the 16 panel trees,
the full rule parameters, display annotations and the two target vectors.
"""

import json
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Tuple

import numpy as np

from .answers import Problem
from .attributes import ANGLE_DEGREES, Attribute, COLOR_VALUES, SIZE_VALUES, TYPE_NAMES
from .grammar import (
    CONFIGURATIONS,
    ComponentState,
    ConfigName,
    EntityState,
    LayoutKind,
    PanelState,
    Structure,
    config_from_layouts,
)
from .rules import RuleGroup, RuleSpec, RuleType

TARGET_ATTRIBUTES = (Attribute.NUMBER, Attribute.POSITION, Attribute.TYPE,
                     Attribute.SIZE, Attribute.COLOR)
RULE_TYPE_ORDER = (RuleType.CONSTANT, RuleType.PROGRESSION,
                   RuleType.ARITHMETIC, RuleType.DISTRIBUTE_THREE)
STRUCT_VOCAB: Tuple[str, ...] = tuple(s.value for s in Structure) + \
    tuple(k.value for k in LayoutKind)

RECORD_SCHEMA = 1

_STRUCTURES = {s.value: s for s in Structure}
_LAYOUTS = {k.value: k for k in LayoutKind}
_TYPE_INDEX = {name: i for i, name in enumerate(TYPE_NAMES)}


class TreeParseError(ValueError):
    """Malformed token stream; position is the offending token index."""

    def __init__(self, position: int, message: str):
        super().__init__("token %d: %s" % (position, message))
        self.position = position


def build_vocabulary() -> Tuple[str, ...]:
    """The full token set, in canonical order; vocab.txt is its frozen copy."""
    tokens: List[str] = ["Scene"]
    tokens += [s.value for s in Structure]
    tokens.append("Component")
    tokens += [k.value for k in LayoutKind]
    tokens.append("Entity")
    tokens += ["uniform", "varied"]
    tokens += ["slot%d" % i for i in range(9)]
    tokens += list(TYPE_NAMES)
    tokens += ["size%d" % i for i in range(len(SIZE_VALUES))]
    tokens += ["color%d" % i for i in range(len(COLOR_VALUES))]
    tokens += ["angle%d" % i for i in range(len(ANGLE_DEGREES))]
    tokens.append("/")
    return tuple(tokens)


@lru_cache(maxsize=1)
def vocabulary() -> Tuple[str, ...]:
    text = resources.files("rpmgen").joinpath("vocab.txt").read_text()
    return tuple(text.split())


def serialize_tree(panel: PanelState) -> str:
    out = ["Scene", panel.config.structure.value]
    for spec, comp in zip(panel.config.components, panel.components):
        out.append("Component")
        out.append(spec.layout_kind.value)
        out += ["uniform" if comp.uniformity else "varied", "/"]
        for slot, ent in zip(comp.position, comp.entities):
            out += ["Entity",
                    "slot%d" % slot, "/",
                    TYPE_NAMES[ent.type_idx], "/",
                    "size%d" % ent.size_idx, "/",
                    "color%d" % ent.color_idx, "/",
                    "angle%d" % ent.angle_idx, "/",
                    "/"]
        out += ["/", "/"]  # layout, component
    out += ["/", "/"]  # structure, scene
    return " ".join(out)


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise TreeParseError(self.i, "unexpected end of stream")
        if expected is not None and tok != expected:
            raise TreeParseError(
                self.i, "expected %r, found %r" % (expected, tok))
        self.i += 1
        return tok


def _indexed_leaf(cur: _Cursor, prefix: str, size: int) -> int:
    pos = cur.i
    tok = cur.take()
    if tok.startswith(prefix):
        try:
            value = int(tok[len(prefix):])
        except ValueError:
            value = -1
        if 0 <= value < size:
            cur.take("/")
            return value
    raise TreeParseError(pos, "unknown %s token %r" % (prefix, tok))


def _parse_entity(cur: _Cursor) -> Tuple[int, EntityState]:
    cur.take("Entity")
    slot = _indexed_leaf(cur, "slot", 9)
    pos = cur.i
    type_tok = cur.take()
    if type_tok not in _TYPE_INDEX:
        raise TreeParseError(pos, "unknown shape token %r" % type_tok)
    cur.take("/")
    size = _indexed_leaf(cur, "size", len(SIZE_VALUES))
    color = _indexed_leaf(cur, "color", len(COLOR_VALUES))
    angle = _indexed_leaf(cur, "angle", len(ANGLE_DEGREES))
    cur.take("/")
    return slot, EntityState(_TYPE_INDEX[type_tok], size, color, angle)


def _parse_component(cur: _Cursor):
    start = cur.i
    cur.take("Component")
    pos = cur.i
    kind_tok = cur.take()
    if kind_tok not in _LAYOUTS:
        raise TreeParseError(pos, "unknown layout token %r" % kind_tok)
    pos = cur.i
    uni_tok = cur.take()
    if uni_tok not in ("uniform", "varied"):
        raise TreeParseError(pos, "unknown uniformity token %r" % uni_tok)
    cur.take("/")
    slots, entities = [], []
    while cur.peek() == "Entity":
        slot, ent = _parse_entity(cur)
        slots.append(slot)
        entities.append(ent)
    cur.take("/")  # layout
    cur.take("/")  # component
    try:
        state = ComponentState(len(entities), tuple(slots),
                               uni_tok == "uniform", tuple(entities))
    except ValueError as exc:
        raise TreeParseError(start, str(exc)) from exc
    return _LAYOUTS[kind_tok], state


def parse_tree(text: str) -> PanelState:
    cur = _Cursor(text.split())
    cur.take("Scene")
    pos = cur.i
    s_tok = cur.take()
    if s_tok not in _STRUCTURES:
        raise TreeParseError(pos, "unknown structure token %r" % s_tok)
    kinds, comps = [], []
    while cur.peek() == "Component":
        kind, comp = _parse_component(cur)
        kinds.append(kind)
        comps.append(comp)
    cur.take("/")  # structure
    cur.take("/")  # scene
    if cur.peek() is not None:
        raise TreeParseError(cur.i, "trailing tokens after scene close")
    try:
        config = config_from_layouts(_STRUCTURES[s_tok], tuple(kinds))
    except LookupError as exc:
        raise TreeParseError(pos, str(exc)) from exc
    try:
        return PanelState(config, tuple(comps))
    except ValueError as exc:
        raise TreeParseError(pos, str(exc)) from exc


# --- training targets ------------------------------------------------------

def rule_target_vector(problem: Problem) -> np.ndarray:
    """20-bit multi-hot over (attribute, rule type), OR-ed across components."""
    vec = np.zeros(len(TARGET_ATTRIBUTES) * len(RULE_TYPE_ORDER),
                   dtype=np.uint8)
    for group in problem.rule_groups:
        for slot in group.slots:
            row = TARGET_ATTRIBUTES.index(slot.target)
            vec[row * len(RULE_TYPE_ORDER)
                + RULE_TYPE_ORDER.index(slot.rule_type)] = 1
    return vec


def struct_target_vector(problem: Problem) -> np.ndarray:
    """13-bit multi-hot over structure and layout-kind names."""
    names = {problem.config.structure.value}
    names.update(spec.layout_kind.value for spec in problem.config.components)
    return np.array([1 if tok in names else 0 for tok in STRUCT_VOCAB],
                    dtype=np.uint8)


def rule_annotation_pairs(problem: Problem) -> Tuple[Tuple[str, ...], ...]:
    """Display form of the governing rules, one attribute:rule pair per slot."""
    return tuple(
        tuple("%s:%s" % (slot.target.value, slot.rule_type.value)
              for slot in group.slots)
        for group in problem.rule_groups)


# --- rule parameter round trip ---------------------------------------------

def _as_tuples(value):
    if isinstance(value, (list, tuple)):
        return tuple(_as_tuples(v) for v in value)
    return value


def _as_lists(value):
    if isinstance(value, tuple):
        return [_as_lists(v) for v in value]
    return value


def rule_spec_to_dict(spec: RuleSpec) -> Dict:
    blob = {"rule": spec.rule_type.value, "target": spec.target.value}
    if spec.delta is not None:
        blob["delta"] = spec.delta
    if spec.sign is not None:
        blob["sign"] = spec.sign
    if spec.triple is not None:
        blob["triple"] = _as_lists(spec.triple)
    if spec.rows is not None:
        blob["rows"] = _as_lists(spec.rows)
    return blob


def rule_spec_from_dict(blob: Dict) -> RuleSpec:
    return RuleSpec(
        RuleType(blob["rule"]),
        Attribute(blob["target"]),
        delta=blob.get("delta"),
        sign=blob.get("sign"),
        triple=_as_tuples(blob["triple"]) if "triple" in blob else None,
        rows=_as_tuples(blob["rows"]) if "rows" in blob else None)


# --- problem records -------------------------------------------------------

def problem_to_record(problem: Problem) -> Dict:
    return {
        "schema": RECORD_SCHEMA,
        "id": problem.id,
        "config": problem.config.name.value,
        "target": problem.target,
        "fold": problem.fold,
        "seed": problem.seed,
        "trees": [serialize_tree(p)
                  for p in problem.context + problem.candidates],
        "rules": [[rule_spec_to_dict(s) for s in g.slots]
                  for g in problem.rule_groups],
        "annotations": [list(pairs)
                        for pairs in rule_annotation_pairs(problem)],
        "rule_target": "".join(map(str, rule_target_vector(problem))),
        "struct_target": "".join(map(str, struct_target_vector(problem))),
    }


def problem_from_record(record: Dict) -> Problem:
    if record.get("schema") != RECORD_SCHEMA:
        raise ValueError("unsupported record schema %r" % record.get("schema"))
    panels = [parse_tree(t) for t in record["trees"]]
    if len(panels) != 16:
        raise ValueError("a record holds exactly 16 trees")
    groups = tuple(
        RuleGroup(ci, tuple(rule_spec_from_dict(d) for d in slots))
        for ci, slots in enumerate(record["rules"]))
    config = CONFIGURATIONS[ConfigName(record["config"])]
    return Problem(
        id=record["id"], config=config,
        context=tuple(panels[:8]), candidates=tuple(panels[8:]),
        target=record["target"], rule_groups=groups,
        fold=record["fold"], seed=record["seed"])


def record_text(record: Dict) -> str:
    return json.dumps(record, sort_keys=True, indent=1) + "\n"
