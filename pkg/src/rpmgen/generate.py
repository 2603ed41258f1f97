"""Top-level problem generation: seeding, gating and dataset assembly.

Every problem derives its own 64-bit seed from (master seed, configuration,
index), so datasets are reproducible bit-for-bit and generation order never
matters. A problem is accepted only when the correct panel satisfies every
rule slot and the solver picks it by a strict margin; drafts that fall short
(a noise coincidence can mimic a rule) are regenerated.
"""

import hashlib
import random
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

from .answers import ForgeFailureError, Problem, build_answer_set, verify_unique
from .attributes import Attribute
from .grammar import CONFIG_ORDER, CONFIGURATIONS, ConfigName, FigureConfiguration
from .matrix import RETRY_BUDGET, _feasible_classes, generate_matrix
from .rules import RuleGroup, RuleSpec, RuleType, sample_distribute_three
from .grammar import attribute_domain
from .solver import score_candidate

_ENTITY_ATTRS = (Attribute.TYPE, Attribute.SIZE, Attribute.COLOR)


class GenerationError(RuntimeError):
    """No acceptable problem within the attempt budget."""


def derive_seed(master: int, *parts) -> int:
    """Stable 64-bit seed from a master seed and labeling parts."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(master).encode())
    for part in parts:
        h.update(b"\x00" + str(part).encode())
    return int.from_bytes(h.digest(), "big")


def _gated(draft) -> bool:
    cap = 4 * len(draft.config.components)
    return score_candidate(draft.context, draft.correct).satisfied == cap


def _finish(draft, seed, problem_id, fold, forge_seed) -> Optional[Problem]:
    if not _gated(draft):
        return None
    try:
        problem = build_answer_set(draft, random.Random(forge_seed),
                                   problem_id=problem_id, fold=fold)
    except ForgeFailureError:
        return None
    if not verify_unique(problem):
        return None
    return replace(problem, seed=seed)


def generate_problem(config: FigureConfiguration, seed: int,
                     problem_id: str = "", fold: int = 0,
                     attempts: int = RETRY_BUDGET) -> Problem:
    """One fully verified problem, deterministic in (config, seed)."""
    for attempt in range(attempts):
        draft = generate_matrix(config, derive_seed(seed, "matrix", attempt))
        problem = _finish(draft, seed, problem_id, fold,
                          derive_seed(seed, "forge", attempt))
        if problem is not None:
            return problem
    raise GenerationError(
        "no acceptable %s problem for seed %d within %d attempts"
        % (config.name.value, seed, attempts))


def generate_dataset(per_config: int, master_seed: int,
                     configs: Sequence[ConfigName] = CONFIG_ORDER
                     ) -> List[Problem]:
    """Equal problems per configuration; folds assigned round-robin."""
    problems = []
    for name in configs:
        config = CONFIGURATIONS[name]
        for index in range(per_config):
            problems.append(generate_problem(
                config,
                derive_seed(master_seed, name.value, index),
                problem_id="%s_%04d" % (name.value.lower(), index),
                fold=index % 10))
    return problems


def _single_rule_groups(config: FigureConfiguration,
                        rng: random.Random) -> Tuple[RuleGroup, ...]:
    """All-Constant groups except one randomly placed non-Constant rule."""
    options = []
    for ci in range(len(config.components)):
        layout_attrs = (Attribute.NUMBER, Attribute.POSITION)
        for attr in layout_attrs + _ENTITY_ATTRS:
            for proto in _feasible_classes(config, ci, attr):
                if proto.rule_type is not RuleType.CONSTANT:
                    options.append((ci, attr, proto))
    ci, attr, proto = rng.choice(options)
    if proto.rule_type is RuleType.DISTRIBUTE_THREE:
        chosen = sample_distribute_three(
            attribute_domain(config, ci, attr), rng, attr)
    else:
        chosen = proto

    groups = []
    for gi in range(len(config.components)):
        slots = [RuleSpec(RuleType.CONSTANT, Attribute.NUMBER),
                 RuleSpec(RuleType.CONSTANT, Attribute.TYPE),
                 RuleSpec(RuleType.CONSTANT, Attribute.SIZE),
                 RuleSpec(RuleType.CONSTANT, Attribute.COLOR)]
        if gi == ci:
            index = {Attribute.NUMBER: 0, Attribute.POSITION: 0,
                     Attribute.TYPE: 1, Attribute.SIZE: 2,
                     Attribute.COLOR: 3}[attr]
            slots[index] = chosen
        groups.append(RuleGroup(gi, tuple(slots)))
    return tuple(groups)


def generate_familiarization_problem(config: FigureConfiguration, seed: int,
                                     problem_id: str = "", fold: int = 0,
                                     attempts: int = RETRY_BUDGET) -> Problem:
    """A warm-up problem with exactly one non-Constant rule and no noise
    release, so the single relation stays visually isolated."""
    for attempt in range(attempts):
        rng = random.Random(derive_seed(seed, "famil-rules", attempt))
        groups = _single_rule_groups(config, rng)
        draft = generate_matrix(
            config, derive_seed(seed, "famil-matrix", attempt),
            rule_groups=groups, allow_release=False)
        problem = _finish(draft, seed, problem_id, fold,
                          derive_seed(seed, "famil-forge", attempt))
        if problem is not None:
            return problem
    raise GenerationError(
        "no acceptable familiarization problem for seed %d" % seed)


def generate_familiarization_set(count: int, master_seed: int,
                                 config_name: ConfigName = ConfigName.CENTER
                                 ) -> List[Problem]:
    config = CONFIGURATIONS[config_name]
    return [
        generate_familiarization_problem(
            config,
            derive_seed(master_seed, "famil", config_name.value, index),
            problem_id="famil_%04d" % index,
            fold=index % 10)
        for index in range(count)]
