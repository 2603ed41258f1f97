"""
Generate a single matrix puzzle
===============================

"""

# one call produces a fully checked problem: eight context panels,
# eight candidates, and the index of the correct one
from rpmgen import CONFIGURATIONS, ConfigName, generate_problem

config = CONFIGURATIONS[ConfigName.GRID_2X2]
problem = generate_problem(config, seed=42)

print("configuration:", problem.config.name.value)
print("target index:", problem.target)

# the hidden rules, one group per component
for ci, group in enumerate(problem.rule_groups):
    print("component", ci)
    for slot in group.slots:
        line = "  %-8s %s" % (slot.target.value, slot.rule_type.value)
        if slot.delta:
            line += " delta=%+d" % slot.delta
        if slot.sign:
            line += " sign=%+d" % slot.sign
        print(line)

# each context panel is a structured scene, not just pixels
first = problem.context[0]
for spec, comp in zip(first.config.components, first.components):
    print("panel 0 holds", len(comp.entities), "entities in",
          spec.layout_kind.value)
