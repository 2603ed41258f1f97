"""
Solve a puzzle by counting satisfied constraints
================================================

"""

# the solver never sees the hidden rules; it infers candidate rule sets
# from the first two rows and scores every answer option against them
from rpmgen import CONFIGURATIONS, ConfigName, generate_problem, solve
from rpmgen.solver import analyze_context

problem = generate_problem(CONFIGURATIONS[ConfigName.GRID_3X3], seed=7)

result = solve(problem.context, problem.candidates)
print("chosen:", result.chosen_index, " actual:", problem.target)

# scores count satisfied attribute slots; only the real answer
# satisfies every one of them
for index, score in enumerate(result.scores):
    marker = "  <- answer" if index == problem.target else ""
    print("candidate %d scores %d%s" % (index, score, marker))

# the analysis step exposes which attributes carry signal; a released
# attribute varies freely and is excluded from scoring
analysis = analyze_context(problem.context)
for ci, released in enumerate(analysis.released):
    state = "released (noise)" if released else "rule-governed"
    print("component %d entity attributes: %s" % (ci, state))
