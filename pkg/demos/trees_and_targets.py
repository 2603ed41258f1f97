"""
Structured annotations: trees and training targets
==================================================

"""

from rpmgen import (
    CONFIGURATIONS,
    ConfigName,
    generate_problem,
    parse_tree,
    rule_target_vector,
    serialize_tree,
    struct_target_vector,
    vocabulary,
)

problem = generate_problem(CONFIGURATIONS[ConfigName.CENTER], seed=11)

# every panel serializes to a pre-order token stream; a slash closes a node
tokens = serialize_tree(problem.context[0])
print(tokens)

# parsing is the exact inverse
assert parse_tree(tokens) == problem.context[0]
print("round trip ok,", len(tokens.split()), "tokens")

# the token vocabulary is closed and frozen
vocab = vocabulary()
print("vocabulary size:", len(vocab))
assert all(tok in vocab for tok in tokens.split())

# two multi-hot vectors summarize the hidden structure for training:
# 20 bits of (attribute, rule type) and 13 bits of scene structure
print("rule target:  ", rule_target_vector(problem).tolist())
print("struct target:", struct_target_vector(problem).tolist())
