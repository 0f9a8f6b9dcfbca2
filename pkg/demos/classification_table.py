"""
==============================================
Which (order, index) pairs survive elimination
==============================================

A non-semi-symplectic automorphism has an index that is a power of 2
dividing its order, and its semi-symplectic power has order at most 6,
which leaves a finite candidate grid of (order, index) pairs.  A short
list of arithmetic rules prunes the grid; what survives is the full
answer, and each elimination is recorded with the rule that fired.
"""

from enricert import admissible_pairs, allowed_orders, RULE_STATEMENTS

outcome = admissible_pairs()
print("admissible (order, index) pairs:", outcome.pairs)
print("orders an automorphism may have at all:", allowed_orders())
print()

print("eliminations:")
for record in outcome.trace:
    print(f"  {record.pair}: {record.rule}")
print()

print("rules:")
for rule in sorted({r.rule for r in outcome.trace}):
    print(f"  {rule}: {RULE_STATEMENTS[rule]}")
