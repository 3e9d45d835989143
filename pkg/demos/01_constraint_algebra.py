"""Tour of weighted constraint tables and the seven derivation operations.

A constraint of arity k is a function {0,1}^k -> nonnegative rationals,
stored as 2^k exact weights in lexicographic order (x1 is the most
significant bit). Run with `python demos/01_constraint_algebra.py`.
"""

from fractions import Fraction

from prodcsp import D1, EQ, IMPLIES, NAND, OR, XOR, make_table, support_of

# The named relations double as weighted constraints.
print("EQ      =", EQ.weights)
print("XOR     =", XOR.weights)
print("IMPLIES =", IMPLIES.weights)

# Evaluation reads the table at the bit string's lexicographic index.
print("\nIMPLIES(1,0) =", IMPLIES.evaluate("10"), " (the forbidden pattern)")
print("IMPLIES(0,1) =", IMPLIES.evaluate("01"))

# The seven operations build new constraints from old ones.
print("\npermute(IMPLIES,1,2)   =", IMPLIES.permute(1, 2).weights)
print("pin(IMPLIES, x2=0)     =", IMPLIES.pin(2, 0).weights, " (that is D0)")
print("link(OR, x1=x2)        =", OR.link(1, 2).weights, " (that is D1)")
print("expand(D1, after x1)   =", D1.expand(1).weights)
print("OR * NAND              =", OR.multiply(NAND).weights, " (that is XOR)")
print("max over x2 of IMPLIES =", IMPLIES.maximize_out(1).weights)
print("3 * EQ                 =", EQ.scale(3).weights)

# Weights are exact rationals, so supports are exact too.
lopsided = make_table([Fraction(1, 3), 0, Fraction(2, 7), 0], "LOPSIDED")
print("\nsupport of", lopsided.weights, "=", support_of(lopsided).points())
print("support survives scaling:", support_of(lopsided.scale(1000)).points())

# Complementing both inputs of NAND produces OR.
flipped = NAND.complement_variable(1).complement_variable(2)
print("\nNAND with both inputs flipped =", flipped.weights, "(equals OR:", flipped == OR, ")")
