"""Product-measured instances and the three solving routes.

The measure of an assignment is the exact product of all applied constraint
values (empty product 1, any zero factor kills the whole product). The
exhaustive solver is the correctness oracle; certified ED/AF instances also
admit the polynomial-time parity-component route.
"""

from fractions import Fraction

from prodcsp import (
    CspInstance,
    EQ,
    XOR,
    approx_scheme,
    brute_force,
    certify_instance,
    check_ratio,
    classify_set,
    explain,
    make_table,
    measure,
    solve_tractable,
)

F = Fraction

# A three-variable instance: x1 = x2, x2 != x3, plus unary preferences.
u1 = make_table([1, 3], "U1")
u3 = make_table([2, 1], "U3")
inst = CspInstance(3, ((EQ, (1, 2)), (XOR, (2, 3)), (u1, (1,)), (u3, (3,))))

print("measure of 110 =", measure(inst, (1, 1, 0)))
print("measure of 001 =", measure(inst, (0, 0, 1)))

# Exhaustive optimization, exact rationals throughout.
result = brute_force(inst)
print("\nbrute force:", result.optimum, "at", result.argmax, "| log2 =", result.log2)

# The constraint set is ED, so the classifier promises a polynomial route.
report = classify_set([EQ, XOR, u1, u3])
print("\n" + explain(report))

# The parity-component solver needs one certificate per applied constraint.
certs = certify_instance(inst)
fast = solve_tractable(inst, certs)
print("\nparity components:", fast.optimum, "at", fast.argmax, f"({fast.method})")

# Contradictory parity systems collapse to an exact zero optimum.
broken = CspInstance(2, ((EQ, (1, 2)), (XOR, (1, 2))))
zero = solve_tractable(broken, certify_instance(broken))
print("contradiction ->", zero.optimum, "| zero flag:", zero.is_zero)

# The approximation harness: the exact strategy always meets the 2^eps bound;
# hill climbing is a best-effort exerciser.
eps = 0.1
bits = approx_scheme(inst, eps, "hill", seed=5, restarts=8)
value = measure(inst, bits)
print(f"\nhill climb found {value}; within 2^{eps} of optimum:",
      check_ratio(result.optimum, value, 2**eps))
