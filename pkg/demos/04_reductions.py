"""Executable reductions: graphs to CSPs, implication-weighted CSPs to flow
design, and derivation-script rewriting with exact optimum bookkeeping.
"""

from fractions import Fraction

from prodcsp import (
    ConstructionScript,
    CspInstance,
    GraphInstance,
    IMPLIES,
    XOR,
    apt_wrap,
    bis_to_implies,
    brute_force,
    exact_csp_scheme,
    graph_brute_force,
    graph_measure,
    imopt_to_flow,
    is_to_csp,
    make_table,
    measure,
    reduction_bis_to_implies,
    rewrite_by_construction,
    solve_via_flow,
)

F = Fraction

# Independent set as a CSP: one NAND per edge, one (1, w) unary per vertex.
triangle = GraphInstance("IS", 3, ((1, 2), (2, 3), (1, 3)), (F(2), F(3), F(5)))
csp = is_to_csp(triangle)
print("IS optimum:", graph_brute_force(triangle).optimum,
      "| CSP optimum:", brute_force(csp).optimum)

# Bipartite independent set over implications (right block complemented).
ladder = GraphInstance("BIS", 3, ((1, 2), (2, 3)), (F(2), F(10), F(2)), blocks=(0, 1, 0))
print("BIS optimum:", graph_brute_force(ladder).optimum,
      "| implication encoding:", brute_force(bis_to_implies(ladder)).optimum)

# Implication-weighted CSPs embed into flow design: each pair factor
# (1,1,L,1) on (r,s) becomes an edge s->r with rate 1/L.
two = make_table([2, 1, 1, 1], "TWO")
inst = CspInstance(2, ((two, (1, 2)),))
red = imopt_to_flow(inst)
print("\nflow edges:", red.graph.edges, "rates:", red.graph.rates,
      "influx:", red.graph.weights)
for a in range(4):
    bits = ((a >> 1) & 1, a & 1)
    print(f"  sigma={bits}: CSP {measure(inst, bits)} = "
          f"{red.constant} * FLOW {graph_measure(red.graph, bits)}")
value, bits = solve_via_flow(inst)
print("re-evaluated flow argmax:", value, "at", bits)

# Hard implications (L = 0) get a surrogate rate; the argmax is always
# re-evaluated on the source instance, so the value stays authoritative.
u = make_table([1, 3], "U")
imp_inst = CspInstance(2, ((IMPLIES, (1, 2)), (u, (2,))))
print("with a hard pair:", solve_via_flow(imp_inst)[0],
      "(brute force:", brute_force(imp_inst).optimum, ")")

# Script rewriting: XOR = OR * NAND replaces every XOR application.
script = ConstructionScript("OR", (("mul", "NAND"),))
xor_inst = CspInstance(3, ((XOR, (1, 2)), (XOR, (2, 3))))
rw = rewrite_by_construction(xor_inst, XOR, script)
print("\nrewritten applications:",
      [(t.name, v) for t, v in rw.instance.applications])
print("optima agree:", brute_force(rw.instance).optimum == brute_force(xor_inst).optimum)

# Composing a reduction with an exact oracle gives an exact scheme, and the
# call log records the inverse tolerances passed down.
scheme = apt_wrap(reduction_bis_to_implies(), exact_csp_scheme)
solution, log = scheme(ladder, 0.25)
print("\nAPT-composed solution measures",
      graph_measure(ladder, solution), "| max 1/delta =", log.bound_report)
