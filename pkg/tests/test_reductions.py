"""Reductions: pointwise measure preservation, flow encoding, rewriting, APT."""

import random
from fractions import Fraction

import pytest

from prodcsp import (
    CertificateError,
    ConstructionScript,
    CspInstance,
    EQ,
    GraphInstance,
    IMPLIES,
    NAND,
    OR,
    XOR,
    apt_wrap,
    bis_to_implies,
    brute_force,
    complement_all,
    exact_csp_scheme,
    exact_flow_scheme,
    graph_brute_force,
    graph_measure,
    imopt_to_flow,
    is_imopt,
    is_to_csp,
    make_table,
    measure,
    random_graph,
    random_imopt_constraint,
    random_instance,
    reduction_bis_to_implies,
    reduction_imopt_to_flow,
    reduction_is_to_csp,
    reduction_is_to_or_csp,
    rewrite_by_construction,
    solve_via_flow,
)
from prodcsp.construct import replay
from prodcsp.instances import int_to_assignment
from prodcsp.reductions import compile_script, gadget_table

F = Fraction


class TestIsToCsp:
    def test_triangle(self):
        g = GraphInstance("IS", 3, ((1, 2), (2, 3), (1, 3)), (F(2), F(3), F(5)))
        csp = is_to_csp(g)
        assert len(csp.applications) == 6  # 3 NAND + 3 unary
        assert brute_force(csp).optimum == 5

    def test_edgeless(self):
        g = GraphInstance("IS", 3, (), (F(1, 2), F(3), F(1)))
        assert brute_force(is_to_csp(g)).optimum == 3

    def test_light_vertex_excluded(self):
        g = GraphInstance("IS", 1, (), (F(1, 2),))
        assert brute_force(is_to_csp(g)).optimum == 1

    def test_pointwise_agreement(self):
        rng = random.Random(0)
        for trial in range(15):
            n = rng.randint(0, 8)
            g = random_graph("IS", n, trial)
            csp = is_to_csp(g)
            for a in range(1 << n):
                bits = int_to_assignment(a, n)
                assert graph_measure(g, bits) == measure(csp, bits)

    def test_wrong_kind(self):
        g = GraphInstance("FLOW", 1, (), (F(1),), ())
        with pytest.raises(Exception):
            is_to_csp(g)


class TestComplement:
    def test_nand_becomes_or(self):
        g = GraphInstance("IS", 2, ((1, 2),), (F(2), F(3)))
        flipped = complement_all(is_to_csp(g))
        assert any(t == OR for t, _ in flipped.applications)
        assert brute_force(flipped).optimum == 3

    def test_measure_bijection(self):
        rng = random.Random(1)
        for trial in range(10):
            n = rng.randint(1, 8)
            pool = [EQ, NAND, make_table([1, F(1, 2)], "u")]
            inst = random_instance(n, pool, rng.randint(0, 8), trial)
            flipped = complement_all(inst)
            for a in range(1 << n):
                bits = int_to_assignment(a, n)
                negated = tuple(1 - b for b in bits)
                assert measure(flipped, negated) == measure(inst, bits)

    def test_involution(self):
        inst = is_to_csp(GraphInstance("IS", 2, ((1, 2),), (F(2), F(3))))
        twice = complement_all(complement_all(inst))
        assert [(t.weights, v) for t, v in twice.applications] == [
            (t.weights, v) for t, v in inst.applications
        ]

    def test_empty_instance(self):
        empty = CspInstance(3, ())
        assert complement_all(empty).applications == ()


class TestBisToImplies:
    def test_single_edge(self):
        g = GraphInstance("BIS", 2, ((1, 2),), (F(3), F(5)), blocks=(0, 1))
        assert brute_force(bis_to_implies(g)).optimum == 5

    def test_no_edges(self):
        g = GraphInstance("BIS", 3, (), (F(3), F(1, 2), F(2)), blocks=(0, 1, 0))
        assert brute_force(bis_to_implies(g)).optimum == 6

    def test_path(self):
        g = GraphInstance(
            "BIS", 3, ((1, 2), (2, 3)), (F(2), F(10), F(2)), blocks=(0, 1, 0)
        )
        assert brute_force(bis_to_implies(g)).optimum == 10

    def test_pointwise_with_flip(self):
        rng = random.Random(2)
        for trial in range(15):
            n = rng.randint(1, 8)
            g = random_graph("BIS", n, trial)
            enc = bis_to_implies(g)
            for a in range(1 << n):
                bits = int_to_assignment(a, n)
                flipped = tuple(b ^ g.blocks[i] for i, b in enumerate(bits))
                assert graph_measure(g, bits) == measure(enc, flipped)

    def test_optima_match_exhaustively(self):
        for trial in range(10):
            g = random_graph("BIS", 7, 100 + trial)
            assert brute_force(bis_to_implies(g)).optimum == graph_brute_force(g).optimum


class TestPointwiseAtFullScale:
    """The encodings stay exact bijections at the n = 12 test bound."""

    def test_is_and_complement_at_n12(self):
        g = random_graph("IS", 12, 424)
        csp = is_to_csp(g)
        flipped = complement_all(csp)
        for a in range(1 << 12):
            bits = int_to_assignment(a, 12)
            value = graph_measure(g, bits)
            assert value == measure(csp, bits)
            assert value == measure(flipped, tuple(1 - b for b in bits))

    def test_bis_at_n12(self):
        g = random_graph("BIS", 12, 425)
        enc = bis_to_implies(g)
        for a in range(1 << 12):
            bits = int_to_assignment(a, 12)
            flipped = tuple(b ^ g.blocks[i] for i, b in enumerate(bits))
            assert graph_measure(g, bits) == measure(enc, flipped)


class TestImoptToFlow:
    def test_worked_example_topology(self):
        t9 = make_table([2, 1, 1, 1], "T9")
        red = imopt_to_flow(CspInstance(2, ((t9, (1, 2)),)))
        assert red.graph.edges == ((2, 1),)
        assert red.graph.rates == (F(2),)
        assert red.constant == 1

    def test_worked_example_value(self):
        t9 = make_table([2, 1, 1, 1], "T9")
        inst = CspInstance(2, ((t9, (1, 2)),))
        value, bits = solve_via_flow(inst)
        assert value == 2 and measure(inst, bits) == 2

    def test_implies_with_unary(self):
        u = make_table([1, 3], "U")
        inst = CspInstance(2, ((IMPLIES, (1, 2)), (u, (2,))))
        value, bits = solve_via_flow(inst)
        assert value == 3 == brute_force(inst).optimum

    def test_contradictory_pins_short_circuit(self):
        p0 = make_table([1, 0], "P0")
        p1 = make_table([0, 1], "P1")
        inst = CspInstance(1, ((p0, (1,)), (p1, (1,))))
        red = imopt_to_flow(inst)
        assert red.trivially_zero
        value, _ = solve_via_flow(inst)
        assert value == 0

    def test_per_assignment_identity_without_hard_pairs(self):
        rng = random.Random(3)
        for trial in range(15):
            n = rng.randint(1, 7)
            pool = [
                random_imopt_constraint(rng, rng.randint(1, 3), f"S{trial}", allow_hard=False)
            ]
            inst = random_instance(n, pool, rng.randint(1, 5), trial)
            red = imopt_to_flow(inst)
            assert not red.has_hard_pairs and not red.pinned
            assert red.graph_vertices == tuple(range(1, n + 1))
            for a in range(1 << n):
                bits = int_to_assignment(a, n)
                assert measure(inst, bits) == red.constant * graph_measure(red.graph, bits)

    def test_hard_pairs_reevaluation_matches_optimum(self):
        rng = random.Random(4)
        for trial in range(20):
            n = rng.randint(1, 7)
            pool = [
                random_imopt_constraint(rng, rng.randint(1, 3), f"H{trial}", allow_hard=True),
                IMPLIES,
            ]
            inst = random_instance(n, pool, rng.randint(1, 6), trial)
            value, bits = solve_via_flow(inst)
            assert value == brute_force(inst).optimum
            assert measure(inst, bits) == value

    def test_non_member_refused(self):
        inst = CspInstance(2, ((XOR, (1, 2)),))
        with pytest.raises(CertificateError):
            imopt_to_flow(inst)

    def test_certificates_accepted_explicitly(self):
        t9 = make_table([2, 1, 1, 1], "T9")
        inst = CspInstance(2, ((t9, (1, 2)),))
        certs = {"T9": is_imopt(t9)}
        red = imopt_to_flow(inst, certs)
        assert red.graph.rates == (F(2),)


class TestRewrite:
    SCRIPTS = {
        "xor": (ConstructionScript("OR", (("mul", "NAND"),)), XOR),
        "link": (ConstructionScript("OR", (("link", 1, 2),)), None),
        "maxout": (ConstructionScript("IMPLIES", (("maxout", 1),)), None),
        "scale": (ConstructionScript("EQ", (("scale", F(3)),)), None),
    }

    def test_replay_matches_gadget_semantics(self):
        for script, _ in self.SCRIPTS.values():
            assert gadget_table(compile_script(script)) == replay(script)

    def test_xor_rewrite_doubles_applications(self):
        inst = CspInstance(3, ((XOR, (1, 2)), (XOR, (2, 3))))
        rw = rewrite_by_construction(inst, XOR, self.SCRIPTS["xor"][0])
        assert rw.occurrences == 2
        assert len(rw.instance.applications) == 4
        assert rw.scale_total == 1
        assert brute_force(rw.instance).optimum == brute_force(inst).optimum

    def test_scale_rewrite_divides_the_optimum(self):
        eq3 = EQ.scale(3).with_name("EQ3")
        inst = CspInstance(2, ((eq3, (1, 2)), (eq3, (2, 1))))
        rw = rewrite_by_construction(inst, eq3, self.SCRIPTS["scale"][0])
        original = brute_force(inst)
        rewritten = brute_force(rw.instance)
        assert rewritten.optimum * rw.scale_total**2 == original.optimum

    def test_maxout_adds_private_variables(self):
        ones = IMPLIES.maximize_out(1).with_name("ONES")
        inst = CspInstance(2, ((ones, (1,)), (ones, (2,)), (EQ, (1, 2))))
        rw = rewrite_by_construction(inst, ones, self.SCRIPTS["maxout"][0])
        assert rw.instance.num_vars == 4  # one private variable per occurrence
        original = brute_force(inst)
        rewritten = brute_force(rw.instance)
        assert rewritten.optimum == original.optimum
        assert measure(inst, rw.project(rewritten.argmax)) == original.optimum

    def test_projected_argmax_achieves_optimum(self):
        rng = random.Random(5)
        for key, (script, known) in self.SCRIPTS.items():
            target = (known or replay(script)).with_name(f"T_{key}")
            for trial in range(8):
                pool = [target, EQ, make_table([1, 2], "u")]
                inst = random_instance(rng.randint(1, 6), pool, rng.randint(1, 6), trial)
                rw = rewrite_by_construction(inst, target, script)
                original = brute_force(inst)
                rewritten = brute_force(rw.instance, max_n=30)
                assert rewritten.optimum * rw.scale_total**rw.occurrences == original.optimum
                assert measure(inst, rw.project(rewritten.argmax)) == original.optimum

    def test_random_scripts_compile_to_their_replay(self):
        rng = random.Random(31337)
        sources = {}
        for arity in range(5):
            for copy in range(2):
                name = f"s{arity}_{copy}"
                sources[name] = make_table(
                    [Fraction(rng.randint(0, 6), rng.randint(1, 4))
                     for _ in range(1 << arity)],
                    name,
                )
        by_arity = {}
        for name, t in sources.items():
            by_arity.setdefault(t.arity, []).append(name)

        for trial in range(120):
            start = rng.choice(list(sources))
            script = ConstructionScript(start)
            current = sources[start].arity
            for _ in range(rng.randint(0, 6)):
                options = ["expand", "scale"]
                if current >= 1:
                    options += ["pin", "maxout"]
                if current >= 2:
                    options += ["perm", "link"]
                if current in by_arity:
                    options.append("mul")
                op = rng.choice(options)
                if op == "perm":
                    i = rng.randint(1, current - 1)
                    script = script.extended(("perm", i, rng.randint(i + 1, current)))
                elif op == "pin":
                    script = script.extended(("pin", rng.randint(1, current), rng.randint(0, 1)))
                    current -= 1
                elif op == "link":
                    i = rng.randint(1, current)
                    j = rng.randint(1, current - 1)
                    if j >= i:
                        j += 1
                    script = script.extended(("link", i, j))
                    current -= 1
                elif op == "expand":
                    script = script.extended(("expand", rng.randint(0, current)))
                    current += 1
                elif op == "mul":
                    script = script.extended(("mul", rng.choice(by_arity[current])))
                elif op == "maxout":
                    d = rng.randint(0, current)
                    script = script.extended(("maxout", d))
                    current -= d
                elif op == "scale":
                    script = script.extended(
                        ("scale", Fraction(rng.randint(1, 5), rng.randint(1, 5)))
                    )
            assert gadget_table(compile_script(script, sources)) == replay(script, sources), script

    def test_replay_mismatch_refused(self):
        bad = ConstructionScript("OR", (("mul", "NAND"), ("scale", F(2))))
        inst = CspInstance(2, ((XOR, (1, 2)),))
        with pytest.raises(Exception) as info:
            rewrite_by_construction(inst, XOR, bad)
        assert "divergence" in str(info.value)


class TestAptWrap:
    def test_bis_route_is_exact(self):
        rng = random.Random(6)
        scheme = apt_wrap(reduction_bis_to_implies(), exact_csp_scheme)
        for trial in range(10):
            g = random_graph("BIS", rng.randint(1, 7), trial)
            solution, log = scheme(g, 0.5)
            assert graph_measure(g, solution) == graph_brute_force(g).optimum
            assert len(log.calls) == 1 and log.bound_report == 2.0

    def test_is_routes_are_exact(self):
        rng = random.Random(7)
        for factory in (reduction_is_to_csp, reduction_is_to_or_csp):
            scheme = apt_wrap(factory(), exact_csp_scheme)
            for trial in range(8):
                g = random_graph("IS", rng.randint(1, 7), 50 + trial)
                solution, log = scheme(g, 0.25)
                assert graph_measure(g, solution) == graph_brute_force(g).optimum
                assert log.bound_report == 4.0

    def test_flow_route_recovers_optima(self):
        rng = random.Random(8)
        scheme = apt_wrap(reduction_imopt_to_flow(), exact_flow_scheme)
        for trial in range(10):
            pool = [random_imopt_constraint(rng, 2, f"W{trial}", allow_hard=True)]
            inst = random_instance(rng.randint(1, 6), pool, rng.randint(1, 5), trial)
            solution, log = scheme(inst, 0.5)
            assert measure(inst, solution) == brute_force(inst).optimum
            assert len(log.calls) == 1

    def test_single_call_budget(self):
        scheme = apt_wrap(reduction_is_to_csp(), exact_csp_scheme)
        g = GraphInstance("IS", 2, ((1, 2),), (F(2), F(3)))
        _, log = scheme(g, 0.125)
        assert log.calls[0][1] == 0.125
        assert log.bound_report == 8.0
