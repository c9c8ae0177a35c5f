"""Potential functions and the peeling procedure, checked exactly."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclecert.certificates import BOUND_TWO_PHI, validate_cycle
from cyclecert.digraph import Digraph, is_sinkless, is_union_of_cycles, remove_vertex
from cyclecert.errors import EmptyGraph, GraphInputError, NotSinkless, SinkPresent
from cyclecert.oracles import girth_exact
from cyclecert.peeling import (
    eq1_terms,
    peel,
    peel_step,
    phi,
    psi,
    removable_vertices,
    short_cycle_via_peeling,
)

from test_core import BI_TRIANGLE, TRIANGLE, all_digraphs, digraph_strategy

APEX = Digraph(4, [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1)])


def sinkless_strategy(max_n=5):
    return digraph_strategy(max_n).filter(lambda d: d.n > 0 and is_sinkless(d))


class TestPotentials:
    def test_triangle_values(self):
        assert psi(TRIANGLE) == 3
        assert phi(TRIANGLE) == Fraction(3, 2)

    def test_bidirected_triangle_values(self):
        assert psi(BI_TRIANGLE) == Fraction(3, 2)
        assert phi(BI_TRIANGLE) == 1

    def test_apex_values(self):
        assert phi(APEX) == Fraction(11, 6)
        assert psi(APEX) == Fraction(7, 2)

    def test_psi_requires_sinkless(self):
        with pytest.raises(SinkPresent):
            psi(Digraph(2, [(0, 1)]))

    def test_phi_tolerates_sinks(self):
        assert phi(Digraph(2, [(0, 1)])) == Fraction(1, 2) + 1
        assert phi(Digraph(1, [])) == 1

    def test_empty_digraph_potentials(self):
        assert psi(Digraph(0, [])) == 0
        assert phi(Digraph(0, [])) == 0

    @given(sinkless_strategy())
    def test_phi_is_less_than_psi_on_sinkless(self, d):
        # 1/(k+1) < 1/k per vertex
        assert phi(d) < psi(d)


class TestEq1:
    def test_terms_on_triangle(self):
        terms = eq1_terms(TRIANGLE)
        assert terms == [(Fraction(1, 2), Fraction(1, 2))] * 3

    def test_both_sides_sum_to_phi_on_sinkless(self):
        for d in (TRIANGLE, BI_TRIANGLE, APEX):
            terms = eq1_terms(d)
            assert sum(l for l, _ in terms) == phi(d)
            assert sum(r for _, r in terms) == phi(d)

    @given(sinkless_strategy())
    def test_summation_identity_property(self, d):
        terms = eq1_terms(d)
        assert sum(l for l, _ in terms) == phi(d)
        assert sum(r for _, r in terms) == phi(d)

    def test_identity_fails_with_a_sink(self):
        # a sink contributes to phi but to no right-hand side
        d = Digraph(2, [(0, 1)])
        terms = eq1_terms(d)
        assert sum(l for l, _ in terms) == phi(d)
        assert sum(r for _, r in terms) < phi(d)

    def test_removable_matches_phi_recomputation(self):
        # the inequality route agrees with deleting v and recomputing phi,
        # exhaustively over every sink-less digraph with n <= 4
        for n in (1, 2, 3, 4):
            for d in all_digraphs(n):
                if not (d.n and is_sinkless(d)):
                    continue
                terms = eq1_terms(d)
                for v, (lhs, rhs) in enumerate(terms):
                    assert (lhs >= rhs) == (phi(remove_vertex(d, v)) <= phi(d))

    def test_removable_vertices_triangle(self):
        assert removable_vertices(TRIANGLE) == [0, 1, 2]
        assert removable_vertices(BI_TRIANGLE) == [0, 1, 2]


class TestPeelStep:
    def test_union_of_cycles_returns_none(self):
        assert peel_step(TRIANGLE) is None
        c5 = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert peel_step(c5) is None

    def test_apex_removes_the_apex(self):
        assert peel_step(APEX) == 3

    def test_bidirected_triangle_removes_smallest(self):
        assert peel_step(BI_TRIANGLE) == 0

    def test_requires_nonempty_sinkless(self):
        with pytest.raises(EmptyGraph):
            peel_step(Digraph(0, []))
        with pytest.raises(NotSinkless):
            peel_step(Digraph(2, [(0, 1)]))

    @given(sinkless_strategy())
    def test_step_never_raises_phi_or_creates_sink(self, d):
        v = peel_step(d)
        if v is None:
            assert is_union_of_cycles(d)
            return
        rest = remove_vertex(d, v)
        assert phi(rest) <= phi(d)
        assert is_sinkless(rest)


class TestPeel:
    def test_triangle_trace_is_trivial(self):
        tr = peel(TRIANGLE)
        assert tr.initial_phi == Fraction(3, 2)
        assert tr.steps == ()
        assert tr.terminal == TRIANGLE
        assert tr.terminal_vertices == (0, 1, 2)

    def test_bidirected_triangle_trace(self):
        tr = peel(BI_TRIANGLE)
        assert tr.steps == ((0, Fraction(1)),)
        assert tr.terminal == Digraph(2, [(0, 1), (1, 0)])
        assert tr.terminal_vertices == (1, 2)

    def test_apex_trace(self):
        tr = peel(APEX)
        assert tr.initial_phi == Fraction(11, 6)
        assert tr.steps == ((3, Fraction(3, 2)),)
        assert tr.terminal_vertices == (0, 1, 2)

    def test_choice_hook_steers_the_run(self):
        tr = peel(BI_TRIANGLE, choose=lambda alive, elig: elig[-1])
        assert tr.steps[0][0] == 2
        assert tr.terminal_vertices == (0, 1)

    def test_choice_hook_must_pick_eligible(self):
        with pytest.raises(GraphInputError):
            peel(BI_TRIANGLE, choose=lambda alive, elig: -1)

    def test_trace_json_shape(self):
        doc = peel(BI_TRIANGLE).to_json_dict()
        assert doc["phi_initial"] == {"num": 1, "den": 1}
        assert doc["steps"] == [{"vertex": 0, "phi": {"num": 1, "den": 1}}]
        assert doc["terminal"]["vertices"] == [1, 2]

    @given(sinkless_strategy())
    @settings(max_examples=150, deadline=None)
    def test_trace_invariants(self, d):
        tr = peel(d)
        assert tr.initial_phi == phi(d)
        # phi never increases along the trace
        values = [tr.initial_phi] + [p for _, p in tr.steps]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert is_union_of_cycles(tr.terminal)
        assert tr.terminal.n == d.n - len(tr.steps)
        # terminal vertices are the untouched ones, in order
        removed = {v for v, _ in tr.steps}
        assert tr.terminal_vertices == tuple(
            v for v in range(d.n) if v not in removed
        )
        # the terminal really is the induced subdigraph on the survivors
        pos = {v: i for i, v in enumerate(tr.terminal_vertices)}
        for u, w in d.arcs:
            if u in pos and w in pos:
                assert tr.terminal.has_arc(pos[u], pos[w])
        assert tr.terminal.m == sum(
            1 for u, w in d.arcs if u in pos and w in pos
        )


class TestShortCycle:
    def test_triangle_certificate(self):
        cert = short_cycle_via_peeling(TRIANGLE)
        assert cert.vertices == (0, 1, 2)
        assert cert.bound == 3
        assert cert.bound_kind == BOUND_TWO_PHI
        assert validate_cycle(TRIANGLE, cert)

    def test_bidirected_triangle_certificate(self):
        cert = short_cycle_via_peeling(BI_TRIANGLE)
        assert cert.vertices == (1, 2)
        assert cert.bound == 2

    def test_five_cycle_is_its_own_certificate(self):
        c5 = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        cert = short_cycle_via_peeling(c5)
        assert cert.vertices == (0, 1, 2, 3, 4)
        assert cert.bound == 2 * phi(c5) == 5

    def test_exhaustive_small(self):
        # every sink-less digraph with n <= 4: validating cert within 2 * phi,
        # and the true girth obeys both potential bounds
        for n in (1, 2, 3, 4):
            for d in all_digraphs(n):
                if not (d.n and is_sinkless(d)):
                    continue
                cert = short_cycle_via_peeling(d)
                assert cert.bound == 2 * phi(d)
                assert validate_cycle(d, cert)
                g, _ = girth_exact(d)
                assert g <= 2 * phi(d)
                assert g < 2 * psi(d)

    @given(sinkless_strategy())
    @settings(max_examples=150, deadline=None)
    def test_certificate_property(self, d):
        cert = short_cycle_via_peeling(d)
        assert validate_cycle(d, cert)
        assert cert.length <= 2 * phi(d)
