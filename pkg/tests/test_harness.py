"""Enumeration generators, the verification suite driver, and the ratio search."""

import json
import math

import pytest

from cyclecert.digraph import Digraph, is_sinkless
from cyclecert.errors import CapExceeded, GraphInputError, Infeasible
from cyclecert.families import RainbowInstance
from cyclecert.harness import (
    ALL_CHECKS,
    DIGRAPH_CHECKS,
    LABELED_CAP,
    OUTMAP_CAP,
    RAINBOW_CAP,
    RAINBOW_CHECKS,
    SuiteConfig,
    enumerate_digraphs,
    enumerate_outmaps,
    extremal_ratio_search,
    random_rainbow_instance,
    run_suite,
)


def doc_of(report, ignore_workers=True):
    d = report.to_json_dict()
    if ignore_workers:
        d["config"]["workers"] = 0
    return json.dumps(d, sort_keys=True)


class TestSuiteConfig:
    def test_defaults_validate(self):
        cfg = SuiteConfig(n_lo=1, n_hi=3, generator="labeled", checks=("two-phi",))
        cfg.validate()

    def test_unknown_names_rejected(self):
        with pytest.raises(GraphInputError):
            SuiteConfig(1, 3, "nope", ("two-phi",)).validate()
        with pytest.raises(GraphInputError):
            SuiteConfig(1, 3, "labeled", ("bogus",)).validate()
        with pytest.raises(GraphInputError):
            SuiteConfig(1, 3, "labeled", ("two-phi",), filter="odd").validate()

    def test_check_generator_mismatch_rejected(self):
        with pytest.raises(GraphInputError):
            SuiteConfig(1, 3, "labeled", ("rainbow-bound",)).validate()
        with pytest.raises(GraphInputError):
            SuiteConfig(4, 5, "rainbow", ("two-phi",)).validate()

    def test_caps(self):
        with pytest.raises(CapExceeded):
            SuiteConfig(1, LABELED_CAP + 1, "labeled", ("two-phi",)).validate()
        with pytest.raises(CapExceeded):
            SuiteConfig(1, OUTMAP_CAP + 1, "outmaps", ("two-cycles",)).validate()
        with pytest.raises(CapExceeded):
            SuiteConfig(
                2, RAINBOW_CAP + 1, "rainbow", ("rainbow-bound",)
            ).validate()
        # at the cap is fine
        SuiteConfig(1, OUTMAP_CAP, "outmaps", ("two-cycles",)).validate()

    def test_bad_ranges_rejected(self):
        with pytest.raises(GraphInputError):
            SuiteConfig(3, 2, "labeled", ("two-phi",)).validate()
        with pytest.raises(GraphInputError):
            SuiteConfig(1, 3, "rainbow", ("rainbow-bound",)).validate()

    def test_check_sets_are_disjoint_and_cover(self):
        assert set(DIGRAPH_CHECKS) | set(RAINBOW_CHECKS) == set(ALL_CHECKS)
        assert not set(DIGRAPH_CHECKS) & set(RAINBOW_CHECKS)
        assert len(ALL_CHECKS) == len(set(ALL_CHECKS))


class TestEnumerateDigraphs:
    def test_counts_all(self):
        assert [sum(1 for _ in enumerate_digraphs(n, "none")) for n in (1, 2, 3, 4)] \
            == [1, 4, 64, 4096]

    def test_counts_sinkless(self):
        # product over vertices of (2^(n-1) - 1) nonempty out-sets
        assert [sum(1 for _ in enumerate_digraphs(n, "sinkless")) for n in (1, 2, 3, 4)] \
            == [0, 1, 27, 2401]

    def test_counts_strong(self):
        assert [sum(1 for _ in enumerate_digraphs(n, "strong")) for n in (1, 2, 3)] \
            == [0, 1, 18]

    def test_yields_digraphs_in_code_order(self):
        items = list(enumerate_digraphs(2, "none"))
        assert len(items) == 4
        assert items[0] == Digraph(2, [])
        assert items[3] == Digraph(2, [(0, 1), (1, 0)])
        assert all(isinstance(d, Digraph) for d in items)

    def test_filters_nest(self):
        sinkless = set(enumerate_digraphs(3, "sinkless"))
        strong = set(enumerate_digraphs(3, "strong"))
        assert strong <= sinkless
        assert all(is_sinkless(d) for d in sinkless)


class TestEnumerateOutmaps:
    def test_degree_one_count(self):
        assert sum(1 for _ in enumerate_outmaps(3, 1, 1)) == 8

    def test_degree_one_or_two_counts(self):
        assert sum(1 for _ in enumerate_outmaps(3, 1, 2)) == 27
        assert sum(1 for _ in enumerate_outmaps(4, 1, 2)) == 1296

    def test_single_vertex_has_no_maps(self):
        assert list(enumerate_outmaps(1, 1, 2)) == []

    def test_degrees_respected_and_distinct(self):
        seen = set()
        for d in enumerate_outmaps(4, 1, 2):
            assert all(1 <= deg <= 2 for deg in d.out_deg)
            seen.add(d.out_masks)
        assert len(seen) == 1296


class TestRandomRainbowInstance:
    def test_all_singletons_when_p_equals_n(self):
        inst = random_rainbow_instance(4, 4, seed=7)
        assert [len(f) for f in inst.families] == [1, 1, 1, 1]
        assert inst.p == 4 and inst.m == 4

    def test_disjoint_uses_distinct_pairs(self):
        inst = random_rainbow_instance(5, 0, seed=3, disjoint=True)
        edges = [e for fam in inst.families for e in fam]
        assert len(edges) == 10 and len(set(edges)) == 10

    def test_mixed_p_shape(self):
        inst = random_rainbow_instance(6, 2, seed=0)
        sizes = sorted(len(f) for f in inst.families)
        assert sizes == [1, 1, 2, 2, 2, 2]
        assert inst.p == 2

    def test_determinism(self):
        a = random_rainbow_instance(7, 3, seed=42)
        b = random_rainbow_instance(7, 3, seed=42)
        assert a == b
        c = random_rainbow_instance(7, 3, seed=43)
        assert a != c  # overwhelmingly likely, fixed here by the frozen seed

    def test_infeasible_shapes(self):
        with pytest.raises(Infeasible):
            random_rainbow_instance(3, 0, seed=1, disjoint=True)
        with pytest.raises(Infeasible):
            random_rainbow_instance(4, 5, seed=1)  # p > n
        with pytest.raises(Infeasible):
            random_rainbow_instance(1, 1, seed=1)  # no loop-free edges
        with pytest.raises(Infeasible):
            random_rainbow_instance(2, 0, seed=1)  # size-2 families need 2 pairs

    def test_instances_are_valid(self):
        for seed in range(30):
            inst = random_rainbow_instance(8, seed % 9, seed=seed, disjoint=False)
            assert isinstance(inst, RainbowInstance)
            assert inst.m == 8 and inst.p == seed % 9


class TestRunSuite:
    CFG = SuiteConfig(
        n_lo=1,
        n_hi=3,
        generator="labeled",
        checks=("two-phi", "two-psi-strict", "eq1-identity", "chc"),
    )

    def test_small_labeled_sweep(self):
        report = run_suite(self.CFG)
        assert not report.has_violations
        assert report.findings == []
        assert report.instances_generated == 28  # sink-less survivors of 69 subsets
        assert report.checked == {c: 28 for c in self.CFG.checks}
        assert report.passed == report.checked

    def test_extremal_summary(self):
        report = run_suite(self.CFG)
        top = report.extremal["max_girth_psi_ratio"]
        assert top["ratio"] == {"num": 4, "den": 3}
        assert top["n"] == 3 and top["index"] == 63
        tight = report.extremal["tightness"]
        assert tight["count"] == 4
        assert len(tight["witnesses"]) == 4

    def test_deterministic_and_worker_invariant(self):
        base = doc_of(run_suite(self.CFG))
        again = doc_of(run_suite(self.CFG))
        forked = doc_of(
            run_suite(
                SuiteConfig(
                    n_lo=1,
                    n_hi=3,
                    generator="labeled",
                    checks=self.CFG.checks,
                    workers=2,
                )
            )
        )
        assert base == again == forked

    def test_outmap_sweep(self):
        cfg = SuiteConfig(
            n_lo=1, n_hi=4, generator="outmaps", checks=("two-cycles", "deg2-girth")
        )
        report = run_suite(cfg)
        assert not report.has_violations
        assert report.instances_generated == 0 + 1 + 27 + 1296
        assert report.checked == {"two-cycles": 1324, "deg2-girth": 1324}

    def test_rainbow_sweep(self):
        cfg = SuiteConfig(
            n_lo=4,
            n_hi=6,
            generator="rainbow",
            checks=("rainbow-bound", "rd-claim"),
            count=50,
            seed=1,
        )
        report = run_suite(cfg)
        assert not report.has_violations
        assert report.checked["rainbow-bound"] == 150
        assert report.passed["rainbow-bound"] == 150

    def test_report_json_shape(self):
        doc = run_suite(self.CFG).to_json_dict()
        assert sorted(doc) == [
            "checked",
            "config",
            "extremal",
            "findings",
            "instances_generated",
            "passed",
            "violations",
        ]
        assert doc["config"]["generator"] == "labeled"

    def test_invalid_config_refused(self):
        with pytest.raises(GraphInputError):
            run_suite(SuiteConfig(1, 3, "labeled", ("rainbow-bound",)))


class TestExtremalRatioSearch:
    def test_exhaustive_n3(self):
        report = extremal_ratio_search(3, 1000)
        assert report.config["mode"] == "exhaustive"
        assert report.instances_generated == 27
        top = report.extremal["max_girth_psi_ratio"]
        assert top["ratio"] == {"num": 4, "den": 3}
        assert top["girth"] == 2
        assert top["psi"] == {"num": 3, "den": 2}
        # witness: the bidirected triangle
        assert top["instance"].startswith("digraph 3 6")

    def test_exhaustive_n2(self):
        report = extremal_ratio_search(2, 10)
        top = report.extremal["max_girth_psi_ratio"]
        assert top["ratio"] == {"num": 1, "den": 1}  # the digon: g = 2, psi = 2

    def test_budget_zero_reports_nothing(self):
        report = extremal_ratio_search(5, 0)
        assert report.extremal == {} and report.instances_generated == 0

    def test_hill_climb_mode(self):
        report = extremal_ratio_search(5, 400, seed=9)
        assert report.config["mode"] == "hill-climb"
        assert report.instances_generated >= 400
        top = report.extremal["max_girth_psi_ratio"]
        ratio = top["ratio"]["num"] / top["ratio"]["den"]
        assert 1 <= ratio < 2

    def test_hill_climb_deterministic(self):
        a = extremal_ratio_search(6, 300, seed=5)
        b = extremal_ratio_search(6, 300, seed=5)
        assert doc_of(a) == doc_of(b)

    def test_bad_inputs(self):
        with pytest.raises(GraphInputError):
            extremal_ratio_search(1, 100)
        with pytest.raises(GraphInputError):
            extremal_ratio_search(4, -1)
