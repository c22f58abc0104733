import asyncio
import os

import pytest
from dotenv import load_dotenv

from normcat import NormCat
from normcat.suites import KINDS, SUITES, SuiteSettings, run_suite

load_dotenv()

# The sweeps take minutes at the desk profile and much longer at the thorough one
pytestmark = [
    pytest.mark.integration,
    pytest.mark.skipif(
        not os.getenv("NORMCAT_SWEEPS"),
        reason="Exhaustive sweeps run only when NORMCAT_SWEEPS is set",
    ),
]

# spaces on at most four points up to homeomorphism, and the discrete ones among them
SPACE_TYPES = 47
T1_SPACE_TYPES = 5


def without_timings(records):
    return [{k: v for k, v in r.items() if k != "seconds"} for r in records]


@pytest.fixture(scope="module")
def instances():
    return NormCat()


@pytest.fixture(scope="module")
def settings():
    return SuiteSettings()


@pytest.fixture(scope="module")
def sweep(instances, settings):
    """Records of a suite by statement, each suite run once per module."""
    cache = {}

    def records(suite):
        if suite not in cache:
            cache[suite] = {r["statement"]: r for r in asyncio.run(run_suite(suite, settings, instances))}
        return cache[suite]

    return records


def passed(record):
    assert record["status"] == "PASS", record
    return record["witness"]


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_has_no_failures(sweep, suite):
    records = list(sweep(suite).values())
    failures = [r for r in records if r["status"] == "FAIL"]
    assert not failures, failures
    assert records


async def test_reports_are_stable(instances):
    settings = SuiteSettings(samples=10)
    first = await run_suite("determinism", settings, instances)
    second = await run_suite("determinism", settings, instances)
    assert without_timings(first) == without_timings(second)


class TestSweepBounds:
    def test_decompositions_cover_a_thousand_morphisms(self, sweep, settings):
        records = sweep("decomposition")
        counts = [passed(records[f"decomposition/{kind}"])["morphisms"] for kind in KINDS]
        assert counts == [settings.samples] * len(KINDS)
        assert sum(counts) >= 1000

    def test_spaces_reach_four_points(self, sweep, settings):
        witness = passed(sweep("closed-forms")["closed-form/top"])
        assert witness["max_size"] == settings.max_carrier == 4
        assert witness["objects"] == SPACE_TYPES

    def test_finite_sets_reach_four_points(self, sweep, settings):
        witness = passed(sweep("closed-forms")["closed-form/set"])
        assert witness["max_size"] == settings.max_carrier
        assert witness["objects"] == settings.max_carrier + 1

    @pytest.mark.parametrize("kind", ["set", "top"])
    def test_pre_extensive_squares_reach_four_points(self, sweep, settings, kind):
        witness = passed(sweep("slice-discreteness")[f"pre-extensive/{kind}"])
        assert witness["max_size"] == settings.max_carrier
        assert witness["squares"] > 0

    def test_group_closures_reach_order_twelve(self, sweep, settings):
        records = sweep("slice-grp")
        closure = passed(records["grp-slice-closure"])
        reflection = passed(records["grp-slice-closure/reflection"])
        assert closure["max_order"] == reflection["max_order"] == settings.grp_order == 12
        assert closure["triples"] > 0
        assert reflection["squares"] > 0
        assert reflection["generic_squares"] > 0

    def test_pushouts_use_every_group_as_target(self, sweep, settings):
        witness = passed(sweep("grp-pushout")["grp-slice-pushout"])
        assert witness["targets"] == 25
        assert witness["max_order"] == 12
        assert witness["squares"] > 0

    def test_naturality_uses_general_squares(self, sweep, settings):
        records = sweep("naturality")
        for kind in KINDS:
            witness = passed(records[f"naturality/{kind}"])
            assert settings.squares // 2 <= witness["squares"] <= settings.squares
            assert witness["attempts"] <= 4 * settings.squares

    def test_t1_sweeps_reach_four_points(self, sweep, settings):
        records = sweep("top1")
        discrete = passed(records["top1/discrete"])
        spaces = passed(records["top1/closure-spaces"])
        assert discrete["max_carrier"] == spaces["max_carrier"] == settings.max_carrier
        assert spaces["spaces"] == SPACE_TYPES
        assert spaces["non_t1_spaces"] == SPACE_TYPES - T1_SPACE_TYPES
