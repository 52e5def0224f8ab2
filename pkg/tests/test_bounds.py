import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from eqtc.bounds import (INF, RULES, TOP, Bound, Fact, Interval, Quantity, Session, acat, cat, cat_g,
                         load_facts, parse_quantity, power, rule_registry, tc, tc_g, tc_inv)
from eqtc.errors import InputError


def user(kind, *args):
    return Fact(kind, args, "test", "user")


def bound(q, lo, hi=INF):
    return Bound(q, Interval(lo, hi), "test", "user")


def run(*judgments, queries=(), **kw):
    s = Session(**kw).extend(judgments)
    for q in queries:
        s.query(q)
    return s.saturate()


# -- quantities and intervals ----------------------------------------------------------

names = st.sampled_from(["X", "S3", "Z_K", "S1", "Y^2", "Z[square]", "T2"])
groups = st.sampled_from(["S1", "Z2", "T^2", "S1xS1", "G"])
quantities = st.one_of(
    names.map(cat),
    st.builds(cat_g, names, groups),
    st.builds(tc, names, st.integers(2, 9)),
    st.builds(tc_g, names, groups, st.integers(2, 9)),
    st.builds(tc_inv, names, groups, st.integers(2, 9)),
    st.builds(acat, names, groups, st.sampled_from(["O(y)", "A"]), st.one_of(st.none(), st.integers(2, 5))),
)


@given(q=quantities)
def test_quantity_text_round_trip(q):
    assert parse_quantity(str(q)) == q


@pytest.mark.parametrize("text,expected", [
    ("TC_2(S3)", tc("S3", 2)),
    ("TC_{S1,3}(S3)", tc_g("S3", "S1", 3)),
    ("TC^{Z2,2}(X)", tc_inv("X", "Z2", 2)),
    ("cat_{T^2}(Z_K)", cat_g("Z_K", "T^2")),
    ("TC_{1,2}(X)", tc("X", 2)),
    ("cat_{1}(X)", cat("X")),
])
def test_parse_quantity(text, expected):
    assert parse_quantity(text) == expected


@pytest.mark.parametrize("bad", ["TC(X)", "TC_{S1,x}(X)", "foo(X)", "TC_1(X)", "Acat_{G}(X)"])
def test_parse_quantity_rejects(bad):
    with pytest.raises(InputError):
        parse_quantity(bad)


def test_trivial_group_normalizes():
    assert tc_g("X", "1", 2) == tc_inv("X", "1", 2) == tc("X", 2)
    assert cat_g("X", "1") == cat("X")
    with pytest.raises(InputError):
        Quantity("TC_n", "X", "G", 2)


def test_interval_basics():
    assert str(Interval(2, 2)) == "= 2" and str(TOP) == "[1, inf]"
    assert Interval(2, 5).meet(Interval(3, INF)) == Interval(3, 5)
    assert Interval(4, 3).is_empty and 3 in Interval(2, 5)


def test_fact_validation():
    with pytest.raises(InputError):
        Fact("g_connected", ("X",))
    with pytest.raises(InputError):
        Fact("nonsense", ())
    assert Fact("zcl", ("X", "2", "3")).args == ("X", 2, 3)


# -- rules, one scenario each ----------------------------------------------------------

G = "G"
RULE_CASES = {
    "R1": ([bound(tc("X", 2), 3)], tc_g("X", G, 2), "lo", 3),
    "R2": ([bound(tc_g("X", G, 2), 4)], tc_g("X", G, 3), "lo", 4),
    "R3": ([user("fixed_set", "X", G, "H", "Y"), bound(tc("Y", 2), 3)], tc_g("X", G, 2), "lo", 3),
    "R4": ([user("g_connected", "X", G), user("fixed_nonempty", "X", G), bound(cat_g("X", G), 1, 2)],
           tc_g("X", G, 3), "hi", 5),
    "R5": ([user("g_connected", "X", G), user("fixed_nonempty", "X", G), bound(tc_g("X", G, 2), 1, 2)],
           tc_g("X", G, 4), "hi", 7),
    "R6": ([user("product", "A", "H", "B", "K", "AxB", "HxK"), user("g_connected", "A", "H"),
            user("g_connected", "B", "K"), user("fixed_nonempty", "A", "H"), user("fixed_nonempty", "B", "K"),
            user("completely_normal", "AxB"), bound(cat_g("A", "H"), 1, 2), bound(cat_g("B", "K"), 1, 3)],
           cat_g("AxB", "HxK"), "hi", 4),
    "R7": ([user("one_orbit_type", "X", G), user("quotient", "X", G, "Q"), bound(cat("Q"), 2, 2)],
           cat_g("X", G), "hi", 2),
    "R8": ([user("free_self_action", "S1"), bound(cat("S1^2"), 3, 3)], tc_g("S1", "S1", 3), "lo", 3),
    "R9": ([user("nonempty_disconnected_fixed_set", "X", G, "H")], tc_g("X", G, 2), "lo", INF),
    "R10": ([user("minimal_orbit_classes", "X", G, 2)], tc_inv("X", G, 2), "lo", INF),
    "R11": ([user("free", "X", G), user("quotient", "X", G, "Q"), bound(tc("Q", 3), 1, 3)],
            tc_inv("X", G, 3), "hi", 3),
    "R12": ([user("fixed_set", "X", G, G, "F"), bound(tc("F", 2), 3)], tc_inv("X", G, 2), "lo", 3),
    "R13": ([bound(tc_inv("X", G, 2), 3)], tc_inv("X", G, 3), "lo", 3),
    "R14": ([user("product", "A", "H", "B", "K", "AxB", "HxK"), user("cofibration", "A", "H"),
             user("cofibration", "B", "K"), bound(tc_inv("A", "H", 2), 1, 2), bound(tc_inv("B", "K", 2), 1, 2)],
            tc_inv("AxB", "HxK", 2), "hi", 3),
    "R15": ([bound(acat("X", G, "O(y)", 2), 1, 4)], tc_inv("X", G, 2), "hi", 4),
    "R16": ([user("minimal_orbit_classes", "X", G, 3)], cat_g("X", G), "lo", 3),
    "R17": ([user("torus_cat", "Z_K", "T^2", 2)], cat_g("Z_K", "T^2"), "hi", 2),
    "R18a": ([user("zcl", "X", 2, 3)], tc("X", 2), "lo", 3),
    "R18b": ([user("zcl", "X", 2, 3)], tc("X", 2), "lo", 4),
    "R19": ([user("acts_by_homomorphisms", "X", G), user("g_connected", "X", G), user("quotient", "X", G, "Q"),
             bound(cat("Q"), 2, 2)], tc_g("X", G, 2), "hi", 2),
    "R20": ([user("g_connected", "X", G), user("fixed_nonempty", "X", G), bound(cat_g("X", G), 3)],
            tc_g("X", G, 2), "lo", 3),
}


def test_every_rule_has_a_case():
    assert set(RULE_CASES) == set(RULES)


@pytest.mark.parametrize("rid", list(RULE_CASES))
def test_rule_fires(rid):
    judgments, q, side, value = RULE_CASES[rid]
    s = run(*judgments, queries=[q], sharp_zcl=(rid == "R18b"))
    iv = s.interval(q)
    assert (iv.lo if side == "lo" else iv.hi) == value
    d = s.explain(q).lower if side == "lo" else s.explain(q).upper
    assert d.rule == rid


def test_rules_need_their_hypotheses():
    # R4 without G-connectedness, R20 without a fixed point, R18b without the flag
    s = run(user("fixed_nonempty", "X", G), bound(cat_g("X", G), 1, 2))
    assert s.interval(tc_g("X", G, 3)) == TOP
    s = run(user("g_connected", "X", G), bound(cat_g("X", G), 3))
    assert s.interval(tc_g("X", G, 2)).lo == 1
    s = run(user("zcl", "X", 2, 3))
    assert s.interval(tc("X", 2)).lo == 3
    s = run(user("minimal_orbit_classes", "X", G, 1))
    assert s.interval(tc_inv("X", G, 2)) == TOP


def test_s3_upper_bound_comes_from_category():
    s = run(bound(cat_g("S3", "S1"), 2, 2), user("g_connected", "S3", "S1"), user("fixed_nonempty", "S3", "S1"))
    e = s.explain("TC_{S1,3}(S3)")
    assert e.upper.rule == "R4" and e.upper.value == 5
    leaves = [p for p in e.upper.premises if hasattr(p, "rule") and p.rule is None]
    assert leaves and str(leaves[0].quantity) == "cat_{S1}(S3)"


def test_empty_session_knows_nothing():
    s = Session().saturate()
    assert s.query("TC_{S1,2}(S3)") == TOP
    assert "no information" in s.explain("TC_{S1,2}(S3)").render()


def test_ceiling():
    s = run(bound(tc("X", 2), 100), bound(cat_g("Y", G), 1, 40), user("g_connected", "Y", G),
            user("fixed_nonempty", "Y", G), ceiling=64)
    assert s.interval(tc("X", 2)).lo == 64
    # 2 * 40 - 1 = 79 lies above the ceiling, so the upper bound is dropped
    assert s.interval(tc_g("Y", G, 2)).hi == INF


def test_inconsistency_is_reported_not_resolved():
    s = run(bound(tc("X", 2), 5), bound(tc_g("X", G, 2), 1, 3))
    assert s.inconsistencies
    assert s.interval(tc_g("X", G, 2)) == Interval(5, 3)
    assert "exceeds" in s.report()


def test_report_formats():
    s = run(user("zcl", "X", 2, 2))
    s.query("TC_{G,2}(X)")
    md = s.report()
    assert "| TC_{2}(X) | [2, inf] | R18a from zcl(X, 2, 2) | - |" in md
    assert "| TC_{G,2}(X) | [1, inf] |" in md
    doc = json.loads(s.report("json"))
    assert doc["quantities"][0]["interval"] == [2, "inf"]


def test_facts_file_parsing():
    entries = [
        {"kind": "cat_G", "params": {"space": "S3", "group": "S1"}, "interval": [2, 2], "citation": "given"},
        {"kind": "g_connected", "params": {"space": "S3", "group": "S1"}, "flag": True},
        {"kind": "TC_{G,n}", "params": {"space": "S3", "group": "S1", "n": 2}, "interval": [1, "inf"]},
        {"kind": "free", "params": {"space": "S3", "group": "S1"}, "flag": False},
    ]
    out = load_facts(entries)
    assert len(out) == 3
    assert out[0].quantity == cat_g("S3", "S1") and out[0].interval == Interval(2, 2)
    for bad in ([{"kind": "cat"}], [{"params": {}}], [{"kind": "g_connected", "params": {"space": "X"}}],
                [{"kind": "cat", "params": {"space": "X"}, "interval": [0, 2]}]):
        with pytest.raises(InputError):
            load_facts(bad)


def test_registry_lists_all_rules():
    text = rule_registry()
    assert all(text.count(f"{rid} ") >= 1 for rid in RULES)
    assert power("X", 1) == "X" and power("X", 3) == "X^3"


# -- properties over the fixture session ---------------------------------------------------


@settings(max_examples=25)
@given(data=st.data())
def test_superset_never_widens(fixture_judgments, data):
    n = len(fixture_judgments)
    small = sorted(data.draw(st.sets(st.integers(0, n - 1), max_size=n)))
    extra = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
    big = sorted(set(small) | extra)
    A = run(*[fixture_judgments[i] for i in small], sharp_zcl=True)
    B = run(*[fixture_judgments[i] for i in big], sharp_zcl=True)
    for q, iv in A.intervals.items():
        jv = B.interval(q)
        assert jv.lo >= iv.lo and jv.hi <= iv.hi


@settings(max_examples=25)
@given(data=st.data())
def test_facts_round_trip_and_schedule_independence(fixture_judgments, data):
    n = len(fixture_judgments)
    chosen = sorted(data.draw(st.sets(st.integers(0, n - 1), max_size=n)))
    s = run(*[fixture_judgments[i] for i in chosen], sharp_zcl=True)
    text = json.dumps(s.to_json())
    again = Session.from_json(text).saturate(rng=random.Random(data.draw(st.integers(0, 10**6))))
    assert again.intervals == s.intervals
    assert again.settings() == s.settings()


@settings(max_examples=25)
@given(data=st.data())
def test_chain_property(fixture_judgments, data):
    n = len(fixture_judgments)
    chosen = sorted(data.draw(st.sets(st.integers(0, n - 1), max_size=n)))
    s = run(*[fixture_judgments[i] for i in chosen], sharp_zcl=True)
    for q, iv in list(s.intervals.items()):
        if q.kind in ("TC_{G,n}", "TC^{G,n}", "TC_n") and q.n < 5:
            nxt = Quantity(q.kind, q.space, q.group, q.n + 1)
            assert s.interval(nxt).lo >= iv.lo


def test_saturation_is_idempotent(fixture_judgments):
    s = run(*fixture_judgments, sharp_zcl=True)
    before = dict(s.intervals), dict(s.why)
    s.saturate()
    assert (dict(s.intervals), dict(s.why)) == before
