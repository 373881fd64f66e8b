import csv
import io

from hypothesis import given, settings
from hypothesis import strategies as st

from critpair.report import GroupTally, VerificationReport
from critpair.sweep import sweep

names = st.text(st.characters(min_codepoint=48, max_codepoint=122), min_size=1, max_size=8)


@st.composite
def reports(draw):
    tallies = draw(st.lists(st.builds(GroupTally, names, st.integers(0, 10 ** 6),
                                      st.integers(0, 10 ** 6), st.integers(0, 50)), max_size=4))
    cxs = draw(st.lists(st.fixed_dictionaries(
        {"group": names, "S": st.one_of(st.none(), names), "T": st.one_of(st.none(), names),
         "detail": st.text(max_size=20)}), max_size=3))
    return VerificationReport(
        theorem=draw(names), groups=[t.group for t in tallies],
        hypothesis_count=draw(st.integers(0, 10 ** 6)), verified_count=draw(st.integers(0, 10 ** 6)),
        counterexamples=cxs, elapsed_ms=draw(st.floats(0, 1e6, allow_nan=False)),
        config={"theorem": "x", "groups": ["Z6"]}, per_group=tallies,
        observations=draw(st.dictionaries(names, st.integers(0, 1000), max_size=4)))


@given(reports())
@settings(max_examples=100, deadline=None)
def test_json_round_trip(r):
    back = VerificationReport.from_json(r.to_json())
    assert back == r
    assert "elapsed_ms" not in VerificationReport.from_json(r.to_json()).to_dict(timing=False)


def test_csv_has_one_row_per_group():
    r = sweep("kneser", ["Z4", "Z2xZ2"])
    rows = list(csv.reader(io.StringIO(r.to_csv())))
    assert rows[0] == ["theorem", "group", "hypothesis_count", "verified_count", "counterexamples"]
    assert [row[1] for row in rows[1:]] == ["Z4", "Z2xZ2"]
    assert sum(int(row[2]) for row in rows[1:]) == r.hypothesis_count
    assert all(row[0] == "kneser" and row[4] == "0" for row in rows[1:])


def test_summary_and_consistency():
    r = sweep("kneser", ["Z5"])
    assert r.consistent() and r.ok
    assert r.summary().startswith(f"kneser: {r.hypothesis_count}/{r.hypothesis_count} verified")
    d = r.to_dict()
    assert set(d) >= {"theorem", "groups", "hypothesis_count", "verified_count",
                      "counterexamples", "elapsed_ms", "config"}
