import json

from hypothesis import given, settings, strategies as st

from tacit_audit import __version__
from tacit_audit.findings import CATEGORIES, SEVERITIES, fnv1a64, finding_id, make_finding
from tacit_audit.report import collect, render


def test_fnv1a64_reference_vectors():
    assert fnv1a64(b"") == 0xCBF29CE484222325
    assert fnv1a64(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a64(b"foobar") == 0x85944171F73967E8


def test_finding_id_layout():
    expected = fnv1a64("SPEC_ATOMICITY\0P,Q,a\0m.dsl:4".encode())
    assert finding_id("SPEC_ATOMICITY", ("P", "Q", "a"), "m.dsl", 4) == f"{expected:016x}"
    assert len(finding_id("DOMAIN_GAP", (), "x", 1)) == 16


def f(category="SPEC_ATOMICITY", subjects=("A",), line=1, file="m.dsl", severity="question"):
    return make_finding(category, severity, subjects, "q?", "ev", file, line)


def test_collect_dedups():
    r = collect([f(), f()])
    assert len(r.findings) == 1


def test_collect_empty():
    r = collect([])
    assert r.findings == ()
    assert set(r.stats["byCategory"].values()) == {0}
    assert list(r.stats["byCategory"]) == list(CATEGORIES)
    assert list(r.stats["bySeverity"]) == list(SEVERITIES)


def test_collect_counts():
    r = collect([f("SPEC_ATOMICITY", ("A",)), f("SPEC_ATOMICITY", ("B",)), f("LANG_UNCLEAR", ("C",))])
    nonzero = {k: v for k, v in r.stats["byCategory"].items() if v}
    assert nonzero == {"SPEC_ATOMICITY": 2, "LANG_UNCLEAR": 1}


def test_collect_sorts_canonically():
    items = [f(line=3), f(file="a.dsl", line=9), f("DOMAIN_GAP", line=3), f(line=1)]
    r = collect(items)
    keys = [(x.file, x.line, x.category, x.id) for x in r.findings]
    assert keys == sorted(keys)


def test_json_key_order():
    r = collect([f()], "M", 7, 5, ["validate", "atomicity"])
    data = json.loads(render(r))
    assert list(data) == ["toolVersion", "modelName", "seed", "budget", "checksRun", "findings", "stats"]
    assert list(data["findings"][0]) == ["id", "category", "severity", "subjects", "question",
                                         "evidence", "location"]
    assert data["findings"][0]["location"] == {"file": "m.dsl", "line": 1}
    assert list(data["stats"]) == ["byCategory", "bySeverity"]
    assert data["toolVersion"] == __version__ and data["seed"] == 7 and data["budget"] == 5


def test_empty_report_json():
    data = json.loads(render(collect([])))
    assert data["findings"] == []


def test_render_is_byte_stable():
    r = collect([f()])
    assert render(r) == render(r)
    assert render(r, "text") == render(r, "text")


def test_text_render_of_violation():
    text = render(collect([f(severity="violation")]), "text")
    line = next(l for l in text.splitlines() if "SPEC_ATOMICITY" in l)
    assert line.split()[1] == "VIOLATION"


findings = st.builds(f, st.sampled_from(CATEGORIES), st.lists(st.sampled_from("ABC"), max_size=3).map(tuple),
                     st.integers(1, 5), st.sampled_from(["a.dsl", "b.dsl"]), st.sampled_from(SEVERITIES))


@settings(max_examples=100, deadline=None)
@given(st.lists(findings, max_size=15), st.randoms())
def test_collect_is_order_independent(items, rnd):
    shuffled = list(items)
    rnd.shuffle(shuffled)
    a, b = collect(items), collect(shuffled)
    assert render(a) == render(b)
    assert sum(a.stats["byCategory"].values()) == len(a.findings) == sum(a.stats["bySeverity"].values())
