import itertools
import random

from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, model
from flat_oracle import random_spec, render_spec
from tacit_audit.questions import (
    gen_atomicity, gen_containment, gen_disjointness, gen_encapsulation, gen_entity_relations,
)
from tacit_audit.sampling import Budget, sample_pairs
from tacit_audit.validate import symbol_table

COUPLED = """model M
var engineOn: bool
state Car parallel {
  region Engine { initial Off state Off state On trans Off -> On on start do set engineOn = true }
  region Motion { initial Stop state Stop state Go trans Stop -> Go on push when engineOn }
}
"""


def test_encapsulation_cross_region_coupling():
    found = gen_encapsulation(model(COUPLED))
    assert [f.subjects for f in found] == [("engineOn", "Engine", "Motion")]
    assert found[0].category == "SPEC_ABSTRACTION"


def test_encapsulation_member_pairs():
    found = gen_encapsulation(model("model M\nset Lanes {narrow, wide}"))
    assert [f.subjects for f in found] == [("Lanes", "narrow", "wide")]
    assert "differentiated treatment" in found[0].question


def test_encapsulation_nothing_to_ask():
    assert gen_encapsulation(model("model M\nstate A\nstate B\ntrans A -> B on e")) == []


def test_disjointness_violation():
    found = gen_disjointness(model((FIXTURES / "disjoint_violation.dsl").read_text()))
    violations = [f for f in found if f.severity == "violation"]
    assert [f.subjects for f in violations] == [("RoadUsers", "Obstacles", "house_on_truck")]


def test_disjointness_undeclared_pair():
    found = gen_disjointness(model("model M\nset A {x}\nset B {y}"))
    assert [(f.severity, f.subjects) for f in found] == [("question", ("A", "B"))]


def test_disjointness_nothing_to_ask():
    assert gen_disjointness(model("model M\nset A {x}\nstate S")) == []


def test_disjointness_sibling_states():
    found = gen_disjointness(model("model M\nstate A\nstate B\nstate C"))
    assert [f.subjects for f in found] == [("A", "B"), ("A", "C"), ("B", "C")]


def test_containment_per_substate():
    m = model("model M\nstate Operating { initial A state A state B }\nstate Maintenance\n"
              "trans Operating -> Maintenance on fault")
    found = gen_containment(m)
    assert sorted(f.subjects for f in found) == [("Operating", "A", "fault"), ("Operating", "B", "fault")]
    assert {f.severity for f in found} == {"question"}


def test_containment_asymmetric_entry_is_warning():
    m = model("model M\nvar lock: bool\nstate Operating { initial A state A { entry do set lock = true } state B }\n"
              "state Maintenance\ntrans Operating -> Maintenance on fault")
    sev = {f.subjects[1]: f.severity for f in gen_containment(m)}
    assert sev == {"A": "warning", "B": "question"}


def test_containment_nothing_to_ask():
    assert gen_containment(model("model M\nstate A\nstate B\ntrans A -> B on e")) == []


def test_atomicity_examples():
    m = model("model M\nvar a: bool\nvar b: bool\nstate P\nstate Q\n"
              "trans P -> Q do set a = true\ntrans P -> P do set a = true, set b = false\ntrans P -> Q")
    assert [f.subjects for f in gen_atomicity(m)] == [("P", "Q", "a"), ("P", "P", "a", "b")]


ACTIONS = ["set a = true", "set b = true", "set c = false", "emit z"]


def test_atomicity_exhaustive():
    lines, expected = [], []
    for target in ("A", "B"):
        for n in range(4):
            for combo in itertools.product(ACTIONS, repeat=n):
                text = f"trans A -> {target}" + (" do " + ", ".join(combo) if combo else "")
                changed = (target != "A") + len({c for c in combo if c.startswith("set")})
                lines.append(text)
                expected.append(changed >= 2)
    m = model("model M\nvar a: bool\nvar b: bool\nvar c: bool\nstate A\nstate B\n" + "\n".join(lines))
    flagged = {f.line for f in gen_atomicity(m)}
    assert [t.line in flagged for t in m.transitions] == expected


def test_entity_relations_examples():
    found = gen_entity_relations(model("model M\nset RoadUsers {car}\nset Obstacles {cone}"))
    assert [f.subjects for f in found] == [("RoadUsers", "Obstacles"), ("RoadUsers", "car", "Obstacles", "cone")]
    assert gen_entity_relations(model("model M")) == []


def test_entity_relations_budget_oracle():
    m = model((FIXTURES / "ten_sets.dsl").read_text())
    found = gen_entity_relations(m, Budget(5, 42))
    names = [s.name for s in m.sets]
    assert len(found) == 5
    assert [f.subjects for f in found] == [(names[i], names[j]) for i, j in sample_pairs(10, 5, 42)]
    assert [(names.index(a), names.index(b)) for a, b in (f.subjects for f in found)] == \
        [(4, 5), (7, 9), (0, 3), (1, 9), (0, 2)]


# Generated models with sets, regions and shared variables

@st.composite
def models(draw):
    spec = random_spec(random.Random(draw(st.integers(0, 2**32))))
    pool = [f"m{i}" for i in range(6)]
    sets = []
    for k in range(draw(st.integers(0, 5))):
        members = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=4, unique=True))
        disjoint = [f"S{j}" for j in range(k) if draw(st.booleans())]
        clause = f" disjoint {', '.join(disjoint)}" if disjoint else ""
        sets.append(f"set S{k}{clause} {{{', '.join(members)}}}")
    return model(render_spec(spec) + "\n".join(sets) + "\n")


def _sampled(findings, check):
    if check == "encapsulation":
        return [f for f in findings if f.subjects[0].startswith("S")]
    if check == "disjointness":
        return [f for f in findings if f.severity == "question"]
    return findings


@settings(max_examples=80, deadline=None)
@given(models(), st.integers(0, 12), st.integers(0, 2**64 - 1))
def test_budget_bound(m, k, seed):
    b = Budget(k, seed)
    for check, gen in (("encapsulation", gen_encapsulation), ("disjointness", gen_disjointness),
                       ("entity_relations", gen_entity_relations)):
        assert len(_sampled(gen(m, b), check)) <= k


@settings(max_examples=60, deadline=None)
@given(models(), st.integers(0, 12), st.integers(0, 2**64 - 1))
def test_generators_deterministic_and_subjects_valid(m, k, seed):
    b = Budget(k, seed)
    names = {e.text for e in symbol_table(m)}
    runs = [gen_encapsulation(m, b), gen_disjointness(m, b), gen_entity_relations(m, b),
            gen_containment(m), gen_atomicity(m)]
    again = [gen_encapsulation(m, b), gen_disjointness(m, b), gen_entity_relations(m, b),
             gen_containment(m), gen_atomicity(m)]
    assert runs == again
    for findings in runs:
        for f in findings:
            assert set(f.subjects) <= names, f.subjects
