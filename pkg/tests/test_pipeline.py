import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, model
from flat_oracle import random_spec, render_spec
from tacit_audit import pipeline
from tacit_audit.lexicon import load_dictionary
from tacit_audit.ontology import load_checklist
from tacit_audit.pipeline import CHECKS, Options, audit
from tacit_audit.reachability import ExploreLimits
from tacit_audit.report import render

FINANCE = load_dictionary(FIXTURES / "finance.dict")


def raw_findings(m, opts, monkeypatch):
    seen = []
    real = pipeline.collect

    def spy(findings, *args, **kwargs):
        seen.extend(findings)
        return real(findings, *args, **kwargs)

    monkeypatch.setattr(pipeline, "collect", spy)
    audit(m, opts)
    return seen


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.dsl")))
def test_fixture_ids_are_unique(name, monkeypatch):
    m = model((FIXTURES / name).read_text(), name)
    checklist = FIXTURES / name.replace(".dsl", ".checklist")
    opts = Options(dictionary=FINANCE,
                   checklist=load_checklist(checklist) if checklist.exists() else None)
    ids = Counter(f.id for f in raw_findings(m, opts, monkeypatch))
    assert [i for i, n in ids.items() if n > 1] == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_generated_ids_are_unique(seed):
    m = model(render_spec(random_spec(random.Random(seed))))
    with pytest.MonkeyPatch.context() as mp:
        ids = Counter(f.id for f in raw_findings(m, Options(), mp))
    assert [i for i, n in ids.items() if n > 1] == []


def test_check_selection_order_is_irrelevant():
    m = model((FIXTURES / "coverage.dsl").read_text(), "coverage.dsl")
    a = audit(m, Options(checks=frozenset(CHECKS)))
    b = audit(m, Options(checks=frozenset(reversed(CHECKS))))
    assert render(a.report) == render(b.report)


def test_checklist_skipped_without_file():
    out = audit(model("model M\nstate A"), Options())
    assert "checklist" not in out.report.checks_run and out.gap is None


def test_product_too_large_skips_exploration():
    m = model("model M\nvar a: int[0..99]\nvar b: int[0..99]\nstate A")
    out = audit(m, Options(limits=ExploreLimits(max_configurations=10)))
    assert out.partial and "explore" in out.report.checks_run
    assert "unreachable_composites" not in out.report.checks_run
    assert out.notes and "skipped" in out.notes[0]
