"""Compare a model's vocabulary with a domain checklist, in both directions."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .findings import ORACLE_TAG, Finding, make_finding
from .lexicon import Dictionary, expand_identifier, tokenize_identifier
from .model import Model
from .validate import symbol_table

# '-es' plurals whose singular ends in x, ch or sh ("taxes" -> "tax")
_ES_PLURAL = re.compile(r"(x|ch|sh)es$")
MATCH_RANK = {"exact": 0, "plural": 1, "expansion": 2}


@dataclass(frozen=True)
class Checklist:
    terms: tuple[str, ...]
    source: str = "<checklist>"
    lines: tuple[int, ...] = ()

    @classmethod
    def of(cls, terms, source: str = "<checklist>") -> "Checklist":
        seen: dict[str, int] = {}
        for i, t in enumerate(terms, 1):
            key = " ".join(t.split())
            if key and key.lower() not in {k.lower() for k in seen}:
                seen[key] = i
        return cls(tuple(seen), source, tuple(seen.values()))

    def line_of(self, term: str) -> int:
        if self.lines:
            return self.lines[self.terms.index(term)]
        return 1


@dataclass(frozen=True)
class GapReport:
    missing_in_model: tuple[str, ...]
    missing_in_checklist: tuple[str, ...]
    matched: tuple[tuple[str, str, str], ...]  # (checklist term, identifier, kind)
    oracle_matches: tuple[tuple[str, str, str], ...] = field(default=())


def load_checklist(path, source: str | None = None) -> Checklist:
    """One phrase per line; ``#`` starts a comment."""
    path = Path(path)
    terms, lines = [], []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = " ".join(raw.split("#", 1)[0].split())
            if text and text.lower() not in {t.lower() for t in terms}:
                terms.append(text)
                lines.append(lineno)
    return Checklist(tuple(terms), source or path.name, tuple(lines))


def normalize_term(phrase: str) -> str:
    words = []
    for w in phrase.lower().split():
        if len(w) >= 4:
            if _ES_PLURAL.search(w):
                w = w[:-2]
            elif w.endswith("s"):
                w = w[:-1]
        words.append(w)
    return " ".join(words)


def _identifier_phrase(name: str) -> str:
    return " ".join(tokenize_identifier(name))


def _match(term: str, identifiers: list[str], expansions: dict[str, str]):
    """Best (kind, identifier) for one checklist term, or None."""
    raw = " ".join(term.lower().split())
    norm = normalize_term(term)
    best = None
    for ident in identifiers:
        phrase = _identifier_phrase(ident)
        if raw == phrase:
            kind = "exact"
        elif norm == normalize_term(phrase):
            kind = "plural"
        else:
            exp = normalize_term(expansions[ident]).split()
            # a checklist term matches an expansion or its trailing words
            # (the head noun): "taxes" matches "sales tax"
            words = norm.split()
            if not exp or not words or exp[-len(words):] != words:
                continue
            kind = "expansion"
        cand = (MATCH_RANK[kind], ident)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    kind = next(k for k, r in MATCH_RANK.items() if r == best[0])
    return kind, best[1]


def diff_checklist(c: Checklist, m: Model, d: Dictionary = Dictionary(), oracle=None,
                   domain: str = "") -> GapReport:
    """Classify every checklist term once; list model identifiers nobody matched.

    An ``oracle`` may only add ``oracle_matches`` for terms that stay in
    ``missing_in_model``; the deterministic lists never change.
    """
    identifiers = sorted({e.text for e in symbol_table(m)})
    expansions = {i: expand_identifier(i, d).phrase for i in identifiers}
    matched, missing = [], []
    used: set[str] = set()
    for term in c.terms:
        hit = _match(term, identifiers, expansions)
        if hit is None:
            missing.append(term)
        else:
            matched.append((term, hit[1], hit[0]))
            used.add(hit[1])
    # every identifier matched by any term counts as covered, not only the best one
    for term in c.terms:
        for ident in identifiers:
            if ident not in used and _match(term, [ident], expansions):
                used.add(ident)
    oracle_matches = []
    if oracle is not None:
        for term in sorted(missing):
            for text, _conf in oracle.synonyms(term, domain):
                hit = _match(text, identifiers, expansions)
                if hit is not None:
                    oracle_matches.append((term, hit[1], "oracle"))
                    break
    return GapReport(tuple(sorted(missing)), tuple(sorted(set(identifiers) - used)),
                     tuple(sorted(matched)), tuple(oracle_matches))


def gap_findings(g: GapReport, c: Checklist, m: Model) -> list[Finding]:
    lines = {e.text: e.line for e in symbol_table(m)}
    out = []
    for term in g.missing_in_model:
        out.append(make_finding(
            "DOMAIN_GAP", "question", (term,),
            f"The domain checklist expects '{term}' but no model identifier covers it. "
            "Does the system handle it, and if not, is its absence a deliberate "
            "assumption?",
            "checklist term has no exact, plural or expansion match",
            c.source, c.line_of(term)))
    for ident in g.missing_in_checklist:
        out.append(make_finding(
            "DOMAIN_GAP", "info", (ident,),
            f"Model identifier {ident} matches no checklist term. Is it domain knowledge "
            "the checklist should gain, or a design detail?",
            "identifier not covered by the checklist",
            m.filename, lines[ident]))
    for term, ident, _ in g.oracle_matches:
        out.append(make_finding(
            "DOMAIN_GAP", "info", (term, ident),
            f"The checklist term '{term}' may correspond to model identifier {ident}. "
            "Is that the intended coverage?",
            f"{ORACLE_TAG}synonym suggested by the semantic oracle",
            c.source, c.line_of(term)))
    return out
