"""Offline expansion of abbreviated identifiers into domain phrases.

A dictionary word is a candidate for a token when the token's letters occur
in order inside the word and both start with the same letter. Candidates
rank by score class: exact match, consonant skeleton (the word with vowels
removed equals the token), prefix, then any other subsequence. Scores are
exact fractions so ranking never depends on float rounding.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

EXACT = Fraction(1)
SKELETON = Fraction(9, 10)
PREFIX = Fraction(4, 5)
SUBSEQUENCE = Fraction(3, 5)

_VOWELS = frozenset("aeiou")
_ENTRY_RE = re.compile(r"[a-z]+( [a-z]+)*")
# lower->upper, letter<->digit boundaries; '_' and '-' are separators
_SPLIT_RE = re.compile(r"(?<=[a-z])(?=[A-Z])|(?<=[A-Za-z])(?=[0-9])|(?<=[0-9])(?=[A-Za-z])|[_\-]+")

MAX_CANDIDATES_PER_TOKEN = 4
MAX_ALTERNATIVES = 3


class FormatError(ValueError):
    def __init__(self, path: str, line: int, text: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: dictionary entries must be letters only, got {text!r}")


@dataclass(frozen=True)
class Dictionary:
    """Sorted, deduplicated lowercase words; entries with spaces are phrases."""
    entries: tuple[str, ...] = ()

    @classmethod
    def of(cls, words) -> "Dictionary":
        return cls(tuple(sorted({" ".join(w.lower().split()) for w in words if w.strip()})))

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(e for e in self.entries if " " not in e)

    @property
    def phrases(self) -> tuple[str, ...]:
        return tuple(e for e in self.entries if " " in e)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Candidate:
    text: str
    score: Fraction
    kind: str  # exact | skeleton | prefix | subsequence | verbatim | oracle


@dataclass(frozen=True)
class Expansion:
    identifier: str
    tokens: tuple[str, ...]
    phrase: str
    score: Fraction
    alternatives: tuple[tuple[str, Fraction], ...] = ()
    oracle_alternatives: tuple[tuple[str, float], ...] = ()


def load_dictionary(path) -> Dictionary:
    """One word or phrase per line; ``#`` starts a comment."""
    path = Path(path)
    words = []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = " ".join(raw.split("#", 1)[0].lower().split())
            if not text:
                continue
            if not _ENTRY_RE.fullmatch(text):
                raise FormatError(str(path), lineno, text)
            words.append(text)
    return Dictionary.of(words)


def tokenize_identifier(name: str) -> list[str]:
    return [t.lower() for t in _SPLIT_RE.split(name) if t]


def skeleton(word: str) -> str:
    return "".join(ch for ch in word if ch not in _VOWELS)


def is_subsequence(token: str, word: str) -> bool:
    it = iter(word)
    return all(ch in it for ch in token)


def candidate_score(token: str, entry: str) -> Candidate | None:
    """Score ``entry`` for ``token``, or None when it is not a candidate."""
    word = entry.replace(" ", "")
    if not token or not word or token[0] != word[0] or not is_subsequence(token, word):
        return None
    if token == word:
        return Candidate(entry, EXACT, "exact")
    if skeleton(word) == token:
        return Candidate(entry, SKELETON, "skeleton")
    ratio = Fraction(len(token), len(word))
    if word.startswith(token):
        return Candidate(entry, PREFIX * ratio, "prefix")
    return Candidate(entry, SUBSEQUENCE * ratio, "subsequence")


def expand_token(token: str, d: Dictionary) -> list[Candidate]:
    """Ranked candidates; a lone verbatim candidate with score 0 when none match."""
    found = [c for c in (candidate_score(token, e) for e in d.entries) if c is not None]
    if not found:
        return [Candidate(token, Fraction(0), "verbatim")]
    found.sort(key=lambda c: (-c.score, c.text))
    return found


def expand_identifier(name: str, d: Dictionary, oracle=None, domain: str = "") -> Expansion:
    """Expand every token independently and join the top candidates.

    ``oracle`` (an :class:`~tacit_audit.oracle.OracleClient`) may add
    alternatives; it never changes the deterministic phrase or score.
    """
    tokens = tokenize_identifier(name)
    ranked = [expand_token(t, d)[:MAX_CANDIDATES_PER_TOKEN] for t in tokens]
    if not tokens:
        return Expansion(name, (), "", Fraction(0))
    top = [r[0] for r in ranked]
    phrase = " ".join(c.text for c in top)
    score = sum((c.score for c in top), Fraction(0)) / len(top)
    combos = []
    for combo in itertools.product(*ranked):
        if list(combo) == top:
            continue
        total = sum((c.score for c in combo), Fraction(0)) / len(combo)
        combos.append((" ".join(c.text for c in combo), total))
    combos.sort(key=lambda pc: (-pc[1], pc[0]))
    oracle_alts: tuple[tuple[str, float], ...] = ()
    if oracle is not None:
        oracle_alts = tuple(oracle.expand(name, tokens, domain))
    return Expansion(name, tuple(tokens), phrase, score, tuple(combos[:MAX_ALTERNATIVES]),
                     oracle_alts)
