import importlib
import os
import subprocess
import sys
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from tacit_audit import _pykernels, kernels


def ref_levenshtein(a, b):
    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0 or j == 0:
            return i + j
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))
    return d(len(a), len(b))


def backends():
    out = [_pykernels]
    try:
        out.append(importlib.import_module("tacit_audit._ckernels"))
    except ImportError:
        pass
    return out


def test_levenshtein_examples():
    for impl in backends():
        assert impl.levenshtein("finpayment", "finpayments") == 1
        assert impl.levenshtein("kitten", "sitting") == 3
        assert impl.levenshtein("", "abc") == 3


words = st.text(alphabet="abcxyz", max_size=9)


@settings(max_examples=300, deadline=None)
@given(words, words)
def test_levenshtein_matches_reference(a, b):
    for impl in backends():
        assert impl.levenshtein(a, b) == ref_levenshtein(a, b)


@settings(max_examples=100, deadline=None)
@given(st.lists(words, max_size=12), st.sampled_from([0.0, 0.1, 0.2, 0.34, 0.5, 1.0]))
def test_similar_pairs_matches_reference(names, threshold):
    expected = [(i, j) for i in range(len(names)) for j in range(i + 1, len(names))
                if max(len(names[i]), len(names[j])) > 0
                and ref_levenshtein(names[i], names[j]) / max(len(names[i]), len(names[j])) <= threshold]
    for impl in backends():
        assert impl.similar_pairs(names, threshold) == expected


def test_unicode_names():
    for impl in backends():
        assert impl.levenshtein("café", "cafe") == 1


@pytest.mark.skipif(len(backends()) < 2 or bool(os.environ.get("TACIT_AUDIT_PURE")),
                    reason="compiled extension not built or disabled")
def test_compiled_backend_is_default():
    assert kernels.BACKEND == "cython"


def test_pure_backend_forced_by_environment():
    env = dict(os.environ, TACIT_AUDIT_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from tacit_audit import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
