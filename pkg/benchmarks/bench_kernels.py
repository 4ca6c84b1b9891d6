"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--names N] [--repeat R]

Both backends are imported directly, so ``TACIT_AUDIT_PURE`` has no effect
here. Results are checked for equality before timing.
"""

import argparse
import importlib
import random
import string
import sys
import timeit

from tacit_audit import _pykernels


def identifiers(n: int, seed: int = 1) -> list[str]:
    rng = random.Random(seed)
    stems = ["".join(rng.choices(string.ascii_lowercase, k=rng.randint(4, 12))) for _ in range(n // 3 + 1)]
    out = []
    for i in range(n):
        word = list(rng.choice(stems))
        if rng.random() < 0.5:  # near-duplicates, so some pairs pass the threshold
            word[rng.randrange(len(word))] = rng.choice(string.ascii_lowercase)
        out.append("".join(word) + str(i % 7))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--names", type=int, default=600)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        ck = importlib.import_module("tacit_audit._ckernels")
    except ImportError:
        print("compiled extension not built; run: pip install -e . --no-build-isolation")
        return 1

    names = identifiers(args.names)
    cases = {
        "similar_pairs": lambda k: k.similar_pairs(names, 0.2),
        "levenshtein 45x45": lambda k: [k.levenshtein(a, b) for a in names[:45] for b in names[:45]],
        "sample_indices 1e5 of 1e9": lambda k: k.sample_indices(10**9, 100_000, 42),
        "xorshift64star 1e6": lambda k: k.xorshift64star(42, 1_000_000),
    }
    print(f"{'kernel':<28}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for label, fn in cases.items():
        if fn(_pykernels) != fn(ck):
            print(f"{label}: backends disagree")
            return 1
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: fn(ck), number=1, repeat=args.repeat))
        print(f"{label:<28}{py:>10.4f}{cy:>10.4f}{py / cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
