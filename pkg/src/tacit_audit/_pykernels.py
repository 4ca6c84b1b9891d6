"""Pure-Python hot kernels. ``_ckernels.pyx`` mirrors this module exactly."""

MASK64 = (1 << 64) - 1
ZERO_SEED = 0x9E3779B97F4A7C15
MULTIPLIER = 0x2545F4914F6CDD1D


def xorshift64star(seed, count):
    """First ``count`` outputs of xorshift64* started from ``seed``."""
    s = (seed & MASK64) or ZERO_SEED
    out = []
    for _ in range(count):
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        out.append((s * MULTIPLIER) & MASK64)
    return out


def sample_indices(total, k, seed):
    """Partial Fisher-Yates over ``range(total)``; all of it when ``total <= k``."""
    if total <= k:
        return list(range(total))
    s = (seed & MASK64) or ZERO_SEED
    swapped = {}  # sparse view of the permuted list
    out = []
    for i in range(k):
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        r = (s * MULTIPLIER) & MASK64
        j = i + r % (total - i)
        vi = swapped.get(i, i)
        vj = swapped.get(j, j)
        swapped[j] = vi
        out.append(vj)
    return out


def levenshtein(a, b):
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similar_pairs(names, threshold):
    """Index pairs ``i < j`` whose distance divided by the longer length is <= threshold."""
    out = []
    n = len(names)
    for i in range(n):
        a = names[i]
        for j in range(i + 1, n):
            b = names[j]
            longest = max(len(a), len(b))
            if longest == 0:
                continue
            if abs(len(a) - len(b)) / longest > threshold:
                continue
            if levenshtein(a, b) / longest <= threshold:
                out.append((i, j))
    return out
