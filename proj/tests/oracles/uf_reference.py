#!/usr/bin/env python3
"""Reference transcription of the CEC 2009 unconstrained UF test functions.

Writes a fixture CSV of random in-bounds points and their objective values.
Kept deliberately independent of the C++ implementation: formulas are
transcribed term by term from the competition definitions, with explicit
1-based index sets.

Usage: uf_reference.py [out.csv]
"""

import math
import random
import sys

D = 40
POINTS_PER_FUNCTION = 100
SEED = 20090101


def bounds(fid):
    lo = [-1.0] * D
    hi = [1.0] * D
    if fid == 3:
        lo = [0.0] * D
    elif fid in (4, 8, 9, 10):
        lo = [-2.0] * D
        hi = [2.0] * D
    lo[0], hi[0] = 0.0, 1.0
    if fid >= 8:
        lo[1], hi[1] = 0.0, 1.0
    return lo, hi


def uf_two_objective(fid, x):
    n = len(x)
    x1 = x[0]
    j1 = [j for j in range(2, n + 1) if j % 2 == 1]
    j2 = [j for j in range(2, n + 1) if j % 2 == 0]

    def y(j):
        if fid == 2:
            amp = 0.3 * x1 * x1 * math.cos(24 * math.pi * x1 + 4 * j * math.pi / n) + 0.6 * x1
            if j % 2 == 1:
                return x[j - 1] - amp * math.cos(6 * math.pi * x1 + j * math.pi / n)
            return x[j - 1] - amp * math.sin(6 * math.pi * x1 + j * math.pi / n)
        if fid == 3:
            return x[j - 1] - x1 ** (0.5 * (1.0 + 3.0 * (j - 2) / (n - 2)))
        return x[j - 1] - math.sin(6 * math.pi * x1 + j * math.pi / n)

    def h(fid, t):
        if fid == 4:
            return abs(t) / (1.0 + math.exp(2.0 * abs(t)))
        if fid == 5:
            return 2.0 * t * t - math.cos(4.0 * math.pi * t) + 1.0
        return t * t

    s1 = sum(h(fid, y(j)) for j in j1)
    s2 = sum(h(fid, y(j)) for j in j2)

    if fid in (1, 2):
        return [x1 + 2.0 * s1 / len(j1), 1.0 - math.sqrt(x1) + 2.0 * s2 / len(j2)]
    if fid == 3:
        p1 = math.prod(math.cos(20.0 * y(j) * math.pi / math.sqrt(j)) for j in j1)
        p2 = math.prod(math.cos(20.0 * y(j) * math.pi / math.sqrt(j)) for j in j2)
        return [
            x1 + 2.0 * (4.0 * s1 - 2.0 * p1 + 2.0) / len(j1),
            1.0 - math.sqrt(x1) + 2.0 * (4.0 * s2 - 2.0 * p2 + 2.0) / len(j2),
        ]
    if fid == 4:
        return [x1 + 2.0 * s1 / len(j1), 1.0 - x1 * x1 + 2.0 * s2 / len(j2)]
    if fid == 5:
        big_n, eps = 10, 0.1
        hump = (1.0 / (2.0 * big_n) + eps) * abs(math.sin(2.0 * big_n * math.pi * x1))
        return [x1 + hump + 2.0 * s1 / len(j1), 1.0 - x1 + hump + 2.0 * s2 / len(j2)]
    if fid == 6:
        big_n, eps = 2, 0.1
        hump = max(0.0, 2.0 * (1.0 / (2.0 * big_n) + eps) * math.sin(2.0 * big_n * math.pi * x1))
        p1 = math.prod(math.cos(20.0 * y(j) * math.pi / math.sqrt(j)) for j in j1)
        p2 = math.prod(math.cos(20.0 * y(j) * math.pi / math.sqrt(j)) for j in j2)
        return [
            x1 + hump + 2.0 * (4.0 * s1 - 2.0 * p1 + 2.0) / len(j1),
            1.0 - x1 + hump + 2.0 * (4.0 * s2 - 2.0 * p2 + 2.0) / len(j2),
        ]
    if fid == 7:
        root = x1 ** 0.2
        return [root + 2.0 * s1 / len(j1), 1.0 - root + 2.0 * s2 / len(j2)]
    raise ValueError(fid)


def uf_three_objective(fid, x):
    n = len(x)
    x1, x2 = x[0], x[1]
    j1 = [j for j in range(3, n + 1) if (j - 1) % 3 == 0]
    j2 = [j for j in range(3, n + 1) if (j - 2) % 3 == 0]
    j3 = [j for j in range(3, n + 1) if j % 3 == 0]

    def y(j):
        return x[j - 1] - 2.0 * x2 * math.sin(2.0 * math.pi * x1 + j * math.pi / n)

    def h(t):
        if fid == 10:
            return 4.0 * t * t - math.cos(8.0 * math.pi * t) + 1.0
        return t * t

    s1 = sum(h(y(j)) for j in j1)
    s2 = sum(h(y(j)) for j in j2)
    s3 = sum(h(y(j)) for j in j3)

    if fid in (8, 10):
        return [
            math.cos(0.5 * x1 * math.pi) * math.cos(0.5 * x2 * math.pi) + 2.0 * s1 / len(j1),
            math.cos(0.5 * x1 * math.pi) * math.sin(0.5 * x2 * math.pi) + 2.0 * s2 / len(j2),
            math.sin(0.5 * x1 * math.pi) + 2.0 * s3 / len(j3),
        ]
    if fid == 9:
        eps = 0.1
        hump = max(0.0, (1.0 + eps) * (1.0 - 4.0 * (2.0 * x1 - 1.0) ** 2))
        return [
            0.5 * (hump + 2.0 * x1) * x2 + 2.0 * s1 / len(j1),
            0.5 * (hump - 2.0 * x1 + 2.0) * x2 + 2.0 * s2 / len(j2),
            1.0 - x2 + 2.0 * s3 / len(j3),
        ]
    raise ValueError(fid)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "uf_expected.csv"
    rng = random.Random(SEED)
    rows = []
    for fid in range(1, 11):
        lo, hi = bounds(fid)
        for _ in range(POINTS_PER_FUNCTION):
            x = [rng.uniform(lo[j], hi[j]) for j in range(D)]
            f = uf_three_objective(fid, x) if fid >= 8 else uf_two_objective(fid, x)
            rows.append((fid, x, f))

    with open(out, "w") as fh:
        header = ["id"] + [f"x{j}" for j in range(D)] + ["f0", "f1", "f2"]
        fh.write(",".join(header) + "\n")
        for fid, x, f in rows:
            cells = [str(fid)] + [repr(v) for v in x] + [repr(v) for v in f]
            while len(cells) < 1 + D + 3:
                cells.append("")
            fh.write(",".join(cells) + "\n")
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
