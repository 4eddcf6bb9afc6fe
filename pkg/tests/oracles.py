"""Independent reference implementations used only by the tests.

Everything here is written from the underlying definitions, not from the
package source: a brute-force Mamdani pipeline over dense sample grids, a
second copy of each benchmark objective, and numeric argmax refinement for
the two maximization problems.
"""

import math
from functools import lru_cache

import numpy as np

LABELS = ("XL", "ML", "M", "MH", "XH")

REF_CROSSOVER_RULES = {"XL": "XH", "ML": "MH", "M": "M", "MH": "ML", "XH": "XL"}
REF_MUTATION_RULES = {"XL": "XL", "ML": "ML", "M": "M", "MH": "MH", "XH": "XH"}
REF_CONSTANT_RULES = {}
for _r, _row in zip(LABELS, (("XL", "XL", "ML", "ML", "M"),
                             ("XL", "ML", "ML", "M", "MH"),
                             ("ML", "ML", "M", "MH", "MH"),
                             ("ML", "M", "MH", "MH", "XH"),
                             ("M", "M", "MH", "XH", "XH"))):
    for _c, _out in zip(LABELS, _row):
        REF_CONSTANT_RULES[(_r, _c)] = _out


def _breaks(lo: float, hi: float):
    return [lo + k * (hi - lo) / 4.0 for k in range(5)]


def _label_interp_points(label, lo, hi):
    p = _breaks(lo, hi)
    i = LABELS.index(label)
    if i == 0:
        return p[:2], [1.0, 0.0]
    if i == 4:
        return p[3:], [0.0, 1.0]
    return p[i - 1:i + 2], [0.0, 1.0, 0.0]


def ref_membership(label, x, lo, hi):
    x = min(max(x, lo), hi)
    xp, fp = _label_interp_points(label, lo, hi)
    return float(np.interp(x, xp, fp))


@lru_cache(maxsize=None)
def _output_grids(lo, hi, samples):
    ys = np.linspace(lo, hi, samples)
    grids = {}
    for label in LABELS:
        xp, fp = _label_interp_points(label, lo, hi)
        grids[label] = np.interp(ys, xp, fp)
    return ys, grids


def _centroid(ys, agg, lo, hi):
    total = float(agg.sum())
    if total == 0.0:
        return 0.5 * (lo + hi)
    return float((ys * agg).sum() / total)


def ref_infer_1d(rules, in_universe, out_universe, x, samples=100_000):
    lo, hi = out_universe
    ys, grids = _output_grids(lo, hi, samples)
    agg = np.zeros(len(ys))
    for label in LABELS:
        strength = ref_membership(label, x, *in_universe)
        if strength > 0.0:
            np.maximum(agg, np.minimum(strength, grids[rules[label]]), out=agg)
    return _centroid(ys, agg, lo, hi)


def ref_infer_2d(rules, universe_a, universe_b, out_universe, a, b, samples=100_000):
    lo, hi = out_universe
    ys, grids = _output_grids(lo, hi, samples)
    agg = np.zeros(len(ys))
    for label_a in LABELS:
        sa = ref_membership(label_a, a, *universe_a)
        if sa == 0.0:
            continue
        for label_b in LABELS:
            sb = ref_membership(label_b, b, *universe_b)
            strength = min(sa, sb)
            if strength > 0.0:
                np.maximum(agg, np.minimum(strength, grids[rules[(label_a, label_b)]]), out=agg)
    return _centroid(ys, agg, lo, hi)


# --- second implementations of the benchmark objectives ---

TWO_PI = 2.0 * math.pi


def ref_f1(x):
    return sum(v * v for v in x)


def ref_f2(x):
    return 100.0 * (x[0] * x[0] - x[1]) * (x[0] * x[0] - x[1]) + (1.0 - x[0]) * (1.0 - x[0])


def ref_f3(x):
    s = x[0] * x[0] + x[1] * x[1]
    return 0.5 + (math.sin(math.sqrt(s)) * math.sin(math.sqrt(s)) - 0.5) / ((1.0 + 0.001 * s) * (1.0 + 0.001 * s))


def ref_f4(x):
    s = x[0] * x[0] + x[1] * x[1]
    return math.pow(s, 0.25) * (math.sin(50.0 * math.pow(s, 0.1)) * math.sin(50.0 * math.pow(s, 0.1)) + 1.0)


def ref_f5(x):
    return math.exp(-0.001 * x[0]) * (math.cos(0.8 * x[0]) * math.cos(0.8 * x[0]))


def ref_f6(x):
    u = math.sin(4.0 * x[0])
    v = math.sin(2.0 * x[1])
    return -x[0] * u - 1.1 * x[1] * v


def ref_f7(x):
    return x[0] * math.sin(10.0 * math.pi * x[0]) + 1.0


def ref_f8(x):
    x1, x2 = x[0], x[1]
    u = x1 + x2 + 1.0
    v = 2.0 * x1 - 3.0 * x2
    return (1.0 + u * u * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2)) \
        * (30.0 + v * v * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2))


def ref_f9(x):
    return sum((i + 1) * v * v for i, v in enumerate(x))


def ref_f10(x):
    return sum(abs(v) for v in x) + math.prod(abs(v) for v in x)


def ref_f11(x):
    return sum(abs(v * math.sin(v) + 0.1 * v) for v in x)


def ref_f12(x):
    n = len(x)
    mean_sq = sum(v * v for v in x) / n
    mean_cos = sum(math.cos(TWO_PI * v) for v in x) / n
    return -20.0 * math.exp(-0.2 * math.sqrt(mean_sq)) - math.exp(mean_cos) + 20.0 + math.exp(1.0)


REF_BENCH = {
    "f1": ref_f1,
    "f2": ref_f2,
    "f3": ref_f3,
    "f4": ref_f4,
    "f5": ref_f5,
    "f6": ref_f6,
    "f7": ref_f7,
    "f8": ref_f8,
    "f9": ref_f9,
    "f10": ref_f10,
    "f11": ref_f11,
    "f12": ref_f12,
}


def refined_max_1d(f, lo, hi):
    """Global max of a smooth 1-d function: dense grid, then bounded search."""
    from scipy.optimize import minimize_scalar

    xs = np.linspace(lo, hi, 20001)
    ys = np.array([f(x) for x in xs])
    k = int(ys.argmax())
    left = xs[max(0, k - 1)]
    right = xs[min(len(xs) - 1, k + 1)]
    res = minimize_scalar(lambda t: -f(t), bounds=(left, right), method="bounded",
                          options={"xatol": 1e-13})
    return float(-res.fun)
