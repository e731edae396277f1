"""Scalar evaluation kernels for the benchmark objectives.

Every search loop bottoms out in these seven evaluators, so they exist
twice: the pure-Python forms below and a Cython twin (``subgrid._kernels``)
compiled at install time.  The compiled versions are picked up at import
when available; both use the same operation order, so results are
bit-identical either way.  ``benchmarks/bench_kernels.py`` times the two
against each other.
"""

from __future__ import annotations

import math

_PI = 3.141592653589793


def goldstein_price(x1, x2):
    a = x1 + x2 + 1.0
    b = 2.0 * x1 - 3.0 * x2
    p = 19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2
    q = 18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2
    return (1.0 + a * a * p) * (30.0 + b * b * q)


def easom(x1, x2):
    u = x1 - _PI
    v = x2 - _PI
    return -math.cos(x1) * math.cos(x2) * math.exp(-(u * u + v * v))


def sphere(xs):
    s = 0.0
    for v in xs:
        s += v * v
    return s


def rosenbrock(x1, x2):
    u = x1 * x1 - x2
    v = 1.0 - x1
    return 100.0 * u * u + v * v


def step_floor(xs):
    s = 30.0
    for v in xs:
        s += math.floor(v)
    return s


def quartic_noiseless(xs):
    s = 0.0
    for i, v in enumerate(xs, start=1):
        v2 = v * v
        s += i * v2 * v2
    return s


_FOXHOLE = (-32.0, -16.0, 0.0, 16.0, 32.0)


def shekel_foxholes(x1, x2):
    s = 0.002
    for i in range(25):
        a0 = _FOXHOLE[i % 5]
        a1 = _FOXHOLE[i // 5]
        u = x1 - a0
        v = x2 - a1
        u3 = u * u * u
        v3 = v * v * v
        s += 1.0 / ((i + 1) + u3 * u3 + v3 * v3)
    return 1.0 / s


PURE = {
    "goldstein_price": goldstein_price,
    "easom": easom,
    "sphere": sphere,
    "rosenbrock": rosenbrock,
    "step_floor": step_floor,
    "quartic_noiseless": quartic_noiseless,
    "shekel_foxholes": shekel_foxholes,
}

try:  # compiled twin, built by setup.py when Cython + a C compiler exist
    from . import _kernels as _ext
except ImportError:
    _ext = None

if _ext is not None:
    BACKEND = "compiled"
    COMPILED = {name: getattr(_ext, name) for name in PURE}
    ACTIVE = COMPILED
else:
    BACKEND = "pure"
    COMPILED = None
    ACTIVE = PURE


def backend() -> str:
    """'compiled' when the Cython extension is loaded, else 'pure'."""
    return BACKEND
