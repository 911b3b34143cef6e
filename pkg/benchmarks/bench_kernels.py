"""Compare the compiled and pure-Python kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each kernel is timed under both backends with :mod:`timeit`; the best of
``--repeat`` runs is reported per call.  The end-to-end rows swap the
backend used by the library, so they measure what a user sees.
"""

import argparse
import json
import sys
import timeit

from nreq_torque import _core, _kernels_py
from nreq_torque.oracle import torque_quadrature, validation_grid
from nreq_torque.oscillator import OscillatorParams
from nreq_torque.torque import ThermalState, torque_stationary

try:
    from nreq_torque import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None

_SWAPPED = ("digamma", "trigamma", "digamma_tail", "trigamma_tail", "gk15_panel")


def _use_backend(module):
    for name in _SWAPPED:
        setattr(_core, name, getattr(module, name))


def _cases():
    gold = OscillatorParams.gold()
    room = ThermalState.from_kelvin(300.0, 600.0)
    grid = validation_grid()

    def grid_quadrature():
        for params, state in grid:
            torque_quadrature(params, state)

    return [
        ("digamma(3.7+2.1j)", 1000, lambda k: k.digamma(3.7 + 2.1j), False),
        ("digamma(-4.3+0.2j)", 1000, lambda k: k.digamma(-4.3 + 0.2j), False),
        ("digamma_tail(0.8+5j)", 1000, lambda k: k.digamma_tail(0.8 + 5j), False),
        ("trigamma_tail(2+1j)", 1000, lambda k: k.trigamma_tail(2 + 1j), False),
        ("gk15_panel", 1000,
         lambda k: k.gk15_panel(0, 0.035, 1e-4, 38.68, 19.34, 0.01, 0.05), False),
        ("torque_stationary (gold)", 200, lambda k: torque_stationary(gold, room), True),
        ("torque_quadrature (gold)", 20, lambda k: torque_quadrature(gold, room), True),
        ("quadrature over 72-point grid", 1, lambda k: grid_quadrature(), True),
    ]


def run(repeat=5):
    """Return rows ``(name, seconds_cython, seconds_python)`` per call."""
    if _kernels_cy is None:
        raise RuntimeError("compiled backend not built; run `pip install -e .` first")
    saved = {name: getattr(_core, name) for name in _SWAPPED}
    rows = []
    try:
        for name, number, fn, end_to_end in _cases():
            per_call = []
            for module in (_kernels_cy, _kernels_py):
                if end_to_end:
                    _use_backend(module)
                best = min(timeit.repeat(lambda: fn(module), number=number, repeat=repeat))
                per_call.append(best / number)
            rows.append((name, per_call[0], per_call[1]))
    finally:
        for name, value in saved.items():
            setattr(_core, name, value)
    return rows


def _format(seconds):
    for unit, scale in (("s", 1.0), ("ms", 1e-3), ("us", 1e-6)):
        if seconds >= scale:
            return f"{seconds / scale:8.2f} {unit}"
    return f"{seconds / 1e-9:8.1f} ns"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = parser.parse_args(argv)
    rows = run(args.repeat)
    if args.json:
        json.dump([{"case": n, "cython_s": c, "python_s": p, "speedup": p / c}
                   for n, c, p in rows], sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0
    print(f"{'case':32s} {'cython':>11s} {'python':>11s} {'speedup':>8s}")
    for name, c, p in rows:
        print(f"{name:32s} {_format(c)} {_format(p)} {p / c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
