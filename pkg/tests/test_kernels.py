import os
import subprocess
import sys

import numpy as np
import pytest

from nreq_torque import _core, _kernels_py

cy = pytest.importorskip("nreq_torque._kernels")

NAMES = ("digamma", "trigamma", "digamma_tail", "trigamma_tail")


def _points(seed, n=400, left=-20.0):
    rng = np.random.default_rng(seed)
    z = rng.uniform(left, 40, n) + 1j * rng.uniform(-40, 40, n)
    return [complex(v) for v in z if abs(v - round(v.real)) > 1e-2]


@pytest.mark.parametrize("name", NAMES)
def test_backends_agree(name):
    left = 1e-3 if name.endswith("tail") else -20.0
    for z in _points(NAMES.index(name), left=left):
        a, b = getattr(cy, name)(z), getattr(_kernels_py, name)(z)
        assert abs(a - b) <= 1e-14 * max(1.0, abs(b)) * (1 + abs(z) * (z.real < 0)), z


def test_gk15_panels_agree():
    rng = np.random.default_rng(4)
    for _ in range(200):
        kind = int(rng.integers(0, 2))
        eta, wc = 10 ** rng.uniform(-5, -1), 10 ** rng.uniform(-5, 0)
        beta, beta_p = 10 ** rng.uniform(0, 3), 10 ** rng.uniform(0, 3)
        a = 10 ** rng.uniform(-6, 0)
        b = a + 10 ** rng.uniform(-4, 0)
        ck, cg = cy.gk15_panel(kind, eta, wc, beta, beta_p, a, b)
        pk, pg = _kernels_py.gk15_panel(kind, eta, wc, beta, beta_p, a, b)
        assert abs(ck - pk) <= 1e-13 * abs(pk) + 1e-300
        assert abs(cg - pg) <= 1e-13 * abs(pg) + 1e-300


def test_default_backend_is_compiled():
    if os.environ.get("NREQ_TORQUE_PURE_PYTHON"):
        pytest.skip("pure-Python backend forced")
    assert _core.BACKEND == "cython"


def test_fallback_selected_by_environment():
    code = ("from nreq_torque import _core, torque_stationary, OscillatorParams, ThermalState;"
            "print(_core.BACKEND, repr(torque_stationary(OscillatorParams.gold(),"
            " ThermalState.from_kelvin(300, 600))))")
    env = dict(os.environ, NREQ_TORQUE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out[0] == "python"
    assert float(out[1]) == pytest.approx(6.972561936880818e-06, rel=1e-13)
