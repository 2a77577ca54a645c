"""Kernel backend selection.

The numba backend is used by default. Set LEANTAPE_JIT=0 to force the
pure-numpy fallback (also used automatically when numba is missing).
``benchmarks/kernel_bench.py`` compares the two.
"""

import os

_flag = os.environ.get("LEANTAPE_JIT", "1").strip().lower()
JIT_REQUESTED = _flag not in {"0", "false", "off", "no"}

try:
    import numba  # noqa: F401
    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

JIT_ENABLED = JIT_REQUESTED and NUMBA_AVAILABLE

if JIT_ENABLED:
    from . import numba_impl as _active
else:
    from . import numpy_impl as _active

conv2d_fwd = _active.conv2d_fwd
conv2d_dx = _active.conv2d_dx
conv2d_dw = _active.conv2d_dw
maxpool2d_fwd = _active.maxpool2d_fwd
maxpool2d_bwd = _active.maxpool2d_bwd


def backend_name() -> str:
    return "numba" if JIT_ENABLED else "numpy"


def warmup(dtypes=("f32", "f64")) -> None:
    """Trigger JIT compilation on tiny inputs so timed runs exclude it."""
    import numpy as np
    for d in dtypes:
        npdt = {"f32": np.float32, "f64": np.float64}[d]
        x = np.ones((1, 1, 4, 4), dtype=npdt)
        w = np.ones((1, 1, 3, 3), dtype=npdt)
        y = conv2d_fwd(x, w, 1, 1)
        conv2d_dx(y, w, 1, 1, 4, 4)
        conv2d_dw(x, y, 1, 1, 3, 3)
        p, idx = maxpool2d_fwd(x, 2, 2, 2, 2)
        maxpool2d_bwd(p, idx, 4, 4)
