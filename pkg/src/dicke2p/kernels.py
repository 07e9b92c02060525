"""Kernel backend chosen at import: compiled if built, pure Python otherwise.

Set ``DICKE2P_PURE_PYTHON=1`` to force the fallback.
"""
import importlib
import os

_FORCE_PURE = os.environ.get("DICKE2P_PURE_PYTHON", "") not in ("", "0")


def load_backend(name):
    """Import a backend by name: ``"cython"`` or ``"python"``."""
    module = {"cython": "dicke2p._kernels", "python": "dicke2p._kernels_py"}[name]
    return importlib.import_module(module)


def available_backends():
    found = {}
    for name in ("cython", "python"):
        try:
            found[name] = load_backend(name)
        except ImportError:
            pass
    return found


if _FORCE_PURE:
    _impl = load_backend("python")
    BACKEND = "python"
else:
    try:
        _impl = load_backend("cython")
        BACKEND = "cython"
    except ImportError:
        _impl = load_backend("python")
        BACKEND = "python"

energy_shifted = _impl.energy_shifted
energy_scan = _impl.energy_scan
golden_section_min = _impl.golden_section_min
rk4_covariance = _impl.rk4_covariance

__all__ = [
    "BACKEND",
    "available_backends",
    "energy_scan",
    "energy_shifted",
    "golden_section_min",
    "load_backend",
    "rk4_covariance",
]
