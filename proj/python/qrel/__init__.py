"""Quantum reference-frame simulation kernels (thin wrapper over the C++ core)."""

try:
    from ._qrel import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - build-tree layout
    from _qrel import *  # noqa: F401,F403
