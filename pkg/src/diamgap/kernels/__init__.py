"""Shortest-path kernels with a numba backend and a numpy fallback.

The backend is chosen once, at import, from ``DIAMGAP_BACKEND``
(``numba`` by default).  If numba cannot be imported the numpy path is
used silently.  ``load(name)`` returns a specific backend regardless of
the environment; the benchmark uses it to time both side by side.
"""
from importlib import import_module
from types import ModuleType

from .._config import requested_backend

_MODULES = {"numba": "._numba_impl", "numpy": "._numpy_impl"}
KERNEL_NAMES = (
    "dijkstra",
    "bfs",
    "truncated_dijkstra",
    "apsp_matrix",
    "weighted_diameter",
    "unit_diameter",
    "hop_limited",
    "hop_limited_table",
)


def load(name: str) -> ModuleType:
    return import_module(_MODULES[name], __name__)


def _select() -> ModuleType:
    name = requested_backend()
    if name == "numba":
        try:
            return load("numba")
        except ImportError:
            name = "numpy"
    return load(name)


_impl = _select()
BACKEND: str = _impl.NAME

dijkstra = _impl.dijkstra
bfs = _impl.bfs
truncated_dijkstra = _impl.truncated_dijkstra
apsp_matrix = _impl.apsp_matrix
weighted_diameter = _impl.weighted_diameter
unit_diameter = _impl.unit_diameter
hop_limited = _impl.hop_limited
hop_limited_table = _impl.hop_limited_table

__all__ = ["BACKEND", "load", "KERNEL_NAMES", *KERNEL_NAMES]
