import os

#: Default vertex+edge budget for gadget construction.
DEFAULT_SIZE_BUDGET = 2_000_000


def size_budget() -> int:
    raw = os.environ.get("DIAMGAP_SIZE_BUDGET")
    if raw is None:
        return DEFAULT_SIZE_BUDGET
    return int(float(raw))


def requested_backend() -> str:
    """Kernel backend named by ``DIAMGAP_BACKEND`` (``numba`` or ``numpy``)."""
    name = os.environ.get("DIAMGAP_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"DIAMGAP_BACKEND must be 'numba' or 'numpy', got {name!r}")
    return name
