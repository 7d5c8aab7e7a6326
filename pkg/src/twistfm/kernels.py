"""Backend selection for the exhaustive-search kernels.

The compiled extension ``twistfm._kernels`` is used when it was built and the
inputs are small enough for 64-bit arithmetic to be exact; otherwise the
pure-Python twin in ``twistfm._kernels_py`` runs.  Both return identical
answers, so callers never need to know which one ran.
"""

from __future__ import annotations

import logging

from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

log = logging.getLogger(__name__)

BACKEND = "cython" if compiled_backend is not None else "python"
_LIMIT = 1 << 62


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if compiled_backend is not None else [])


def _congruence_fits(g1, g2, bound: int) -> bool:
    n = len(g1)
    if n > 10:
        return False
    big = max([abs(x) for row in list(g1) + list(g2) for x in row] + [1])
    b = max(bound, 1)
    return n * n * big * b * b < _LIMIT and (n * b * b) ** n < _LIMIT


def _slack_fits(rows, rhs, bound: int, length: int) -> bool:
    big = max([abs(x) for row in rows for x in row] + [1])
    top = max([abs(t) for t in rhs] + [0])
    return length * big * max(bound, 1) < _LIMIT and top < _LIMIT


def _pick(backend: str | None, fits: bool):
    if backend == "python":
        return python_backend
    if backend == "cython":
        if compiled_backend is None:
            raise RuntimeError("compiled kernels are not built")
        if not fits:
            raise OverflowError("inputs exceed the 64-bit range of the compiled kernel")
        return compiled_backend
    if backend is not None:
        raise ValueError(f"unknown backend {backend!r}")
    if compiled_backend is not None and fits:
        return compiled_backend
    return python_backend


def congruence_search(g1, g2, bound: int, backend: str | None = None):
    """See :func:`twistfm._kernels_py.congruence_search`."""
    impl = _pick(backend, _congruence_fits(g1, g2, bound))
    return impl.congruence_search([list(r) for r in g1], [list(r) for r in g2], int(bound))


def slack_search(rows, rhs, bound: int, length: int, backend: str | None = None):
    """See :func:`twistfm._kernels_py.slack_search`."""
    impl = _pick(backend, _slack_fits(rows, rhs, bound, length))
    return impl.slack_search([list(r) for r in rows], list(rhs), int(bound), int(length))
