"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``COXALT_PURE=1`` to force the fallback.
"""
import os

from coxalt import _kernels_py

EnumerationOverflow = _kernels_py.EnumerationOverflow

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("COXALT_PURE", "") not in ("1", "true", "yes"):
    try:
        from coxalt import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py

coset_enumerate = _impl.coset_enumerate
sparse_rank_mod_p = _impl.sparse_rank_mod_p
