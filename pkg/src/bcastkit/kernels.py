"""Backend selection: compiled extension kernels with pure-Python fallback.

The Cython module ``_dpcore`` packs signatures into C int64, so it is
only eligible when every key fits (base ** digits < 2**62).  The pure
kernels use Python integers and work at any size.  Both produce
byte-identical tables; ``BCASTKIT_KERNELS=py|c|auto`` overrides the
choice (``c`` raises if the extension is unavailable or unsafe).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

from . import _kernels_py as _py
from .errors import ParameterError

try:
    from . import _dpcore as _c  # type: ignore[attr-defined]
except ImportError:  # extension not built; pure fallback
    _c = None

_INT64_KEY_LIMIT = 2 ** 62
_MAX_DIGITS = 64
_ORACLE_MAX_N = 24


def have_compiled() -> bool:
    return _c is not None


def _mode() -> str:
    mode = os.environ.get("BCASTKIT_KERNELS", "auto").strip().lower() or "auto"
    if mode not in ("auto", "py", "c"):
        raise ParameterError(f"BCASTKIT_KERNELS must be auto, py, or c (got {mode!r})")
    return mode


@dataclass(frozen=True)
class DpKernels:
    name: str
    leaf: Callable
    introduce: Callable
    forget: Callable
    join: Callable


def _dp_from(module, problem: str) -> DpKernels:
    prefix = "bi" if problem == "bi" else "pack"
    name = "compiled" if module is _c else "pure-python"
    return DpKernels(
        name=name,
        leaf=getattr(module, f"{prefix}_leaf"),
        introduce=getattr(module, f"{prefix}_introduce"),
        forget=getattr(module, f"{prefix}_forget"),
        join=getattr(module, f"{prefix}_join"),
    )


def dp_kernels(problem: str, p: int, width: int) -> DpKernels:
    """Pick a backend for one DP run over bags of size <= width + 1."""
    if problem not in ("bi", "bp"):
        raise ParameterError(f"unknown problem {problem!r}")
    digits = (2 if problem == "bi" else 1) * (width + 1)
    base = p + 1 if problem == "bi" else 2 * p + 2
    fits = digits <= _MAX_DIGITS and base ** digits < _INT64_KEY_LIMIT
    mode = _mode()
    if mode == "py":
        return _dp_from(_py, problem)
    if mode == "c":
        if _c is None:
            raise ParameterError("BCASTKIT_KERNELS=c but the compiled extension is missing")
        if not fits:
            raise ParameterError(
                "BCASTKIT_KERNELS=c but signatures do not fit in 64-bit keys "
                f"(base {base}, digits {digits})"
            )
        return _dp_from(_c, problem)
    if _c is not None and fits:
        return _dp_from(_c, problem)
    return _dp_from(_py, problem)


@dataclass(frozen=True)
class OracleKernels:
    name: str
    best: Callable
    profile: Callable


def oracle_kernels(n: int, p: int, max_dist: int) -> OracleKernels:
    mode = _mode()
    fits = n <= _ORACLE_MAX_N and p < 2 ** 32 and max_dist < 2 ** 32
    use_c = _c is not None and fits and mode != "py"
    if mode == "c" and not use_c:
        raise ParameterError("BCASTKIT_KERNELS=c but the compiled oracle is unavailable")
    module = _c if use_c else _py
    return OracleKernels(
        name="compiled" if use_c else "pure-python",
        best=module.oracle_best,
        profile=module.oracle_profile,
    )
