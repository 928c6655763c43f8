"""Backend selection for the exhaustive predicate kernels.

The compiled ``_ckernels`` extension is used when it imports and the game's
integer table fits comfortably in int64; otherwise the pure-Python kernels
run on arbitrary-precision integers.  ``YOUNGSHAP_BACKEND=python`` forces
the fallback.
"""

from __future__ import annotations

import os
from array import array
from contextlib import contextmanager

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

LE, LT, GE, GT, EQ = _pykernels.LE, _pykernels.LT, _pykernels.GE, _pykernels.GT, _pykernels.EQ

# |entry| must stay below this for the int64 path: sums of two entries fit.
_I64_LIMIT = 1 << 61

_use_compiled = _ckernels is not None and os.environ.get("YOUNGSHAP_BACKEND", "").lower() != "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def backend() -> str:
    return "cython" if _use_compiled else "python"


def set_backend(name: str) -> None:
    global _use_compiled
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _use_compiled = True
    elif name == "python":
        _use_compiled = False
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def using_backend(name: str):
    prev = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def _select(game):
    """Return ``(module, table)`` for one kernel call on ``game``."""
    if _use_compiled:
        fast = game._fast
        if fast is None:
            nums = game.nums
            if max(nums) < _I64_LIMIT and min(nums) > -_I64_LIMIT:
                fast = array("q", nums)
            else:
                fast = False
            game._fast = fast
        if fast is not False:
            return _ckernels, fast
    return _pykernels, game.nums


def check_convex(game, rel: int, strict: bool) -> bool:
    mod, t = _select(game)
    return bool(mod.check_convex(t, game.n, rel, strict))


def check_disjoint(game, rel: int, strict: bool) -> bool:
    mod, t = _select(game)
    return bool(mod.check_disjoint(t, game.n, rel, strict))


def check_weak(game, rel: int, strict: bool) -> bool:
    mod, t = _select(game)
    return bool(mod.check_weak(t, game.n, rel, strict))


def check_monotone(game, strict: bool) -> bool:
    mod, t = _select(game)
    return bool(mod.check_monotone(t, game.n, strict))


def check_marginal_order(game, rel: int) -> bool:
    mod, t = _select(game)
    return bool(mod.check_marginal_order(t, game.n, rel))


def players_equivalent(game, bi: int, bj: int) -> bool:
    mod, t = _select(game)
    return bool(mod.players_equivalent(t, game.n, bi, bj))


def swap_check(game, S: int) -> bool:
    mod, t = _select(game)
    return bool(mod.swap_check(t, game.n, S))


def corollary2_check(game, S: int, kbit: int) -> bool:
    mod, t = _select(game)
    return bool(mod.corollary2_check(t, game.n, S, kbit))
