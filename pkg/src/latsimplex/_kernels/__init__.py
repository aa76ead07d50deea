"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``LATSIMPLEX_PURE=1`` to force the pure-Python kernels.  The compiled
kernels raise OverflowError on inputs outside their fixed-width limits; the
wrappers below transparently retry those calls on the pure path.
"""

from __future__ import annotations

import os

from . import pykernels

STATUS_OK = pykernels.STATUS_OK
STATUS_TOO_LARGE = pykernels.STATUS_TOO_LARGE
STATUS_WEIGHT = pykernels.STATUS_WEIGHT
STATUS_HEIGHT = pykernels.STATUS_HEIGHT

_impl = pykernels
_backend = "python"
if os.environ.get("LATSIMPLEX_PURE") != "1":
    try:
        from . import _speed

        _impl = _speed
        _backend = "compiled"
    except ImportError:
        pass


def active_backend() -> str:
    return _backend


def closure_table(gens, e, den, cap, max_weight=-1, max_height_num=-1,
                  require_integral=False):
    try:
        return _impl.closure_table(gens, e, den, cap, max_weight,
                                   max_height_num, require_integral)
    except OverflowError:
        return pykernels.closure_table(gens, e, den, cap, max_weight,
                                       max_height_num, require_integral)


def extend_closure(prev, row, e, den, cap, max_weight=-1, max_height_num=-1,
                   require_integral=False):
    try:
        return _impl.extend_closure(prev, row, e, den, cap, max_weight,
                                    max_height_num, require_integral)
    except OverflowError:
        return pykernels.extend_closure(prev, row, e, den, cap, max_weight,
                                        max_height_num, require_integral)


def count_box_points(adj, det_sign, lows, highs, n, strict=False):
    try:
        return _impl.count_box_points(adj, det_sign, lows, highs, n, strict)
    except OverflowError:
        return pykernels.count_box_points(adj, det_sign, lows, highs, n, strict)
