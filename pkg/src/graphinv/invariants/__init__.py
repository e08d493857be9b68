"""Permutation-invariant structural descriptors, grouped by family."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OK = "ok"


@dataclass(frozen=True)
class InvariantValue:
    """A named fixed-width block of an invariant fingerprint.

    ``status`` is ``"ok"`` or a failure reason; failed blocks carry NaN
    values (never a silent 0) and are serialized with an explicit status
    column.
    """

    name: str
    values: np.ndarray
    status: str = OK

    @property
    def ok(self) -> bool:
        return self.status == OK

    @property
    def width(self) -> int:
        return self.values.shape[0]


def value_ok(name: str, values) -> InvariantValue:
    arr = np.atleast_1d(np.asarray(values, dtype=np.float64))
    arr.flags.writeable = False
    return InvariantValue(name, arr)


def value_failed(name: str, width: int, reason: str, fill: float = np.nan) -> InvariantValue:
    arr = np.full(width, fill)
    arr.flags.writeable = False
    return InvariantValue(name, arr, status=f"failed: {reason}")
