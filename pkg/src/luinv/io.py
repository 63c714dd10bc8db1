"""State files and invariant-set text output.

A state file is JSON::

    {"kind": "pure", "dims": [2, 3, 3],
     "data": [[re, im], ...],            # amplitudes, row-major
     "metadata": {"family": "tri-p-pair"}}

For ``"kind": "mixed"`` the data is a list of matrix rows, each a list of
``[re, im]`` pairs. Floats are written in shortest round-trip form, so a
read/write cycle is bit-exact.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import LUError, ParseError
from .invariants import InvariantSet
from .states import MixedState, PureState


def _pairs(values) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values).reshape(-1)]


def state_to_dict(state, metadata: Optional[dict] = None) -> dict:
    if isinstance(state, PureState):
        data = _pairs(state.amplitudes)
        kind = "pure"
    else:
        data = [_pairs(row) for row in state.matrix]
        kind = "mixed"
    return {
        "kind": kind,
        "dims": list(state.dims),
        "data": data,
        "metadata": {str(k): str(v) for k, v in (metadata or {}).items()},
    }


def _complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ParseError("numbers must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def state_from_dict(doc) -> tuple:
    try:
        kind = doc["kind"]
        dims = [int(d) for d in doc["dims"]]
        data = doc["data"]
        meta = dict(doc.get("metadata", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed state file: {exc}") from None
    try:
        values = _complex(data)
        if kind == "pure":
            if values.ndim != 1:
                raise ParseError("pure data must be a flat list of pairs")
            state = PureState(dims, values)
        elif kind == "mixed":
            if values.ndim != 2:
                raise ParseError("mixed data must be a list of rows")
            state = MixedState(dims, values)
        else:
            raise ParseError(f"unknown kind {kind!r}")
    except ParseError:
        raise
    except (LUError, ValueError, TypeError) as exc:
        raise ParseError(f"invalid state data: {exc}") from None
    return state, meta


def dumps_state(state, metadata: Optional[dict] = None) -> str:
    return json.dumps(state_to_dict(state, metadata), sort_keys=True) + "\n"


def loads_state(text: str) -> tuple:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return state_from_dict(doc)


def write_state(path, state, metadata: Optional[dict] = None) -> None:
    Path(path).write_text(dumps_state(state, metadata))


def read_state(path) -> tuple:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads_state(text)


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _row(values) -> str:
    return " ".join(_num(v) for v in values)


def format_invariants(inv: InvariantSet) -> str:
    """Line-oriented ``key: values`` text; identical input gives identical bytes."""
    lines = [
        f"family: {inv.family}",
        "dims: " + " ".join(str(d) for d in inv.dims),
    ]
    if inv.pivot is not None:
        lines.append(f"pivot: {inv.pivot}")
    lines.append(f"minimal_global: {inv.minimal_global}")
    lines.append("global: " + _row(inv.global_powers))
    for i, (w, row) in enumerate(zip(inv.weights, inv.branch_powers)):
        lines.append(f"weight {i}: {_num(w)}")
        lines.append(f"branch {i}: {_row(row)}")
    if inv.inner_powers is not None:
        for i, (ws, rows) in enumerate(zip(inv.inner_weights, inv.inner_powers)):
            for t, (w, row) in enumerate(zip(ws, rows)):
                lines.append(f"inner_weight {i} {t}: {_num(w)}")
                lines.append(f"inner {i} {t}: {_row(row)}")
    return "\n".join(lines) + "\n"
