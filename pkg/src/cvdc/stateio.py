"""State-file loading/saving and deterministic record emission.

State files are JSON objects
``{"convention": "hbar=1,vac=1/2", "n_modes": N, "mean": [...], "cov": [[...]]}``
with the covariance row-major in the interleaved quadrature ordering.
Loaders refuse unphysical states unless explicitly overridden.

CSV output prints floats with 12 significant digits and booleans as 0/1;
``# key=value`` comment lines carry the run metadata. Identical inputs
produce identical bytes.
"""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from .core import CONVENTION, GaussianState, validate_cm
from .errors import UnphysicalStateError


def save_state(state: GaussianState, path) -> None:
    payload = {
        "convention": CONVENTION,
        "n_modes": state.n_modes,
        "mean": state.mean.tolist(),
        "cov": state.cov.tolist(),
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def load_state(path, allow_unphysical: bool = False) -> GaussianState:
    """Load and validate a state file.

    Raises ValueError with field context on malformed input and
    :class:`UnphysicalStateError` on asymmetric or uncertainty-violating
    covariances (unless ``allow_unphysical``).
    """
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise ValueError(f"{path}: not valid JSON (line {err.lineno}): {err.msg}") from err
    if not isinstance(payload, dict):
        raise ValueError(f"{path}: expected a JSON object")
    for key in ("convention", "n_modes", "mean", "cov"):
        if key not in payload:
            raise ValueError(f"{path}: missing field {key!r}")
    if payload["convention"] != CONVENTION:
        raise ValueError(
            f"{path}: convention {payload['convention']!r} not supported; "
            f"this tool requires {CONVENTION!r}"
        )
    n = payload["n_modes"]
    try:
        state = GaussianState(np.array(payload["mean"], float), np.array(payload["cov"], float))
    except (ValueError, TypeError) as err:
        raise ValueError(f"{path}: bad mean/cov fields: {err}") from err
    if state.n_modes != n:
        raise ValueError(
            f"{path}: n_modes={n} does not match mean/cov dimension {state.n_modes}"
        )
    report = validate_cm(state)
    if not report.is_symmetric and not allow_unphysical:
        raise UnphysicalStateError(f"{path}: covariance is not symmetric within 1e-12")
    if not report.is_physical and not allow_unphysical:
        raise UnphysicalStateError(
            f"{path}: covariance violates the uncertainty relation "
            f"(min eigenvalue {report.min_uncertainty_eigenvalue:.3e})"
        )
    return state


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".12g")
    return str(value)


def _record_dict(record) -> dict:
    if dataclasses.is_dataclass(record):
        return dataclasses.asdict(record)
    return dict(record)


def emit_records(records, path, fmt: str = "csv", columns=None, metadata=None) -> None:
    """Write homogeneous records deterministically as CSV or JSON.

    ``columns`` selects and orders the emitted fields (default: all fields
    of the first record, declaration order). CSV gets ``# key=value``
    metadata comment lines; JSON is an array of objects with sorted keys.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    dicts = [_record_dict(r) for r in records]
    if columns is None:
        columns = list(dicts[0].keys()) if dicts else []
    path = Path(path)
    if fmt == "json":
        def jsonable(v):
            if isinstance(v, float) and math.isnan(v):
                return None
            return v

        body = [{k: jsonable(row[k]) for k in columns} for row in dicts]
        path.write_text(json.dumps(body, sort_keys=True, indent=2) + "\n")
        return
    lines = []
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}={value}")
    lines.append(",".join(columns))
    for row in dicts:
        lines.append(",".join(_format_value(row[k]) for k in columns))
    path.write_text("\n".join(lines) + "\n")
