"""Check report types shared by the radius module, the catalog, and the harness."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .matjson import canonical_bytes, matrix_to_dict


@dataclass(frozen=True)
class Tolerances:
    """Knobs shared by catalog checks.

    `rel` scales with the magnitude of the compared sides (absolute floor
    `abs_floor`); `grid`/`refine_tol` drive radius sweeps; `fine_grid` sizes
    the independent angle grid used by the sup-angle identity check.
    """

    rel: float = 1e-8
    abs_floor: float = 1e-12
    grid: int = 720
    refine_tol: float = 1e-12
    fine_grid: int = 4096


def tolerance_for(lhs: float, rhs: float, scale_hint: float, tol: Tolerances) -> float:
    scale = max(abs(lhs), abs(rhs), scale_hint)
    return max(tol.rel * (1.0 + scale), tol.abs_floor)


def digest_inputs(matrices, vectors=(), params: Optional[dict] = None) -> str:
    """Hex SHA-256 of the canonical serialization of inputs and parameters."""
    h = hashlib.sha256()
    for m in matrices:
        h.update(b"matrix:")
        h.update(canonical_bytes(np.asarray(m, dtype=np.complex128)))
    for v in vectors:
        h.update(b"vector:")
        h.update(canonical_bytes(np.asarray(v, dtype=np.complex128).reshape(-1, 1)))
    if params:
        h.update(b"params:")
        h.update(json.dumps(params, sort_keys=True, separators=(",", ":")).encode("ascii"))
    return h.hexdigest()


@dataclass
class InequalityReport:
    """Outcome of one catalog check.

    For inequality checks `passed` means lhs <= rhs + tolerance; identity
    checks use |lhs - rhs| <= tolerance.  `slack` is rhs - lhs at full double
    precision.  Skipped reports (constraints unmet by the provided inputs)
    carry None values and a reason in `witness`.
    """

    id: str
    variant: str
    params: dict
    inputs_digest: str
    lhs: Optional[float]
    rhs: Optional[float]
    slack: Optional[float]
    tolerance: Optional[float]
    passed: Optional[bool]
    skipped: bool = False
    identity: bool = False
    witness: Optional[dict] = None
    inputs: Optional[dict] = field(default=None, repr=False)

    def to_json_dict(self, include_inputs: bool = False) -> dict:
        out = {
            "id": self.id,
            "variant": self.variant,
            "params": dict(self.params),
            "inputs_digest": self.inputs_digest,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "skipped": self.skipped,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if include_inputs and self.inputs is not None:
            out["inputs"] = self.inputs
        return out


def make_report(
    *,
    id: str,
    variant: str,
    params: dict,
    inputs_digest: str,
    lhs: float,
    rhs: float,
    tol: Tolerances,
    identity: bool,
    scale_hint: float = 0.0,
    witness: Optional[dict] = None,
) -> InequalityReport:
    lhs = float(lhs)
    rhs = float(rhs)
    tolerance = tolerance_for(lhs, rhs, scale_hint, tol)
    if identity:
        passed = bool(abs(lhs - rhs) <= tolerance)
    else:
        passed = bool(lhs <= rhs + tolerance)
    return InequalityReport(
        id=id,
        variant=variant,
        params=params,
        inputs_digest=inputs_digest,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        tolerance=tolerance,
        passed=passed,
        skipped=False,
        identity=identity,
        witness=witness,
    )


def serialize_inputs(matrices, vectors=()) -> dict:
    """Inline input bundle for self-contained replay of a report."""
    return {
        "matrices": [matrix_to_dict(np.asarray(m)) for m in matrices],
        "vectors": [matrix_to_dict(np.asarray(v).reshape(-1, 1)) for v in vectors],
    }
