from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

SPECTRAL = "spectral-test"
ORACLE = "oracle"
DERIVATIVE = "derivative-test"


@dataclass(frozen=True)
class BjVerdict:
    """Outcome of a Birkhoff-James orthogonality decision.

    ``lambda_min``/``norm_min`` describe the minimiser of ``lam -> ||x + lam y||``
    (or the operator analogue). ``witness`` is a unit vector in the
    norm-attaining set where orthogonality is realised pointwise, when the
    method produces one.
    """

    orthogonal: bool
    lambda_min: float
    norm_min: float
    method: str
    witness: Optional[np.ndarray] = None
    base_norm: float = float("nan")
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "orthogonal": bool(self.orthogonal),
            "method": self.method,
            "lambda_min": float(self.lambda_min),
            "norm_min": float(self.norm_min),
            "norm": float(self.base_norm),
            "witness": None if self.witness is None else [float(v) for v in self.witness],
        }
        out.update(self.details)
        return out
