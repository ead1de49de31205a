"""Correlation reports: the common result type for every computation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

# Accepted values of CorrelationReport.method.
METHODS = (
    "svd-exact",
    "closed-form",
    "spectral-norm",
    "truncation",
    "binned-empirical",
)


@dataclass(frozen=True)
class CorrelationReport:
    """A computed maximal-correlation value plus diagnostics.

    ``value`` lies in [0, 1] up to ``tolerance``.  ``spectrum`` is the
    descending singular spectrum when an SVD was taken (empty for closed
    forms).  ``notes`` carries free-form diagnostics such as truncation
    levels or tail-mass bounds.
    """

    value: float
    method: str
    spectrum: tuple[float, ...] = ()
    tolerance: float = 0.0
    notes: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not -self.tolerance <= self.value <= 1.0 + self.tolerance:
            raise ValueError(
                f"value {self.value} outside [0, 1] beyond tolerance {self.tolerance}"
            )
        if any(a < b - 1e-15 for a, b in zip(self.spectrum, self.spectrum[1:])):
            raise ValueError("spectrum must be non-increasing")

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "method": self.method,
            "spectrum": list(self.spectrum),
            "tolerance": self.tolerance,
            "notes": self.notes,
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CorrelationReport":
        return cls(
            value=float(d["value"]),
            method=str(d["method"]),
            spectrum=tuple(float(s) for s in d.get("spectrum", ())),
            tolerance=float(d.get("tolerance", 0.0)),
            notes=dict(d.get("notes", {})),
        )

    @classmethod
    def from_json(cls, s: str) -> "CorrelationReport":
        return cls.from_dict(json.loads(s))
