"""Exact maximal correlation for finite discrete joint distributions.

The central object is :class:`FiniteJoint`, a validated probability table
over labeled state spaces.  ``max_corr`` computes the
Hirschfeld-Gebelein-Renyi maximal correlation as the second singular value
of the mass-normalized kernel

    Q[x, y] = P(x, y) / sqrt(p_X(x) * p_Y(y)),

whose top singular value is always 1 (singular vectors sqrt(p_X), sqrt(p_Y));
that identity is asserted as a health check rather than deflated away.

The module also provides the joint-distribution constructors (products,
Markov triples, random-walk paths, state merges) that serve as brute-force
oracles for the closed forms elsewhere in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Mapping, Sequence

import numpy as np

from .constants import (
    DEFAULT_CELL_CAP,
    MASS_ATOL,
    MASS_NORMALIZE_ATOL,
    NEG_ATOL,
    TOP_SINGULAR_ATOL,
)
from .errors import (
    EmptySupport,
    MassNotOne,
    NegativeMass,
    SizeOverflow,
    SpectrumAnomaly,
    ValidationError,
)
from .report import CorrelationReport

Label = Hashable


@dataclass(frozen=True)
class FiniteJoint:
    """A joint probability table over finite labeled state spaces.

    Invariants (enforced by :func:`validate_joint`): entries are
    nonnegative, the total mass is 1 within ``MASS_ATOL``, no zero-mass
    row or column remains, and labels are unique per axis.
    """

    x_labels: tuple[Label, ...]
    y_labels: tuple[Label, ...]
    probs: np.ndarray

    def p_x(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def p_y(self) -> np.ndarray:
        return self.probs.sum(axis=0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.probs.shape  # type: ignore[return-value]

    def transpose(self) -> "FiniteJoint":
        flipped = self.probs.T.copy()
        flipped.setflags(write=False)
        return FiniteJoint(self.y_labels, self.x_labels, flipped)

    def to_dict(self) -> dict[str, Any]:
        return {
            "x_labels": list(self.x_labels),
            "y_labels": list(self.y_labels),
            "probs": self.probs.tolist(),
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "FiniteJoint":
        return validate_joint(d["probs"], d["x_labels"], d["y_labels"])

    @classmethod
    def from_json(cls, s: str) -> "FiniteJoint":
        return cls.from_dict(json.loads(s))


def validate_joint(
    raw_table: Any,
    x_labels: Sequence[Label],
    y_labels: Sequence[Label],
) -> FiniteJoint:
    """Validate, renormalize and prune a raw probability table.

    Entries below ``-NEG_ATOL`` raise :class:`NegativeMass`; tiny negative
    roundoff is clipped.  A total mass within ``MASS_NORMALIZE_ATOL`` of 1
    is rescaled to exactly 1, anything further off raises
    :class:`MassNotOne`.  Zero-mass rows and columns are removed.
    """
    table = np.asarray(raw_table, dtype=float)
    if table.ndim != 2:
        raise ValidationError(f"expected a 2-d table, got ndim={table.ndim}")
    if table.size == 0:
        raise EmptySupport("table has no cells")
    if table.shape != (len(x_labels), len(y_labels)):
        raise ValidationError(
            f"table shape {table.shape} does not match label counts "
            f"({len(x_labels)}, {len(y_labels)})"
        )
    if len(set(x_labels)) != len(x_labels) or len(set(y_labels)) != len(y_labels):
        raise ValidationError("labels must be unique within each axis")
    if not np.all(np.isfinite(table)):
        raise ValidationError("table contains non-finite entries")
    if np.any(table < -NEG_ATOL):
        worst = float(table.min())
        raise NegativeMass(f"negative probability {worst}")
    table = np.where(table < 0.0, 0.0, table)

    total = float(table.sum())
    if abs(total - 1.0) > MASS_NORMALIZE_ATOL:
        raise MassNotOne(f"total mass {total} deviates from 1 beyond tolerance")
    table = table / total

    keep_x = table.sum(axis=1) > 0.0
    keep_y = table.sum(axis=0) > 0.0
    if not keep_x.any() or not keep_y.any():
        raise EmptySupport("all mass pruned")
    table = table[np.ix_(keep_x, keep_y)]
    xs = tuple(lab for lab, k in zip(x_labels, keep_x) if k)
    ys = tuple(lab for lab, k in zip(y_labels, keep_y) if k)

    table = table.copy()
    table.setflags(write=False)
    return FiniteJoint(xs, ys, table)


def _joint_from_cells(
    cells: Mapping[tuple[Label, Label], float],
    cap: int = DEFAULT_CELL_CAP,
) -> FiniteJoint:
    """Assemble a FiniteJoint from a sparse {(x, y): p} accumulator."""
    xs = sorted({x for x, _ in cells}, key=_label_sort_key)
    ys = sorted({y for _, y in cells}, key=_label_sort_key)
    if len(xs) * len(ys) > cap:
        raise SizeOverflow(f"{len(xs)}x{len(ys)} cells exceed cap {cap}")
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    table = np.zeros((len(xs), len(ys)))
    for (x, y), p in cells.items():
        table[xi[x], yi[y]] += p
    return validate_joint(table, xs, ys)


def _label_sort_key(label: Label) -> tuple:
    # Numeric labels sort numerically, everything else by repr; the mixed
    # tuple keeps sorted() total across label types.
    if isinstance(label, bool):
        return (1, repr(label))
    if isinstance(label, (int, float, Fraction)):
        return (0, float(label), "")
    if isinstance(label, tuple):
        return (2, tuple(_label_sort_key(v) for v in label))
    return (1, repr(label))


def max_corr(j: FiniteJoint) -> CorrelationReport:
    """Maximal correlation of a finite joint, by SVD of the normalized kernel.

    Returns the second singular value of ``Q = P / sqrt(p_x p_y)``.  The top
    singular value must equal 1 within ``TOP_SINGULAR_ATOL`` or
    :class:`SpectrumAnomaly` is raised.  Degenerate joints (a single state
    on either axis) have maximal correlation 0 by convention.
    """
    px = j.p_x()
    py = j.p_y()
    q = j.probs / np.sqrt(np.outer(px, py))
    spectrum = np.linalg.svd(q, compute_uv=False)
    top = float(spectrum[0])
    if abs(top - 1.0) > TOP_SINGULAR_ATOL:
        raise SpectrumAnomaly(f"top singular value {top} differs from 1")
    if min(j.shape) == 1:
        value = 0.0
        notes = {"degenerate_axis": True}
    else:
        value = float(spectrum[1])
        notes = {}
    return CorrelationReport(
        value=value,
        method="svd-exact",
        spectrum=tuple(float(s) for s in spectrum),
        tolerance=TOP_SINGULAR_ATOL,
        notes=notes,
    )


def product_joint(
    j1: FiniteJoint, j2: FiniteJoint, cap: int = DEFAULT_CELL_CAP
) -> FiniteJoint:
    """Joint of the concatenated pair ((X1, X2), (Y1, Y2)) for independent factors.

    Labels are pairs.  By the Csaki-Fischer identity the maximal correlation
    of the product is the max of the factor values.
    """
    nx = len(j1.x_labels) * len(j2.x_labels)
    ny = len(j1.y_labels) * len(j2.y_labels)
    if nx * ny > cap:
        raise SizeOverflow(f"{nx}x{ny} cells exceed cap {cap}")
    table = np.kron(j1.probs, j2.probs)
    xs = [(a, b) for a in j1.x_labels for b in j2.x_labels]
    ys = [(c, d) for c in j1.y_labels for d in j2.y_labels]
    return validate_joint(table, xs, ys)


@dataclass(frozen=True)
class MarkovTripleSpec:
    """A joint on (X, Y) plus a stochastic kernel Y -> Z.

    Encodes a triple where X and Z are conditionally independent given Y.
    """

    joint_xy: FiniteJoint
    kernel_yz: np.ndarray
    z_labels: tuple[Label, ...] = ()

    def __post_init__(self) -> None:
        kernel = np.asarray(self.kernel_yz, dtype=float)
        if kernel.ndim != 2 or kernel.shape[0] != len(self.joint_xy.y_labels):
            raise ValidationError(
                "kernel must have one row per Y-state of the joint"
            )
        if np.any(kernel < -NEG_ATOL):
            raise NegativeMass("kernel has a negative entry")
        rows = kernel.sum(axis=1)
        if np.any(np.abs(rows - 1.0) > MASS_ATOL):
            raise MassNotOne("kernel rows must sum to 1")
        kernel = np.clip(kernel, 0.0, None)
        kernel.setflags(write=False)
        object.__setattr__(self, "kernel_yz", kernel)
        zs = self.z_labels or tuple(range(kernel.shape[1]))
        if len(zs) != kernel.shape[1]:
            raise ValidationError("z_labels must match kernel column count")
        object.__setattr__(self, "z_labels", tuple(zs))


def markov_triple_joint(spec: MarkovTripleSpec) -> tuple[FiniteJoint, FiniteJoint]:
    """Joints of (X, Z) and (Y, Z) induced by pushing Y through the kernel.

    ``j_xz[x, z] = sum_y P(x, y) K[y, z]`` and ``j_yz[y, z] = p_Y(y) K[y, z]``;
    by construction X and Z are conditionally independent given Y, so the
    submultiplicative bound R(X,Z) <= R(X,Y) R(Y,Z) applies.
    """
    j = spec.joint_xy
    xz = j.probs @ spec.kernel_yz
    yz = j.p_y()[:, None] * spec.kernel_yz
    j_xz = validate_joint(xz, j.x_labels, spec.z_labels)
    j_yz = validate_joint(yz, j.y_labels, spec.z_labels)
    return j_xz, j_yz


def map_states(
    j: FiniteJoint,
    f_x: Callable[[Label], Label] | Mapping[Label, Label],
    f_y: Callable[[Label], Label] | Mapping[Label, Label],
) -> FiniteJoint:
    """Aggregate states under label maps (a coordinate-wise data processing).

    The result never has larger maximal correlation than the input.
    """
    fx = _as_total_map(f_x, j.x_labels, "f_x")
    fy = _as_total_map(f_y, j.y_labels, "f_y")
    cells: dict[tuple[Label, Label], float] = {}
    for i, x in enumerate(j.x_labels):
        for k, y in enumerate(j.y_labels):
            key = (fx[x], fy[y])
            cells[key] = cells.get(key, 0.0) + float(j.probs[i, k])
    return _joint_from_cells(cells)


def _as_total_map(
    f: Callable[[Label], Label] | Mapping[Label, Label],
    labels: Sequence[Label],
    name: str,
) -> dict[Label, Label]:
    if callable(f):
        return {lab: f(lab) for lab in labels}
    missing = [lab for lab in labels if lab not in f]
    if missing:
        raise ValidationError(f"{name} is not total: missing {missing[:3]}")
    return {lab: f[lab] for lab in labels}


# ---------------------------------------------------------------------------
# Random-walk constructors.
# ---------------------------------------------------------------------------


def _numeric_labels(labels: Sequence[Label], axis: str) -> list[float]:
    vals = []
    for lab in labels:
        if isinstance(lab, bool) or not isinstance(lab, (int, float)):
            raise ValidationError(f"{axis} labels must be numbers, got {lab!r}")
        vals.append(float(lab))
    return vals


def _exact_increments(labels: Sequence[Label]) -> list[int] | None:
    """Integer representatives when every label is integral, else None."""
    out: list[int] = []
    for lab in labels:
        v = float(lab)
        if v != int(v):
            return None
        out.append(int(v))
    return out


def _round_sig(v: float, digits: int = 12) -> float:
    # Partial sums of the same float multiset must collide deterministically.
    return float(f"{v:.{digits}g}")


def random_walk_path_joint(
    j_inc: FiniteJoint, m: int, cap: int = DEFAULT_CELL_CAP
) -> FiniteJoint:
    """Joint law of the first m partial-sum paths of a bivariate walk.

    States are tuples (S_1, ..., S_m) of partial sums; integer increments
    keep exact integer sums, float increments are deduplicated through
    12-significant-digit rounding.
    """
    if m < 1:
        raise ValidationError("m must be >= 1")
    xv = _numeric_labels(j_inc.x_labels, "x")
    yv = _numeric_labels(j_inc.y_labels, "y")
    xi = _exact_increments(j_inc.x_labels)
    yi = _exact_increments(j_inc.y_labels)
    n_cells = (len(xv) * len(yv)) ** m
    if n_cells > cap:
        raise SizeOverflow(f"(|X|*|Y|)^m = {n_cells} cells exceed cap {cap}")

    x_incs: Sequence[float] | Sequence[int] = xi if xi is not None else xv
    y_incs: Sequence[float] | Sequence[int] = yi if yi is not None else yv
    canon_x = (lambda v: v) if xi is not None else _round_sig
    canon_y = (lambda v: v) if yi is not None else _round_sig

    # paths: {((x-path), (y-path)): prob}, extended one increment at a time.
    paths: dict[tuple[tuple, tuple], float] = {((), ()): 1.0}
    for _ in range(m):
        nxt: dict[tuple[tuple, tuple], float] = {}
        for (px_path, py_path), p in paths.items():
            sx = px_path[-1] if px_path else 0
            sy = py_path[-1] if py_path else 0
            for a, dx in enumerate(x_incs):
                for b, dy in enumerate(y_incs):
                    q = p * float(j_inc.probs[a, b])
                    if q == 0.0:
                        continue
                    key = (
                        px_path + (canon_x(sx + dx),),
                        py_path + (canon_y(sy + dy),),
                    )
                    nxt[key] = nxt.get(key, 0.0) + q
        paths = nxt
    return _joint_from_cells({(kx, ky): p for (kx, ky), p in paths.items()}, cap=cap)


def sum_pair_joint(
    j_inc: FiniteJoint, m: int, cap: int = DEFAULT_CELL_CAP
) -> FiniteJoint:
    """Joint law of the terminal sums (S_m, T_m) of a bivariate walk."""
    if m < 1:
        raise ValidationError("m must be >= 1")
    xv = _numeric_labels(j_inc.x_labels, "x")
    yv = _numeric_labels(j_inc.y_labels, "y")
    xi = _exact_increments(j_inc.x_labels)
    yi = _exact_increments(j_inc.y_labels)
    x_incs: Sequence[float] | Sequence[int] = xi if xi is not None else xv
    y_incs: Sequence[float] | Sequence[int] = yi if yi is not None else yv
    canon_x = (lambda v: v) if xi is not None else _round_sig
    canon_y = (lambda v: v) if yi is not None else _round_sig

    sums: dict[tuple[Label, Label], float] = {(0, 0): 1.0}
    for _ in range(m):
        nxt: dict[tuple[Label, Label], float] = {}
        for (sx, sy), p in sums.items():
            for a, dx in enumerate(x_incs):
                for b, dy in enumerate(y_incs):
                    q = p * float(j_inc.probs[a, b])
                    if q == 0.0:
                        continue
                    key = (canon_x(sx + dx), canon_y(sy + dy))
                    nxt[key] = nxt.get(key, 0.0) + q
        if len(nxt) > cap:
            raise SizeOverflow(f"sum support {len(nxt)} exceeds cap {cap}")
        sums = nxt
    return _joint_from_cells(sums, cap=cap)
