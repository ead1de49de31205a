"""Operator norms of stable and finite-atom jump measures.

A two-dimensional alpha-stable jump measure is parameterized in polar form
by a finite spectral measure on the circle.  Its bilinear operator norm --
the jump-part contribution to the maximal correlation of the driven
process -- reduces to the spectral norm of a 2x2 matrix built from eight
quadrant integrals:

    C_q  = integral over quadrant q of |cos t sin t|^(alpha/2) dtau
    Dx_s = integral over the half-circle {cos t sign s} of |cos t|^alpha dtau
    Dy_s = same with sin

    A[s1, s2] = C_(s1 s2) / sqrt(Dx_s1 * Dy_s2)     (0/0 -> 0)

Spectral measures are restricted to atoms plus piecewise-constant
densities: that family is closed under every construction used here and
keeps the quadrature error controllable.  For a finite-atom jump measure
the norm is the top singular value of the normalized atom matrix, with no
deflation (test functions only vanish at 0, they are not centered).

Angles within ``ANGLE_SNAP_ATOL`` of a multiple of pi/2 are snapped onto
the axis, so atoms meant to sit exactly on an axis are treated exactly
(|cos| and |sin| raised to small powers amplify 1e-16 angle noise badly).
Axis atoms contribute nothing to the C integrals and enter only the D
integral whose written interval they are interior to.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .constants import (
    ANGLE_SNAP_ATOL,
    QUAD_ATOL,
    QUAD_PANEL_BUDGET,
    SYMMETRY_ATOL,
)
from .errors import (
    NotSymmetric,
    OutOfRange,
    QuadratureFailure,
    UnsupportedMeasure,
    ValidationError,
)
from .report import CorrelationReport

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def _snap_angle(theta: float) -> float:
    """Reduce mod 2*pi and snap near-axis angles onto the exact axis."""
    t = float(theta) % TWO_PI
    k = round(t / HALF_PI)
    if abs(t - k * HALF_PI) <= ANGLE_SNAP_ATOL:
        t = (k % 4) * HALF_PI
    return t


def _axis_index(theta: float) -> int | None:
    """Quarter-turn index when theta is a snapped axis angle, else None.

    Snapped angles are stored as the exact float product k * HALF_PI, so
    bit-exact equality against the recovered product is the right test.
    """
    k = round(theta / HALF_PI)
    if theta == k * HALF_PI:
        return k % 4
    return None


def _trig(theta: float) -> tuple[float, float]:
    """cos/sin with exact values on snapped axis angles."""
    k = _axis_index(theta)
    if k is not None:
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[k]
    return math.cos(theta), math.sin(theta)


@dataclass(frozen=True)
class SpectralMeasure:
    """Finite measure on [0, 2*pi): atoms plus a piecewise-constant density.

    ``atoms`` are (theta, weight) with weight > 0; ``pieces`` are
    (from, to, level) intervals with disjoint interiors and level >= 0.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    pieces: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self) -> None:
        atoms = []
        for theta, weight in self.atoms:
            w = float(weight)
            if not math.isfinite(w) or w <= 0.0:
                raise ValidationError(f"atom weight must be positive, got {w}")
            atoms.append((_snap_angle(theta), w))
        atoms.sort()
        pieces = []
        for a, b, level in self.pieces:
            a, b, level = float(a), float(b), float(level)
            if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(level)):
                raise ValidationError("piece endpoints/levels must be finite")
            if level < 0.0:
                raise ValidationError(f"density level must be >= 0, got {level}")
            if b > TWO_PI + ANGLE_SNAP_ATOL or a < -ANGLE_SNAP_ATOL:
                raise ValidationError("pieces must lie inside [0, 2*pi)")
            a = min(max(_snap_angle(a), 0.0), TWO_PI)
            b = TWO_PI if abs(b - TWO_PI) <= ANGLE_SNAP_ATOL else _snap_angle(b)
            if b <= a:
                if level > 0.0 and b < a:
                    raise ValidationError("piece must have from < to (no wrap-around)")
                continue
            if level == 0.0:
                continue
            pieces.append((a, b, level))
        pieces.sort()
        for (a1, b1, _), (a2, _, _) in zip(pieces, pieces[1:]):
            if a2 < b1 - 1e-15:
                raise ValidationError("density pieces must be disjoint")
        mass = sum(w for _, w in atoms) + sum(
            lv * (b - a) for a, b, lv in pieces
        )
        if mass <= 0.0:
            raise ValidationError("spectral measure must have positive total mass")
        object.__setattr__(self, "atoms", tuple(atoms))
        object.__setattr__(self, "pieces", tuple(pieces))

    def total_mass(self) -> float:
        return sum(w for _, w in self.atoms) + sum(
            lv * (b - a) for a, b, lv in self.pieces
        )

    def density_at(self, theta: float) -> float:
        t = theta % TWO_PI
        for a, b, level in self.pieces:
            if a <= t < b:
                return level
        return 0.0

    def axis_atoms(self) -> tuple[float, ...]:
        """Angles of atoms sitting exactly on a coordinate axis."""
        return tuple(t for t, _ in self.atoms if _axis_index(t) is not None)

    def to_dict(self) -> dict[str, Any]:
        return {
            "atoms": [{"theta": t, "weight": w} for t, w in self.atoms],
            "pieces": [{"from": a, "to": b, "level": lv} for a, b, lv in self.pieces],
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SpectralMeasure":
        return cls(
            atoms=tuple((a["theta"], a["weight"]) for a in d.get("atoms", ())),
            pieces=tuple(
                (p["from"], p["to"], p["level"]) for p in d.get("pieces", ())
            ),
        )

    @classmethod
    def from_json(cls, s: str) -> "SpectralMeasure":
        return cls.from_dict(json.loads(s))


# ---------------------------------------------------------------------------
# Adaptive Gauss-Legendre quadrature (15-point panels, bisection refinement).
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def _gl_panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _GL_NODES
    return half * float(np.dot(_GL_WEIGHTS, f(x)))


def adaptive_quad(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    atol: float = QUAD_ATOL,
    budget: int = QUAD_PANEL_BUDGET,
) -> float:
    """Integrate a vectorized function to absolute tolerance ``atol``.

    Panels are bisected until the difference between a panel's estimate and
    the sum of its halves falls under the width-proportional share of the
    tolerance.  Exceeding the panel budget raises QuadratureFailure.
    """
    if b <= a:
        return 0.0
    width = b - a
    total = 0.0
    used = 1
    stack = [(a, b, _gl_panel(f, a, b))]
    while stack:
        pa, pb, coarse = stack.pop()
        mid = 0.5 * (pa + pb)
        left = _gl_panel(f, pa, mid)
        right = _gl_panel(f, mid, pb)
        used += 2
        if used > budget:
            raise QuadratureFailure(
                f"panel budget {budget} exhausted on [{a}, {b}]"
            )
        refined = left + right
        if abs(coarse - refined) <= max(atol * (pb - pa) / width, 5e-17):
            total += refined
        else:
            stack.append((pa, mid, left))
            stack.append((mid, pb, right))
    return total


def _split_at_axes(a: float, b: float) -> list[tuple[float, float]]:
    """Cut [a, b] at interior multiples of pi/2 (the integrand kinks)."""
    cuts = [a]
    k = math.floor(a / HALF_PI) + 1
    while k * HALF_PI < b - 1e-15:
        if k * HALF_PI > a + 1e-15:
            cuts.append(k * HALF_PI)
        k += 1
    cuts.append(b)
    return list(zip(cuts, cuts[1:]))


@dataclass(frozen=True)
class CDSet:
    """The eight quadrant integrals of a spectral measure.

    Per-quadrant Cauchy-Schwarz forces each C below the geometric mean of
    the matching D pair; that consistency is asserted on construction.
    """

    c_pp: float
    c_pm: float
    c_mp: float
    c_mm: float
    dx_p: float
    dx_m: float
    dy_p: float
    dy_m: float

    def __post_init__(self) -> None:
        vals = (
            self.c_pp, self.c_pm, self.c_mp, self.c_mm,
            self.dx_p, self.dx_m, self.dy_p, self.dy_m,
        )
        if any(v < 0.0 for v in vals):
            raise ValidationError("quadrant integrals must be nonnegative")
        slack = 10.0 * QUAD_ATOL
        pairs = (
            (self.c_pp, self.dx_p, self.dy_p),
            (self.c_pm, self.dx_p, self.dy_m),
            (self.c_mp, self.dx_m, self.dy_p),
            (self.c_mm, self.dx_m, self.dy_m),
        )
        for c, dx, dy in pairs:
            if c > math.sqrt(dx * dy) + slack:
                raise ValidationError(
                    f"quadrant integral {c} exceeds Cauchy-Schwarz bound "
                    f"sqrt({dx} * {dy})"
                )

    def to_dict(self) -> dict[str, float]:
        return {
            "c_pp": self.c_pp, "c_pm": self.c_pm,
            "c_mp": self.c_mp, "c_mm": self.c_mm,
            "dx_p": self.dx_p, "dx_m": self.dx_m,
            "dy_p": self.dy_p, "dy_m": self.dy_m,
        }


def _check_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 2.0:
        raise OutOfRange(f"alpha must lie in (0, 2), got {alpha}")
    return float(alpha)


def cd_integrals(tau: SpectralMeasure, alpha: float) -> CDSet:
    """Evaluate the eight quadrant integrals of ``tau`` at stability ``alpha``.

    Atoms contribute exact summands (axis atoms contribute nothing to the C
    integrals and only to the D integral they are interior to); density
    pieces are integrated adaptively with panels split at multiples of pi/2.
    """
    alpha = _check_alpha(alpha)
    half = 0.5 * alpha
    # c[quadrant], quadrants 0..3 counterclockwise from (+,+).
    c = [0.0, 0.0, 0.0, 0.0]
    dx = [0.0, 0.0]  # +, -
    dy = [0.0, 0.0]

    for theta, w in tau.atoms:
        ct, st = _trig(theta)
        if ct > 0.0:
            dx[0] += w * abs(ct) ** alpha
        elif ct < 0.0:
            dx[1] += w * abs(ct) ** alpha
        if st > 0.0:
            dy[0] += w * abs(st) ** alpha
        elif st < 0.0:
            dy[1] += w * abs(st) ** alpha
        if ct != 0.0 and st != 0.0:
            q = _quadrant_of(ct, st)
            c[q] += w * abs(ct * st) ** half

    for a, b, level in tau.pieces:
        for sa, sb in _split_at_axes(a, b):
            q = _quadrant_of_angle(0.5 * (sa + sb))
            c[q] += level * adaptive_quad(
                lambda t: np.abs(np.cos(t) * np.sin(t)) ** half, sa, sb
            )
            dxi = 0 if q in (0, 3) else 1
            dyi = 0 if q in (0, 1) else 1
            dx[dxi] += level * adaptive_quad(
                lambda t: np.abs(np.cos(t)) ** alpha, sa, sb
            )
            dy[dyi] += level * adaptive_quad(
                lambda t: np.abs(np.sin(t)) ** alpha, sa, sb
            )

    return CDSet(
        c_pp=c[0], c_mp=c[1], c_mm=c[2], c_pm=c[3],
        dx_p=dx[0], dx_m=dx[1], dy_p=dy[0], dy_m=dy[1],
    )


def _quadrant_of(ct: float, st: float) -> int:
    if ct > 0.0:
        return 0 if st > 0.0 else 3
    return 1 if st > 0.0 else 2


def _quadrant_of_angle(theta: float) -> int:
    return int((theta % TWO_PI) / HALF_PI) % 4


def _norm_ratio(c: float, dx: float, dy: float) -> float:
    # 0/0 -> 0; a positive c with a vanishing D product is below quadrature
    # noise by the CDSet consistency invariant.
    if c == 0.0:
        return 0.0
    den = math.sqrt(dx * dy)
    if den == 0.0:
        return 0.0
    return c / den


def _spectral_norm_2x2(a: np.ndarray) -> tuple[float, float]:
    """Singular values of a 2x2 matrix from the characteristic polynomial."""
    g = a.T @ a
    mean = 0.5 * (g[0, 0] + g[1, 1])
    disc = math.sqrt(max((0.5 * (g[0, 0] - g[1, 1])) ** 2 + g[0, 1] ** 2, 0.0))
    top = math.sqrt(max(mean + disc, 0.0))
    bot = math.sqrt(max(mean - disc, 0.0))
    return top, bot


def opnu_stable(tau: SpectralMeasure, alpha: float) -> CorrelationReport:
    """Operator norm of the stable jump measure with spectral measure ``tau``.

    Assembles the normalized quadrant matrix and returns its spectral norm
    (computed in closed form).  The report notes carry the raw integrals
    and flag atoms sitting exactly on an axis.
    """
    cd = cd_integrals(tau, alpha)
    a = np.array(
        [
            [_norm_ratio(cd.c_pp, cd.dx_p, cd.dy_p),
             _norm_ratio(cd.c_pm, cd.dx_p, cd.dy_m)],
            [_norm_ratio(cd.c_mp, cd.dx_m, cd.dy_p),
             _norm_ratio(cd.c_mm, cd.dx_m, cd.dy_m)],
        ]
    )
    top, bot = _spectral_norm_2x2(a)
    notes: dict[str, Any] = {"alpha": alpha, "cd": cd.to_dict()}
    axis = tau.axis_atoms()
    if axis:
        notes["axis_atoms"] = list(axis)
    return CorrelationReport(
        value=top,
        method="spectral-norm",
        spectrum=(top, bot),
        tolerance=10.0 * QUAD_ATOL,
        notes=notes,
    )


def bdk_tau(
    alpha: float, lam: float, c_minus: float = 1.0, c_plus: float = 1.0
) -> SpectralMeasure:
    """Spectral measure of (X, X + lam*Z) for independent stable copies.

    X's own jumps land on the diagonal rays at pi/4 and 5*pi/4 (weights
    scaled by sqrt(2)^alpha from the change to polar radius); Z's jumps land
    on the vertical axis with weight |lam|^alpha, on the side fixed by the
    sign of lam.
    """
    alpha = _check_alpha(alpha)
    if lam == 0.0:
        raise OutOfRange("lam must be nonzero (lam = 0 is the identity pair)")
    if c_minus < 0.0 or c_plus < 0.0 or c_minus + c_plus <= 0.0:
        raise OutOfRange("tail weights must be nonnegative with positive sum")
    root2_a = math.sqrt(2.0) ** alpha
    lam_a = abs(lam) ** alpha
    if lam < 0.0:
        up, down = c_minus * lam_a, c_plus * lam_a
    else:
        up, down = c_plus * lam_a, c_minus * lam_a
    atoms = [
        (0.25 * math.pi, c_plus * root2_a),
        (1.25 * math.pi, c_minus * root2_a),
        (0.5 * math.pi, up),
        (1.5 * math.pi, down),
    ]
    return SpectralMeasure(atoms=tuple((t, w) for t, w in atoms if w > 0.0))


def opnu_atoms(
    atoms: Sequence[tuple[float, float, float]]
) -> CorrelationReport:
    """Operator norm of a finite-atom jump measure.

    Builds M[x, y] = nu({(x, y)}) / sqrt(nu_X(x) * nu_Y(y)) over the nonzero
    jump sizes of each coordinate (marginals include mass where the other
    coordinate does not move) and returns the top singular value.  No
    deflation: the test functions are constrained only to vanish at 0.
    """
    xs: dict[float, float] = {}
    ys: dict[float, float] = {}
    cells: dict[tuple[float, float], float] = {}
    for x, y, w in atoms:
        x, y, w = float(x), float(y), float(w)
        if w <= 0.0:
            raise ValidationError(f"atom weight must be positive, got {w}")
        if x == 0.0 and y == 0.0:
            raise ValidationError("jump atoms must avoid the origin")
        if x != 0.0:
            xs[x] = xs.get(x, 0.0) + w
        if y != 0.0:
            ys[y] = ys.get(y, 0.0) + w
        if x != 0.0 and y != 0.0:
            cells[(x, y)] = cells.get((x, y), 0.0) + w
    if not xs or not ys:
        return CorrelationReport(
            value=0.0, method="spectral-norm", spectrum=(),
            tolerance=0.0, notes={"jump_atoms": len(tuple(atoms))},
        )
    x_list = sorted(xs)
    y_list = sorted(ys)
    m = np.zeros((len(x_list), len(y_list)))
    for (x, y), w in cells.items():
        m[x_list.index(x), y_list.index(y)] = w / math.sqrt(xs[x] * ys[y])
    spectrum = np.linalg.svd(m, compute_uv=False)
    return CorrelationReport(
        value=float(spectrum[0]),
        method="spectral-norm",
        spectrum=tuple(float(s) for s in spectrum),
        tolerance=1e-12,
        notes={"jump_atoms": len(tuple(atoms))},
    )


# ---------------------------------------------------------------------------
# Levy triples.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StableForm:
    alpha: float
    tau: SpectralMeasure

    def __post_init__(self) -> None:
        _check_alpha(self.alpha)


@dataclass(frozen=True)
class FiniteAtoms:
    atoms: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        for x, y, w in self.atoms:
            if w <= 0.0:
                raise ValidationError("jump atom weights must be positive")
            if x == 0.0 and y == 0.0:
                raise ValidationError("jump atoms must avoid the origin")


@dataclass(frozen=True)
class LevyTriple:
    """Characteristic triple (drift, covariance, jump measure) in dimension 2."""

    drift: tuple[float, float]
    sigma: np.ndarray
    jumps: StableForm | FiniteAtoms | None = None

    def __post_init__(self) -> None:
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.shape != (2, 2):
            raise ValidationError("sigma must be a 2x2 matrix")
        if abs(sigma[0, 1] - sigma[1, 0]) > 1e-12:
            raise ValidationError("sigma must be symmetric")
        eigs = np.linalg.eigvalsh(0.5 * (sigma + sigma.T))
        if eigs.min() < -1e-12:
            raise ValidationError("sigma must be positive semidefinite")
        sigma = 0.5 * (sigma + sigma.T)
        sigma.setflags(write=False)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(
            self, "drift", (float(self.drift[0]), float(self.drift[1]))
        )

    def rho(self) -> float:
        s = self.sigma
        if s[0, 0] * s[1, 1] > 0.0:
            return float(s[0, 1] / math.sqrt(s[0, 0] * s[1, 1]))
        return 0.0

    def to_dict(self) -> dict[str, Any]:
        if self.jumps is None:
            jumps: Any = None
        elif isinstance(self.jumps, StableForm):
            jumps = {
                "kind": "stable",
                "alpha": self.jumps.alpha,
                "tau": self.jumps.tau.to_dict(),
            }
        else:
            jumps = {
                "kind": "atoms",
                "atoms": [
                    {"x": x, "y": y, "weight": w} for x, y, w in self.jumps.atoms
                ],
            }
        return {
            "drift": list(self.drift),
            "sigma": self.sigma.tolist(),
            "jumps": jumps,
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "LevyTriple":
        j = d.get("jumps")
        jumps: StableForm | FiniteAtoms | None
        if j is None:
            jumps = None
        elif j.get("kind") == "stable":
            jumps = StableForm(
                alpha=float(j["alpha"]), tau=SpectralMeasure.from_dict(j["tau"])
            )
        elif j.get("kind") == "atoms":
            jumps = FiniteAtoms(
                atoms=tuple(
                    (float(a["x"]), float(a["y"]), float(a["weight"]))
                    for a in j["atoms"]
                )
            )
        else:
            raise UnsupportedMeasure(
                f"unknown jump-measure kind {j.get('kind')!r}; only 'stable' "
                "and 'atoms' have a finite algorithmic form here"
            )
        return cls(
            drift=tuple(d.get("drift", (0.0, 0.0))),  # type: ignore[arg-type]
            sigma=np.asarray(d["sigma"], dtype=float),
            jumps=jumps,
        )

    @classmethod
    def from_json(cls, s: str) -> "LevyTriple":
        return cls.from_dict(json.loads(s))


def levy_mc(triple: LevyTriple) -> CorrelationReport:
    """Maximal correlation of the two-dimensional Levy process with this triple.

    Equals max(|rho|, Op(nu)): the diffusion correlation and the jump-measure
    operator norm, whichever binds.
    """
    rho = abs(triple.rho())
    if triple.jumps is None:
        op = 0.0
        op_report: CorrelationReport | None = None
    elif isinstance(triple.jumps, StableForm):
        op_report = opnu_stable(triple.jumps.tau, triple.jumps.alpha)
        op = op_report.value
    elif isinstance(triple.jumps, FiniteAtoms):
        op_report = opnu_atoms(triple.jumps.atoms)
        op = op_report.value
    else:
        raise UnsupportedMeasure(
            f"cannot compute Op(nu) for jump descriptor {type(triple.jumps)!r}"
        )
    value = max(rho, op)
    notes: dict[str, Any] = {"rho_abs": rho, "op_nu": op}
    if op_report is not None:
        notes["op_notes"] = op_report.notes
    tolerance = op_report.tolerance if op_report is not None else 0.0
    return CorrelationReport(
        value=value,
        method="spectral-norm",
        spectrum=op_report.spectrum if op_report is not None else (),
        tolerance=tolerance,
        notes=notes,
    )


def hilbert_hardy_symmetric(tau: SpectralMeasure, alpha: float) -> float:
    """Scalar operator norm for an antipodally symmetric spectral measure.

    For measures invariant under theta -> theta + pi the quadrant matrix
    collapses and the norm is

        (int |cos t sin t|^(alpha/2) dtau)
        / sqrt(int |cos t|^alpha dtau * int |sin t|^alpha dtau),

    the classical Hilbert-Hardy value for homogeneous kernels.  Raises
    NotSymmetric when the invariance fails.
    """
    alpha = _check_alpha(alpha)
    _require_antipodal(tau)
    half = 0.5 * alpha

    num = 0.0
    den_x = 0.0
    den_y = 0.0
    for theta, w in tau.atoms:
        ct, st = _trig(theta)
        num += w * abs(ct * st) ** half
        den_x += w * abs(ct) ** alpha
        den_y += w * abs(st) ** alpha
    for a, b, level in tau.pieces:
        for sa, sb in _split_at_axes(a, b):
            num += level * adaptive_quad(
                lambda t: np.abs(np.cos(t) * np.sin(t)) ** half, sa, sb
            )
            den_x += level * adaptive_quad(
                lambda t: np.abs(np.cos(t)) ** alpha, sa, sb
            )
            den_y += level * adaptive_quad(
                lambda t: np.abs(np.sin(t)) ** alpha, sa, sb
            )
    if num == 0.0 or den_x == 0.0 or den_y == 0.0:
        return 0.0
    return num / math.sqrt(den_x * den_y)


def _require_antipodal(tau: SpectralMeasure) -> None:
    weights: dict[float, float] = {}
    for theta, w in tau.atoms:
        weights[theta] = weights.get(theta, 0.0) + w
    thetas = sorted(weights)
    for theta, w in weights.items():
        partner = _snap_angle(theta + math.pi)
        pw = _lookup_angle(thetas, weights, partner)
        if abs(pw - w) > SYMMETRY_ATOL:
            raise NotSymmetric(
                f"atom at {theta} has weight {w} but its antipode carries {pw}"
            )
    cuts = sorted(
        {0.0, TWO_PI}
        | {e for a, b, _ in tau.pieces for e in (a, b)}
        | {_snap_angle(a + math.pi) for a, b, _ in tau.pieces}
        | {_snap_angle(b + math.pi) for a, b, _ in tau.pieces}
    )
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo <= 1e-14:
            continue
        mid = 0.5 * (lo + hi)
        d1 = tau.density_at(mid)
        d2 = tau.density_at(mid + math.pi)
        if abs(d1 - d2) > SYMMETRY_ATOL:
            raise NotSymmetric(
                f"density {d1} at {mid} vs {d2} at its antipode"
            )


def _lookup_angle(
    sorted_keys: list[float], table: dict[float, float], theta: float
) -> float:
    # Atom angles come from user floats; match the antipode within a loose
    # multiple of the snap tolerance (circularly, so 0 and 2*pi coincide).
    tol = 10.0 * ANGLE_SNAP_ATOL
    total = 0.0
    for cand in sorted_keys:
        gap = abs(cand - theta)
        if min(gap, TWO_PI - gap) <= tol:
            total += table[cand]
    return total
