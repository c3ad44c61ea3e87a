"""Isotropy-invariant translators on rank-one spaces.

A function ``u = V(r)`` of the distance to the base point has a translating
graph exactly when ``V'' = (1 + V'^2)(1 - h(s) V')``.  This module integrates
that equation to its maximal interval, shoots the two regular solutions that
reach an end of ``(0, alpha)`` with zero slope, and sorts every solution into one
of five shapes by how its two ends behave.

For CP^n the substitution ``x = tan(s / (2 sqrt(n+1)))``, ``psi(x) = V'(s)``
turns the equation into a planar field whose nullcline ``eta`` and sign regions
drive the blow-up arguments; those pieces live here too and are used to
cross-check the s-space computation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, NumericalFailure, Unclassified
from .ode import EndpointEvent, EventTag, IntegratorConfig, SolutionTrace, integrate, join
from .spaces import RankOneSpace, SpaceKind, smooth_slope

__all__ = [
    "EndBehavior",
    "TranslatorType",
    "TYPE_MAP",
    "PhasePoint",
    "ProfileTrace",
    "SweepResult",
    "default_config",
    "v_rhs",
    "psi_rhs",
    "eta",
    "region_sign",
    "h1",
    "h1_bound",
    "solve_maximal",
    "side_event",
    "shoot_regular",
    "classify",
    "sweep",
    "default_grids",
    "sweep_config",
    "solve_psi",
    "psi_v_consistency",
    "profile_residual",
    "classify_pair",
    "type_mapping",
    "s_of_x",
    "x_of_s",
    "reflect",
    "blowup_region_ics",
]

SMOOTH_THRESHOLD = 0.1
SMOOTH_LAW_TOL = 0.2
TIE_GUARD = 1e-9


class EndBehavior(str, enum.Enum):
    VT_PLUS = "VTplus"
    VT_MINUS = "VTminus"
    SMOOTH_ORIGIN = "SmoothOrigin"
    SMOOTH_FOCAL = "SmoothFocal"

    def mirrored(self) -> "EndBehavior":
        return {
            EndBehavior.VT_PLUS: EndBehavior.VT_MINUS,
            EndBehavior.VT_MINUS: EndBehavior.VT_PLUS,
            EndBehavior.SMOOTH_ORIGIN: EndBehavior.SMOOTH_FOCAL,
            EndBehavior.SMOOTH_FOCAL: EndBehavior.SMOOTH_ORIGIN,
        }[self]


class TranslatorType(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"

    @property
    def pair(self) -> tuple:
        return _PAIRS[self]


_PAIRS = {
    TranslatorType.I: (EndBehavior.VT_MINUS, EndBehavior.VT_PLUS),
    TranslatorType.II: (EndBehavior.VT_PLUS, EndBehavior.VT_PLUS),
    TranslatorType.III: (EndBehavior.VT_MINUS, EndBehavior.VT_MINUS),
    TranslatorType.IV: (EndBehavior.SMOOTH_ORIGIN, EndBehavior.VT_PLUS),
    TranslatorType.V: (EndBehavior.VT_MINUS, EndBehavior.SMOOTH_FOCAL),
}
TYPE_MAP = {pair: label for label, pair in _PAIRS.items()}


def type_mapping() -> dict:
    """The (left, right) -> type table as plain strings, for reports."""
    return {label.value: [b.value for b in pair] for label, pair in _PAIRS.items()}


@dataclass(frozen=True)
class PhasePoint:
    x: float
    psi: float

    def __post_init__(self):
        if not self.x > 0:
            raise DomainError("phase points need x > 0")


def default_config(**changes) -> IntegratorConfig:
    """Integrator settings used for profile solves (slope blow-up at |V'| > 1e4)."""
    cfg = IntegratorConfig(rtol=1e-9, atol=1e-12, h_init=1e-3, h_min=1e-14, y_max=1e4)
    return cfg.replace(**changes) if changes else cfg


# ---------------------------------------------------------------------------
# right-hand sides


def v_rhs(space: RankOneSpace, s: float, v_prime: float) -> float:
    """V'' from the translator equation at (s, V')."""
    space.check_s(s)
    return (1 + v_prime * v_prime) * (1 - space.h(s) * v_prime)


def _profile_rhs(space: RankOneSpace):
    h = space.h

    def rhs(s, y):
        p = float(y[1])
        return np.array([p, (1.0 + p * p) * (1.0 - h(s) * p)])

    return rhs


def psi_rhs(n: int, x: float, psi: float) -> float:
    """psi'(x) for the CP^n slope in the x = tan(s / (2 sqrt(n+1))) variable."""
    if not x > 0:
        raise DomainError("psi equation needs x > 0")
    c = 2 * math.sqrt(n + 1)
    return c / (1 + x * x) * (1 + psi * psi) * (1 - (2 * n - 1 - x * x) / (c * x) * psi)


def eta(n: int, x: float) -> float:
    """Nullcline of the psi equation."""
    x_star = math.sqrt(2 * n - 1)
    if x < 0:
        raise DomainError("eta is defined for x >= 0")
    if x == x_star:
        raise DomainError("eta has a pole at x = sqrt(2n - 1)")
    return 2 * math.sqrt(n + 1) * x / (2 * n - 1 - x * x)


def region_sign(n: int, x: float, psi: float, tie_guard: float = TIE_GUARD) -> int:
    """Sign of psi' predicted from the position of (x, psi) relative to eta.

    Left of sqrt(2n-1) the field points down above the nullcline and up below
    it; right of sqrt(2n-1) the two regions swap; on the vertical line itself
    psi' is positive.
    """
    if not x > 0:
        raise DomainError("region_sign needs x > 0")
    x_star = math.sqrt(2 * n - 1)
    if x == x_star:
        return 1
    e = eta(n, x)
    if abs(psi - e) <= tie_guard:
        raise DomainError(f"(x, psi) = ({x}, {psi}) within tie guard of the nullcline")
    above = psi > e
    if x < x_star:
        return -1 if above else 1
    return 1 if above else -1


def h1(n: int, x: float, x0: float, psi0: float) -> float:
    """Comparison function for the left blow-up argument; h1(x0) = 0."""
    c = 2 * math.sqrt(n + 1)
    m = 2 * n - 1

    def part(z):
        return (
            -c * math.atan(z)
            + m * psi0 * math.log(z / math.sqrt(1 + z * z))
            - psi0 / 2 * math.log(1 + z * z)
        )

    return part(x) - part(x0)


def h1_bound(n: int, x: float, x0: float, psi0: float) -> float:
    """Lower bound ``tan(arctan(psi0) - h1(x))`` for psi on (0, x0).

    Returns ``math.inf`` once the argument leaves the principal branch, which
    means blow-up has already been forced to the right of ``x``.
    """
    x_star = math.sqrt(2 * n - 1)
    if not (0 < x <= x0 < x_star):
        raise DomainError("h1_bound needs 0 < x <= x0 < sqrt(2n-1)")
    if not psi0 > eta(n, x0):
        raise DomainError("h1_bound needs psi0 above the nullcline at x0")
    arg = math.atan(psi0) - h1(n, x, x0, psi0)
    if arg >= math.pi / 2:
        return math.inf
    return math.tan(arg)


# ---------------------------------------------------------------------------
# maximal solutions


@dataclass
class ProfileTrace(SolutionTrace):
    """A maximal (or shooting) solution with columns ``(V, V')``."""

    space: Optional[RankOneSpace] = None
    left_behavior: Optional[EndBehavior] = None
    right_behavior: Optional[EndBehavior] = None
    end_values: dict = field(default_factory=dict)

    @property
    def s(self) -> np.ndarray:
        return self.t

    @property
    def V(self) -> np.ndarray:
        return self.y[:, 0]

    @property
    def dV(self) -> np.ndarray:
        return self.y[:, 1]

    def report(self) -> dict:
        out = {
            "space": self.space.as_dict() if self.space else None,
            "ic": {"s0": float(self.ic[0]), "V0": float(self.ic[1][0]), "dV0": float(self.ic[1][1])},
            "left_event": self.left_event.as_dict() if self.left_event else None,
            "right_event": self.right_event.as_dict() if self.right_event else None,
            "left_behavior": self.left_behavior.value if self.left_behavior else None,
            "right_behavior": self.right_behavior.value if self.right_behavior else None,
            "alpha_numeric": self.space.alpha if self.space else None,
            "end_values": dict(self.end_values),
        }
        try:
            out["type"] = classify(self).value
        except Unclassified:
            out["type"] = "Unclassified"
        return out


def _behavior(space: RankOneSpace, event: EndpointEvent, side: str) -> tuple:
    """Map an endpoint event to an end behaviour; returns (behavior, resolved)."""
    if event.tag.is_blowup:
        b = EndBehavior.VT_PLUS if event.tag is EventTag.BLOWUP_PLUS else EndBehavior.VT_MINUS
        return b, True
    if event.tag is not EventTag.BOUNDARY:
        raise NumericalFailure(f"{side} end of the profile ended with {event.tag.value}")
    alpha = space.alpha
    if side == "left":
        end, dist = "origin", event.location
    else:
        end, dist = "focal", alpha - event.location
    law = smooth_slope(space, end, dist)
    slope = event.value
    if abs(slope) < SMOOTH_THRESHOLD and abs(slope - law) <= SMOOTH_LAW_TOL * abs(law):
        return (EndBehavior.SMOOTH_ORIGIN if end == "origin" else EndBehavior.SMOOTH_FOCAL), True
    # Off the regular solution, the deviation grows like dist^(-residue) toward
    # the end, so its sign decides which vertical tangent lies inside the guard.
    return (EndBehavior.VT_PLUS if slope > law else EndBehavior.VT_MINUS), False


def _end_value(trace: SolutionTrace, event: EndpointEvent, side: str) -> float:
    i = 0 if side == "left" else -1
    V_last = float(trace.y[i, 0])
    if not event.tag.is_blowup or event.order is None:
        return V_last
    k = event.order
    if k >= 1:
        return math.copysign(math.inf, event.value) if side == "right" else -math.copysign(math.inf, event.value)
    d = abs(event.location - trace.t[i])
    tail = abs(trace.y[i, 1]) * d / (1 - k)
    # V increases toward a +inf slope on the right, decreases toward it on the left.
    sgn = math.copysign(1.0, trace.y[i, 1])
    return V_last + (sgn * tail if side == "right" else -sgn * tail)


def _finish(space, tr: SolutionTrace, left=None, right=None) -> ProfileTrace:
    out = ProfileTrace(**{k: getattr(tr, k) for k in SolutionTrace.__dataclass_fields__})
    out.space = space
    resolved = {}
    if left is None and tr.left_event is not None:
        left, resolved["left"] = _behavior(space, tr.left_event, "left")
        out.end_values["V_left"] = _end_value(tr, tr.left_event, "left")
    if right is None and tr.right_event is not None:
        right, resolved["right"] = _behavior(space, tr.right_event, "right")
        out.end_values["V_right"] = _end_value(tr, tr.right_event, "right")
    out.left_behavior, out.right_behavior = left, right
    out.meta["resolved"] = resolved
    return out


def solve_maximal(
    space: RankOneSpace,
    s0: float,
    V0: float,
    dV0: float,
    config: Optional[IntegratorConfig] = None,
) -> ProfileTrace:
    """Integrate the profile equation both ways from ``(s0, V0, V'(s0) = dV0)``.

    Each side stops at a vertical tangent (|V'| beyond ``config.y_max`` with a
    pole fit close ahead) or at the boundary guard of ``(0, alpha)``.  Only V'
    drives step control, so shifting V0 leaves the V' samples unchanged.
    """
    config = config or default_config()
    alpha = space.alpha
    if not (0 < s0 < alpha):
        raise DomainError(f"s0={s0} outside (0, {alpha})")
    if not (math.isfinite(V0) and math.isfinite(dV0)):
        raise DomainError("initial values must be finite")
    space.check_s(s0)
    rhs = _profile_rhs(space)
    ic = (s0, [V0, dV0])
    kw = dict(error_components=[1], blowup_components=[1])
    back = integrate(rhs, ic, "backward", (0.0, alpha), config, **kw)
    fwd = integrate(rhs, ic, "forward", (0.0, alpha), config, **kw)
    return _finish(space, join(back, fwd))


def side_event(
    space: RankOneSpace,
    s0: float,
    dV0: float,
    side: str,
    config: Optional[IntegratorConfig] = None,
) -> EndpointEvent:
    """Endpoint event on one side of the solution through ``(s0, dV0)``."""
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    config = config or default_config()
    alpha = space.alpha
    if not (0 < s0 < alpha):
        raise DomainError(f"s0={s0} outside (0, {alpha})")
    space.check_s(s0)
    direction = "backward" if side == "left" else "forward"
    tr = integrate(
        _profile_rhs(space), (s0, [0.0, dV0]), direction, (0.0, alpha), config,
        error_components=[1], blowup_components=[1], store=False,
    )
    return tr.left_event if side == "left" else tr.right_event


def shoot_regular(
    space: RankOneSpace,
    end: str = "origin",
    config: Optional[IntegratorConfig] = None,
    eps: Optional[float] = None,
    V0: float = 0.0,
    law_tol: float = 1e-3,
) -> ProfileTrace:
    """The solution leaving ``end`` with zero slope.

    Starts ``eps`` inside the chosen end with slope ``+eps/(1 + R0)`` (origin) or
    ``-eps/(1 + R_alpha)`` (focal end) and integrates away from it.  ``V0`` is
    the value extrapolated to the end itself.
    """
    config = config or default_config()
    alpha = space.alpha
    eps = 1e-4 * alpha if eps is None else float(eps)
    if not (0 < eps < alpha / 2):
        raise DomainError("eps must lie in (0, alpha/2)")
    if end == "origin":
        s0 = eps
        direction = "forward"
    elif end == "focal":
        s0 = alpha - eps
        direction = "backward"
    else:
        raise DomainError(f"end must be 'origin' or 'focal', got {end!r}")
    p0 = smooth_slope(space, end, eps)
    a = abs(p0) / eps
    curv = (1 + p0 * p0) * (1 - space.h(s0) * p0)
    if abs(curv / a - 1) > law_tol:
        raise DomainError(
            f"eps={eps:g} too large: V''={curv:.6g} vs asymptotic {a:.6g} at the start"
        )
    Vs = V0 + 0.5 * a * eps * eps
    rhs = _profile_rhs(space)
    tr = integrate(
        rhs, (s0, [Vs, p0]), direction, (0.0, alpha), config,
        error_components=[1], blowup_components=[1],
    )
    near = EndpointEvent(EventTag.BOUNDARY, s0, p0)
    if end == "origin":
        tr.left_event = near
        out = _finish(space, tr, left=EndBehavior.SMOOTH_ORIGIN)
    else:
        tr.right_event = near
        out = _finish(space, tr, right=EndBehavior.SMOOTH_FOCAL)
    out.meta["shoot"] = {"end": end, "eps": eps, "initial_slope": p0}
    return out


def classify(trace: ProfileTrace) -> TranslatorType:
    pair = (trace.left_behavior, trace.right_behavior)
    if None in pair:
        raise Unclassified(pair)
    try:
        return TYPE_MAP[pair]
    except KeyError:
        raise Unclassified(tuple(b.value for b in pair)) from None


def classify_pair(left, right) -> TranslatorType:
    pair = (EndBehavior(left), EndBehavior(right))
    try:
        return TYPE_MAP[pair]
    except KeyError:
        raise Unclassified(tuple(b.value for b in pair)) from None


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepResult:
    space: RankOneSpace
    s_grid: np.ndarray
    slope_grid: np.ndarray
    labels: np.ndarray  # (len(s_grid), len(slope_grid)) of type strings
    left: np.ndarray
    right: np.ndarray
    left_location: np.ndarray
    right_location: np.ndarray
    shooting: dict
    representatives: dict

    @property
    def counts(self) -> dict:
        out = {t.value: 0 for t in TranslatorType}
        for lab in list(self.labels.ravel()) + [v for v in self.shooting.values()]:
            out[lab] = out.get(lab, 0) + 1
        return out

    @property
    def types_present(self) -> set:
        return {k for k, v in self.counts.items() if v > 0 and k != "Unclassified"}


def sweep_config(**changes) -> IntegratorConfig:
    """Looser settings for grid classification; only the endpoint signs matter there."""
    base = dict(rtol=1e-6, atol=1e-9, y_max=1e2)
    base.update(changes)
    return default_config(**base)


def default_grids(space: RankOneSpace, n_s: int = 41, n_slope: int = 41):
    """Interior s grid and slopes ``tan(theta)`` for evenly spaced theta in (-pi/2, pi/2)."""
    alpha = space.alpha
    s = alpha * np.arange(1, n_s + 1) / (n_s + 1)
    th = -np.pi / 2 + np.pi * np.arange(1, n_slope + 1) / (n_slope + 1)
    return s, np.tan(th)


def sweep(
    space: RankOneSpace,
    s_grid: Optional[Sequence[float]] = None,
    slope_grid: Optional[Sequence[float]] = None,
    config: Optional[IntegratorConfig] = None,
    include_shooting: bool = True,
    workers: int = 1,
) -> SweepResult:
    """Classify every initial condition of a grid (plus the two regular solutions)."""
    config = config or sweep_config()
    if s_grid is None or slope_grid is None:
        ds, dp = default_grids(space)
        s_grid = ds if s_grid is None else s_grid
        slope_grid = dp if slope_grid is None else slope_grid
    s_grid = np.asarray(s_grid, dtype=float)
    slope_grid = np.asarray(slope_grid, dtype=float)
    shape = (len(s_grid), len(slope_grid))
    tasks = [(float(s), float(p)) for s in s_grid for p in slope_grid]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_sweep_one, [(space, config, t) for t in tasks], chunksize=32))
    else:
        rows = [_sweep_one((space, config, t)) for t in tasks]

    labels = np.empty(len(rows), dtype=object)
    left = np.empty(len(rows), dtype=object)
    right = np.empty(len(rows), dtype=object)
    lloc = np.empty(len(rows))
    rloc = np.empty(len(rows))
    reps = {}
    for k, (lab, lb, rb, ll, rl) in enumerate(rows):
        labels[k], left[k], right[k], lloc[k], rloc[k] = lab, lb, rb, ll, rl
        if lab not in reps:
            reps[lab] = tasks[k]
        if lab == "Unclassified":
            raise Unclassified((lb, rb))
    shooting = {}
    if include_shooting:
        for end in ("origin", "focal"):
            tr = shoot_regular(space, end, config)
            lab = classify(tr).value
            shooting[end] = lab
            reps.setdefault(lab, ("shoot", end))
    return SweepResult(
        space, s_grid, slope_grid, labels.reshape(shape), left.reshape(shape),
        right.reshape(shape), lloc.reshape(shape), rloc.reshape(shape), shooting, reps,
    )


def _sweep_one(args):
    space, config, (s0, p0) = args
    tr = solve_maximal(space, s0, 0.0, p0, config)
    try:
        lab = classify(tr).value
    except Unclassified:
        lab = "Unclassified"
    return (
        lab,
        tr.left_behavior.value,
        tr.right_behavior.value,
        tr.left_event.location,
        tr.right_event.location,
    )


# ---------------------------------------------------------------------------
# psi representation (CP^n)


def _require_cp(space: RankOneSpace):
    if space.kind is not SpaceKind.COMPLEX_PROJECTIVE:
        raise DomainError("the psi substitution is defined for CP^n only")


def s_of_x(n: int, x):
    return 2 * math.sqrt(n + 1) * np.arctan(x)


def x_of_s(n: int, s):
    return np.tan(s / (2 * math.sqrt(n + 1)))


def solve_psi(
    n: int,
    x0: float,
    psi0: float,
    config: Optional[IntegratorConfig] = None,
    x_max: float = 1e4,
) -> SolutionTrace:
    """Maximal solution of the psi equation on (0, x_max) through (x0, psi0)."""
    config = config or default_config()

    def rhs(x, y):
        return np.array([psi_rhs(n, x, float(y[0]))])

    ic = (x0, [psi0])
    back = integrate(rhs, ic, "backward", (0.0, x_max), config)
    fwd = integrate(rhs, ic, "forward", (0.0, x_max), config)
    return join(back, fwd)


def psi_v_consistency(
    space: RankOneSpace,
    s0: float,
    dV0: float,
    config: Optional[IntegratorConfig] = None,
    slope_cap: float = 5.0,
) -> dict:
    """Compare the s-space slope with the psi solution under x = tan(s / 2sqrt(n+1)).

    ``deviation`` is the largest ``|psi(x) - V'(s(x))|`` over psi samples in the
    common range where ``|V'| <= slope_cap``.  Near a vertical tangent
    ``V' ~ (s1 - s)^(-1/2)``, so a location error ``ds1`` shows up as a slope
    error of order ``V'^3 ds1``; the cap keeps the comparison well conditioned.
    ``angle_deviation`` compares ``arctan`` of both slopes over the whole overlap.
    """
    _require_cp(space)
    config = config or default_config(rtol=1e-9, atol=1e-12)
    n = space.n
    prof = solve_maximal(space, s0, 0.0, dV0, config)
    x0 = float(x_of_s(n, s0))
    ps = solve_psi(n, x0, dV0, config)
    s_lo, s_hi = prof.span
    xs = ps.t
    s_of = s_of_x(n, xs)
    common = (s_of >= s_lo) & (s_of <= s_hi)
    psi = ps.y[common, 0]
    vp = prof(s_of[common])[:, 1] if np.any(common) else np.empty(0)
    mask = np.abs(psi) <= slope_cap
    dev = float(np.max(np.abs(psi[mask] - vp[mask]))) if np.any(mask) else 0.0
    ang = float(np.max(np.abs(np.arctan(psi) - np.arctan(vp)))) if len(psi) else 0.0
    out = {"deviation": dev, "n_compared": int(np.sum(mask)), "angle_deviation": ang,
           "slope_cap": slope_cap}
    for side, ev_s, ev_x in (
        ("left", prof.left_event, ps.left_event),
        ("right", prof.right_event, ps.right_event),
    ):
        if ev_s.tag.is_blowup and ev_x.tag.is_blowup:
            out[f"{side}_blowup_s"] = ev_s.location
            out[f"{side}_blowup_s_from_x"] = float(s_of_x(n, ev_x.location))
            out[f"{side}_blowup_gap"] = abs(ev_s.location - float(s_of_x(n, ev_x.location)))
    return out


# ---------------------------------------------------------------------------
# checks


def profile_residual(trace: ProfileTrace, rel_step: float = 1e-3) -> float:
    """Largest mismatch between a central-difference V'' and the equation.

    At each interior sample V'' is estimated from the dense slope at
    ``s +- delta`` with ``delta = rel_step * (smaller neighbouring spacing)``.
    The mismatch is measured relative to ``max(1, |V''|)``.
    """
    space = trace.space
    t = trace.t
    worst = 0.0
    for i in range(1, len(t) - 1):
        d = rel_step * min(t[i] - t[i - 1], t[i + 1] - t[i])
        lo, hi = t[i] - d, t[i] + d
        pp = trace([lo, hi])[:, 1]
        cd = (pp[1] - pp[0]) / (hi - lo)
        p = trace.y[i, 1]
        ref = (1 + p * p) * (1 - space.h(t[i]) * p)
        worst = max(worst, abs(cd - ref) / max(1.0, abs(ref)))
    return worst


def reflect(space: RankOneSpace, s0: float, V0: float, dV0: float) -> tuple:
    """Initial condition mirrored through the midpoint of (0, alpha)."""
    return space.alpha - s0, V0, -dV0


def blowup_region_ics(n: int, region: int, count: int, rng: np.random.Generator) -> list:
    """Random phase points ``(x0, psi0)`` in the hypothesis region of a blow-up fact.

    Regions: 1 -> x0 < x*, psi0 > eta;  2 -> x0 < x*, psi0 < 0;
    3 -> x0 > x*, psi0 > 0;  4 -> x0 > x*, psi0 < eta.
    """
    x_star = math.sqrt(2 * n - 1)
    out = []
    while len(out) < count:
        if region in (1, 2):
            x0 = rng.uniform(0.05 * x_star, 0.95 * x_star)
        else:
            x0 = rng.uniform(1.05 * x_star, 6.0 * x_star)
        e = eta(n, x0)
        gap = 10 ** rng.uniform(-2, 1)
        if region == 1:
            psi0 = e + gap
        elif region == 2:
            psi0 = -gap
        elif region == 3:
            psi0 = gap
        else:
            psi0 = e - gap
        out.append((x0, psi0))
    return out
