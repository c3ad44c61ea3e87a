"""Adaptive Dormand-Prince 5(4) integration with dense output and endpoint events.

The integrator is written for small first-order systems whose solutions may
leave the domain in one of a few ways: they run into a declared domain end,
they blow up at an interior point, or the step controller gives up.  Each
directional run ends in exactly one :class:`EndpointEvent`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "EventTag",
    "EndpointEvent",
    "IntegratorConfig",
    "SolutionTrace",
    "integrate",
    "dense_eval",
    "join",
]


# Dormand-Prince 5(4) tableau, FSAL.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)
# Continuous extension (Shampine); rows are stages, columns powers theta..theta^4.
_P = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

_SAFETY = 0.9
_ALPHA = 0.17  # PI controller exponents (Gustafsson / Hairer)
_BETA = 0.04
_FAC_MIN = 0.2
_FAC_MAX = 5.0


class EventTag(str, enum.Enum):
    BLOWUP_PLUS = "BlowUpPlus"
    BLOWUP_MINUS = "BlowUpMinus"
    BOUNDARY = "BoundaryApproach"
    STEP_UNDERFLOW = "StepUnderflow"
    MAX_STEPS = "MaxSteps"

    @property
    def is_blowup(self) -> bool:
        return self in (EventTag.BLOWUP_PLUS, EventTag.BLOWUP_MINUS)


@dataclass(frozen=True)
class EndpointEvent:
    """How one side of a solution ended.

    ``location`` is the independent-variable estimate of the end; for blow-ups it
    comes from the pole fit and ``uncertainty`` bounds its spread.  ``order`` is the
    fitted exponent k of ``|y| ~ C |t1 - t|^(-k)`` (None when not a blow-up).
    """

    tag: EventTag
    location: float
    value: float
    uncertainty: float = 0.0
    order: Optional[float] = None
    component: int = 0

    def as_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "location": self.location,
            "value": self.value,
            "uncertainty": self.uncertainty,
            "order": self.order,
        }


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-9
    atol: float = 1e-12
    h_init: float = 1e-3
    h_min: float = 1e-14
    y_max: float = 1e8
    boundary_guard: Optional[float] = None  # None -> 1e-6 * domain length
    max_steps: int = 200_000
    adaptive: bool = True
    keep_stages: bool = True

    def __post_init__(self):
        if not (self.rtol > 0 and self.atol > 0):
            raise DomainError("rtol and atol must be positive")
        if not (0 < self.h_min < self.h_init):
            raise DomainError("need 0 < h_min < h_init")
        if not self.y_max > 0:
            raise DomainError("y_max must be positive")
        if self.max_steps <= 0:
            raise DomainError("max_steps must be positive")
        if self.boundary_guard is not None and self.boundary_guard < 0:
            raise DomainError("boundary_guard must be non-negative")

    def replace(self, **changes) -> "IntegratorConfig":
        return replace(self, **changes)


@dataclass
class SolutionTrace:
    """Accepted steps of an integration, stored in ascending ``t``.

    ``stages`` holds the seven Runge-Kutta slopes of the step that produced each
    interval; ``from_left[i]`` tells whether that step started at ``t[i]`` (a
    forward step) or at ``t[i + 1]`` (a backward step).
    """

    t: np.ndarray
    y: np.ndarray
    f: np.ndarray
    stages: Optional[np.ndarray]
    from_left: np.ndarray
    left_event: Optional[EndpointEvent]
    right_event: Optional[EndpointEvent]
    ic: tuple
    n_rejected: int = 0
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def span(self) -> tuple[float, float]:
        return float(self.t[0]), float(self.t[-1])

    def __call__(self, t):
        return dense_eval(self, t)

    def derivative(self, t):
        return _dense_derivative(self, t)


def _as_direction(direction) -> int:
    if direction in (1, "forward", "+"):
        return 1
    if direction in (-1, "backward", "-"):
        return -1
    raise DomainError(f"unknown direction {direction!r}")


def _pole_fit(ts, ys, fs, comp, sign):
    """Fit g = y/y' linearly in t; g vanishes at a pole of y.

    For ``y ~ C |t1 - t|^(-k)`` the ratio g is exactly linear with slope -1/k, so
    the root of the fitted line is the pole location.  Returns
    ``(location, uncertainty, order)`` or None when no pole lies ahead.
    """
    if len(ts) < 2:
        return None
    g = []
    for j in (-3, -2, -1):
        if len(ts) + j < 0:
            g.append(None)
            continue
        fj = fs[j][comp]
        g.append(ys[j][comp] / fj if fj != 0 and math.isfinite(fj) else None)

    def root(i0, i1):
        if g[i0] is None or g[i1] is None:
            return None
        t0, t1 = ts[i0 - 3], ts[i1 - 3]
        if t1 == t0:
            return None
        slope = (g[i1] - g[i0]) / (t1 - t0)
        if not slope < 0:
            return None
        loc = t1 - g[i1] / slope
        if (loc - t1) * sign < 0:
            return None
        return loc, -1.0 / slope

    last = root(1, 2)
    if last is None:
        return None
    loc, order = last
    prev = root(0, 1)
    unc = abs(loc - prev[0]) if prev is not None else abs(ts[-1] - ts[-2])
    return loc, unc, order


def integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    ic: tuple,
    direction="forward",
    domain: Sequence[float] = (-math.inf, math.inf),
    config: IntegratorConfig = IntegratorConfig(),
    *,
    error_components: Optional[Sequence[int]] = None,
    blowup_components: Optional[Sequence[int]] = None,
    stop: Optional[Callable[[float, np.ndarray], bool]] = None,
    store: bool = True,
) -> SolutionTrace:
    """Integrate ``y' = rhs(t, y)`` from ``ic = (t0, y0)`` until an endpoint event.

    Parameters
    ----------
    rhs : callable
        Right-hand side, ``rhs(t, y) -> array`` of the same shape as ``y``.
    ic : (t0, y0)
        Initial condition; ``t0`` must lie strictly inside ``domain``.
    direction : {"forward", "backward"}
    domain : (a, b)
        Integration stops ``boundary_guard`` short of the end it is heading to.
    config : IntegratorConfig
    error_components : sequence of int, optional
        State components that take part in step-size control (all by default).
        Components left out are carried along as quadratures.
    blowup_components : sequence of int, optional
        Components monitored for blow-up (all by default).
    stop : callable, optional
        ``stop(t, y) -> bool`` checked after each accepted step; a True result
        ends the run with a ``BoundaryApproach`` event (used for state-space
        boundaries such as chamber walls).
    store : bool
        Keep every accepted step.  When False only the last few are kept, which
        is enough for the final state and the pole fit.
    """
    sign = _as_direction(direction)
    t0, y0 = ic
    t0 = float(t0)
    a, b = float(domain[0]), float(domain[1])
    if not (a < t0 < b):
        raise DomainError(f"initial point {t0} not interior to domain ({a}, {b})")
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    f = np.asarray(rhs(t0, y), dtype=float)
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(f))):
        raise DomainError("right-hand side not finite at the initial condition")
    dim = y.size
    ecomp = np.arange(dim) if error_components is None else np.asarray(error_components)
    bcomp = list(range(dim)) if blowup_components is None else list(blowup_components)

    if config.boundary_guard is not None:
        guard = config.boundary_guard
    elif math.isfinite(b - a):
        guard = 1e-6 * (b - a)
    else:
        guard = 0.0
    t_stop = (b - guard) if sign > 0 else (a + guard)
    if (t_stop - t0) * sign <= 0:
        raise DomainError("initial point lies inside the boundary guard")

    rtol, atol, h_min = config.rtol, config.atol, config.h_min
    h = min(config.h_init, abs(t_stop - t0))
    ts, ys, fs, Ks = [t0], [y], [f], []
    t = t0
    err_prev = 1e-4
    consecutive_rejects = 0
    n_rejected = 0
    n_steps = 0
    event = None
    K = np.empty((7, dim))
    adaptive = config.adaptive
    all_err = len(ecomp) == dim and np.array_equal(ecomp, np.arange(dim))

    with np.errstate(all="ignore"):
        while event is None:
            if n_steps >= config.max_steps:
                event = EndpointEvent(EventTag.MAX_STEPS, float(t), float(y[bcomp[0]]))
                break
            remaining = (t_stop - t) * sign
            if remaining <= 4 * np.spacing(max(abs(t), 1.0)):
                comp = _largest(y, bcomp)
                event = EndpointEvent(EventTag.BOUNDARY, float(t), float(y[comp]), component=comp)
                break
            last = h >= remaining
            if last:
                h = remaining
            # Step to a representable abscissa so stored samples match the stages.
            t_new = t_stop if last else t + sign * h
            hs = t_new - t

            K[0] = f
            for i in range(1, 7):
                K[i] = rhs(t + _C[i] * hs, y + hs * (_A[i] @ K[:i]))
            y_new = y + hs * (_B @ K)
            f_new = K[6]
            if adaptive:
                e = hs * (_E @ K)
                if all_err:
                    sc = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
                    err = float((np.abs(e) / sc).max())
                else:
                    sc = atol + rtol * np.maximum(np.abs(y[ecomp]), np.abs(y_new[ecomp]))
                    err = float((np.abs(e[ecomp]) / sc).max())
                # NaN/inf anywhere in the stages propagates here and fails err <= 1.
                err += 0.0 * float(y_new.sum() + f_new.sum())
            else:
                err = 0.0 if np.isfinite(y_new).all() and np.isfinite(f_new).all() else math.inf

            if err <= 1.0:
                t = t_new
                y, f = y_new, f_new.copy()
                ts.append(t)
                ys.append(y)
                fs.append(f)
                if config.keep_stages:
                    Ks.append(K.copy())
                n_steps += 1
                if not store and len(ts) > 4:
                    del ts[0], ys[0], fs[0]
                    if Ks:
                        del Ks[0]
                if adaptive:
                    fac = _SAFETY * max(err, 1e-10) ** -_ALPHA * err_prev**_BETA
                    if consecutive_rejects:
                        fac = min(fac, 1.0)
                    h_next = h * min(_FAC_MAX, max(_FAC_MIN, fac))
                    err_prev = max(err, 1e-4)
                else:
                    h_next = config.h_init
                comp = _largest(y, bcomp)
                if abs(y[comp]) > config.y_max:
                    fit = _pole_fit(ts, ys, fs, comp, sign)
                    near = fit is not None and abs(fit[0] - t) < 1e3 * max(h, h_next)
                    if near or consecutive_rejects >= 3 or h < 10 * h_min:
                        event = _blowup_event(t, y, comp, fit)
                if event is None and stop is not None and stop(t, y):
                    comp = _largest(y, bcomp)
                    event = EndpointEvent(EventTag.BOUNDARY, float(t), float(y[comp]), component=comp)
                consecutive_rejects = 0
                h = h_next
            else:
                n_rejected += 1
                consecutive_rejects += 1
                if math.isfinite(err):
                    fac = max(_FAC_MIN, _SAFETY * err ** -0.2)
                else:
                    fac = 0.1
                h = h * fac
                if h < h_min:
                    comp = _largest(y, bcomp)
                    fit = _pole_fit(ts, ys, fs, comp, sign)
                    last_h = abs(ts[-1] - ts[-2]) if len(ts) > 1 else h_min
                    if fit is not None and abs(fit[0] - t) < 100 * max(h_min, last_h):
                        event = _blowup_event(t, y, comp, fit)
                    else:
                        event = EndpointEvent(
                            EventTag.STEP_UNDERFLOW, float(t), float(y[comp]), component=comp
                        )

    t_arr = np.array(ts)
    y_arr = np.array(ys)
    f_arr = np.array(fs)
    stages = np.array(Ks).reshape(len(Ks), 7, dim) if config.keep_stages else None
    from_left = np.full(len(ts) - 1, sign > 0)
    if sign < 0:
        t_arr, y_arr, f_arr = t_arr[::-1], y_arr[::-1], f_arr[::-1]
        if stages is not None:
            stages = stages[::-1]
        left, right = event, None
    else:
        left, right = None, event
    return SolutionTrace(
        t=t_arr,
        y=y_arr,
        f=f_arr,
        stages=stages,
        from_left=from_left,
        left_event=left,
        right_event=right,
        ic=(t0, np.atleast_1d(np.asarray(y0, dtype=float)).copy()),
        n_rejected=n_rejected,
        meta={"n_steps": n_steps},
    )


def _largest(y, comps) -> int:
    return max(comps, key=lambda c: abs(y[c]))


def _blowup_event(t, y, comp, fit) -> EndpointEvent:
    tag = EventTag.BLOWUP_PLUS if y[comp] > 0 else EventTag.BLOWUP_MINUS
    if fit is None:
        return EndpointEvent(tag, t, float(y[comp]), uncertainty=math.inf, component=comp)
    loc, unc, order = fit
    return EndpointEvent(
        tag, float(loc), float(y[comp]), uncertainty=float(unc), order=float(order), component=comp
    )


def _locate(trace: SolutionTrace, t: np.ndarray) -> np.ndarray:
    lo, hi = trace.t[0], trace.t[-1]
    tol = 1e-12 * max(1.0, abs(lo), abs(hi))
    if np.any(t < lo - tol) or np.any(t > hi + tol):
        raise DomainError(f"t outside trace range [{lo}, {hi}]")
    idx = np.searchsorted(trace.t, t, side="right") - 1
    return np.clip(idx, 0, len(trace.t) - 2)


def dense_eval(trace: SolutionTrace, t):
    """Evaluate the continuous extension of ``trace`` at ``t``.

    Uses the native fourth-order Dormand-Prince interpolant when stages were kept,
    cubic Hermite otherwise.  At a stored abscissa the stored sample is returned.
    """
    scalar = np.ndim(t) == 0
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if len(trace.t) == 1:
        if np.any(tt != trace.t[0]):
            raise DomainError("t outside trace range")
        out = np.repeat(trace.y[:1], len(tt), axis=0)
        return out[0] if scalar else out
    idx = _locate(trace, tt)
    out = np.empty((len(tt), trace.y.shape[1]))
    for j, (tj, i) in enumerate(zip(tt, idx)):
        if tj == trace.t[i]:
            out[j] = trace.y[i]
        elif tj == trace.t[i + 1]:
            out[j] = trace.y[i + 1]
        elif trace.stages is not None:
            out[j] = _native(trace, i, tj)
        else:
            out[j] = _hermite(trace, i, tj)
    return out[0] if scalar else out


def _native(trace, i, t, deriv=False):
    if trace.from_left[i]:
        t0, y0, hs = trace.t[i], trace.y[i], trace.t[i + 1] - trace.t[i]
    else:
        t0, y0, hs = trace.t[i + 1], trace.y[i + 1], trace.t[i] - trace.t[i + 1]
    th = (t - t0) / hs
    Q = trace.stages[i].T @ _P
    if deriv:
        return Q @ np.array([1.0, 2 * th, 3 * th**2, 4 * th**3])
    return y0 + hs * (Q @ np.array([th, th**2, th**3, th**4]))


def _hermite(trace, i, t, deriv=False):
    t0, t1 = trace.t[i], trace.t[i + 1]
    hs = t1 - t0
    s = (t - t0) / hs
    y0, y1, f0, f1 = trace.y[i], trace.y[i + 1], trace.f[i], trace.f[i + 1]
    if deriv:
        return (
            (6 * s**2 - 6 * s) / hs * y0
            + (3 * s**2 - 4 * s + 1) * f0
            + (-6 * s**2 + 6 * s) / hs * y1
            + (3 * s**2 - 2 * s) * f1
        )
    h00 = 2 * s**3 - 3 * s**2 + 1
    h10 = s**3 - 2 * s**2 + s
    h01 = -2 * s**3 + 3 * s**2
    h11 = s**3 - s**2
    return h00 * y0 + h10 * hs * f0 + h01 * y1 + h11 * hs * f1


def _dense_derivative(trace, t):
    scalar = np.ndim(t) == 0
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    idx = _locate(trace, tt)
    out = np.empty((len(tt), trace.y.shape[1]))
    for j, (tj, i) in enumerate(zip(tt, idx)):
        if trace.stages is not None:
            out[j] = _native(trace, i, tj, deriv=True)
        else:
            out[j] = _hermite(trace, i, tj, deriv=True)
    return out[0] if scalar else out


def join(backward: SolutionTrace, forward: SolutionTrace) -> SolutionTrace:
    """Glue a backward run and a forward run that share their initial point."""
    if backward.t[-1] != forward.t[0]:
        raise DomainError("traces do not share an initial point")
    if backward.stages is None or forward.stages is None:
        stages = None
    else:
        stages = np.concatenate([backward.stages, forward.stages])
    return SolutionTrace(
        t=np.concatenate([backward.t, forward.t[1:]]),
        y=np.concatenate([backward.y, forward.y[1:]]),
        f=np.concatenate([backward.f, forward.f[1:]]),
        stages=stages,
        from_left=np.concatenate([backward.from_left, forward.from_left]),
        left_event=backward.left_event,
        right_event=forward.right_event,
        ic=forward.ic,
        n_rejected=backward.n_rejected + forward.n_rejected,
    )
