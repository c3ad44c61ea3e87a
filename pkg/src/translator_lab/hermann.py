"""Cohomogeneity-two translators on a Weyl alcove.

The orbit mean-curvature field on the alcove is realised as the root sum

    X(x) = sum_r m_r lambda_r cot(lambda_r <d_r, x>) d_r,

a gradient field whose Jacobian and divergence are available in closed form.
A graph ``V`` that is constant on the level sets of the potential of ``X`` has
``grad V = F X``; along an integral curve ``c`` of ``X`` the restriction
``F_hat = F o c`` obeys a scalar ODE and ``V o c`` follows by quadrature.
A user-supplied field sampled on a grid (bilinear interpolation) can replace
the root sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .errors import ConvergenceError, DomainError
from .ode import EndpointEvent, EventTag, IntegratorConfig, SolutionTrace, integrate

__all__ = [
    "VARIANTS",
    "Root",
    "TabulatedField",
    "Rank2Model",
    "CurveTrace",
    "LAYOUTS",
    "hermann_config",
    "x_field",
    "div_x",
    "jacobian",
    "pde_residual",
    "jet_from_f",
    "f_rhs_along_curve",
    "integral_curve",
    "solve_f_and_v",
    "equilibrium",
    "stationary_f",
    "curve_residuals",
    "select_variant",
    "fan",
    "convexity_check",
    "offset_point",
]

VARIANTS = ("cubic", "quadratic")
_EXPONENT = {"cubic": 3, "quadratic": 2}


@dataclass(frozen=True)
class Root:
    direction: tuple
    scale: float
    multiplicity: int

    @property
    def vector(self) -> np.ndarray:
        return self.scale * np.asarray(self.direction, dtype=float)


def _unit(deg: float) -> tuple:
    r = math.radians(deg)
    return (math.cos(r), math.sin(r))


# Positive roots as (angle in degrees, default scale, class index).
LAYOUTS = {
    "A1xA1": [(0.0, 1.0, 0), (90.0, 1.0, 1)],
    "A2": [(0.0, 1.0, 0), (60.0, 1.0, 0), (120.0, 1.0, 0)],
    "B2": [(0.0, 1.0, 0), (90.0, 1.0, 0), (45.0, math.sqrt(2), 1), (135.0, math.sqrt(2), 1)],
    "G2": [
        (0.0, 1.0, 0), (60.0, 1.0, 0), (120.0, 1.0, 0),
        (30.0, math.sqrt(3), 1), (90.0, math.sqrt(3), 1), (150.0, math.sqrt(3), 1),
    ],
}
_ALIASES = {k.lower(): k for k in LAYOUTS}
_ALIASES.update({"a1a1": "A1xA1", "a1*a1": "A1xA1", "a1×a1": "A1xA1"})


def _per_root(values, classes, name, default):
    """Expand a scalar, per-class or per-root specification to one value per root."""
    if values is None:
        return list(default)
    if np.ndim(values) == 0:
        return [values] * len(classes)
    values = list(values)
    if len(values) == len(classes):
        return values
    n_cls = max(classes) + 1
    if len(values) == n_cls:
        return [values[c] for c in classes]
    raise DomainError(f"{name}: expected 1, {n_cls} or {len(classes)} values, got {len(values)}")


@dataclass(frozen=True)
class TabulatedField:
    """A planar field sampled on a rectangular grid, interpolated bilinearly."""

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray  # shape (len(xs), len(ys), 2)
    fd_step: float = 1e-6

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (len(xs), len(ys), 2):
            raise DomainError("values must have shape (len(xs), len(ys), 2)")
        if not (np.all(np.diff(xs) > 0) and np.all(np.diff(ys) > 0)):
            raise DomainError("grid axes must be strictly increasing")
        if not np.all(np.isfinite(vals)):
            raise DomainError("tabulated field must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "values", vals)
        interp = RegularGridInterpolator((xs, ys), vals, method="linear")
        object.__setattr__(self, "_interp", interp)

    @classmethod
    def from_function(cls, fn: Callable, xs, ys, **kw) -> "TabulatedField":
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        vals = np.array([[fn(np.array([a, b])) for b in ys] for a in xs])
        return cls(xs, ys, vals, **kw)

    def margin(self, x) -> float:
        return min(x[0] - self.xs[0], self.xs[-1] - x[0], x[1] - self.ys[0], self.ys[-1] - x[1])

    def __call__(self, x) -> np.ndarray:
        return self._interp(np.asarray(x, dtype=float)[None, :])[0]


@dataclass(frozen=True)
class Rank2Model:
    """Root data of a rank-two alcove and the field realisation.

    The chamber is ``{x : 0 < <lambda_r d_r, x> < pi for every root r}``, the
    cell cut out by the first poles of the cot terms.
    """

    roots: tuple
    layout: str = "custom"
    field_variant: str = "rootsum"
    table: Optional[TabulatedField] = None
    pole_guard: float = 1e-8

    def __post_init__(self):
        if self.field_variant not in ("rootsum", "table"):
            raise DomainError(f"unknown field variant {self.field_variant!r}")
        if self.field_variant == "table" and self.table is None:
            raise DomainError("table variant needs a TabulatedField")
        roots = tuple(self.roots)
        if not roots:
            raise DomainError("need at least one root")
        for r in roots:
            if not (r.scale > 0 and int(r.multiplicity) == r.multiplicity and r.multiplicity > 0):
                raise DomainError("roots need positive scale and positive integer multiplicity")
            if abs(math.hypot(*r.direction) - 1) > 1e-12:
                raise DomainError("root directions must be unit vectors")
        D = np.array([r.direction for r in roots])
        if np.linalg.matrix_rank(D) < 2:
            raise DomainError("root directions must span the plane")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "_R", np.array([r.vector for r in roots]))
        object.__setattr__(self, "_lam", np.array([r.scale for r in roots]))
        object.__setattr__(self, "_m", np.array([float(r.multiplicity) for r in roots]))
        object.__setattr__(self, "_D", D)
        if self.field_variant == "rootsum" and self.chamber_vertices() is None:
            raise DomainError("empty chamber")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_layout(
        cls, layout: str = "A1xA1", multiplicities=None, scales=None, pole_guard: float = 1e-8
    ) -> "Rank2Model":
        key = _ALIASES.get(str(layout).lower().replace(" ", ""))
        if key is None:
            raise DomainError(f"unknown layout {layout!r}; choose from {sorted(LAYOUTS)}")
        spec = LAYOUTS[key]
        classes = [c for _, _, c in spec]
        mult = _per_root(multiplicities, classes, "multiplicities", [1] * len(spec))
        scl = _per_root(scales, classes, "scales", [1.0] * len(spec))
        roots = tuple(
            Root(_unit(ang), float(lam) * float(k), int(m))
            for (ang, lam, _), m, k in zip(spec, mult, scl)
        )
        return cls(roots, layout=key, pole_guard=pole_guard)

    @classmethod
    def from_table(cls, table: TabulatedField, roots=None) -> "Rank2Model":
        roots = roots or (Root((1.0, 0.0), 1.0, 1), Root((0.0, 1.0), 1.0, 1))
        return cls(tuple(roots), layout="table", field_variant="table", table=table)

    def as_dict(self) -> dict:
        return {
            "layout": self.layout,
            "field_variant": self.field_variant,
            "roots": [
                {"direction": list(r.direction), "scale": r.scale, "multiplicity": r.multiplicity}
                for r in self.roots
            ],
        }

    # -- chamber ----------------------------------------------------------
    def chamber_vertices(self) -> Optional[np.ndarray]:
        """Vertices of the alcove polygon, or None if it is empty."""
        R = self._R
        lines = [(R[i], 0.0) for i in range(len(R))] + [(R[i], math.pi) for i in range(len(R))]
        pts = []
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                A = np.array([lines[i][0], lines[j][0]])
                if abs(np.linalg.det(A)) < 1e-12:
                    continue
                p = np.linalg.solve(A, [lines[i][1], lines[j][1]])
                w = R @ p
                if np.all(w >= -1e-9) and np.all(w <= math.pi + 1e-9):
                    pts.append(p)
        if len(pts) < 3:
            return None
        pts = np.unique(np.round(np.array(pts), 12), axis=0)
        c = pts.mean(axis=0)
        order = np.argsort(np.arctan2(pts[:, 1] - c[1], pts[:, 0] - c[0]))
        pts = pts[order]
        area = 0.5 * abs(np.dot(pts[:, 0], np.roll(pts[:, 1], 1)) - np.dot(pts[:, 1], np.roll(pts[:, 0], 1)))
        return pts if area > 1e-12 else None

    def center(self) -> np.ndarray:
        if self.field_variant == "table":
            t = self.table
            return np.array([(t.xs[0] + t.xs[-1]) / 2, (t.ys[0] + t.ys[-1]) / 2])
        return self.chamber_vertices().mean(axis=0)

    def margin(self, x) -> float:
        """Distance-like slack to the nearest chamber wall (negative outside)."""
        x = np.asarray(x, dtype=float)
        if self.field_variant == "table":
            return float(self.table.margin(x))
        w = self._R @ x
        return float(np.min(np.minimum(w, math.pi - w) / self._lam))

    def check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (2,) or not np.all(np.isfinite(x)):
            raise DomainError("chamber point must be a finite 2-vector")
        if self.field_variant == "rootsum":
            w = self._R @ x
            if np.any(w <= self.pole_guard) or np.any(w >= math.pi - self.pole_guard):
                raise DomainError(f"point {x.tolist()} violates the pole guard")
        elif self.margin(x) < 0:
            raise DomainError(f"point {x.tolist()} outside the tabulated grid")
        return x

    def inside(self, x) -> bool:
        try:
            self.check(x)
        except DomainError:
            return False
        return True

    # -- field (unguarded, for right-hand sides) ---------------------------
    def field(self, x) -> np.ndarray:
        if self.field_variant == "table":
            return self.table(x)
        w = self._R @ x
        return (self._m * self._lam / np.tan(w)) @ self._D

    def jac(self, x) -> np.ndarray:
        if self.field_variant == "table":
            return _fd_jacobian(self.table, x, self.table.fd_step)
        w = self._R @ x
        coef = -self._m * self._lam**2 / np.sin(w) ** 2
        return (self._D.T * coef) @ self._D

    def div(self, x) -> float:
        if self.field_variant == "table":
            return float(np.trace(self.jac(x)))
        w = self._R @ x
        return float(-np.sum(self._m * self._lam**2 / np.sin(w) ** 2))

    def potential(self, x) -> float:
        """``sum m log sin(lambda <d, x>)``, whose gradient is the root-sum field."""
        if self.field_variant != "rootsum":
            raise DomainError("potential is only available for the root-sum field")
        w = self._R @ self.check(x)
        return float(np.sum(self._m * np.log(np.sin(w))))


def _fd_jacobian(fn, x, step) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    J = np.empty((2, 2))
    for k in range(2):
        e = np.zeros(2)
        e[k] = step
        J[:, k] = (fn(x + e) - fn(x - e)) / (2 * step)
    return J


def hermann_config(**changes) -> IntegratorConfig:
    cfg = IntegratorConfig(
        rtol=1e-10, atol=1e-12, h_init=1e-4, h_min=1e-14, y_max=1e8, boundary_guard=0.0
    )
    return cfg.replace(**changes) if changes else cfg


# ---------------------------------------------------------------------------
# pointwise quantities


def x_field(model: Rank2Model, x) -> np.ndarray:
    return model.field(model.check(x))


def div_x(model: Rank2Model, x) -> float:
    return model.div(model.check(x))


def jacobian(model: Rank2Model, x) -> np.ndarray:
    """``dX_i / dx_j``; symmetric because the field is a gradient."""
    return model.jac(model.check(x))


def pde_residual(model: Rank2Model, jet, x) -> float:
    """Translator PDE for ``V`` on the chamber, evaluated from a 2-jet.

    ``jet = (V, grad V, Hess V)``; ``V`` itself does not enter.
    """
    _, g, H = jet
    g = np.asarray(g, dtype=float)
    H = np.asarray(H, dtype=float)
    X = x_field(model, x)
    quad = float(g @ H @ g)
    return quad - (1 + float(g @ g)) * (float(X @ g) + float(np.trace(H)) - 1)


def jet_from_f(model: Rank2Model, x, F: float, XF: float):
    """2-jet of ``V`` with ``grad V = F X`` and directional derivative ``X(F) = XF``.

    ``grad F`` is parallel to ``X`` (``F`` is constant on level sets of the
    potential), so ``Hess V = (X(F) / |X|^2) X X^T + F J``.
    """
    x = model.check(x)
    X = model.field(x)
    J = model.jac(x)
    nx2 = float(X @ X)
    H = F * J
    if nx2 > 0:
        H = H + (XF / nx2) * np.outer(X, X)
    return (None, F * X, H)


def f_rhs_along_curve(cprime, cdd, divx: float, F: float, variant: str = "cubic") -> float:
    """``F_hat'`` along an integral curve with velocity ``cprime`` and acceleration ``cdd``."""
    if variant not in _EXPONENT:
        raise DomainError(f"variant must be one of {VARIANTS}")
    cprime = np.asarray(cprime, dtype=float)
    v2 = float(cprime @ cprime)
    lead = float(np.asarray(cdd, dtype=float) @ cprime) * F ** _EXPONENT[variant]
    return lead - (1 + v2 * F * F) * ((v2 + divx) * F - 1)


# ---------------------------------------------------------------------------
# curves


@dataclass
class CurveTrace:
    """Samples ``(t, x(t), F_hat, V)`` along an integral curve (ascending ``t``)."""

    trace: SolutionTrace
    model: Rank2Model
    variant: Optional[str] = None
    t_start: float = 0.0
    t_end: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def t(self) -> np.ndarray:
        return self.trace.t

    @property
    def x(self) -> np.ndarray:
        return self.trace.y[:, :2]

    @property
    def F(self) -> Optional[np.ndarray]:
        return self.trace.y[:, 2] if self.trace.y.shape[1] > 2 else None

    @property
    def V(self) -> Optional[np.ndarray]:
        return self.trace.y[:, 3] if self.trace.y.shape[1] > 3 else None

    @property
    def events(self) -> tuple:
        return self.trace.left_event, self.trace.right_event

    @property
    def stop_reason(self) -> str:
        ev = self.trace.right_event if self.t_end >= self.t_start else self.trace.left_event
        if ev is None:
            return "none"
        if ev.tag is EventTag.BOUNDARY:
            return "t_end" if ev.location == self.t_end else "chamber_wall"
        return ev.tag.value

    def __call__(self, t):
        return self.trace(t)

    def rows(self):
        out = []
        y = self.trace.y
        for k, tk in enumerate(self.t):
            F = y[k, 2] if y.shape[1] > 2 else math.nan
            V = y[k, 3] if y.shape[1] > 3 else math.nan
            out.append((float(tk), float(y[k, 0]), float(y[k, 1]), float(F), float(V)))
        return out


def _run(model, rhs, x0, state0, t_span, config, blowup, stop_guard):
    t0, t1 = float(t_span[0]), float(t_span[1])
    if t0 == t1:
        raise DomainError("t_span must have positive length")
    forward = t1 > t0
    domain = (t0 - 1.0, t1) if forward else (t1, t0 + 1.0)

    def stop(t, y):
        return model.margin(y[:2]) < stop_guard

    tr = integrate(
        rhs, (t0, state0), "forward" if forward else "backward", domain, config,
        blowup_components=blowup, stop=stop,
    )
    return tr, t0, t1


def integral_curve(
    model: Rank2Model,
    x0,
    t_span=(0.0, 1.0),
    config: Optional[IntegratorConfig] = None,
    chamber_guard: float = 1e-6,
) -> CurveTrace:
    """Solve ``c' = X(c)`` from ``c(t_span[0]) = x0``; a decreasing span runs backward.

    The run ends at ``t_span[1]`` or when the curve comes within
    ``chamber_guard`` of a wall.
    """
    x0 = model.check(x0)
    if model.margin(x0) < chamber_guard:
        raise DomainError("x0 lies inside the chamber guard")
    config = config or hermann_config()

    def rhs(t, y):
        return model.field(y)

    tr, t0, t1 = _run(model, rhs, x0, x0, t_span, config, [0, 1], chamber_guard)
    return CurveTrace(tr, model, None, t0, t1)


def _coupled_rhs(model: Rank2Model, variant: str):
    p = _EXPONENT[variant]
    table = model.field_variant == "table"

    def rhs(t, y):
        x = y[:2]
        F = y[2]
        X = model.field(x)
        if table:
            J = model.jac(x)
            dv = float(np.trace(J))
        else:
            w = model._R @ x
            coef = -model._m * model._lam**2 / np.sin(w) ** 2
            J = (model._D.T * coef) @ model._D
            dv = float(coef.sum())
        v2 = float(X @ X)
        acc = float(X @ J @ X)  # <c'', c'>
        dF = acc * F**p - (1 + v2 * F * F) * ((v2 + dv) * F - 1)
        return np.array([X[0], X[1], dF, F * v2])

    return rhs


def solve_f_and_v(
    model: Rank2Model,
    curve,
    F0: float,
    V0: float = 0.0,
    variant: str = "cubic",
    config: Optional[IntegratorConfig] = None,
    t_span=None,
    chamber_guard: float = 1e-6,
) -> CurveTrace:
    """Co-integrate the curve, ``F_hat`` and ``V o c``.

    ``curve`` is either a :class:`CurveTrace` (its start point and span are
    reused) or a start point ``x0`` together with ``t_span``.  The curve is
    re-integrated alongside ``F_hat`` so that all three share one step sequence.
    A blow-up of ``F_hat`` ends the run with a blow-up event.
    """
    if variant not in _EXPONENT:
        raise DomainError(f"variant must be one of {VARIANTS}")
    if isinstance(curve, CurveTrace):
        t0, t1 = curve.t_start, curve.t_end
        x0 = curve.trace.ic[1][:2]
        if t_span is not None:
            t0, t1 = t_span
    else:
        x0 = curve
        t0, t1 = t_span if t_span is not None else (0.0, 1.0)
    x0 = model.check(x0)
    if not (math.isfinite(F0) and math.isfinite(V0)):
        raise DomainError("F0 and V0 must be finite")
    config = config or hermann_config()
    rhs = _coupled_rhs(model, variant)
    state0 = np.array([x0[0], x0[1], F0, V0])
    tr, a, b = _run(model, rhs, x0, state0, (t0, t1), config, [2], chamber_guard)
    return CurveTrace(tr, model, variant, a, b)


# ---------------------------------------------------------------------------
# equilibrium


def equilibrium(model: Rank2Model, x0=None, tol: float = 1e-13, max_iter: int = 100) -> np.ndarray:
    """The zero of ``X`` in the chamber by damped Newton iteration."""
    x = model.center() if x0 is None else model.check(x0)
    for _ in range(max_iter):
        X = model.field(x)
        if float(np.max(np.abs(X))) < tol:
            return x
        step = np.linalg.solve(model.jac(x), -X)
        lam = 1.0
        while lam > 1e-8:
            cand = x + lam * step
            if model.inside(cand) and np.max(np.abs(model.field(cand))) < np.max(np.abs(X)):
                break
            lam *= 0.5
        else:
            raise ConvergenceError("Newton line search failed")
        x = cand
    if float(np.max(np.abs(model.field(x)))) < 1e3 * tol:
        return x
    raise ConvergenceError("equilibrium search did not converge")


def stationary_f(model: Rank2Model, xhat) -> float:
    """``1 / div X`` at a zero of ``X``: the constant solution of the ``F_hat`` ODE there."""
    xhat = model.check(xhat)
    if float(np.linalg.norm(model.field(xhat))) >= 1e-10:
        raise DomainError("point is not a zero of X")
    d = model.div(xhat)
    if d == 0:
        raise DomainError("div X vanishes at the equilibrium")
    return 1.0 / d


# ---------------------------------------------------------------------------
# diagnostics


def curve_residuals(ct: CurveTrace, samples: Optional[np.ndarray] = None, grad_cap=None):
    """PDE residual of the reconstructed ``V`` jet and the quadrature check along a curve.

    ``X(F) = F_hat'`` is the derivative of the dense output.  Samples where
    ``|grad V| = |F_hat| |X|`` exceeds ``grad_cap`` are skipped.  Returns
    ``(pde_residuals, quadrature_errors)`` at the sample times (interval
    midpoints by default).
    """
    if ct.F is None:
        raise DomainError("curve carries no F_hat")
    model = ct.model
    t = ct.t
    if samples is None:
        samples = 0.5 * (t[1:] + t[:-1])
    samples = np.asarray(samples, dtype=float)
    pde, quad = [], []
    for s in samples:
        y = ct(s)
        dy = ct.trace.derivative(s)
        x = y[:2]
        X = model.field(x)
        if grad_cap is not None and abs(y[2]) * math.sqrt(float(X @ X)) > grad_cap:
            continue
        jet = jet_from_f(model, x, y[2], dy[2])
        pde.append(pde_residual(model, jet, x))
        quad.append(dy[3] - y[2] * float(X @ X))
    return np.array(pde), np.array(quad)


def select_variant(
    model: Rank2Model,
    x0=None,
    t_span=(0.0, -0.1),
    F0: Optional[float] = None,
    config: Optional[IntegratorConfig] = None,
    grad_cap: float = 100.0,
) -> dict:
    """Run both ``F_hat`` exponents on one curve and keep the one whose jets solve the PDE.

    The default curve starts 30% of the way from the equilibrium to the nearest
    wall with ``F_hat`` at its stationary value.  Samples past ``grad_cap`` (on
    the way to a blow-up of ``F_hat``) are left out of the comparison.
    """
    xhat = equilibrium(model)
    if x0 is None:
        x0 = offset_point(model, xhat, 0.3)
    if F0 is None:
        F0 = stationary_f(model, xhat)
    out = {}
    for v in VARIANTS:
        ct = solve_f_and_v(model, x0, F0, 0.0, v, config, t_span=t_span)
        res, _ = curve_residuals(ct, grad_cap=grad_cap)
        out[v] = float(np.max(np.abs(res))) if len(res) else math.inf
    out["selected"] = min(VARIANTS, key=lambda v: out[v])
    return out


def offset_point(model, xhat, frac):
    """A point a fraction of the way from the equilibrium to the nearest wall."""
    r = frac * model.margin(xhat)
    return xhat + r * np.array([math.cos(0.3), math.sin(0.3)])


def fan(
    model: Rank2Model,
    n_curves: int = 10,
    radius: float = 1e-2,
    t_span=(0.0, -1.0),
    variant: str = "cubic",
    V0: float = 0.0,
    F0: Optional[float] = None,
    config: Optional[IntegratorConfig] = None,
) -> list:
    """Curves seeded on a small level ellipse of the potential around the equilibrium.

    Near the equilibrium the potential is quadratic with Hessian ``J``, so the
    seeds ``xhat + radius * |J|^(-1/2) u(theta)`` lie on one of its level
    curves to second order.  Every curve starts with the same ``V0``.
    """
    xhat = equilibrium(model)
    J = model.jac(xhat)
    w, U = np.linalg.eigh(-J)
    if np.any(w <= 0):
        raise DomainError("equilibrium is not a strict extremum of the potential")
    A = U @ np.diag(1 / np.sqrt(w)) @ U.T
    A *= 1 / np.sqrt(np.max(1 / w))  # longest semi-axis equals radius
    F0 = stationary_f(model, xhat) if F0 is None else F0
    curves = []
    for k in range(n_curves):
        th = 2 * math.pi * k / n_curves
        x0 = xhat + radius * A @ np.array([math.cos(th), math.sin(th)])
        curves.append(solve_f_and_v(model, x0, F0, V0, variant, config, t_span=t_span))
    return curves


def convexity_check(model: Rank2Model, n: int = 200, rng=None) -> dict:
    """Eigenvalue signs of ``J_X`` at random chamber points (semidefiniteness of the potential)."""
    rng = np.random.default_rng(rng)
    pts = _random_points(model, n, rng)
    eig = np.array([np.linalg.eigvalsh(model.jac(p)) for p in pts])
    psd = bool(np.all(eig >= -1e-12))
    nsd = bool(np.all(eig <= 1e-12))
    return {
        "positive_semidefinite": psd,
        "negative_semidefinite": nsd,
        "status": "satisfied" if psd else "violated",
        "max_eigenvalue": float(eig.max()),
        "min_eigenvalue": float(eig.min()),
    }


def _random_points(model: Rank2Model, n: int, rng, margin: float = 0.05) -> np.ndarray:
    if model.field_variant == "table":
        t = model.table
        lo = np.array([t.xs[0], t.ys[0]])
        hi = np.array([t.xs[-1], t.ys[-1]])
    else:
        v = model.chamber_vertices()
        lo, hi = v.min(axis=0), v.max(axis=0)
    out = []
    while len(out) < n:
        p = lo + (hi - lo) * rng.random(2)
        if model.margin(p) > margin * model.margin(model.center()):
            out.append(p)
    return np.array(out)
