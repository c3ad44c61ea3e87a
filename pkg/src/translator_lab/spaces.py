"""Rank-one compact symmetric spaces and the mean curvature of their distance spheres.

Four spaces are modelled: spheres S^n, complex and quaternionic projective
spaces CP^n and HP^n, and the Cayley plane F4/Spin(9).  For each, ``h(s)`` is the
mean curvature of the principal isotropy orbit at distance ``s`` from the base
point, in the closed form used for the translator ODE.  An independent
root-sum form ``sum m * lam * cot(lam * s)`` is kept alongside for cross-checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.optimize import bisect

from .errors import ConvergenceError, DomainError

__all__ = [
    "SpaceKind",
    "RankOneSpace",
    "BoundaryData",
    "alpha_formula",
    "mean_curvature",
    "mean_curvature_rootsum",
    "boundary_data",
]


class SpaceKind(str, enum.Enum):
    SPHERE = "sphere"
    COMPLEX_PROJECTIVE = "cp"
    QUATERNIONIC_PROJECTIVE = "hp"
    CAYLEY_PLANE = "cayley"

    @classmethod
    def parse(cls, value) -> "SpaceKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "").replace("-", "")
        aliases = {
            "sphere": cls.SPHERE,
            "s": cls.SPHERE,
            "so": cls.SPHERE,
            "cp": cls.COMPLEX_PROJECTIVE,
            "complexprojective": cls.COMPLEX_PROJECTIVE,
            "hp": cls.QUATERNIONIC_PROJECTIVE,
            "quaternionicprojective": cls.QUATERNIONIC_PROJECTIVE,
            "cayley": cls.CAYLEY_PLANE,
            "cayleyplane": cls.CAYLEY_PLANE,
            "op": cls.CAYLEY_PLANE,
            "f4": cls.CAYLEY_PLANE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown space kind {value!r}") from None


_VARIANTS = ("paper", "rootsum")


@dataclass(frozen=True)
class RankOneSpace:
    """A rank-one symmetric space with its restricted-root data.

    Build instances with :meth:`make` (or :meth:`from_config`); the root length
    and multiplicities are derived from ``kind``, ``n`` and ``a``.

    ``lambda_`` is the root length for which the root-sum form reproduces the
    closed-form ``h``.  ``lambda_printed`` keeps the tabulated value of the
    restricted root system, which is half of ``lambda_`` for CP^n and HP^n.
    """

    kind: SpaceKind
    n: int
    a: float
    lambda_: float
    lambda_printed: float
    m_lambda: int
    m_2lambda: int
    dim: int
    coefficient_variant: str = "paper"
    eps_pole_rel: float = 1e-8

    @classmethod
    def make(cls, kind, n: int = 2, a: float = 1.0, coefficient_variant: str = "paper",
             eps_pole_rel: float = 1e-8) -> "RankOneSpace":
        kind = SpaceKind.parse(kind)
        if coefficient_variant not in _VARIANTS:
            raise DomainError(f"coefficient_variant must be one of {_VARIANTS}")
        n = int(n)
        a = float(a)
        if kind is SpaceKind.SPHERE:
            if n < 2:
                raise DomainError("sphere requires n >= 2")
            lam = 1.0 / math.sqrt(2 * (n - 1))
            return cls(kind, n, a, lam, lam, n - 1, 0, n, coefficient_variant, eps_pole_rel)
        if kind is SpaceKind.COMPLEX_PROJECTIVE:
            if n < 1:
                raise DomainError("CP^n requires n >= 1")
            lam = 1.0 / (2 * math.sqrt(n + 1))
            return cls(kind, n, a, lam, lam / 2, 2 * n - 2, 1, 2 * n, coefficient_variant,
                       eps_pole_rel)
        if kind is SpaceKind.QUATERNIONIC_PROJECTIVE:
            if n < 1:
                raise DomainError("HP^n requires n >= 1")
            lam = 1.0 / (2 * math.sqrt(2 * (n + 2)))
            return cls(kind, n, a, lam, lam / 2, 4 * n - 4, 3, 4 * n, coefficient_variant,
                       eps_pole_rel)
        if not a > 0:
            raise DomainError("Cayley plane requires a > 0")
        return cls(kind, n, a, a, a, 8, 7, 16, coefficient_variant, eps_pole_rel)

    @classmethod
    def from_config(cls, cfg: dict) -> "RankOneSpace":
        return cls.make(
            cfg.get("kind", "cp"),
            n=int(cfg.get("n", 2)),
            a=float(cfg.get("a", 1.0)),
            coefficient_variant=str(cfg.get("coefficient_variant", "paper")),
        )

    @property
    def label(self) -> str:
        if self.kind is SpaceKind.SPHERE:
            return f"S^{self.n}"
        if self.kind is SpaceKind.COMPLEX_PROJECTIVE:
            return f"CP^{self.n}"
        if self.kind is SpaceKind.QUATERNIONIC_PROJECTIVE:
            return f"HP^{self.n}"
        return f"OP^2(a={self.a:g})"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "a": self.a,
            "lambda": self.lambda_,
            "lambda_printed": self.lambda_printed,
            "m_lambda": self.m_lambda,
            "m_2lambda": self.m_2lambda,
            "dim": self.dim,
            "coefficient_variant": self.coefficient_variant,
        }

    # Closed form; no guards, used inside right-hand sides.
    def h(self, s: float) -> float:
        n = self.n
        if self.kind is SpaceKind.SPHERE:
            return math.sqrt((n - 1) / 2) / math.tan(s / math.sqrt(2 * (n - 1)))
        if self.kind is SpaceKind.COMPLEX_PROJECTIVE:
            c = 2 * math.sqrt(n + 1)
            t = math.tan(s / c)
            return (2 * n - 1 - t * t) / (c * t)
        if self.kind is SpaceKind.QUATERNIONIC_PROJECTIVE:
            c = 2 * math.sqrt(2 * (n + 2))
            t = math.tan(s / c)
            return (4 * n - 1 - 3 * t * t) / (c * t)
        coef = 16.0 if self.coefficient_variant == "paper" else 15.0
        t = math.tan(self.a * s)
        return (coef - 7 * t * t) * self.a / t

    def h_rootsum(self, s: float) -> float:
        lam = self.lambda_
        val = self.m_lambda * lam / math.tan(lam * s)
        if self.m_2lambda:
            val += self.m_2lambda * 2 * lam / math.tan(2 * lam * s)
        return val

    @cached_property
    def boundary(self) -> "BoundaryData":
        return boundary_data(self)

    @property
    def alpha(self) -> float:
        """Working right end of the profile domain (first pole of h)."""
        return self.boundary.alpha_numeric

    def check_s(self, s: float) -> None:
        alpha = self.alpha
        eps = self.eps_pole_rel * alpha
        if not (s > 0 and s < alpha):
            raise DomainError(f"s={s} outside (0, {alpha})")
        if s < eps or alpha - s < eps:
            raise DomainError(f"s={s} within pole guard {eps:g} of a pole of h")


@dataclass(frozen=True)
class BoundaryData:
    alpha_formula: float
    alpha_numeric: float
    residue_origin: float
    residue_focal: float
    h_zero: float
    diagnostics: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "alpha_formula": self.alpha_formula,
            "alpha_numeric": self.alpha_numeric,
            "residue_origin": self.residue_origin,
            "residue_focal": self.residue_focal,
            "h_zero": self.h_zero,
            "diagnostics": [dict(d) for d in self.diagnostics],
        }


def alpha_formula(space: RankOneSpace) -> float:
    """Tabulated right end of the translator profiles, exactly as printed."""
    n = space.n
    if space.kind is SpaceKind.SPHERE:
        return math.sqrt((n - 1) / 2) * math.pi
    if space.kind is SpaceKind.COMPLEX_PROJECTIVE:
        return math.sqrt(n + 1) * math.pi
    if space.kind is SpaceKind.QUATERNIONIC_PROJECTIVE:
        return math.sqrt(2 * (n + 2)) * math.pi
    return space.a * math.pi / 4


def _alpha_candidates(space: RankOneSpace) -> dict:
    out = {"table": alpha_formula(space)}
    if space.kind is SpaceKind.CAYLEY_PLANE:
        out["proof_end"] = math.pi / (4 * space.a)
        out["tan_pole"] = math.pi / (2 * space.a)
    return out


def mean_curvature(space: RankOneSpace, s: float) -> float:
    """Closed-form mean curvature h(s) of the principal orbit at distance s."""
    space.check_s(s)
    return space.h(s)


def mean_curvature_rootsum(space: RankOneSpace, s: float) -> float:
    """Root-sum mean curvature ``m_l l cot(l s) + m_2l 2l cot(2l s)``."""
    space.check_s(s)
    return space.h_rootsum(s)


def _richardson(g, d0: float) -> float:
    # g(d) = L + c2 d^2 + c4 d^4 + ...
    g0, g1, g2 = g(d0), g(d0 / 2), g(d0 / 4)
    r1 = (4 * g1 - g0) / 3
    r2 = (4 * g2 - g1) / 3
    return (16 * r2 - r1) / 15


def boundary_data(space: RankOneSpace, pole_tol: float = 1e-12, n_scan: int = 4000) -> BoundaryData:
    """Locate the zero and first pole of h by scanning and bisection.

    The scan runs over ``(0, 4 * max(tabulated alpha values)]``.  h starts at
    +inf, so the first sign change is its zero and the second one is the pole
    (bracketed on 1/h, which is continuous there).
    """
    if not pole_tol > 0:
        raise DomainError("pole_tol must be positive")
    cands = _alpha_candidates(space)
    s_max = 4 * max(cands.values())
    grid = s_max * np.arange(1, n_scan + 1) / n_scan
    with np.errstate(all="ignore"):
        vals = np.array([space.h(s) for s in grid])
    signs = np.sign(vals)
    changes = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(changes) < 2:
        raise ConvergenceError("could not bracket the zero and pole of h in the scan range")
    i0, i1 = changes[0], changes[1]
    if not (vals[i0] > 0 and vals[i1] < 0):
        raise ConvergenceError("unexpected sign pattern of h in the scan")
    h_zero = bisect(space.h, grid[i0], grid[i0 + 1], xtol=pole_tol)
    alpha = bisect(lambda s: 1.0 / space.h(s), grid[i1], grid[i1 + 1], xtol=pole_tol)

    d0 = 1e-2 * alpha
    r0 = _richardson(lambda d: d * space.h(d), d0)
    ra = _richardson(lambda d: -d * space.h(alpha - d), d0)

    diags = []
    table = cands["table"]
    if abs(table - alpha) > 1e-9 * alpha:
        diags.append(
            {
                "code": "alpha_table_mismatch",
                "message": "tabulated alpha differs from the first pole of h",
                "alpha_table": table,
                "alpha_pole": alpha,
                "ratio_pole_over_table": alpha / table,
                **{f"alpha_{k}": v for k, v in cands.items() if k != "table"},
            }
        )
    if space.kind is SpaceKind.CAYLEY_PLANE:
        diags.append(
            {
                "code": "cayley_coefficient",
                "message": "closed-form cot coefficient 16 vs root-sum 15 for (m_l, m_2l) = (8, 7)",
                "coefficient_in_use": 16 if space.coefficient_variant == "paper" else 15,
                "coefficient_variant": space.coefficient_variant,
            }
        )
    if space.lambda_printed != space.lambda_:
        diags.append(
            {
                "code": "root_length_normalisation",
                "message": "tabulated root length is half the one matching the closed-form h",
                "lambda_table": space.lambda_printed,
                "lambda_consistent": space.lambda_,
            }
        )
    return BoundaryData(table, alpha, r0, ra, h_zero, tuple(diags))


def diagnostics(space: RankOneSpace) -> list:
    return [dict(d) for d in space.boundary.diagnostics]


def smooth_slope(space: RankOneSpace, end: str, distance: float) -> float:
    """Leading-order slope V' of the regular solution at ``distance`` from an end."""
    bd = space.boundary
    if end == "origin":
        return distance / (1 + bd.residue_origin)
    if end == "focal":
        return -distance / (1 + bd.residue_focal)
    raise DomainError(f"end must be 'origin' or 'focal', got {end!r}")


def describe(space: RankOneSpace, variant: Optional[str] = None) -> dict:
    out = space.as_dict()
    out.update(space.boundary.as_dict())
    return out
