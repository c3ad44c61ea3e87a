import math

import mpmath as mp
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from translator_lab.errors import DomainError
from translator_lab.spaces import (
    RankOneSpace,
    SpaceKind,
    alpha_formula,
    boundary_data,
    mean_curvature,
    mean_curvature_rootsum,
    smooth_slope,
)

KINDS = [("sphere", 2), ("sphere", 3), ("sphere", 5), ("cp", 1), ("cp", 2), ("cp", 4),
         ("hp", 1), ("hp", 2), ("cayley", 1)]


def _mp_h(space, s):
    """Closed form evaluated at 50 digits."""
    mp.mp.dps = 50
    n = space.n
    s = mp.mpf(s)
    if space.kind is SpaceKind.SPHERE:
        return mp.sqrt(mp.mpf(n - 1) / 2) * mp.cot(s / mp.sqrt(2 * (n - 1)))
    if space.kind is SpaceKind.COMPLEX_PROJECTIVE:
        c = 2 * mp.sqrt(n + 1)
        t = mp.tan(s / c)
        return (2 * n - 1 - t**2) / (c * t)
    if space.kind is SpaceKind.QUATERNIONIC_PROJECTIVE:
        c = 2 * mp.sqrt(2 * (n + 2))
        t = mp.tan(s / c)
        return (4 * n - 1 - 3 * t**2) / (c * t)
    a = mp.mpf(space.a)
    t = mp.tan(a * s)
    return (16 - 7 * t**2) * a / t


@pytest.mark.parametrize("kind,n", KINDS)
def test_invariants(kind, n):
    sp_ = RankOneSpace.make(kind, n)
    assert sp_.m_2lambda in (0, 1, 3, 7)
    assert sp_.dim == sp_.m_lambda + sp_.m_2lambda + 1
    assert sp_.lambda_ > 0
    if sp_.kind is SpaceKind.SPHERE:
        assert sp_.lambda_ == pytest.approx(1 / math.sqrt(2 * (n - 1)), rel=1e-15)


@pytest.mark.parametrize(
    "kind,n,expected",
    [
        ("cp", 2, math.sqrt(3) * math.pi),
        ("hp", 1, math.sqrt(6) * math.pi),
        ("sphere", 2, math.pi / math.sqrt(2)),
        ("cayley", 1, math.pi / 4),
    ],
)
def test_alpha_formula(kind, n, expected):
    assert alpha_formula(RankOneSpace.make(kind, n)) == pytest.approx(expected, rel=1e-15)


def test_mean_curvature_examples(s2, cp2):
    assert mean_curvature(s2, math.pi * math.sqrt(2) / 4) == pytest.approx(1 / math.sqrt(2), rel=1e-14)
    s_zero = 2 * math.sqrt(3) * math.atan(math.sqrt(3))
    assert abs(mean_curvature(cp2, s_zero)) < 1e-14


@pytest.mark.parametrize("kind,n", KINDS)
def test_closed_form_matches_mpmath(kind, n):
    sp_ = RankOneSpace.make(kind, n)
    for frac in (0.01, 0.2, 0.5, 0.77, 0.99):
        s = frac * sp_.alpha
        ref = float(_mp_h(sp_, s))
        assert mean_curvature(sp_, s) == pytest.approx(ref, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("kind,n,r0", [("sphere", 2, 1), ("sphere", 4, 3), ("cp", 2, 3), ("cp", 3, 5)])
def test_small_s_limit(kind, n, r0):
    sp_ = RankOneSpace.make(kind, n)
    s = 1e-6 * sp_.alpha
    assert s * mean_curvature(sp_, s) == pytest.approx(r0, rel=1e-6)


def test_rootsum_identity_symbolic():
    # CP^n: the double-angle identity turns the root sum into the closed form.
    u, n = sp.symbols("u n", positive=True)
    lam = 1 / (2 * sp.sqrt(n + 1))
    t = sp.tan(u)
    rootsum = (2 * n - 2) * lam / t + 2 * lam / sp.expand_trig(sp.tan(2 * u))
    closed = (2 * n - 1 - t**2) / (2 * sp.sqrt(n + 1) * t)
    assert sp.simplify(rootsum - closed) == 0


@pytest.mark.parametrize("kind,n", [k for k in KINDS if k[0] != "cayley"])
def test_rootsum_agrees_on_grid(kind, n):
    sp_ = RankOneSpace.make(kind, n)
    alpha = sp_.alpha
    for s in np.linspace(0.001 * alpha, 0.999 * alpha, 1000):
        h = mean_curvature(sp_, s)
        assert abs(h - mean_curvature_rootsum(sp_, s)) < 1e-10 * (1 + abs(h))


def test_cayley_rootsum_differs_by_one_cot():
    sp_ = RankOneSpace.make("cayley", 1, a=0.7)
    for s in (0.3, 0.9, 1.5):
        t = math.tan(0.7 * s)
        assert mean_curvature(sp_, s) - mean_curvature_rootsum(sp_, s) == pytest.approx(0.7 / t, rel=1e-10)
    alt = RankOneSpace.make("cayley", 1, a=0.7, coefficient_variant="rootsum")
    assert alt.h(0.9) == pytest.approx(mean_curvature_rootsum(alt, 0.9), rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(frac=st.floats(0.01, 0.99), n=st.integers(2, 6))
def test_rootsum_property_sphere_cp_hp(frac, n):
    for kind in ("sphere", "cp", "hp"):
        sp_ = RankOneSpace.make(kind, n)
        s = frac * sp_.alpha
        h = sp_.h(s)
        assert abs(h - sp_.h_rootsum(s)) < 1e-10 * (1 + abs(h))


@pytest.mark.parametrize("kind,n", KINDS)
def test_h_strictly_decreasing(kind, n):
    sp_ = RankOneSpace.make(kind, n)
    a = sp_.alpha
    vals = np.array([sp_.h(s) for s in np.linspace(1e-3 * a, (1 - 1e-3) * a, 2000)])
    assert np.all(np.diff(vals) < 0)


def test_boundary_data_cp2(cp2):
    bd = boundary_data(cp2)
    assert bd.alpha_numeric == pytest.approx(math.sqrt(3) * math.pi, rel=1e-12)
    assert bd.h_zero == pytest.approx(2 * math.sqrt(3) * math.pi / 3, rel=1e-12)
    assert bd.residue_origin == pytest.approx(3, rel=1e-8)
    assert bd.residue_focal == pytest.approx(1, rel=1e-8)
    assert 0 < bd.h_zero < bd.alpha_numeric


def test_boundary_data_sphere2(s2):
    bd = s2.boundary
    assert bd.alpha_numeric == pytest.approx(math.sqrt(2) * math.pi, rel=1e-12)
    assert bd.residue_origin == pytest.approx(1, rel=1e-8)
    assert bd.residue_focal == pytest.approx(1, rel=1e-8)
    codes = {d["code"]: d for d in bd.diagnostics}
    assert codes["alpha_table_mismatch"]["ratio_pole_over_table"] == pytest.approx(2, rel=1e-12)


@pytest.mark.parametrize("kind,n,r_alpha", [("cp", 3, 1), ("hp", 1, 3), ("hp", 2, 3), ("sphere", 3, 2)])
def test_focal_residue(kind, n, r_alpha):
    assert RankOneSpace.make(kind, n).boundary.residue_focal == pytest.approx(r_alpha, rel=1e-7)


def test_cayley_diagnostics():
    bd = RankOneSpace.make("cayley", 1, a=1.0).boundary
    codes = {d["code"]: d for d in bd.diagnostics}
    assert "alpha_table_mismatch" in codes and "cayley_coefficient" in codes
    assert bd.alpha_numeric == pytest.approx(math.pi / 2, rel=1e-12)
    assert codes["alpha_table_mismatch"]["alpha_proof_end"] == pytest.approx(math.pi / 4)


def test_sign_structure(cp2):
    bd = cp2.boundary
    for s in np.linspace(0.01, bd.h_zero - 1e-6, 50):
        assert cp2.h(s) > 0
    for s in np.linspace(bd.h_zero + 1e-6, bd.alpha_numeric - 0.01, 50):
        assert cp2.h(s) < 0


@pytest.mark.parametrize("s", [-1.0, 0.0, 100.0])
def test_domain_errors(cp2, s):
    with pytest.raises(DomainError):
        mean_curvature(cp2, s)


def test_pole_guard(cp2):
    with pytest.raises(DomainError):
        mean_curvature(cp2, cp2.alpha * (1 - 1e-10))


def test_make_validation():
    with pytest.raises(DomainError):
        RankOneSpace.make("sphere", 1)
    with pytest.raises(DomainError):
        RankOneSpace.make("lens", 2)
    with pytest.raises(DomainError):
        RankOneSpace.make("cayley", 1, a=-1)
    with pytest.raises(DomainError):
        RankOneSpace.make("cp", 2, coefficient_variant="other")


def test_from_config_and_aliases():
    a = RankOneSpace.from_config({"kind": "ComplexProjective", "n": "3"})
    assert a == RankOneSpace.make("cp", 3)
    assert SpaceKind.parse("quaternionic_projective") is SpaceKind.QUATERNIONIC_PROJECTIVE


def test_smooth_slope(cp2):
    assert smooth_slope(cp2, "origin", 0.01) == pytest.approx(0.01 / 4, rel=1e-7)
    assert smooth_slope(cp2, "focal", 0.01) == pytest.approx(-0.01 / 2, rel=1e-7)
    with pytest.raises(DomainError):
        smooth_slope(cp2, "middle", 0.1)
