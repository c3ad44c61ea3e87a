"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import json
import math
import time

import numpy as np
import pytest

from translator_lab.cli import run
from translator_lab.errors import Unclassified
from translator_lab.flow import drift_study, observed_order, translator_drift
from translator_lab.hermann import (
    Rank2Model,
    equilibrium,
    fan,
    select_variant,
    solve_f_and_v,
    stationary_f,
)
from translator_lab.ode import EventTag
from translator_lab.rank1 import (
    blowup_region_ics,
    classify,
    default_config,
    eta,
    h1_bound,
    profile_residual,
    psi_rhs,
    psi_v_consistency,
    reflect,
    region_sign,
    s_of_x,
    shoot_regular,
    side_event,
    solve_maximal,
    solve_psi,
    sweep,
)
from translator_lab.spaces import RankOneSpace, SpaceKind, alpha_formula

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_residual_suite(report):
    worst, slowest, n = 0.0, 0.0, 0
    for kind, dim in (("sphere", 2), ("sphere", 3), ("cp", 2), ("hp", 1), ("cayley", 1)):
        sp = RankOneSpace.make(kind, dim)
        a = sp.alpha
        jobs = [("solve", (f, p)) for f in (0.15, 0.4, 0.65, 0.9) for p in (-3.0, 0.0, 0.8)]
        jobs += [("shoot", "origin"), ("shoot", "focal")]
        for what, arg in jobs:
            t0 = time.perf_counter()
            if what == "solve":
                tr = solve_maximal(sp, arg[0] * a, 0.0, arg[1])
            else:
                tr = shoot_regular(sp, arg)
            slowest = max(slowest, time.perf_counter() - t0)
            worst = max(worst, profile_residual(tr))
            n += 1
    ok = worst < 1e-4 and slowest < 1.0
    report(1, ok, f"{n} traces, max relative residual {worst:.2e} (< 1e-4), slowest solve {slowest:.3f} s (< 1 s)")


def test_criterion_02_theorem_reproduction(report):
    t0 = time.perf_counter()
    summary, ok = [], True
    for kind, dim in (("cp", 2), ("sphere", 3), ("hp", 1)):
        sp = RankOneSpace.make(kind, dim)
        try:
            res = sweep(sp)
        except Unclassified as exc:
            ok = False
            summary.append(f"{kind}{dim}: Unclassified {exc}")
            continue
        c = res.counts
        present = res.types_present
        ok &= present == {"I", "II", "III", "IV", "V"} and c.get("Unclassified", 0) == 0
        ok &= res.labels.size == 41 * 41
        summary.append(f"{kind}{dim} " + " ".join(f"{k}={c[k]}" for k in ("I", "II", "III", "IV", "V")))
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    report(2, ok, f"{'; '.join(summary)}; zero Unclassified; {elapsed:.1f} s (< 60 s)")


def test_criterion_03_region_rules(report):
    rng = np.random.default_rng(20240101)
    n_pts, bad, tested = 10_000, 0, 0
    while tested < n_pts:
        n = int(rng.integers(1, 7))
        x_star = math.sqrt(2 * n - 1)
        x = float(rng.choice([x_star, rng.uniform(1e-3, 4 * x_star)], p=[0.01, 0.99]))
        psi = float(np.sinh(rng.uniform(-6, 6)))
        if x != x_star and abs(psi - eta(n, x)) <= 1e-6:
            continue
        tested += 1
        if np.sign(psi_rhs(n, x, psi)) != region_sign(n, x, psi):
            bad += 1
    report(3, bad == 0, f"{tested} guarded phase points, {bad} sign mismatches")


def test_criterion_04_blowup_facts(report):
    n = 2
    sp = RankOneSpace.make("cp", n)
    rng = np.random.default_rng(4)
    expect = {
        1: ("left", EventTag.BLOWUP_PLUS),
        2: ("left", EventTag.BLOWUP_MINUS),
        3: ("right", EventTag.BLOWUP_PLUS),
        4: ("right", EventTag.BLOWUP_MINUS),
    }
    coarse, fine = default_config(rtol=1e-6, atol=1e-9), default_config(rtol=1e-9, atol=1e-12)
    wrong, shift = 0, 0.0
    for region, (side, tag) in expect.items():
        for x0, psi0 in blowup_region_ics(n, region, 100, rng):
            s0 = float(s_of_x(n, x0))
            e1 = side_event(sp, s0, psi0, side, coarse)
            e2 = side_event(sp, s0, psi0, side, fine)
            if e1.tag is not tag or e2.tag is not tag:
                wrong += 1
                continue
            shift = max(shift, abs(e1.location - e2.location))
    ok = wrong == 0 and shift < 1e-3
    report(4, ok, f"400 ICs, {wrong} off-prediction, max location shift rtol 1e-6 -> 1e-9 = {shift:.2e} (< 1e-3)")


def test_criterion_05_comparison_bound(report):
    n = 2
    rng = np.random.default_rng(5)
    cfg = default_config()
    checked, bad, worst = 0, 0, 0.0
    for x0, psi0 in blowup_region_ics(n, 1, 20, rng):
        tr = solve_psi(n, x0, psi0, cfg)
        t = tr.t[tr.t <= x0]
        # Samples plus three dense points in every step.
        xs = np.concatenate([t, *(t[:-1] + f * np.diff(t) for f in (0.25, 0.5, 0.75))])
        for x, p in zip(xs, tr(xs)[:, 0]):
            b = h1_bound(n, x, x0, psi0)
            if not math.isfinite(b):
                continue
            checked += 1
            gap = b - p
            worst = max(worst, gap / (1 + abs(b)))
            if gap > 10 * cfg.rtol * (1 + abs(b)):
                bad += 1
    report(5, bad == 0, f"20 ICs, {checked} dense samples, {bad} violations (largest relative excess {worst:.1e})")


def test_criterion_06_change_of_variables(report):
    sp = RankOneSpace.make("cp", 2)
    a = sp.alpha
    cfg = default_config(rtol=1e-9, atol=1e-12)
    ics = [(0.2, 2.0), (0.35, 0.0), (0.5, -0.3), (0.8, 0.3), (0.6, 3.0), (0.15, -1.0)]
    worst, gap = 0.0, 0.0
    for f, p in ics:
        out = psi_v_consistency(sp, f * a, p, cfg)
        worst = max(worst, out["deviation"])
        gap = max([gap] + [v for k, v in out.items() if k.endswith("_blowup_gap")])
    ok = worst < 1e-6 and gap < 1e-4
    report(6, ok, f"{len(ics)} matched ICs, max |psi - V'| {worst:.2e} (< 1e-6), max blow-up gap {gap:.1e}")


def _fit(tr, space, end):
    eps = tr.meta["shoot"]["eps"]
    d = np.linspace(2 * eps, 20 * eps, 10)
    s = d if end == "origin" else space.alpha - d
    return abs(np.polyfit(d, tr(s)[:, 1], 1)[0])


def test_criterion_07_regular_endpoints(report):
    cases = [("sphere", 2, "origin", 0.5), ("cp", 2, "origin", 0.25), ("cp", 2, "focal", 0.5)]
    parts, ok = [], True
    for kind, dim, end, want in cases:
        sp = RankOneSpace.make(kind, dim)
        R = sp.boundary.residue_origin if end == "origin" else sp.boundary.residue_focal
        got = _fit(shoot_regular(sp, end), sp, end)
        ok &= abs(got - want) < 1e-3 and abs(1 / (1 + R) - want) < 1e-6
        parts.append(f"{kind}{dim} {end} {got:.6f} vs {want}")
    report(7, ok, "; ".join(parts))


def test_criterion_08_flow(report):
    sp = RankOneSpace.make("cp", 2)
    tr = shoot_regular(sp, "origin")
    typ = classify(tr).value
    dev = translator_drift(sp, tr, 0.5)
    errs = drift_study(sp, tr, 0.5, sizes=(51, 101, 201))
    orders = observed_order(errs)
    ok = typ == "IV" and dev < 1e-3 and min(orders) >= 1.9
    report(8, ok, f"Type {typ} on [0.1a, 0.6a], T=0.5: deviation {dev:.2e} (< 1e-3); "
                  f"orders {', '.join(f'{o:.2f}' for o in orders)} (>= 1.9)")


def test_criterion_09_alpha_crosscheck(report):
    worst, ok = 0.0, True
    for kind in ("cp", "hp"):
        for dim in range(1, 6):
            sp = RankOneSpace.make(kind, dim)
            rel = abs(sp.boundary.alpha_numeric - alpha_formula(sp)) / alpha_formula(sp)
            worst = max(worst, rel)
    ok &= worst < 1e-9
    sphere_codes = {d["code"] for d in RankOneSpace.make("sphere", 3).boundary.diagnostics}
    cay_codes = {d["code"] for d in RankOneSpace.make("cayley", 1).boundary.diagnostics}
    ok &= "alpha_table_mismatch" in sphere_codes
    ok &= {"alpha_table_mismatch", "cayley_coefficient"} <= cay_codes
    report(9, ok, f"CP^n/HP^n n=1..5 max relative mismatch {worst:.1e} (< 1e-9); "
                  f"sphere diagnostics {sorted(sphere_codes)}; cayley diagnostics {sorted(cay_codes)}")


def test_criterion_10_hermann(report, tmp_path):
    parts, ok = [], True
    for layout in ("A1xA1", "B2"):
        m = Rank2Model.from_layout(layout)
        quad = 0.0
        for ct in fan(m, n_curves=10, t_span=(0.0, -0.5)):
            t = ct.t
            mids = 0.5 * (t[1:] + t[:-1])
            d = 1e-5 * np.min(np.diff(t))
            for s in mids:
                V = ct([s - d, s + d])[:, 3]
                y = ct(s)
                X = m.field(y[:2])
                quad = max(quad, abs((V[1] - V[0]) / (2 * d) - y[2] * float(X @ X)))
        sel = select_variant(m)
        xhat = equilibrium(m)
        F0 = stationary_f(m, xhat)
        eq = solve_f_and_v(m, xhat, F0, 0.0, "cubic", t_span=(0.0, 1.0))
        drift = float(np.max(np.abs(eq.F - F0)))
        out = tmp_path / f"{layout}.csv"
        code = run(["hermann", "curve", "--layout", layout, "--out", str(out)])
        man = json.loads(out.with_name(f"{layout}.manifest.json").read_text())
        best = sel["selected"]
        ok &= quad < 1e-6 and sel[best] < 1e-3 and drift < 1e-8 and code == 0
        ok &= man["variant_selection"]["selected"] == best and man["exponent"] == (3 if best == "cubic" else 2)
        parts.append(f"{layout}: quadrature {quad:.1e}, {best} residual {sel[best]:.1e} "
                     f"(other {sel['quadratic' if best == 'cubic' else 'cubic']:.1e}), "
                     f"stationary drift {drift:.1e}, manifest exponent {man['exponent']}")
    report(10, ok, "; ".join(parts))


def test_criterion_11_invariance(report):
    rng = np.random.default_rng(11)
    cp2 = RankOneSpace.make("cp", 2)
    s2 = RankOneSpace.make("sphere", 2)
    swap = {"I": "I", "II": "III", "III": "II", "IV": "V", "V": "IV"}
    trans_bad = refl_bad = 0
    for _ in range(50):
        s0 = rng.uniform(0.05, 0.95) * cp2.alpha
        p = math.tan(rng.uniform(-1.45, 1.45))
        c = rng.uniform(-100, 100)
        a = solve_maximal(cp2, s0, 0.0, p)
        b = solve_maximal(cp2, s0, c, p)
        if not (np.array_equal(a.dV, b.dV) and classify(a) is classify(b)):
            trans_bad += 1
        s0 = rng.uniform(0.05, 0.95) * s2.alpha
        tr = solve_maximal(s2, s0, 0.0, p)
        rt = solve_maximal(s2, *reflect(s2, s0, 0.0, p))
        if classify(rt).value != swap[classify(tr).value]:
            refl_bad += 1
    # The regular solutions swap IV <-> V as well.
    if classify(shoot_regular(s2, "origin")).value != swap[classify(shoot_regular(s2, "focal")).value]:
        refl_bad += 1
    ok = trans_bad == 0 and refl_bad == 0
    report(11, ok, f"50 ICs: {trans_bad} translation mismatches (bit-identical V'), "
                   f"{refl_bad} reflection swap failures; regular pair IV <-> V checked")
