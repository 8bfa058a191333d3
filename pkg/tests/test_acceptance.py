"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Criterion 5's stable-tail bound is asserted exactly as stated; its
beta=0 sub-case is a documented spec defect (see the decisions ledger and
the xfail reason below): the true deviation at x=50 is 5.79%, crossing 5%
only at x ~ 66.5, confirmed by two independent oracles.
"""

import math

import numpy as np
import pytest

from stablemc import (
    ChannelConfig,
    StableParams,
    cdf,
    cf_inversion_pdf,
    dawson,
    faddeeva,
    levy_pdf,
    pdf,
    sample_channel,
    sample_stable_cms,
    std_half_pdf,
    tail_gaussian,
    tail_stable_half,
    verify_cf_composition,
    voigt_k,
    voigt_l,
)
from stablemc.cli import main
from stablemc.sim import ks_statistic_two_sample, ks_test

from conftest import rel_err

KS_SEED = 2016


def report(k, text, ok=True):
    print(f"ACCEPTANCE {k}: {text}: {'PASS' if ok else 'FAIL'}")


def test_criterion_1_standardized_peak():
    got = pdf(0.0, StableParams(0, 1, 0.5, 0))
    assert abs(got - 2.0 / math.pi) <= 1e-10
    worst = 0.0
    for beta in (0.0, 0.25, 0.5, 0.75):
        closed = pdf(0.0, StableParams(0, 1, 0.5, beta))
        display = 2.0 * (1 - beta**2) / (math.pi * (1 + beta**2) ** 2)
        oracle = cf_inversion_pdf(0.0, StableParams(0, 1, 0.5, beta))
        assert abs(closed - display) <= 1e-12
        assert abs(closed - oracle) <= 1e-8
        worst = max(worst, abs(closed - oracle))
    report(1, f"peak 2/pi exact, closed-vs-oracle worst {worst:.2e} <= 1e-8")


def test_criterion_2_levy_member_equivalence():
    xs = np.linspace(0.5, 50.0, 100)
    worst = 0.0
    for x in xs:
        a = std_half_pdf(float(x), 1.0)
        b = levy_pdf(float(x), 0.0, 1.0)
        worst = max(worst, rel_err(a, b))
    assert worst <= 1e-10
    report(2, f"std_half_pdf(x,1) vs levy_pdf rel worst {worst:.2e} <= 1e-10")


def test_criterion_3_theorem_proofs_as_cf_identities():
    rng = np.random.Generator(np.random.Philox(515))
    t_grid = np.linspace(-50.0, 50.0, 100)
    worst = 0.0
    for _ in range(20):
        cfg = ChannelConfig(kind="B", d=float(rng.uniform(0.1, 10)),
                            D=float(rng.uniform(0.05, 20)))
        worst = max(worst, verify_cf_composition(cfg, t_grid))
    for _ in range(20):
        cfg = ChannelConfig(kind="C", d=float(rng.uniform(0.1, 10)),
                            D_a=float(rng.uniform(0.05, 20)),
                            D_b=float(rng.uniform(0.05, 20)))
        worst = max(worst, verify_cf_composition(cfg, t_grid))
    assert worst <= 1e-12
    report(3, f"composition worst deviation {worst:.2e} <= 1e-12")


def test_criterion_4_fig1_fig2_regeneration(tmp_path):
    rc = main(["--command", "figures", "--out", str(tmp_path),
               "--grid-points", "1001", "--no-plots"])
    assert rc == 0
    lines = (tmp_path / "fig1_pdf.csv").read_text().splitlines()
    header = lines[0].split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    x = data[:, 0]
    col = {name: data[:, i] for i, name in enumerate(header)}
    b0, b05, b1 = col["pdf_beta_0"], col["pdf_beta_0.5"], col["pdf_beta_1"]
    gauss = col["pdf_gaussian"]
    # paper value at the beta=0 peak
    assert abs(b0[np.argmin(np.abs(x))] - 0.6366198) < 1e-7
    # beta=0 symmetric
    assert np.allclose(b0, b0[::-1], rtol=1e-10, atol=0)
    # beta=1 zero on the negative axis
    assert np.all(b1[x < 0] == 0.0)
    # long-tail claim: stable curves exceed the gaussian for |x| >= 6
    right = x >= 6.0
    left = x <= -6.0
    assert np.all(b0[right] > gauss[right]) and np.all(b0[left] > gauss[left])
    assert np.all(b05[right] > gauss[right]) and np.all(b05[left] > gauss[left])
    assert np.all(b1[right] > gauss[right])  # negative axis is exactly zero

    lines = (tmp_path / "fig2_cdf.csv").read_text().splitlines()
    header = lines[0].split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    x = data[:, 0]
    col = {name: data[:, i] for i, name in enumerate(header)}
    assert abs(col["cdf_beta_0"][np.argmin(np.abs(x))] - 0.5) < 1e-10
    for name in ("cdf_beta_0", "cdf_beta_0.5", "cdf_beta_1", "cdf_gaussian"):
        v = col[name]
        assert np.all(np.diff(v) >= -1e-12) and v[0] >= 0.0 and v[-1] <= 1.0
    report(4, "fig1/fig2 tables: symmetry, levy support, long-tail dominance")


def test_criterion_5_tail_convergence_attainable_part():
    xs = np.logspace(math.log10(50.0), 4.0, 40)
    worst = {}
    for beta in (0.5, 1.0):
        w = 0.0
        for x in xs:
            exact = 1.0 - cdf(float(x), StableParams(0, 1, 0.5, beta))
            approx = tail_stable_half(float(x), beta)
            w = max(w, abs(exact - approx) / exact)
        worst[beta] = w
        assert w <= 0.05, (beta, w)
    wg = 0.0
    for x in np.linspace(3.0, 30.0, 55):
        exact = 0.5 * math.erfc(x / math.sqrt(2.0))
        if exact == 0.0:
            continue
        wg = max(wg, abs(exact - tail_gaussian(float(x))) / exact)
    assert wg <= 0.10
    report(5, f"tails: beta 0.5/1 worst {max(worst.values()):.3%} <= 5%, "
              f"gaussian worst {wg:.3%} <= 10%")


@pytest.mark.xfail(
    strict=True,
    reason="spec defect: the true relative deviation of (1+b)/sqrt(2 pi x) "
           "from 1-F(x) at beta=0, x=50 is 5.79% (> the stated 5%), crossing "
           "5% only at x ~ 66.5; confirmed independently by mpmath "
           "rotated-contour quadrature and scipy.stats.levy_stable.sf. "
           "See decisions ledger.",
)
def test_criterion_5_tail_convergence_beta0_as_specified():
    xs = np.logspace(math.log10(50.0), 4.0, 40)
    worst = 0.0
    for x in xs:
        exact = 1.0 - cdf(float(x), StableParams(0, 1, 0.5, 0.0))
        approx = tail_stable_half(float(x), 0.0)
        worst = max(worst, abs(exact - approx) / exact)
    report(5, f"beta=0 tail worst deviation {worst:.3%} vs stated 5%",
           ok=worst <= 0.05)
    assert worst <= 0.05


def test_criterion_6_monte_carlo_agreement():
    n = 1_000_000
    stats = {}
    for kind, cfg in (("A", ChannelConfig(kind="A", d=1.0, D=0.5)),
                      ("B", ChannelConfig(kind="B", d=1.0, D=1.0)),
                      ("C", ChannelConfig(kind="C", d=1.0, D_a=4.0, D_b=1.0))):
        batch = sample_channel(cfg, n, seed=KS_SEED)
        rep = ks_test(batch)
        assert rep.threshold == 1.63 / math.sqrt(n)
        assert rep.passed, (kind, rep)
        stats[kind] = rep.ks_statistic
    batch = sample_channel(ChannelConfig(kind="C", d=1.0, D_a=4.0, D_b=1.0),
                           n, seed=KS_SEED)
    direct = sample_stable_cms(batch.model.params, n, seed=KS_SEED + 1)
    d2 = ks_statistic_two_sample(batch.values, direct)
    thr2 = 1.63 * math.sqrt(2.0 / n)
    assert d2 <= thr2
    report(6, f"KS A/B/C = {stats['A']:.2e}/{stats['B']:.2e}/{stats['C']:.2e} "
              f"<= 1.63e-3; difference-vs-direct {d2:.2e} <= {thr2:.2e}")


def test_criterion_7_stability_law():
    n = 1_000_000
    cfg = ChannelConfig(kind="B", d=1.0, D=2.0)  # standardized beta=0 law
    x1 = sample_channel(cfg, n, seed=101).values
    x2 = sample_channel(cfg, n, seed=102).values
    x = sample_stable_cms(StableParams(0.0, 1.0, 0.5, 0.0), n, seed=103)
    d = ks_statistic_two_sample(x1 + x2, 4.0 * x)
    assert d <= 3e-3
    report(7, f"(X1+X2) vs 4X KS distance {d:.2e} <= 3e-3")


def test_criterion_8_special_function_certification(
        faddeeva_fixture, dawson_fixture, voigt_fixture):
    assert len(faddeeva_fixture) >= 500
    for row in faddeeva_fixture:
        w = faddeeva(complex(row["x"], row["y"]))
        assert rel_err(w.real, row["w_re"]) <= 1e-12
        assert rel_err(w.imag, row["w_im"]) <= 1e-12
    for row in dawson_fixture:
        f = dawson(complex(row["x"], row["y"]))
        assert rel_err(f.real, row["f_re"]) <= 1e-12
        assert rel_err(f.imag, row["f_im"]) <= 1e-12
    for row in voigt_fixture:
        assert rel_err(voigt_k(row["a"], row["b"]), row["K"]) <= 1e-12
        assert rel_err(voigt_l(row["a"], row["b"]), row["L"]) <= 1e-12

    import cmath
    sqrtpi = math.sqrt(math.pi)
    mags = np.concatenate([np.logspace(-4, -0.5, 4), np.linspace(0.5, 30.0, 7)])
    worst = 0.0
    for x in np.concatenate([-mags, [0.0], mags]):
        for y in np.concatenate([[0.0], mags]):
            if y * y - x * x > 600.0:
                continue
            z = complex(x, y)
            w = faddeeva(z)
            f = dawson(z)
            worst = max(worst,
                        abs(f - 0.5j * sqrtpi * (cmath.exp(-z * z) - w)) / (1 + abs(f)),
                        abs(faddeeva(-z) - (2 * cmath.exp(-z * z) - w)) / (1 + abs(w)))
            if y > 0 and x != 0:
                worst = max(worst, abs(voigt_k(x, y) - w.real),
                            abs(voigt_l(x, y) - w.imag))
    for x in np.linspace(0.0, 26.0, 40):
        worst = max(worst, abs(faddeeva(complex(x, 0)).real - math.exp(-x * x))
                    / math.exp(-x * x))
    assert worst <= 1e-11
    report(8, f">=500-point fixtures <= 1e-12 rel; identity suite worst "
              f"{worst:.2e} <= 1e-11")


def test_criterion_9_determinism(tmp_path):
    outs = []
    for tag, workers in (("one", 1), ("two", 1), ("thr", 4)):
        d = tmp_path / f"figs_{workers}_{tag}"
        rc = main(["--command", "figures", "--out", str(d),
                   "--grid-points", "301", "--workers", str(workers)])
        assert rc == 0
        outs.append(d)
    names = sorted(p.name for p in outs[0].iterdir())
    for name in names:
        ref = (outs[0] / name).read_bytes()
        assert ref == (outs[1] / name).read_bytes(), name
        assert ref == (outs[2] / name).read_bytes(), name

    reports = []
    for tag, workers in (("a", 1), ("b", 1), ("c", 4)):
        out = tmp_path / f"validate_{tag}.json"
        # default --n: the documented default run must pass and be stable
        rc = main(["--command", "validate",
                   "--workers", str(workers), "--out", str(out)])
        assert rc == 0
        reports.append(out.read_bytes())
    assert reports[0] == reports[1] == reports[2]
    report(9, "figures and validate byte-identical across runs and 1 vs 4 threads")
