import mpmath as mp
import pytest
import sympy
from sklearn.base import clone

from eulerorient.analysis import (
    DifferentialApproximant, InsufficientTerms, SeriesExtender, alpha_estimates, beta_refine,
    da_singularities, default_grid, eulerian_map_series, extrapolate_intercepts, fit_da,
    intercept_abscissa, linear_intercepts, parse_mu, ratios, set_precision, test_series,
    three_point_fit,
)
from eulerorient.analysis.report import analyze, fmt

MU = 4 * mp.pi


def closed_form_M(n):
    t = sympy.symbols("t")
    expr = (8 * t**2 + 12 * t - 1 + (1 - 8 * t) ** sympy.Rational(3, 2)) / (32 * t**2)
    ser = sympy.series(expr, t, 0, n + 1).removeO()
    return [int(ser.coeff(t, k)) for k in range(n + 1)]


# -- reference series -----------------------------------------------------------

def test_eulerian_map_series_matches_sympy():
    assert eulerian_map_series(12) == closed_form_M(12)
    assert eulerian_map_series(5) == [1, 1, 3, 12, 56, 288]


def test_test_series_against_sympy():
    x = sympy.symbols("x")
    mu = sympy.Rational(3, 1)
    ser = sympy.series(-x * (1 - mu * x) / sympy.log(1 - mu * x), x, 0, 13).removeO()
    got = test_series(3, 12)
    assert len(got) == 13
    assert abs(got[0] - mp.mpf(1) / 3) < mp.mpf(10) ** -200
    for k in range(13):
        want = sympy.Rational(ser.coeff(x, k))
        assert abs(got[k] - mp.mpf(want.p) / want.q) <= mp.mpf(10) ** -200 * max(1, abs(got[k]))


def test_test_series_asymptotic_shape():
    c = test_series(MU, 600)
    shape = {n: c[n] * n**2 * mp.log(n) ** 2 / MU**n for n in (300, 600)}
    assert abs(shape[600] / shape[300] - 1) < 0.1


def test_parse_mu():
    assert parse_mu("4pi") == 4 * mp.pi
    assert parse_mu("4sqrt3pi") == 4 * mp.sqrt(3) * mp.pi
    assert parse_mu("12.5") == mp.mpf("12.5")
    for bad in ("-1", "pi4"):
        with pytest.raises(ValueError):
            parse_mu(bad)


def test_precision_floor():
    with pytest.raises(ValueError):
        set_precision(20)


# -- ratio estimators -------------------------------------------------------------

def synthetic_ratios(alpha, beta_minus_1=0, d=0, n_max=80):
    """Ratios whose alpha_n follow the three-term model exactly."""
    out = {}
    for n in range(2, n_max + 1):
        L = mp.log(n)
        a_n = alpha + beta_minus_1 / L - d / L**2
        out[n] = MU * (1 + (a_n - 1) / n)
    return out


def test_geometric_ratios():
    assert all(r == 2 for r in ratios([1, 2, 4, 8]).values())


def test_intercepts_remove_one_over_n():
    l = linear_intercepts(synthetic_ratios(mp.mpf("-0.7")))
    assert all(abs(v - MU) < mp.mpf(10) ** -200 for v in l.values())


def test_alpha_estimates_exact():
    a = alpha_estimates(synthetic_ratios(mp.mpf("-0.7")), MU)
    assert all(abs(v + mp.mpf("0.7")) < mp.mpf(10) ** -200 for v in a.values())
    assert all(v == 1 for v in alpha_estimates({n: MU for n in range(2, 9)}, MU).values())


def test_three_point_recovers_model():
    alpha, bm1, d = mp.mpf(-1), mp.mpf("-2.5"), mp.mpf("0.75")
    for t in three_point_fit(synthetic_ratios(alpha, bm1, d), MU):
        assert abs(t.alpha - alpha) < mp.mpf(10) ** -20
        assert abs(t.beta - (bm1 + 1)) < mp.mpf(10) ** -20
        assert abs(t.d - d) < mp.mpf(10) ** -20


def test_three_point_ignores_input_order():
    r = synthetic_ratios(mp.mpf(-1), mp.mpf(-2), mp.mpf(1))
    shuffled = dict(sorted(r.items(), key=lambda kv: (kv[0] * 7919) % 83))
    assert three_point_fit(r, MU) == three_point_fit(shuffled, MU)


def test_beta_refine_exact():
    r = {n: MU * (1 - mp.mpf(2) / n) for n in range(2, 40)}
    assert all(abs(b - 1) < mp.mpf(10) ** -200 for b in beta_refine(r, MU).values())


def test_intercept_extrapolation_exact_line():
    l = {n: MU + 3 * intercept_abscissa(n) for n in range(50, 200)}
    mu_est, slope = extrapolate_intercepts(l, 60)
    assert abs(mu_est - MU) < mp.mpf(10) ** -100
    assert abs(slope - 3) < mp.mpf(10) ** -100
    assert abs(extrapolate_intercepts(l, (60, 120))[0] - MU) < mp.mpf(10) ** -100


# -- differential approximants -------------------------------------------------

def test_geometric_approximant():
    da = fit_da([2**k for k in range(12)], 1, (1, 1), inhom_degree=-1)
    (s,) = [s for s in da_singularities(da) if s.physical]
    assert abs(s.x - mp.mpf("0.5")) < mp.mpf(10) ** -100
    assert abs(s.exponent + 1) < mp.mpf(10) ** -100


def test_closed_form_approximant():
    da = fit_da(eulerian_map_series(39), 1, (1, 1), inhom_degree=1)
    s = da_singularities(da)[0]
    assert abs(s.x - mp.mpf("0.125")) < 1e-8
    assert abs(s.exponent - mp.mpf("1.5")) < 1e-4


def test_approximant_reproduces_inputs():
    f = test_series(MU, 30)
    da = fit_da(f, 2, (5, 5, 6), inhom_degree=2)
    assert da.max_residual() < mp.mpf(10) ** -150
    ext = da.extend(40)
    assert ext[:31] == f
    assert all(abs(da.equation(m, da.coeffs_)) < mp.mpf(10) ** -150 * abs(f[m]) for m in da.rows_)


def test_exact_recurrence_extends_closed_form():
    da = fit_da(eulerian_map_series(20), 1, (1, 1), inhom_degree=1)
    truth = eulerian_map_series(60)
    assert all(abs(v / t - 1) < mp.mpf(10) ** -100 for v, t in zip(da.extend(60)[21:], truth[21:]))


def test_insufficient_terms():
    with pytest.raises(InsufficientTerms):
        fit_da([1, 2, 4], 2, (4, 4, 4))


def test_estimator_params_round_trip():
    da = DifferentialApproximant(order=3, degrees=(5, 5, 5, 6), inhom_degree=2)
    assert clone(da).get_params() == da.get_params()
    ext = SeriesExtender(horizon=80, orders=(2,))
    assert clone(ext).get_params()["horizon"] == 80


def test_default_grid_shape():
    grid = default_grid(50, orders=(3,))
    assert len(grid) == 36
    for g in grid:
        degs = g["degrees"]
        assert max(degs) - min(degs) <= 1
        unknowns = sum(d + 1 for d in degs) + g["inhom_degree"] + 1 - 1
        assert 40 <= unknowns <= 48


def test_extension_of_geometric_is_exact():
    grid = [{"order": 1, "degrees": (1, 1), "inhom_degree": -1}] * 3
    mean, std = SeriesExtender(grid, horizon=60).fit([3**k for k in range(20)]).predict()
    assert all(m == 3**k for k, m in enumerate(mean))
    assert all(s < mp.mpf(10) ** -150 for s in std)


def test_extension_of_test_series():
    f = test_series(MU, 45)
    ext = SeriesExtender(horizon=60, orders=(2,)).fit(f)
    mean, std = ext.predict()
    truth = test_series(MU, 60)
    assert len(ext.members_) >= 3
    assert mean[:46] == f
    for n in range(46, 61):
        assert abs(mean[n] / truth[n] - 1) < 1e-6


# -- reports ------------------------------------------------------------------------

def test_fmt():
    assert fmt(7) == "7"
    assert fmt(mp.mpf(1) / 3) == "0.333333333333333333333333333333"
    assert fmt(mp.mpc(1, -2)).endswith("j")


def test_analyze_writes_bundle(tmp_path):
    res = analyze(test_series(MU, 40), MU, tmp_path, orders=(2,), window=10)
    names = {p.name for p in res.files}
    assert {"ratios.csv", "intercepts.csv", "alpha.csv", "threepoint.csv", "beta.csv",
            "singularities.csv", "summary.txt"} <= names
    assert "mu from intercepts" in (tmp_path / "summary.txt").read_text()
    assert res.singularities[2].members > 0
