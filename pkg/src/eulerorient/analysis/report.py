"""Run the estimators on one series and write the CSV bundle."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import mpmath as mp

from .da import (
    EmptyEnsemble, SeriesExtender, SingularitySummary, check_coefficients, da_singularities,
    default_grid, fit_grid, summarize_singularities,
)
from .estimators import (
    alpha_estimates, beta_refine, extrapolate_intercepts, intercept_abscissa,
    linear_intercepts, ratios, three_point_fit, trend_minimum,
)

log = logging.getLogger(__name__)

DIGITS = 30


def _num(x: mp.mpf) -> str:
    return mp.nstr(x, DIGITS, strip_zeros=False, min_fixed=-6, max_fixed=DIGITS)


def fmt(v) -> str:
    """Integers as is, reals with 30 significant digits, complex as ``a+bj``."""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (mp.mpc, complex)):
        re, im = mp.re(v), mp.im(v)
        if im == 0:
            return _num(re)
        return f"{_num(re)}{'+' if im >= 0 else '-'}{_num(abs(im))}j"
    return _num(mp.mpf(v))


def write_csv(path: str | Path, header: Sequence[str], rows) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if v is not None else "" for v in row])
    return path


@dataclass
class AnalysisResult:
    n_exact: int
    n_used: int
    mu: mp.mpf
    mu_estimate: mp.mpf
    mu_slope: mp.mpf
    window: tuple[int, int]
    singularities: dict[int, SingularitySummary] = field(default_factory=dict)
    alpha_min_n: int | None = None
    last_triple: tuple | None = None
    last_beta: tuple | None = None
    max_extension_rel_std: mp.mpf | None = None
    files: list[Path] = field(default_factory=list)

    def summary(self) -> str:
        lines = [f"exact terms: {self.n_exact}", f"terms analysed: {self.n_used}"]
        if self.max_extension_rel_std is not None:
            lines.append(f"extension max relative stddev: {mp.nstr(self.max_extension_rel_std, 5)}")
        for K, s in sorted(self.singularities.items()):
            line = (f"order {K} approximants ({s.members}): x_c = {mp.nstr(s.x, 10)} "
                    f"+- {mp.nstr(s.x_spread, 3)}, exponent {mp.nstr(s.exponent, 5)} "
                    f"+- {mp.nstr(s.exponent_spread, 3)}")
            if s.partner_x is not None:
                line += (f"; confluent partner ({s.partner_members}) at {mp.nstr(s.partner_x, 10)}"
                         f" exponent {mp.nstr(s.partner_exponent, 5)}")
            lines.append(line)
        lines.append(f"mu from intercepts n in [{self.window[0]}, {self.window[1]}]: "
                     f"{mp.nstr(self.mu_estimate, 12)} (slope {mp.nstr(self.mu_slope, 5)}); "
                     f"supplied mu {mp.nstr(self.mu, 12)}, relative difference "
                     f"{mp.nstr(abs(self.mu_estimate / self.mu - 1), 3)}")
        if self.alpha_min_n is not None:
            lines.append(f"alpha_n minimum at n = {self.alpha_min_n}")
        if self.last_triple is not None:
            m, a, b, d = self.last_triple
            lines.append(f"three-point fit at m = {m}: alpha {mp.nstr(a, 5)}, beta {mp.nstr(b, 5)}, d {mp.nstr(d, 5)}")
        if self.last_beta is not None:
            lines.append(f"beta_n (alpha = -1) at n = {self.last_beta[0]}: {mp.nstr(self.last_beta[1], 5)}")
        return "\n".join(lines) + "\n"


def analyze(coeffs, mu, out_dir: str | Path | None = None, extend: int | None = None,
            orders: Sequence[int] = (2, 3), window: int = 100,
            da_terms: int | None = None, threepoint_min: int = 20) -> AnalysisResult:
    """Estimators, approximant singularities and optional extension for one series.

    ``da_terms`` limits the approximant fits (singularities and extension) to
    the first that many coefficients.
    """
    f = check_coefficients(coeffs)
    mu = mp.mpf(mu)
    n_exact = len(f)
    fit_on = f[:da_terms] if da_terms else f
    files: list[Path] = []
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)

    std = None
    max_rel_std = None
    if extend:
        ext = SeriesExtender(horizon=extend, orders=orders).fit(fit_on)
        mean, std = ext.predict()
        f = f + mean[n_exact:]
        rel = [std[i] / abs(f[i]) for i in range(n_exact, len(f)) if f[i] != 0]
        max_rel_std = max(rel) if rel else mp.mpf(0)
        if out is not None:
            files.append(write_csv(out / "extension.csv", ["n", "mean", "stddev"],
                                  ((n, f[n], std[n]) for n in range(len(f)))))

    r = ratios(f)
    l = linear_intercepts(r)
    a = alpha_estimates(r, mu)
    tp = three_point_fit(r, mu, threepoint_min)
    bt = beta_refine(r, mu)
    tail = sorted(l)[-window:]
    mu_est, slope = extrapolate_intercepts(l, window)

    sings: dict[int, SingularitySummary] = {}
    sing_rows = []
    for K in orders:
        das = fit_grid(fit_on, default_grid(len(fit_on), orders=(K,)))
        if not das:
            continue
        try:
            sings[K] = summarize_singularities(das)
        except EmptyEnsemble as exc:
            log.warning("order %d: %s", K, exc)
        for da in das:
            for s in da_singularities(da):
                if s.physical:
                    sing_rows.append((K, " ".join(map(str, da.degrees)) + f" | {da.inhom_degree}",
                                      s.x, s.exponent))

    if out is not None:
        files.append(write_csv(out / "ratios.csv", ["n", "r_n", "1/n"],
                               ((n, v, mp.mpf(1) / n) for n, v in r.items())))
        files.append(write_csv(out / "intercepts.csv", ["n", "l_n", "1/(n log^2 n)"],
                               ((n, v, intercept_abscissa(n)) for n, v in l.items())))
        files.append(write_csv(out / "alpha.csv", ["n", "alpha_n", "1/log n"],
                               ((n, v, 1 / mp.log(n)) for n, v in a.items())))
        files.append(write_csv(out / "threepoint.csv", ["m", "alpha_m", "beta_m", "d_m"],
                               ((t.m, t.alpha, t.beta, t.d) for t in tp)))
        files.append(write_csv(out / "beta.csv", ["n", "beta_n"], bt.items()))
        with (out / "singularities.csv").open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["K", "degrees", "x_c", "exponent"])
            for K, degs, x, e in sing_rows:
                w.writerow([K, degs, fmt(x), fmt(e) if e is not None else ""])
        files.append(out / "singularities.csv")

    res = AnalysisResult(
        n_exact=n_exact, n_used=len(f), mu=mu, mu_estimate=mu_est, mu_slope=slope,
        window=(tail[0], tail[-1]), singularities=sings,
        alpha_min_n=trend_minimum(a) if a else None,
        last_triple=(tp[-1].m, tp[-1].alpha, tp[-1].beta, tp[-1].d) if tp else None,
        last_beta=max(bt.items()) if bt else None,
        max_extension_rel_std=max_rel_std, files=files)
    if out is not None:
        (out / "summary.txt").write_text(res.summary())
        res.files.append(out / "summary.txt")
    return res
