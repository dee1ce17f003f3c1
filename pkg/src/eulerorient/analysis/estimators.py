"""Ratio-based estimators for coefficients ``~ C mu^n n^(alpha-1) (log n)^beta``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath as mp

from .precision import mpf


class ZeroCoefficient(ZeroDivisionError):
    pass


class SingularSystem(ArithmeticError):
    pass


Seq = dict[int, mp.mpf]


def ratios(coeffs: Sequence) -> Seq:
    """``r_n = f_n / f_(n-1)`` for ``n >= 2``, keyed by ``n``."""
    f = [mpf(c) for c in coeffs]
    out = {}
    for n in range(2, len(f)):
        if f[n - 1] == 0 or f[n] == 0:
            raise ZeroCoefficient(f"coefficient {n - 1 if f[n - 1] == 0 else n} is zero")
        out[n] = f[n] / f[n - 1]
    return out


def linear_intercepts(r: Seq) -> Seq:
    """``l_n = n r_n - (n-1) r_(n-1)``, which removes the ``1/n`` term."""
    return {n: n * r[n] - (n - 1) * r[n - 1] for n in sorted(r) if n - 1 in r}


def alpha_estimates(r: Seq, mu) -> Seq:
    """``alpha_n = (r_n / mu - 1) n + 1``."""
    mu = mpf(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    return {n: (rn / mu - 1) * n + 1 for n, rn in sorted(r.items())}


@dataclass
class Triple:
    m: int
    alpha: mp.mpf
    beta: mp.mpf
    d: mp.mpf


def three_point_fit(r: Seq, mu, m_min: int = 20) -> list[Triple]:
    """Solve ``alpha_n = alpha + (beta-1)/log n - d/log^2 n`` at ``n = m-1, m, m+1``."""
    a = alpha_estimates(r, mu)
    out = []
    for m in sorted(a):
        if m < max(m_min, 3) or m - 1 not in a or m + 1 not in a:
            continue
        rows, rhs = [], []
        for n in (m - 1, m, m + 1):
            L = mp.log(n)
            rows.append([1, 1 / L, -1 / L**2])
            rhs.append(a[n])
        try:
            sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
        except ZeroDivisionError as exc:
            raise SingularSystem(f"three-point system singular at m={m}") from exc
        out.append(Triple(m, sol[0], sol[1] + 1, sol[2]))
    return out


def beta_refine(r: Seq, mu) -> Seq:
    """``beta_n = (r_n/mu - 1 + 2/n) n log n + 1``, which assumes ``alpha = -1``."""
    mu = mpf(mu)
    return {n: (rn / mu - 1 + mp.mpf(2) / n) * n * mp.log(n) + 1
            for n, rn in sorted(r.items())}


def intercept_abscissa(n: int) -> mp.mpf:
    return 1 / (n * mp.log(n) ** 2)


def extrapolate_intercepts(l: Seq, window: int | tuple[int, int] = 100) -> tuple[mp.mpf, mp.mpf]:
    """Least-squares line through ``(1/(n log^2 n), l_n)`` over the tail.

    ``window`` is a count of trailing points or an inclusive ``(n_lo, n_hi)``
    range.  Returns ``(intercept, slope)``; the intercept estimates ``mu``.
    """
    ns = sorted(l)
    if isinstance(window, tuple):
        ns = [n for n in ns if window[0] <= n <= window[1]]
    else:
        ns = ns[-window:]
    if len(ns) < 2:
        raise ValueError("need at least two intercepts to extrapolate")
    xs = [intercept_abscissa(n) for n in ns]
    ys = [l[n] for n in ns]
    k = len(xs)
    mx, my = mp.fsum(xs) / k, mp.fsum(ys) / k
    sxx = mp.fsum((x - mx) ** 2 for x in xs)
    sxy = mp.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return my - slope * mx, slope


def trend_minimum(seq: Seq) -> int:
    """Index ``n`` at which ``seq`` is smallest."""
    return min(seq, key=lambda n: seq[n])
