"""Differential approximants and series extension.

An approximant of order ``K`` is a linear ODE

    sum_{i=0..K} Q_i(x) theta^i f(x) = P(x),    theta = x d/dx,

whose polynomial coefficients are fitted so that it holds on consecutive
coefficients of ``f``.  Writing ``Q_i = sum_j q_ij x^j``, the coefficient of
``x^m`` reads

    sum_{i,j} q_ij (m - j)^i f_(m-j) = P_m,

which is also the recurrence used to extend the series.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath as mp
import numpy as np
from sklearn.base import BaseEstimator

from .estimators import SingularSystem
from .precision import mpf

log = logging.getLogger(__name__)


class InsufficientTerms(ValueError):
    pass


class RootFindingFailure(ArithmeticError):
    pass


class EmptyEnsemble(ArithmeticError):
    pass


def check_coefficients(X) -> list[mp.mpf]:
    """Coerce a 1-D coefficient sequence (ints, decimal strings, mpf) to mpf."""
    if hasattr(X, "coefficients"):
        X = X.coefficients
    if isinstance(X, np.ndarray) and X.ndim != 1:
        raise ValueError(f"expected a 1-D coefficient sequence, got shape {X.shape}")
    out = [mpf(int(c)) if isinstance(c, (np.integer,)) else mpf(c) for c in X]
    if not out:
        raise InsufficientTerms("empty coefficient sequence")
    return out


@dataclass
class Singularity:
    x: mp.mpc
    exponent: mp.mpc | None
    multiple: bool = False
    physical: bool = False
    confluent: bool = False

    @property
    def is_real(self) -> bool:
        return abs(mp.im(self.x)) <= mp.mpf(10) ** (-mp.mp.dps // 2) * abs(self.x)

    def __repr__(self) -> str:
        x = mp.nstr(mp.re(self.x) if self.is_real else self.x, 12)
        e = "None" if self.exponent is None else mp.nstr(mp.re(self.exponent) if self.is_real else self.exponent, 6)
        flags = [k for k in ("multiple", "physical", "confluent") if getattr(self, k)]
        return f"Singularity(x={x}, exponent={e}{''.join(', ' + f for f in flags)})"


class DifferentialApproximant(BaseEstimator):
    """Fit ``sum_i Q_i theta^i f = P`` to a coefficient sequence.

    Parameters
    ----------
    order : int
        ``K``, the highest power of ``theta``.
    degrees : sequence of int, length ``order + 1``
        Degrees of ``Q_0 .. Q_K``.
    inhom_degree : int
        Degree of ``P``; ``-1`` for a homogeneous approximant.
    offset : int
        First coefficient index whose equation is used.
    """

    def __init__(self, order: int = 2, degrees: Sequence[int] = (4, 4, 4),
                 inhom_degree: int = 0, offset: int = 0):
        self.order = order
        self.degrees = degrees
        self.inhom_degree = inhom_degree
        self.offset = offset

    # -- fitting ---------------------------------------------------------------
    @property
    def n_unknowns(self) -> int:
        """Free unknowns after normalization (= equations used)."""
        return sum(d + 1 for d in self.degrees) + self.inhom_degree + 1 - 1

    def _columns(self):
        cols = [("q", i, j) for i in range(self.order + 1) for j in range(self.degrees[i] + 1)]
        cols += [("p", -1, j) for j in range(self.inhom_degree + 1)]
        return cols

    @staticmethod
    def _entry(col, m, f):
        kind, i, j = col
        if kind == "p":
            return mp.mpf(-1) if j == m else mp.mpf(0)
        k = m - j
        if k < 0:
            return mp.mpf(0)
        return mp.mpf(k) ** i * f[k] if i else f[k]

    def fit(self, X, y=None):
        K = self.order
        if K < 1 or len(self.degrees) != K + 1 or min(self.degrees) < 0:
            raise ValueError("degrees must list K+1 non-negative degrees")
        if self.inhom_degree < -1:
            raise ValueError("inhom_degree must be >= -1")
        f = check_coefficients(X)
        U = self.n_unknowns
        rows = list(range(self.offset, self.offset + U))
        if rows[-1] >= len(f):
            raise InsufficientTerms(f"{U} equations need {self.offset + U} coefficients, have {len(f)}")
        cols = self._columns()
        full = [[self._entry(c, m, f) for c in cols] for m in rows]
        last_err = None
        for j in range(self.degrees[K] + 1):
            fixed = cols.index(("q", K, j))
            free = [c for c in range(len(cols)) if c != fixed]
            A = mp.matrix([[r[c] for c in free] for r in full])
            b = mp.matrix([-r[fixed] for r in full])
            try:
                sol = mp.lu_solve(A, b)
            except ZeroDivisionError as exc:
                last_err = exc
                continue
            values = {cols[fixed]: mp.mpf(1)}
            values.update({cols[c]: sol[k] for k, c in enumerate(free)})
            self.q_ = [[values[("q", i, jj)] for jj in range(self.degrees[i] + 1)]
                       for i in range(K + 1)]
            self.p_ = [values[("p", -1, jj)] for jj in range(self.inhom_degree + 1)]
            self.normalization_ = ("Q_K", j)
            self.coeffs_ = f
            self.rows_ = rows
            if j:
                log.debug("DA %s normalized on [x^%d]Q_K", self.get_params(), j)
            return self
        raise SingularSystem(f"approximant {self.get_params()} is singular") from last_err

    # -- checks ----------------------------------------------------------------
    def equation(self, m: int, f: Sequence) -> mp.mpf:
        """Left minus right side of the coefficient-``m`` equation."""
        s = mp.mpf(0)
        for i, qi in enumerate(self.q_):
            for j, q in enumerate(qi):
                k = m - j
                if k >= 0:
                    s += q * (mp.mpf(k) ** i if i else 1) * f[k]
        if m < len(self.p_):
            s -= self.p_[m]
        return s

    def max_residual(self) -> mp.mpf:
        """Largest relative residual over the equations used in the fit."""
        worst = mp.mpf(0)
        for m in self.rows_:
            scale = max(abs(self.coeffs_[k]) for k in range(max(0, m - max(self.degrees)), m + 1)) or 1
            worst = max(worst, abs(self.equation(m, self.coeffs_)) / scale)
        return worst

    def leading(self, m: int) -> tuple[mp.mpf, mp.mpf]:
        """Recurrence leading factor ``sum_i q_i0 m^i`` and its typical size."""
        terms = [q[0] * mp.mpf(m) ** i for i, q in enumerate(self.q_)]
        return mp.fsum(terms), mp.fsum(abs(t) for t in terms)

    # -- extension ---------------------------------------------------------------
    def extend(self, horizon: int) -> list[mp.mpf]:
        """Input coefficients followed by recurrence predictions through ``horizon``."""
        f = list(self.coeffs_[: horizon + 1])
        for m in range(len(f), horizon + 1):
            lead, _ = self.leading(m)
            if lead == 0:
                raise ZeroDivisionError(f"recurrence leading factor vanishes at m={m}")
            f.append(0)
            f[m] = -self.equation(m, f) / lead
        return f

    def predict(self, X: Iterable[int]) -> list[mp.mpf]:
        idx = [int(n) for n in X]
        ext = self.extend(max(idx))
        return [ext[n] for n in idx]

    # -- singularities -------------------------------------------------------------
    def singularities(self) -> list[Singularity]:
        return da_singularities(self)


def fit_da(coeffs, order: int, degrees: Sequence[int], inhom_degree: int = 0,
           offset: int = 0) -> DifferentialApproximant:
    return DifferentialApproximant(order, tuple(degrees), inhom_degree, offset).fit(coeffs)


def _polyval(c: Sequence, x):
    s = 0
    for a in reversed(c):
        s = s * x + a
    return s


def _poly_roots(c: list[mp.mpf]) -> list[mp.mpc]:
    """Roots of ``sum c_j x^j``: companion-matrix seeds, then Newton at full precision."""
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    deg = len(c) - 1
    if deg < 1:
        return []
    dc = [j * c[j] for j in range(1, deg + 1)]
    tol = mp.mpf(10) ** (-(mp.mp.dps * 3) // 4)
    roots = []
    try:
        lead = c[-1]
        monic = np.array([complex(a / lead) for a in c], dtype=complex)
        if not np.all(np.isfinite(monic)):
            raise OverflowError
        comp = np.zeros((deg, deg), dtype=complex)
        comp[1:, :-1] = np.eye(deg - 1)
        comp[:, -1] = -monic[:-1]
        seeds = np.linalg.eigvals(comp)
        for s in seeds:
            x = mp.mpc(s.real, s.imag)
            for _ in range(200):
                step = _polyval(c, x) / _polyval(dc, x)
                x -= step
                if abs(step) <= tol * abs(x):
                    break
            else:
                raise ArithmeticError("Newton did not converge")
            roots.append(x)
        for a in range(deg):
            for b in range(a + 1, deg):
                if abs(roots[a] - roots[b]) <= tol * 1e6 * abs(roots[a]):
                    raise ArithmeticError("two seeds polished to one root")
        return roots
    except (ArithmeticError, OverflowError, np.linalg.LinAlgError) as exc:
        log.debug("companion/Newton root finding failed (%s); using polyroots", exc)
    try:
        return [mp.mpc(r) for r in mp.polyroots(list(reversed(c)), maxsteps=400,
                                                extraprec=mp.mp.prec)]
    except mp.libmp.NoConvergence as exc:
        raise RootFindingFailure(str(exc)) from exc


def da_singularities(da: DifferentialApproximant, confluence: float = 1e-3) -> list[Singularity]:
    """Roots of ``Q_K`` with exponents, nearest first."""
    K = da.order
    qK, qK1 = da.q_[K], da.q_[K - 1]
    dqK = [j * qK[j] for j in range(1, len(qK))]
    roots = [r for r in _poly_roots(list(qK)) if r != 0]
    roots.sort(key=abs)
    out = []
    for r in roots:
        d = _polyval(dqK, r)
        scale = mp.fsum(abs(a) * abs(r) ** j for j, a in enumerate(dqK)) or 1
        if abs(d) <= mp.mpf(10) ** (-mp.mp.dps // 3) * scale:
            out.append(Singularity(r, None, multiple=True))
            continue
        alpha = K - 1 - _polyval(qK1, r) / (r * d)
        out.append(Singularity(r, alpha))
    pos = [s for s in out if s.is_real and mp.re(s.x) > 0]
    if pos:
        ref = min(abs(s.x) for s in pos)
        for s in out:
            s.physical = abs(s.x) < 1 and abs(s.x) <= 10 * ref
    for a, s in enumerate(out):
        for b, t in enumerate(out):
            if a != b and abs(s.x - t.x) < confluence * abs(s.x):
                s.confluent = True
    return out


def default_grid(n_terms: int, orders: Sequence[int] = (2, 3),
                 inhom: Sequence[int] = (0, 1, 2, 3),
                 span: tuple[int, int] | None = None, offset: int = 0) -> list[dict]:
    """Near-balanced approximants using between ``N-10`` and ``N-2`` equations."""
    lo, hi = span or (n_terms - 10, n_terms - 2)
    hi = min(hi, n_terms - offset)
    grid = []
    for K in orders:
        for dP in inhom:
            for U in range(max(lo, 1), hi + 1):
                total = U + 1 - (dP + 1)      # sum of (d_i + 1)
                base, extra = divmod(total, K + 1)
                if base < 1:
                    continue
                degs = tuple(base - 1 + (1 if i >= K + 1 - extra else 0) for i in range(K + 1))
                grid.append({"order": K, "degrees": degs, "inhom_degree": dP, "offset": offset})
    return grid


class SeriesExtender(BaseEstimator):
    """Ensemble of approximants whose recurrences extend a series.

    ``fit`` fits every grid member, dropping singular ones and those whose
    recurrence leading factor nearly vanishes over the extension range.
    Defective members are dropped too: a root of ``Q_K`` lying more than
    ``defect_tol`` (relative) inside the ensemble's median nearest positive
    real singularity makes the recurrence grow faster than the series.
    ``predict`` returns the per-index mean and standard deviation.
    """

    def __init__(self, grid: Sequence[dict] | None = None, horizon: int = 500,
                 n_fit: int | None = None, orders: Sequence[int] = (2, 3),
                 inhom: Sequence[int] = (0, 1, 2, 3), min_members: int = 3,
                 lead_tol: float = 1e-30, defect_tol: float | None = 0.01):
        self.grid = grid
        self.horizon = horizon
        self.n_fit = n_fit
        self.orders = orders
        self.inhom = inhom
        self.min_members = min_members
        self.lead_tol = lead_tol
        self.defect_tol = defect_tol

    def fit(self, X, y=None):
        f = check_coefficients(X)
        if self.n_fit is not None:
            f = f[: self.n_fit]
        grid = self.grid if self.grid is not None else default_grid(len(f), self.orders, self.inhom)
        members, rejected = [], []
        for params in grid:
            da = DifferentialApproximant(**params)
            try:
                da.fit(f)
            except (SingularSystem, InsufficientTerms) as exc:
                rejected.append((params, str(exc)))
                continue
            bad = None
            for m in range(len(f), self.horizon + 1):
                lead, typical = da.leading(m)
                if typical == 0 or abs(lead) < self.lead_tol * typical:
                    bad = m
                    break
            if bad is not None:
                rejected.append((params, f"leading factor vanishes near m={bad}"))
                continue
            members.append(da)
        if self.defect_tol is not None:
            members = self._drop_defective(members, rejected)
        if len(members) < self.min_members:
            raise EmptyEnsemble(f"only {len(members)} usable approximants (need {self.min_members})")
        self.coeffs_ = f
        self.members_ = members
        self.rejected_ = rejected
        self.extensions_ = [da.extend(self.horizon) for da in members]
        return self

    def _drop_defective(self, members, rejected):
        radii = []
        for da in members:
            try:
                roots = [r for r in _poly_roots(list(da.q_[-1])) if r != 0]
            except RootFindingFailure:
                roots = []
            pos = [mp.re(r) for r in roots if mp.re(r) > 0 and abs(mp.im(r)) <= 1e-20 * abs(r)]
            radii.append((min((abs(r) for r in roots), default=None), min(pos, default=None)))
        nearest = [x for _, x in radii if x is not None]
        if not nearest:
            return members
        x0 = _median(nearest)
        kept = []
        for da, (rmin, _) in zip(members, radii):
            if rmin is not None and rmin < (1 - self.defect_tol) * x0:
                rejected.append((da.get_params(), f"root of Q_K at |x| = {mp.nstr(rmin, 6)} inside {mp.nstr(x0, 8)}"))
            else:
                kept.append(da)
        return kept

    def predict(self, X=None):
        """``(mean, stddev)`` lists indexed ``0 .. horizon`` (or at indices ``X``)."""
        k = len(self.extensions_)
        n = self.horizon + 1
        mean = [mp.fsum(e[i] for e in self.extensions_) / k for i in range(n)]
        std = [mp.sqrt(mp.fsum((e[i] - mean[i]) ** 2 for e in self.extensions_) / (k - 1))
               if k > 1 else mp.mpf(0) for i in range(n)]
        for i in range(min(n, len(self.coeffs_))):
            mean[i], std[i] = self.coeffs_[i], mp.mpf(0)
        if X is None:
            return mean, std
        idx = [int(i) for i in X]
        return [mean[i] for i in idx], [std[i] for i in idx]


def extend_series(coeffs, ensemble: Sequence[dict] | None = None, horizon: int = 500,
                  **kwargs) -> tuple[list[mp.mpf], list[mp.mpf]]:
    ext = SeriesExtender(grid=ensemble, horizon=horizon, **kwargs).fit(coeffs)
    return ext.predict()


@dataclass
class SingularitySummary:
    """Ensemble medians and spreads of the nearest singularity and its partner."""
    members: int
    x: mp.mpf
    x_spread: mp.mpf
    exponent: mp.mpf
    exponent_spread: mp.mpf
    partner_members: int = 0
    partner_x: mp.mpf | None = None
    partner_exponent: mp.mpf | None = None
    partner_exponent_spread: mp.mpf | None = None


def _median(v: list[mp.mpf]) -> mp.mpf:
    v = sorted(v)
    k = len(v)
    return v[k // 2] if k % 2 else (v[k // 2 - 1] + v[k // 2]) / 2


def _spread(v: list[mp.mpf]) -> mp.mpf:
    if len(v) < 2:
        return mp.mpf(0)
    m = mp.fsum(v) / len(v)
    return mp.sqrt(mp.fsum((x - m) ** 2 for x in v) / (len(v) - 1))


def _real_candidates(da: DifferentialApproximant, confluence: float) -> list[Singularity]:
    return [s for s in da_singularities(da, confluence)
            if s.is_real and mp.re(s.x) > 0 and s.exponent is not None]


def nearest_pair(da: DifferentialApproximant, confluence: float = 1e-3,
                 near: mp.mpf | None = None, cluster: float | None = None):
    """Positive real singularity nearest the origin and the closest other root
    within ``confluence`` relative distance of it.

    With ``near`` and ``cluster`` the roots within ``cluster`` relative
    distance of ``near`` form a confluent group, and its member with the
    smallest exponent (the one dominating the coefficients) is taken instead.
    """
    sing = _real_candidates(da, confluence)
    if not sing:
        return None, None
    if near is not None:
        sing.sort(key=lambda s: abs(mp.re(s.x) - near))
        if cluster is not None:
            group = [s for s in sing if abs(mp.re(s.x) - near) <= cluster * near]
            if group:
                lead = min(group, key=lambda s: mp.re(s.exponent))
                sing.remove(lead)
                sing.insert(0, lead)
    first = sing[0]
    others = [s for s in sing[1:] if abs(s.x - first.x) < confluence * abs(first.x)]
    partner = min(others, key=lambda s: abs(s.x - first.x)) if others else None
    return first, partner


def summarize_singularities(das: Sequence[DifferentialApproximant],
                            confluence: float = 1e-3,
                            cluster: float = 5e-3) -> SingularitySummary:
    """Two passes: the median nearest root fixes a consensus location, then each
    approximant contributes the most singular root within ``cluster`` of it.
    This keeps isolated spurious roots of ``Q_K``, and weak roots inside a
    confluent group, from being taken as the singularity."""
    firsts = []
    for da in das:
        try:
            first, _ = nearest_pair(da, confluence)
        except RootFindingFailure:
            continue
        if first is not None:
            firsts.append(mp.re(first.x))
    if not firsts:
        raise EmptyEnsemble("no approximant has a positive real singularity")
    x0 = _median(firsts)
    xs, es, px, pe = [], [], [], []
    for da in das:
        try:
            first, partner = nearest_pair(da, confluence, near=x0, cluster=cluster)
        except RootFindingFailure:
            continue
        if first is None:
            continue
        xs.append(mp.re(first.x))
        es.append(mp.re(first.exponent))
        if partner is not None:
            px.append(mp.re(partner.x))
            pe.append(mp.re(partner.exponent))
    out = SingularitySummary(len(xs), _median(xs), _spread(xs), _median(es), _spread(es))
    if px:
        out.partner_members = len(px)
        out.partner_x = _median(px)
        out.partner_exponent = _median(pe)
        out.partner_exponent_spread = _spread(pe)
    return out


def fit_grid(coeffs, grid: Sequence[dict]) -> list[DifferentialApproximant]:
    """Fit every grid member, silently dropping singular ones."""
    f = check_coefficients(coeffs)
    out = []
    for params in grid:
        try:
            out.append(DifferentialApproximant(**params).fit(f))
        except (SingularSystem, InsufficientTerms):
            log.debug("dropping singular approximant %s", params)
    return out
