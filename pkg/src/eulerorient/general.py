"""Coefficient engine for rooted planar Eulerian orientations counted by edges.

The series involved (all power series in ``x`` with polynomial coefficients):

``T(x,a,b,c)``, ``S(x,a,b)``, ``R(x,a,b)``, ``H(x,b,c)``, ``M(x,a,c)``,
``F(x,c)``, linked by

    R = abx + R S / (abx)
    S = Om_z( x^2 a^2 b^2 + R(a,z) b (z S(a,b) - b S(a,z)) / (z (b - z))
              + a^2 / z^2 R(z,b) S(z,b) )
    H = 1 + Om_z( T(z,b,c) R(z,b) / (xbz) )
    M = 1 + Om_z( T(a,z,c) R(a,z) / (xaz) )
    F = Om_z( H(x,z,c) )
    T = Om_z( b R(a,z) (T(a,b,c) - T(a,z,c)) / (b - z) )
        + xb(c - a) H(b,c) M(a,c) + xab H(b,c)

with ``Om_z(z^0) = 1`` and ``Om_z(z^n) = sum_j C(n+j-1, n-1) [c^j] F``.
Coefficients of ``x^n`` are produced in the order T, S, R, H, M, F; each
right-hand side only reads orders that are already known.

Internally every ``Om_z`` that hits a product with ``R`` is evaluated through
the precomputed images

    PsiA[N][e, a] = [x^N] Om_z(z^e R(x, a, z))
    PsiB[N][e, b] = [x^N] Om_z(z^(e-1) R(x, z, b))

so that each heavy term becomes one :func:`contract_conv` call.
"""
from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from ._tables import DependencyViolation, OrderTable
from .mseries import (
    NonDivisible, OmegaWeights, XSeries, apply_omega, contract_conv, conv2,
    div_diff, fit_shape, hankel, matmul, outer_conv_last, reduce, series_mul,
    shift_axis, zeros,
)

log = logging.getLogger(__name__)

__all__ = ["GeneralState", "series_U", "DependencyViolation"]


class GeneralState:
    """Per-prime state of the general-model fixed-point iteration.

    Parameters
    ----------
    prime : int or None
        Working modulus; ``None`` runs in exact integers (slow).
    n_max : int
        Highest x-order of ``V`` and ``U`` wanted.  The tables are carried
        to ``n_max`` and ``S``, ``R`` one order further, which ``V`` needs.
    slack : int
        Catalytic degree cap at x-order ``n`` is ``n + slack``.
    """

    def __init__(self, prime: int | None, n_max: int, slack: int = 1):
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        self.prime = prime
        self.n_max = n_max
        self.slack = slack
        size = self.size
        p = prime
        self.T = OrderTable("T", ("a", "b", "c"), size, p)
        self.S = OrderTable("S", ("a", "b"), size, p)
        self.R = OrderTable("R", ("a", "b"), size, p)
        self.H = OrderTable("H", ("b", "c"), size, p)
        self.M = OrderTable("M", ("a", "c"), size, p)
        self.F = OrderTable("F", ("c",), size, p)
        self.Y = OrderTable("RS", ("a", "b"), size, p)   # [x^n] R*S
        top = size(n_max + 1)
        self.n_psi = top
        self.omega = OmegaWeights(p, 2 * top + 1, top - 1)
        self.psiA: dict[int, np.ndarray] = {}
        self.psiB: dict[int, np.ndarray] = {}
        self.stage = -1

    def size(self, n: int) -> int:
        return max(n, 0) + 1 + self.slack

    # -- helpers -------------------------------------------------------------
    def _W(self, rows: slice | np.ndarray, l: int) -> np.ndarray:
        if l >= self.omega.orders:
            raise DependencyViolation(f"Omega weights at x^{l} requested before F[x^{l}]")
        return self.omega.columns[l][rows]

    def _psi(self, N: int):
        """Fill ``PsiA[N]`` and ``PsiB[N]``; needs R through N, F through N-1."""
        p, E = self.prime, self.n_psi
        A = zeros((E, self.size(N)), p)
        B = zeros((E, self.size(N)), p)
        for j in range(1, N + 1):
            Rj = self.R[j]
            Q = Rj.shape[1]
            l = N - j
            col = self._W(slice(None), l)
            # Hankel of the weight column: Wh[q, e] = W[e + q, l]
            idx = np.arange(Q)[:, None] + np.arange(E)[None, :]
            A[:, : Rj.shape[0]] += matmul(Rj, col[idx], p).T
            # PsiB uses R's first argument as z with one power removed.
            idx_b = np.maximum(idx - 1, 0)
            Wb = col[idx_b]
            Wb[0, :] = 0  # q = 0 rows of R vanish; never read W[-1]
            B[:, : Rj.shape[1]] += matmul(Rj.T, Wb, p).T
        self.psiA[N] = reduce(A, p)
        self.psiB[N] = reduce(B, p)

    # -- one stage -----------------------------------------------------------
    def step(self, n: int, partial: bool = False) -> None:
        """Compute ``[x^n]`` of T, S, R, H, M, F (only S and R if ``partial``)."""
        if n != self.stage + 1:
            raise DependencyViolation(f"stage {n} requested after stage {self.stage}")
        p = self.prime
        sz = self.size(n)
        if n == 0:
            one2 = zeros((sz, sz), p)
            one2[0, 0] = 1
            self.T.set(0, zeros((sz,) * 3, p))
            self.S.set(0, zeros((sz, sz), p))
            self.R.set(0, zeros((sz, sz), p))
            self.Y.set(0, zeros((sz, sz), p))
            self.Y.set(1, zeros((self.size(1),) * 2, p))
            self.H.set(0, one2)
            self.M.set(0, one2.copy())
            F0 = zeros((sz,), p)
            F0[0] = 1
            self.omega.add_order(self.F.set(0, F0))
            self.stage = 0
            return

        if not partial:
            self.T.set(n, self._T_order(n))
        self.S.set(n, self._S_order(n))
        # R_n = [n == 1] ab + [x^(n+1)](R S) / (ab)
        Y = zeros((self.size(n + 1),) * 2, p)
        for i in range(1, n):
            Y = reduce(Y + fit_shape(conv2(self.R[i], self.S[n + 1 - i], p),
                                     Y.shape, p, "R*S"), p)
        self.Y.set(n + 1, Y)
        Rn = shift_axis(shift_axis(Y, 0, -1, p, "RS/a"), 1, -1, p, "RS/b")
        Rn = fit_shape(Rn, (sz, sz), p, "R")
        if n == 1:
            Rn[1, 1] = (Rn[1, 1] + 1) if p is None else (Rn[1, 1] + 1) % p
        self.R.set(n, Rn)
        if partial:
            self.stage = n
            return
        self._psi(n)
        self.H.set(n, self._H_order(n))
        self.M.set(n, self._M_order(n))
        Fn = zeros((sz,), p)
        for m in range(1, n + 1):
            Hm = self.H[m]
            Fn[: Hm.shape[1]] += matmul(self._W(slice(0, Hm.shape[0]), n - m)[None, :], Hm, p)[0]
        self.omega.add_order(self.F.set(n, reduce(Fn, p)))
        self.stage = n

    def _T_order(self, n: int) -> np.ndarray:
        p, sz = self.prime, self.size(n)
        out = zeros((sz,) * 3, p)
        for i in range(1, n):
            Ti = self.T[i]
            K = Ti.shape[1]
            # X[a1, e, s, c] = T_i[a1, s + e + 1, c]
            X = hankel(Ti, 1, 1, K - 1, K - 1, p)
            part = contract_conv(X, self.psiA[n - i], p)      # [a, s, c]
            part = shift_axis(part, 1, 1, p)                  # times b
            out = reduce(out + fit_shape(part, out.shape, p, "T omega term"), p)
        # x b (c - a) H(b,c) M(a,c) + x a b H(b,c)
        HM = zeros((self.size(n - 1),) * 3, p)
        for i in range(n):
            Mi, Hj = self.M[i], self.H[n - 1 - i]
            prod = outer_conv_last(Mi, Hj, p)                 # [a, b, c]
            HM = reduce(HM + fit_shape(prod, HM.shape, p, "H*M"), p)
        Hprev = self.H[n - 1]
        term = fit_shape(shift_axis(HM, 2, 1, p), (sz,) * 3, p, "c*HM")
        term = term - fit_shape(shift_axis(HM, 0, 1, p), (sz,) * 3, p, "a*HM")
        term = term + fit_shape(shift_axis(Hprev[None, :, :], 0, 1, p), (sz,) * 3, p, "a*H")
        term = fit_shape(shift_axis(reduce(term, p), 1, 1, p), (sz,) * 3, p, "b*term")
        return reduce(out + term, p)

    def _S_order(self, n: int) -> np.ndarray:
        p, sz = self.prime, self.size(n)
        out = zeros((sz, sz), p)
        if n == 2:
            out[2, 2] = 1
        for i in range(2, n):
            St = shift_axis(self.S[i], 1, -1, p, "S/b")       # S(a,b)/b
            K = St.shape[1]
            X = hankel(St, 1, 1, K - 1, K - 1, p)             # [a1, e, t]
            part = contract_conv(X, self.psiA[n - i], p)      # [a, t]
            part = shift_axis(part, 1, 2, p)                  # times b^2
            out = reduce(out + fit_shape(part, out.shape, p, "S kernel term"), p)
        # a^2 Om_z(z^-2 R(z,b) S(z,b))
        acc = zeros((sz,), p)
        for m in range(3, n + 1):
            Ym = shift_axis(self.Y[m], 0, -2, p, "RS/z^2")
            w = self._W(slice(0, Ym.shape[0]), n - m)
            row = matmul(w[None, :], Ym, p)[0]
            acc = reduce(acc + fit_shape(row, (sz,), p, "S third term"), p)
        out[2] = reduce(out[2] + acc, p)
        return out

    def _H_order(self, n: int) -> np.ndarray:
        p, sz = self.prime, self.size(n)
        out = zeros((sz + 1, sz), p)
        for i in range(1, n + 1):
            N = n + 1 - i
            X = np.transpose(self.T[i], (1, 0, 2))           # [b1, z1, c]
            part = contract_conv(X, self.psiB[N], p)          # [b, c]
            out = reduce(out + fit_shape(part, out.shape, p, "H term"), p)
        out = shift_axis(out, 0, -1, p, "H/b")
        out = fit_shape(out, (sz, sz), p, "H")
        return out

    def _M_order(self, n: int) -> np.ndarray:
        p, sz = self.prime, self.size(n)
        out = zeros((sz + 1, sz), p)
        for i in range(1, n + 1):
            N = n + 1 - i
            Ti = self.T[i]
            if np.any(reduce(Ti[:, 0, :], p) != 0):
                raise NonDivisible("T has terms free of b")
            X = Ti[:, 1:, :]                                   # [a1, e = z1 - 1, c]
            part = contract_conv(X, self.psiA[N], p)          # [a, c]
            out = reduce(out + fit_shape(part, out.shape, p, "M term"), p)
        out = shift_axis(out, 0, -1, p, "M/a")
        return fit_shape(out, (sz, sz), p, "M")

    # -- driver --------------------------------------------------------------
    def run(self) -> "GeneralState":
        while self.stage < self.n_max:
            self.step(self.stage + 1)
            log.debug("general p=%s stage %d done", self.prime, self.stage)
        if self.stage == self.n_max:
            self.step(self.n_max + 1, partial=True)
        return self

    def series_V(self, formula: Literal["direct", "product"] = "direct") -> list[int]:
        """Coefficients of ``V = Om_y Om_z(R(x,y,z)/(xyz) - 1)`` through n_max.

        ``formula="product"`` uses ``Om_y Om_z(R S / (x^2 y^2 z^2))`` instead,
        which agrees with the direct form exactly when R satisfies its
        equation.
        """
        p, N = self.prime, self.n_max
        if self.stage < N + 1:
            raise DependencyViolation("series_V needs the solver run through n_max")
        V = [0] * (N + 1)
        for m in range(1, N + 1):
            if formula == "direct":
                rho = self.R[m + 1]
                rho = shift_axis(shift_axis(rho, 0, -1, p, "R/y"), 1, -1, p, "R/z")
            elif formula == "product":
                rho = self.Y[m + 2]
                rho = shift_axis(shift_axis(rho, 0, -2, p, "RS/y^2"), 1, -2, p, "RS/z^2")
            else:
                raise ValueError(f"unknown formula {formula!r}")
            L = N - m
            Wm = np.stack([self._W(slice(0, rho.shape[0]), l) for l in range(L + 1)], axis=1)
            Wm2 = np.stack([self._W(slice(0, rho.shape[1]), l) for l in range(L + 1)], axis=1)
            G = matmul(matmul(Wm.T.copy(), rho, p), Wm2, p)   # [l1, l2]
            for l1 in range(L + 1):
                for l2 in range(L + 1 - l1):
                    V[m + l1 + l2] += int(G[l1, l2])
        if p is not None:
            V = [v % p for v in V]
        return V

    # -- views for checks ------------------------------------------------------
    def tables(self) -> dict[str, XSeries]:
        """Computed tables as :class:`XSeries` (R and S carried one order further)."""
        out = {}
        for t in (self.T, self.S, self.R, self.H, self.M, self.F):
            out[t.name] = t.to_xseries()
        for name in ("S", "R"):
            if len(getattr(self, name)) > len(self.T):
                out[name] = out[name].truncate(len(self.T) - 1)
        return out

    def residuals(self) -> dict[str, bool]:
        """Substitute the tables back into every equation with the generic
        series routines; ``True`` means the equation holds through ``n_max``."""
        return general_residuals(self.tables(), self.omega_for_check())

    def omega_for_check(self) -> OmegaWeights:
        F = self.F.to_xseries()
        top = 2 * self.size(len(self.T)) + 4
        return OmegaWeights.from_series(F, top)


def series_U(V: list[int], prime: int | None = None) -> list[int]:
    """``U = 2 V + 1``."""
    U = [1] + [2 * v for v in V[1:]]
    return U if prime is None else [u % prime for u in U]


def general_residuals(tab: dict[str, XSeries], W: OmegaWeights) -> dict[str, bool]:
    """Check each defining equation through the common x-order of ``tab``."""
    T, S, R, H, M, F = (tab[k] for k in ("T", "S", "R", "H", "M", "F"))
    p = T.prime
    N = T.n_max
    cap = max(T.caps) + 2
    caps = {v: cap for v in "abcz"}

    def mono(x=0, **degs):
        vars = tuple(degs)
        return XSeries.from_terms(p, vars, (cap,) * len(vars), N,
                                  {(x,) + tuple(degs.values()): 1})

    Raz = R.rename({"b": "z"})
    Rzb = R.rename({"a": "z"})
    res = {}

    RS = series_mul(R, S, N + 1, caps)
    R_rhs = RS.shift(x=-1, a=-1, b=-1).truncate(N) + mono(1, a=1, b=1)
    res["R"] = (R - R_rhs).is_zero()

    kern = div_diff(S.shift(b=-1), "b", "b", "z")            # S/b divided in b, z
    t2 = apply_omega(series_mul(kern, Raz, N, caps).shift(b=2), "z", W)
    t3 = apply_omega(series_mul(Rzb, S.rename({"a": "z"}), N, caps).shift(z=-2), "z", W)
    S_rhs = t2 + series_mul(t3, mono(a=2), N, caps) + mono(2, a=2, b=2)
    res["S"] = (S - S_rhs).is_zero()

    arg = series_mul(T.rename({"a": "z"}), Rzb, N + 1, caps).shift(x=-1, b=-1, z=-1)
    H_rhs = apply_omega(arg.truncate(N), "z", W) + mono(b=0, c=0)
    res["H"] = (H - H_rhs).is_zero()

    arg = series_mul(T.rename({"b": "z"}), Raz, N + 1, caps).shift(x=-1, a=-1, z=-1)
    M_rhs = apply_omega(arg.truncate(N), "z", W) + mono(a=0, c=0)
    res["M"] = (M - M_rhs).is_zero()

    res["F"] = (F - apply_omega(H.rename({"b": "z"}), "z", W)).is_zero()

    dd = div_diff(T, "b", "b", "z")
    t1 = apply_omega(series_mul(dd, Raz, N, caps).shift(b=1), "z", W)
    c_minus_a = mono(c=1) - mono(a=1)
    t2 = series_mul(series_mul(H, M, N, caps), c_minus_a, N, caps).shift(x=1, b=1)
    t3 = series_mul(H, mono(a=1), N, caps).shift(x=1, b=1)
    res["T"] = (T - (t1 + t2 + t3)).is_zero()
    return res
