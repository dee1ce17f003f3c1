"""Coefficient engine for 4-valent planar Eulerian orientations (ice model).

Series: ``P(x,a,b,c)``, ``G(x,b,c) = 1 + Lam_a(P)``, ``J(x,c) = G(x,1,c)``
with

    P = x^2 b^2 (P(a,b,c) - P(a,1,c)) / (b - 1)
        + x b P(a,b,c) (a + 2 [c^1] G(b,c))
        + x b c (1 + P(a,1,c)) G(b,c)

and ``Lam_a(a^n) = [c^n] J``.  Then ``K = (1/x) [c^1] J`` (constant term dropped)
and ``A_v = 2 K_{2v}`` counts orientations with ``v`` vertices.
"""
from __future__ import annotations

import logging

import numpy as np

from ._tables import DependencyViolation, OrderTable
from .mseries import (
    XSeries, apply_lambda, conv_along, div_diff, fit_shape, matmul,
    outer_conv_last, reduce, series_mul, shift_axis, zeros,
)

log = logging.getLogger(__name__)

__all__ = ["FourValentState", "series_A", "OddPower", "DependencyViolation"]


class OddPower(ArithmeticError):
    """``K`` has a nonzero odd coefficient, which is impossible for 4-valent maps."""


class FourValentState:
    """Per-prime state of the 4-valent iteration, carried to x-order ``n_max``."""

    def __init__(self, prime: int | None, n_max: int, slack: int = 1):
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        self.prime = prime
        self.n_max = n_max
        self.slack = slack
        self.P = OrderTable("P", ("a", "b", "c"), self.size, prime)
        self.G = OrderTable("G", ("b", "c"), self.size, prime)
        self.J = OrderTable("J", ("c",), self.size, prime)
        self.PB = OrderTable("P(b=1)", ("a", "c"), self.size, prime)
        self.stage = -1

    def size(self, n: int) -> int:
        return max(n, 0) + 1 + self.slack

    def step(self, n: int) -> None:
        if n != self.stage + 1:
            raise DependencyViolation(f"stage {n} requested after stage {self.stage}")
        p, sz = self.prime, self.size(n)
        if n == 0:
            self.P.set(0, zeros((sz,) * 3, p))
            self.PB.set(0, zeros((sz, sz), p))
            G0 = zeros((sz, sz), p)
            G0[0, 0] = 1
            self.G.set(0, G0)
            self.J.set(0, G0.sum(axis=0))
            self.stage = 0
            return
        shape = (sz,) * 3
        out = zeros(shape, p)
        # x^2 b^2 (P(b) - P(1)) / (b - 1): suffix sums over b, then times b^2
        if n >= 2:
            Pm = self.P[n - 2]
            suffix = np.flip(np.cumsum(np.flip(Pm, 1), axis=1), 1)[:, 1:]
            out = out + fit_shape(shift_axis(reduce(suffix, p), 1, 2, p), shape, p, "P shift term")
        # x b (a P + 2 g1 P) with g1 = [c^1] G(b, c)
        inner = fit_shape(shift_axis(self.P[n - 1], 0, 1, p), shape, p, "aP")
        for i in range(1, n - 1):
            g1 = self.G[n - 1 - i][:, 1]
            part = conv_along(self.P[i], g1, 1, p)
            inner = inner + fit_shape(2 * part, shape, p, "g1*P")
        out = out + fit_shape(shift_axis(reduce(inner, p), 1, 1, p), shape, p, "b*inner")
        # x b c (1 + P(a,1,c)) G(b,c)
        acc = zeros((self.size(n - 1),) * 3, p)
        for i in range(n):
            Li = self.PB[i].copy()
            if i == 0:
                Li[0, 0] = 1 if p is None else (Li[0, 0] + 1) % p
            part = outer_conv_last(Li, self.G[n - 1 - i], p)   # [a, b, c]
            acc = reduce(acc + fit_shape(part, acc.shape, p, "(1+P)G"), p)
        acc = shift_axis(shift_axis(acc, 1, 1, p), 2, 1, p)
        out = reduce(out + fit_shape(acc, shape, p, "bc(1+P)G"), p)
        self.P.set(n, out)
        self.PB.set(n, reduce(out.sum(axis=1), p))
        # G_n = sum_m sum_q P_m[q] [x^(n-m)][c^q] J
        Gn = zeros((sz, sz), p)
        for m in range(1, n + 1):
            Pm = self.P[m]
            l = n - m
            if l == 0:
                Gn = Gn + fit_shape(Pm[0], Gn.shape, p, "G")
                continue
            Q = min(Pm.shape[0], self.J[l].shape[0])
            Jl = zeros((Pm.shape[0],), p)
            Jl[:Q] = self.J[l][:Q]
            part = matmul(np.moveaxis(Pm, 0, -1).reshape(-1, Pm.shape[0]), Jl[:, None], p)
            Gn = Gn + fit_shape(part.reshape(Pm.shape[1:]), Gn.shape, p, "G")
        Gn = reduce(Gn, p)
        self.G.set(n, Gn)
        self.J.set(n, reduce(Gn.sum(axis=0), p))
        self.stage = n

    def run(self) -> "FourValentState":
        while self.stage < self.n_max:
            self.step(self.stage + 1)
            log.debug("4-valent p=%s stage %d done", self.prime, self.stage)
        return self

    def series_K(self) -> list[int]:
        """``K_m = [x^(m+1)][c^1] J`` for ``m < n_max``; ``K_0`` is set to 0."""
        K = [0]
        for m in range(1, self.n_max):
            K.append(int(self.J[m + 1][1]))
        return K

    def tables(self) -> dict[str, XSeries]:
        return {t.name: t.to_xseries() for t in (self.P, self.G, self.J)}

    def residuals(self) -> dict[str, bool]:
        return fourvalent_residuals(self.tables())


def series_A(K: list[int], prime: int | None = None) -> list[int]:
    """``A_0 = 1`` and ``A_v = 2 K_{2v}``; odd ``K`` terms must vanish."""
    for m in range(1, len(K), 2):
        if K[m] != 0:
            raise OddPower(f"K[{m}] = {K[m]} is nonzero")
    A = [1] + [2 * K[2 * v] for v in range(1, (len(K) - 1) // 2 + 1)]
    return A if prime is None else [a % prime for a in A]


def fourvalent_residuals(tab: dict[str, XSeries]) -> dict[str, bool]:
    """Substitute P, G, J into their equations with the generic routines."""
    P, G, J = tab["P"], tab["G"], tab["J"]
    p, N = P.prime, P.n_max
    cap = max(P.caps) + 2
    caps = {v: cap for v in "abc"}

    def mono(x=0, **degs):
        vars = tuple(degs)
        return XSeries.from_terms(p, vars, (cap,) * len(vars), N,
                                  {(x,) + tuple(degs.values()): 1})

    res = {}
    t1 = div_diff(P, "b", "b", 1).shift(x=2, b=2)
    g1 = XSeries(p, ("b",), [c[:, 1] for c in G.coeffs], (G.cap("b"),))
    shifted = series_mul(P, mono(a=1) + series_mul(g1, mono(), N).scale(2), N, caps)
    t2 = shifted.shift(x=1, b=1)
    t3 = series_mul(mono() + P.at_one("b"), G, N, caps).shift(x=1, b=1, c=1)
    res["P"] = (P - (t1 + t2 + t3)).is_zero()
    G_rhs = apply_lambda(P, "a", J) + mono(b=0, c=0)
    res["G"] = (G - G_rhs).is_zero()
    res["J"] = (J - G.at_one("b")).is_zero()
    return res
