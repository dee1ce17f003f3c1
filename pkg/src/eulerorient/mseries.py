"""Truncated multivariate power series over a prime field.

An :class:`XSeries` is a power series in ``x`` whose coefficients are dense
polynomials in a small set of catalytic variables (``a, b, c, z, y``).  Each
coefficient is a numpy array with one axis per variable; axis length is the
variable's degree cap plus one.

``prime=None`` switches every routine to exact integer arithmetic on
``dtype=object`` arrays.  That path is slow and only meant for cross-checks
at small orders.

The module has two layers.  The :class:`XSeries` methods and the free
functions :func:`series_mul`, :func:`div_diff`, :func:`coeff_extract`,
:func:`apply_lambda` and :func:`apply_omega` are general and readable; the
solvers use the low-level kernels (:func:`matmul`, :func:`contract_conv`,
:func:`hankel`, ...) directly for speed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

VARIABLES = ("a", "b", "c", "z", "y")

# Operands are split into 16-bit limbs before int64 matmul, so a contraction
# of length < 2**16 cannot overflow for primes below 2**31.
_LIMB = 16
_LIMB_MASK = (1 << _LIMB) - 1
# Float path: limb width chosen per call so that p * limb * K < 2**53.
_F_MAX_K = 1 << 11


class SeriesError(ArithmeticError):
    pass


class CapOverflow(SeriesError):
    """A product produced a nonzero term beyond a declared degree cap."""


class PrimeMismatch(SeriesError):
    pass


class CapMismatch(SeriesError):
    pass


class NonDivisible(SeriesError):
    """Exact monomial division was requested but the series has low terms."""


# -- field kernels ------------------------------------------------------------

def dtype_for(p: int | None):
    return object if p is None else np.int64


def zeros(shape, p: int | None) -> np.ndarray:
    if p is None:
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out
    return np.zeros(shape, dtype=np.int64)


def reduce(arr: np.ndarray, p: int | None) -> np.ndarray:
    return arr if p is None else np.asarray(np.mod(arr, p))


def as_field(arr, p: int | None) -> np.ndarray:
    if p is None:
        out = np.empty(np.shape(arr), dtype=object)
        out[...] = np.asarray(arr, dtype=object)
        return out
    return np.asarray(np.mod(np.asarray(arr, dtype=np.int64), p))


def matmul(A: np.ndarray, B: np.ndarray, p: int | None) -> np.ndarray:
    """``A @ B`` reduced mod ``p``, overflow-safe for ``p < 2**31``."""
    if p is None:
        return A @ B
    K = A.shape[-1]
    if K <= _F_MAX_K:
        # float64 BLAS on limbs of B sized so every partial sum stays below 2**53
        bits = min(16, 53 - 31 - max(K - 1, 1).bit_length())
        Af = A.astype(np.float64)
        out = None
        for i in range(0, 31, bits):
            Bi = ((B >> i) & ((1 << bits) - 1)).astype(np.float64)
            Ci = _fmod(Af @ Bi, p)
            left = i
            while left:
                k = min(left, 22)
                Ci = _fmod(Ci * float(1 << k), p)
                left -= k
            out = Ci if out is None else _fmod(out + Ci, p)
        return _fmod(out, p).astype(np.int64)
    if A.shape[-1] >= (1 << _LIMB):
        raise ValueError("contraction too long for limb-split matmul")
    lo = A @ (B & _LIMB_MASK)
    hi = A @ (B >> _LIMB)
    return (lo % p + ((hi % p) << _LIMB)) % p


def _fmod(x: np.ndarray, p: int) -> np.ndarray:
    """Exact ``x mod p`` for non-negative integral float64 ``x < 2**53``."""
    r = x - np.floor(x * (1.0 / p)) * p
    r[r < 0] += p
    r[r >= p] -= p
    return r


def toeplitz(v: np.ndarray, n_in: int, n_out: int, p: int | None) -> np.ndarray:
    """Matrix ``M[i, o] = v[o - i]`` so that ``u @ M`` is ``conv(u, v)``."""
    M = zeros((n_in, n_out), p)
    L = len(v)
    for i in range(n_in):
        hi = min(n_out, i + L)
        if hi > i:
            M[i, i:hi] = v[: hi - i]
    return M


def hankel(X: np.ndarray, axis: int, offset: int, n_e: int, n_s: int,
           p: int | None) -> np.ndarray:
    """Replace ``axis`` (index ``k``) by two axes ``(e, s)`` with
    ``out[..., e, s, ...] = X[..., s + e + offset, ...]`` (zero past the end).

    This is the coefficient layout of the divided difference
    ``(f(v) - f(w)) / (v - w)`` with ``e`` the power of ``w`` and ``s`` the
    power of ``v`` when ``offset == 1``.
    """
    X = np.moveaxis(X, axis, 0)
    K = X.shape[0]
    need = n_e + n_s - 1 + offset
    if need > K:
        pad = zeros((need - K,) + X.shape[1:], p)
        X = np.concatenate([X, pad], axis=0)
    idx = np.arange(n_e)[:, None] + np.arange(n_s)[None, :] + offset
    out = X[idx]
    return np.moveaxis(out, (0, 1), (axis, axis + 1))


def contract_conv(X: np.ndarray, Y: np.ndarray, p: int | None) -> np.ndarray:
    """``out[a, r] = sum_{a1 + a2 = a} sum_e X[a1, e, r] * Y[e, a2]``.

    ``X`` has shape ``(A1, E, *rest)`` and ``Y`` shape ``(E, A2)``; the
    result has shape ``(A1 + A2 - 1, *rest)``.  This is the common shape of
    every heavy product in the solvers: a contraction over one catalytic
    variable fused with a convolution over another.
    """
    A1, E = X.shape[:2]
    rest = X.shape[2:]
    E2, A2 = Y.shape
    if E2 < E:
        raise CapMismatch(f"contraction axis {E} exceeds table rows {E2}")
    Y = Y[:E]
    R = int(np.prod(rest, dtype=np.int64)) if rest else 1
    out = zeros((A1 + A2 - 1, R), p)
    if A1 == 0 or E == 0 or R == 0:
        return out.reshape((A1 + A2 - 1,) + rest)
    Xm = np.moveaxis(X.reshape(A1, E, R), 1, 2).reshape(A1 * R, E)
    Z = matmul(Xm, Y, p).reshape(A1, R, A2)
    for a1 in range(A1):
        out[a1:a1 + A2] += Z[a1].T
    return reduce(out, p).reshape((A1 + A2 - 1,) + rest)


def conv2(A: np.ndarray, B: np.ndarray, p: int | None) -> np.ndarray:
    """Full 2-D convolution of two coefficient arrays."""
    (A1, B1), (A2, B2) = A.shape, B.shape
    Bo = B1 + B2 - 1
    # Y[b1, a2, b] = B[a2, b - b1]
    Y = zeros((B1, A2, Bo), p)
    for b1 in range(B1):
        Y[b1, :, b1:b1 + B2] = B
    Z = matmul(A, Y.reshape(B1, A2 * Bo), p).reshape(A1, A2, Bo)
    out = zeros((A1 + A2 - 1, Bo), p)
    for a1 in range(A1):
        out[a1:a1 + A2] += Z[a1]
    return reduce(out, p)


def conv_along(X: np.ndarray, v: np.ndarray, axis: int, p: int | None) -> np.ndarray:
    """Convolve ``X`` with the 1-D vector ``v`` along ``axis``."""
    n_in = X.shape[axis]
    n_out = n_in + len(v) - 1
    M = toeplitz(v, n_in, n_out, p)
    Xm = np.moveaxis(X, axis, -1)
    out = matmul(Xm.reshape(-1, n_in), M, p).reshape(Xm.shape[:-1] + (n_out,))
    return np.moveaxis(out, -1, axis)


def outer_conv_last(X: np.ndarray, Y: np.ndarray, p: int | None) -> np.ndarray:
    """``out[u, v, c] = sum_{c1 + c2 = c} X[u, c1] * Y[v, c2]``."""
    U, C1 = X.shape
    V, C2 = Y.shape
    Co = C1 + C2 - 1
    # T[c1, v, c] = Y[v, c - c1]
    T = zeros((C1, V, Co), p)
    for c1 in range(C1):
        T[c1, :, c1:c1 + C2] = Y
    return matmul(X, T.reshape(C1, V * Co), p).reshape(U, V, Co)


def fit_shape(arr: np.ndarray, shape: Sequence[int], p: int | None,
              what: str = "series") -> np.ndarray:
    """Pad or truncate ``arr`` to ``shape``; truncated entries must vanish."""
    for ax, (have, want) in enumerate(zip(arr.shape, shape)):
        if have > want:
            tail = np.take(arr, range(want, have), axis=ax)
            if np.any(reduce(tail, p) != 0):
                raise CapOverflow(f"{what}: nonzero degree >= {want} on axis {ax}")
            arr = np.take(arr, range(want), axis=ax)
    if arr.shape != tuple(shape):
        out = zeros(shape, p)
        out[tuple(slice(0, s) for s in arr.shape)] = arr
        arr = out
    return arr


def shift_axis(arr: np.ndarray, axis: int, k: int, p: int | None,
               what: str = "series") -> np.ndarray:
    """Multiply by ``v**k`` (``k > 0``) or divide exactly (``k < 0``)."""
    if k == 0:
        return arr
    if k > 0:
        pad = [(0, 0)] * arr.ndim
        pad[axis] = (k, 0)
        if p is None:
            out = zeros(tuple(s + (k if i == axis else 0) for i, s in enumerate(arr.shape)), p)
            sl = [slice(None)] * arr.ndim
            sl[axis] = slice(k, None)
            out[tuple(sl)] = arr
            return out
        return np.pad(arr, pad)
    k = -k
    head = np.take(arr, range(min(k, arr.shape[axis])), axis=axis)
    if np.any(reduce(head, p) != 0):
        raise NonDivisible(f"{what}: not divisible by v^{k} on axis {axis}")
    return np.take(arr, range(k, arr.shape[axis]), axis=axis)


def binomial_table(n_max: int, p: int | None) -> np.ndarray:
    """``B[n, k] = C(n, k) mod p`` for ``0 <= k <= n <= n_max`` via Pascal's rule."""
    B = zeros((n_max + 1, n_max + 1), p)
    B[:, 0] = 1
    for n in range(1, n_max + 1):
        B[n, 1:n + 1] = reduce(B[n - 1, 1:n + 1] + B[n - 1, 0:n], p)
    return B


# -- generic series -----------------------------------------------------------

@dataclass
class XSeries:
    """Power series in ``x`` with dense polynomial coefficients.

    ``coeffs[n]`` is the coefficient of ``x**n``: an array with one axis per
    entry of ``vars``, of shape ``caps + 1``.
    """

    prime: int | None
    vars: tuple[str, ...]
    coeffs: list[np.ndarray]
    caps: tuple[int, ...] = field(default=())

    def __post_init__(self):
        self.vars = tuple(self.vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.vars}")
        if not self.caps:
            self.caps = tuple(
                max((c.shape[i] for c in self.coeffs), default=1) - 1
                for i in range(len(self.vars)))
        self.caps = tuple(int(c) for c in self.caps)
        shape = tuple(c + 1 for c in self.caps)
        self.coeffs = [fit_shape(as_field(c, self.prime), shape, self.prime)
                       for c in self.coeffs]

    # construction ----------------------------------------------------------
    @classmethod
    def zero(cls, prime, vars, caps, n_max) -> "XSeries":
        shape = tuple(c + 1 for c in caps)
        return cls(prime, tuple(vars), [zeros(shape, prime) for _ in range(n_max + 1)], tuple(caps))

    @classmethod
    def from_terms(cls, prime, vars, caps, n_max,
                   terms: Mapping[tuple[int, ...], int]) -> "XSeries":
        """Build from ``{(x_deg, deg_var0, deg_var1, ...): coefficient}``."""
        s = cls.zero(prime, vars, caps, n_max)
        for key, val in terms.items():
            n, degs = key[0], tuple(key[1:])
            if n > n_max:
                continue
            if any(d > c for d, c in zip(degs, caps)):
                raise CapOverflow(f"term {key} exceeds caps {caps}")
            s.coeffs[n][degs] = val if prime is None else val % prime
        return s

    @classmethod
    def from_univariate(cls, prime, values: Sequence[int]) -> "XSeries":
        return cls(prime, (), [as_field(np.array(v), prime) for v in values], ())

    def copy(self) -> "XSeries":
        return XSeries(self.prime, self.vars, [c.copy() for c in self.coeffs], self.caps)

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def cap(self, var: str) -> int:
        return self.caps[self.vars.index(var)]

    def terms(self) -> dict[tuple[int, ...], int]:
        """Nonzero coefficients as ``{(x_deg, *var_degs): value}``."""
        out = {}
        for n, c in enumerate(self.coeffs):
            for idx in zip(*np.nonzero(reduce(c, self.prime))):
                out[(n,) + tuple(int(i) for i in idx)] = int(c[idx])
        return out

    def univariate(self) -> list[int]:
        if self.vars:
            raise ValueError(f"series still has variables {self.vars}")
        return [int(c) for c in self.coeffs]

    def _check(self, other: "XSeries"):
        if self.prime != other.prime:
            raise PrimeMismatch(f"{self.prime} vs {other.prime}")

    # layout ----------------------------------------------------------------
    def aligned(self, vars: Sequence[str], caps: Sequence[int]) -> "XSeries":
        """Reorder/extend axes to ``vars``; absent variables get degree 0."""
        missing = set(self.vars) - set(vars)
        if missing:
            raise ValueError(f"cannot drop variables {missing}")
        coeffs = []
        for c in self.coeffs:
            arr = c
            for v in vars:
                if v not in self.vars:
                    arr = arr[..., None]
            order = [self.vars.index(v) if v in self.vars else None for v in vars]
            extra = iter(range(len(self.vars), len(vars)))
            perm = [o if o is not None else next(extra) for o in order]
            arr = np.transpose(arr, perm)
            coeffs.append(fit_shape(arr, tuple(k + 1 for k in caps), self.prime))
        return XSeries(self.prime, tuple(vars), coeffs, tuple(caps))

    def rename(self, mapping: Mapping[str, str]) -> "XSeries":
        return XSeries(self.prime, tuple(mapping.get(v, v) for v in self.vars),
                       [c.copy() for c in self.coeffs], self.caps)

    def truncate(self, n_max: int) -> "XSeries":
        coeffs = self.coeffs[: n_max + 1]
        while len(coeffs) < n_max + 1:
            coeffs.append(zeros(tuple(k + 1 for k in self.caps), self.prime))
        return XSeries(self.prime, self.vars, coeffs, self.caps)

    # linear structure -------------------------------------------------------
    def _binary(self, other: "XSeries", sign: int) -> "XSeries":
        self._check(other)
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        caps = tuple(max(self.cap(v) if v in self.vars else 0,
                         other.cap(v) if v in other.vars else 0) for v in vars)
        n = min(self.n_max, other.n_max)
        f, g = self.aligned(vars, caps), other.aligned(vars, caps)
        coeffs = [reduce(f.coeffs[i] + sign * g.coeffs[i], self.prime) for i in range(n + 1)]
        return XSeries(self.prime, vars, coeffs, caps)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def scale(self, k: int) -> "XSeries":
        return XSeries(self.prime, self.vars,
                       [reduce(c * k, self.prime) for c in self.coeffs], self.caps)

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        if self.prime != other.prime:
            return False
        return (self - other).is_zero() and (other - self).is_zero()

    def is_zero(self) -> bool:
        return all(not np.any(reduce(c, self.prime) != 0) for c in self.coeffs)

    def shift(self, x: int = 0, **degs: int) -> "XSeries":
        """Multiply by ``x**x * prod(v**k)``; negative powers divide exactly."""
        coeffs = [c for c in self.coeffs]
        caps = list(self.caps)
        for v, k in degs.items():
            ax = self.vars.index(v)
            coeffs = [shift_axis(c, ax, k, self.prime, v) for c in coeffs]
            caps[ax] = max(caps[ax] + k, 0)
        zero = zeros(tuple(k + 1 for k in caps), self.prime)
        coeffs = [fit_shape(c, tuple(k + 1 for k in caps), self.prime) for c in coeffs]
        if x > 0:
            coeffs = [zero.copy() for _ in range(x)] + coeffs[: len(coeffs) - x]
        elif x < 0:
            for c in coeffs[:-x]:
                if np.any(reduce(c, self.prime) != 0):
                    raise NonDivisible(f"series not divisible by x^{-x}")
            coeffs = coeffs[-x:] + [zero.copy() for _ in range(-x)]
        return XSeries(self.prime, self.vars, coeffs, tuple(caps))

    def at_one(self, var: str) -> "XSeries":
        """Specialize ``var := 1``."""
        ax = self.vars.index(var)
        vars = self.vars[:ax] + self.vars[ax + 1:]
        caps = self.caps[:ax] + self.caps[ax + 1:]
        return XSeries(self.prime, vars,
                       [reduce(c.sum(axis=ax), self.prime) for c in self.coeffs], caps)


def series_mul(f: XSeries, g: XSeries, x_cap: int | None = None,
               caps: Mapping[str, int] | None = None) -> XSeries:
    """Truncated product through ``x**x_cap``.

    Degree caps default to the larger of the operands' caps per variable;
    any product term beyond a cap raises :class:`CapOverflow`.
    """
    f._check(g)
    p = f.prime
    vars = f.vars + tuple(v for v in g.vars if v not in f.vars)
    caps = dict(caps or {})
    out_caps = tuple(caps.get(v, max(f.cap(v) if v in f.vars else 0,
                                     g.cap(v) if v in g.vars else 0)) for v in vars)
    if x_cap is None:
        x_cap = min(f.n_max, g.n_max)
    fa = f.aligned(vars, [f.cap(v) if v in f.vars else 0 for v in vars])
    ga = g.aligned(vars, [g.cap(v) if v in g.vars else 0 for v in vars])
    shape = tuple(k + 1 for k in out_caps)
    coeffs = [zeros(shape, p) for _ in range(x_cap + 1)]
    for j, gc in enumerate(ga.coeffs[: x_cap + 1]):
        nz = list(zip(*np.nonzero(reduce(gc, p))))
        if not nz:
            continue
        for i, fc in enumerate(fa.coeffs[: x_cap + 1 - j]):
            if not np.any(reduce(fc, p) != 0):
                continue
            full = zeros(tuple(a + b - 1 for a, b in zip(fc.shape, gc.shape)), p)
            for idx in nz:
                sl = tuple(slice(k, k + s) for k, s in zip(idx, fc.shape))
                full[sl] = reduce(full[sl] + fc * gc[idx], p)
            coeffs[i + j] = reduce(coeffs[i + j] + fit_shape(full, shape, p, "series_mul"), p)
    return XSeries(p, vars, coeffs, out_caps)


def div_diff(f: XSeries, var: str, v1: str, v2: str | int) -> XSeries:
    """``(f(v1) - f(v2)) / (v1 - v2)`` computed by geometric-sum expansion.

    ``var`` is replaced by ``v1``; ``v2`` is a new variable appended at the
    end, or the integer ``1`` for the specialization ``(f(v1)-f(1))/(v1-1)``.
    """
    p = f.prime
    ax = f.vars.index(var)
    K = f.caps[ax]
    vars = list(f.vars)
    vars[ax] = v1
    if v2 == 1:
        coeffs = []
        for c in f.coeffs:
            c = np.moveaxis(c, ax, 0)
            # out[s] = sum_{k > s} f[k]
            suffix = np.flip(np.cumsum(np.flip(c, 0), axis=0), 0)
            out = reduce(suffix[1:], p) if K > 0 else zeros((1,) + c.shape[1:], p)
            coeffs.append(np.moveaxis(out, 0, ax))
        caps = list(f.caps)
        caps[ax] = max(K - 1, 0)
        return XSeries(p, tuple(vars), coeffs, tuple(caps))
    if v2 in f.vars or v1 in (w for w in f.vars if w != var):
        raise ValueError("divided-difference variables must be fresh")
    n = max(K, 1)
    coeffs = []
    for c in f.coeffs:
        h = hankel(c, ax, 1, n, n, p)  # axes: ..., e (power of v2), s (power of v1), ...
        h = np.moveaxis(h, ax, -1)     # move e to the end
        coeffs.append(h)
    caps = list(f.caps)
    caps[ax] = n - 1
    caps.append(n - 1)
    return XSeries(p, tuple(vars) + (v2,), coeffs, tuple(caps))


def coeff_extract(f: XSeries, var: str, k: int) -> XSeries:
    ax = f.vars.index(var)
    if k > f.caps[ax]:
        raise CapMismatch(f"[{var}^{k}] beyond cap {f.caps[ax]}")
    vars = f.vars[:ax] + f.vars[ax + 1:]
    caps = f.caps[:ax] + f.caps[ax + 1:]
    return XSeries(f.prime, vars, [np.take(c, k, axis=ax) for c in f.coeffs], caps)


def _apply_table(f: XSeries, var: str, table: np.ndarray) -> XSeries:
    """``[x^N] out = sum_{n + l = N} sum_m f_n[..., m, ...] * table[m, l]``."""
    p = f.prime
    ax = f.vars.index(var)
    vars = f.vars[:ax] + f.vars[ax + 1:]
    caps = f.caps[:ax] + f.caps[ax + 1:]
    M = f.caps[ax] + 1
    if table.shape[0] < M:
        raise CapMismatch(f"{var}-cap {f.caps[ax]} exceeds operator table ({table.shape[0] - 1})")
    L = table.shape[1]
    if L < f.n_max + 1:
        raise CapMismatch(f"operator table known through x^{L - 1} only")
    shape = tuple(k + 1 for k in caps)
    coeffs = [zeros(shape, p) for _ in range(f.n_max + 1)]
    for n, c in enumerate(f.coeffs):
        cm = np.moveaxis(c, ax, -1)
        if not np.any(reduce(cm, p) != 0):
            continue
        prod = matmul(cm.reshape(-1, M), table[:M, : f.n_max + 1 - n], p)
        prod = prod.reshape(shape + (f.n_max + 1 - n,))
        for l in range(f.n_max + 1 - n):
            coeffs[n + l] = reduce(coeffs[n + l] + prod[..., l], p)
    return XSeries(p, vars, coeffs, caps)


def lambda_table(J: XSeries) -> np.ndarray:
    """``table[n, l] = [x^l][c^n] J(x, c)``."""
    if J.vars != ("c",):
        raise ValueError("J must be a series in c alone")
    return np.stack(J.coeffs, axis=1)


def apply_lambda(f: XSeries, var: str, J: XSeries) -> XSeries:
    """Linear map ``var**n -> [c^n] J(x, c)``."""
    if f.prime != J.prime:
        raise PrimeMismatch(f"{f.prime} vs {J.prime}")
    return _apply_table(f, var, lambda_table(J))


class OmegaWeights:
    """The substitution table of ``z**n -> sum_j C(n+j-1, n-1) [c^j] F(x, c)``.

    ``table[n, l]`` holds ``[x^l]`` of the image of ``z**n``.  Columns are
    appended one x-order at a time with :meth:`add_order`, which lets a
    solver build the table while ``F`` itself is being computed.
    """

    def __init__(self, prime: int | None, n_cap: int, c_cap: int):
        self.prime = prime
        self.n_cap = n_cap
        self.c_cap = c_cap
        self.binom = binomial_table(n_cap + c_cap, prime)
        # weights[n, j] = C(n + j - 1, n - 1); row 0 is handled separately.
        w = zeros((n_cap + 1, c_cap + 1), prime)
        for n in range(1, n_cap + 1):
            w[n] = self.binom[n - 1 + np.arange(c_cap + 1), n - 1]
        self.weights = w
        self.columns: list[np.ndarray] = []

    @classmethod
    def from_series(cls, F: XSeries, n_cap: int) -> "OmegaWeights":
        if F.vars != ("c",):
            raise ValueError("F must be a series in c alone")
        W = cls(F.prime, n_cap, F.cap("c"))
        for Fl in F.coeffs:
            W.add_order(Fl)
        return W

    def add_order(self, F_l: np.ndarray) -> None:
        """Append ``[x^l]`` of every image given ``[x^l] F`` (a vector in c)."""
        l = len(self.columns)
        F_l = fit_shape(as_field(F_l, self.prime), (self.c_cap + 1,), self.prime, "F")
        col = matmul(self.weights, F_l[:, None], self.prime)[:, 0]
        col[0] = 1 if l == 0 else 0
        self.columns.append(col)

    @property
    def orders(self) -> int:
        return len(self.columns)

    @property
    def table(self) -> np.ndarray:
        return np.stack(self.columns, axis=1)

    def image(self, n: int) -> list[int]:
        """Coefficients of the image of ``z**n`` for the known x-orders."""
        return [int(c[n]) for c in self.columns]

    def pascal_ok(self) -> bool:
        B, p = self.binom, self.prime
        lhs = B[1:, 1:]
        rhs = reduce(B[:-1, 1:] + B[:-1, :-1], p)
        return bool(np.all(lhs == rhs))


def apply_omega(f: XSeries, var: str, w: OmegaWeights) -> XSeries:
    if f.prime != w.prime:
        raise PrimeMismatch(f"{f.prime} vs {w.prime}")
    return _apply_table(f, var, w.table)


def poly_terms(arrays: Iterable[np.ndarray], p: int | None) -> dict:
    """Nonzero entries of a list of arrays as ``{(n, *idx): value}``."""
    out = {}
    for n, c in enumerate(arrays):
        for idx in zip(*np.nonzero(reduce(c, p))):
            out[(n,) + tuple(int(i) for i in idx)] = int(c[idx])
    return out
