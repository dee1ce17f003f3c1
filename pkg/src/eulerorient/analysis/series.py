"""Reference series and growth constants used by the analysis."""
from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .precision import mpf


def mu_constants() -> dict[str, mp.mpf]:
    """Conjectured growth constants at the current working precision."""
    return {"4pi": 4 * mp.pi, "4sqrt3pi": 4 * mp.sqrt(3) * mp.pi}


def parse_mu(text: str | float) -> mp.mpf:
    """``"4pi"``, ``"4sqrt3pi"`` or a decimal literal."""
    consts = mu_constants()
    key = str(text).strip().lower()
    if key in consts:
        return consts[key]
    try:
        value = mpf(key)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"cannot parse mu={text!r}") from exc
    if value <= 0:
        raise ValueError("mu must be positive")
    return value


def test_series(mu, n_max: int) -> list[mp.mpf]:
    """Taylor coefficients of ``-x (1 - mu x) / log(1 - mu x)`` through ``x^n_max``.

    With ``u = mu x`` this is ``(1 - u) G(u) / mu`` where ``G = -u / log(1 - u)``,
    so ``[x^0] = 1/mu``.
    """
    mu = mpf(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    # G(u) = 1 / sum_k u^k / (k + 1)
    h = [mp.mpf(1) / (k + 1) for k in range(n_max + 1)]
    g = [mp.mpf(1)]
    for k in range(1, n_max + 1):
        g.append(-mp.fsum(h[j] * g[k - j] for j in range(1, k + 1)))
    return [(g[k] - (g[k - 1] if k else 0)) * mu ** (k - 1) for k in range(n_max + 1)]


test_series.__test__ = False  # not a pytest test despite the name


def eulerian_map_series(n_max: int) -> list[int]:
    """Coefficients of ``(8t^2 + 12t - 1 + (1 - 8t)^(3/2)) / (32 t^2)`` (exact)."""
    # (1 - 8t)^(3/2) = sum_k binom(3/2, k) (-8t)^k
    half = Fraction(3, 2)
    b = Fraction(1)
    root = []
    for k in range(n_max + 3):
        root.append(b * (-8) ** k)
        b = b * (half - k) / (k + 1)
    num = root[:]
    num[0] += -1
    num[1] += 12
    num[2] += 8
    if num[0] != 0 or num[1] != 0:
        raise ArithmeticError("closed form numerator should vanish to order t^2")
    out = []
    for n in range(n_max + 1):
        v = num[n + 2] / 32
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient at t^{n}")
        out.append(int(v))
    return out
