"""Prime-field helpers and Chinese-remainder reconstruction.

All counting series handled by this package have non-negative integer
coefficients, so plain CRT (no rational reconstruction) is enough.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

PRIME_LIMIT = 2**31

# Deterministic Miller-Rabin witnesses for n < 3,215,031,751.
_MR_BASES = (2, 3, 5, 7)


class NonInvertible(ArithmeticError):
    pass


class DuplicatePrime(ValueError):
    pass


class NotEnoughPrimes(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic primality test, valid for all ``n < 2**31``."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    if n >= 3_215_031_751:
        raise ValueError("is_prime is only deterministic below 3215031751")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def select_primes(count: int, seed_bound: int = PRIME_LIMIT) -> list[int]:
    """Return the ``count`` largest primes strictly below ``seed_bound``.

    Only odd primes below ``2**31`` are eligible.
    """
    if count < 1:
        raise ValueError("count must be positive")
    out: list[int] = []
    n = min(seed_bound, PRIME_LIMIT) - 1
    while len(out) < count and n >= 3:
        if is_prime(n):
            out.append(n)
        n -= 1
    if len(out) < count:
        raise NotEnoughPrimes(f"only {len(out)} primes in [3, {seed_bound})")
    return out


def primes_needed(n_max: int, bits_per_term: float = 4.0) -> int:
    """Prime count for coefficients through x^n_max bounded by 2**(bits*n)."""
    return math.ceil(n_max * bits_per_term / 30) + 2


@dataclass(frozen=True)
class ResidueValue:
    value: int
    prime: int

    def __post_init__(self):
        if not 0 <= self.value < self.prime:
            raise ValueError(f"{self.value} is not reduced mod {self.prime}")

    @classmethod
    def of(cls, n: int, prime: int) -> "ResidueValue":
        return cls(n % prime, prime)


def inv_mod(a: ResidueValue) -> ResidueValue:
    if a.value % a.prime == 0:
        raise NonInvertible(f"0 has no inverse mod {a.prime}")
    return ResidueValue(pow(a.value, -1, a.prime), a.prime)


def crt_combine(residues: Sequence[ResidueValue]) -> int:
    """Smallest non-negative integer congruent to every residue.

    Garner-style incremental combination; the caller is responsible for
    supplying enough primes that the true value lies below their product.
    """
    if not residues:
        raise ValueError("need at least one residue")
    seen: set[int] = set()
    value, modulus = 0, 1
    for r in residues:
        if r.prime in seen:
            raise DuplicatePrime(r.prime)
        seen.add(r.prime)
        inv = inv_mod(ResidueValue.of(modulus, r.prime)).value
        t = (r.value - value) * inv % r.prime
        value += modulus * t
        modulus *= r.prime
    return value


def crt_sequences(rows: dict[int, Sequence[int]]) -> list[int]:
    """Combine per-prime coefficient sequences ``{prime: [c0, c1, ...]}``."""
    lengths = {len(v) for v in rows.values()}
    if len(lengths) != 1:
        raise ValueError(f"residue sequences differ in length: {sorted(lengths)}")
    (n,) = lengths
    return [
        crt_combine([ResidueValue(int(seq[i]) % p, p) for p, seq in rows.items()])
        for i in range(n)
    ]


# -- residue dump files -----------------------------------------------------

def write_residue_dump(path: str | Path, model: str, prime: int,
                       values: Iterable[int]) -> Path:
    values = [int(v) for v in values]
    path = Path(path)
    lines = [f"# model={model} prime={prime} nmax={len(values) - 1}"]
    lines += [f"{n} {v}" for n, v in enumerate(values)]
    path.write_text("\n".join(lines) + "\n")
    return path


def read_residue_dump(path: str | Path) -> tuple[dict[str, str], list[int]]:
    """Parse a dump written by :func:`write_residue_dump`.

    Returns the header fields and the residue list indexed by ``n``.
    """
    header: dict[str, str] = {}
    values: dict[int, int] = {}
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            for field in line[1:].split():
                key, _, val = field.partition("=")
                header[key] = val
            continue
        n, v = line.split()
        values[int(n)] = int(v)
    nmax = int(header.get("nmax", max(values, default=-1)))
    if sorted(values) != list(range(nmax + 1)):
        raise ValueError(f"{path}: indices do not cover 0..{nmax}")
    return header, [values[n] for n in range(nmax + 1)]
