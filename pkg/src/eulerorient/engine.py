"""Per-prime solver runs, CRT reconstruction and the series file format."""
from __future__ import annotations

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .fourvalent import FourValentState, series_A
from .general import GeneralState, series_U
from .residues import (
    PRIME_LIMIT, crt_sequences, primes_needed, select_primes, write_residue_dump,
)

log = logging.getLogger(__name__)

MODELS = ("general", "fourvalent")


class CRTUnstable(ArithmeticError):
    """Adding a prime changed a reconstructed coefficient."""


@dataclass
class IntegerSeries:
    model: str
    coefficients: list[int]
    primes: list[int] = field(default_factory=list, compare=False)

    @property
    def n_max(self) -> int:
        return len(self.coefficients) - 1

    def to_json(self) -> str:
        doc = {"model": self.model, "n_max": self.n_max,
               "coefficients": [str(c) for c in self.coefficients]}
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "IntegerSeries":
        doc = json.loads(text)
        coeffs = [int(c) for c in doc["coefficients"]]
        if doc.get("n_max", len(coeffs) - 1) != len(coeffs) - 1:
            raise ValueError("n_max does not match the coefficient count")
        return cls(doc.get("model", "unknown"), coeffs)

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_json())
        return path

    @classmethod
    def read(cls, path: str | Path) -> "IntegerSeries":
        return cls.from_json(Path(path).read_text())


def x_order(model: str, n_max: int) -> int:
    """Solver x-order needed for ``n_max`` output terms."""
    if model == "general":
        return n_max
    if model == "fourvalent":
        return 2 * n_max + 1
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def residues_for(model: str, n_max: int, prime: int | None, slack: int = 1) -> list[int]:
    """U_0..U_n_max (general) or A_0..A_n_max (fourvalent) mod ``prime``."""
    if model == "general":
        st = GeneralState(prime, n_max, slack).run()
        return series_U(st.series_V("direct"), prime)
    if model == "fourvalent":
        st = FourValentState(prime, x_order(model, n_max), slack).run()
        return series_A(st.series_K(), prime)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def _job(args):
    model, n_max, p, slack = args
    return p, residues_for(model, n_max, p, slack)


def thread_budget(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get("EULER_ORIENT_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, threads)


def run_primes(model: str, n_max: int, primes: list[int], slack: int = 1,
               threads: int | None = None) -> dict[int, list[int]]:
    """Solver residues for each prime; results keyed and ordered as ``primes``."""
    jobs = [(model, n_max, p, slack) for p in primes]
    workers = min(thread_budget(threads), len(jobs))
    if workers == 1:
        results = dict(map(_job, jobs))
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = dict(ex.map(_job, jobs))
    return {p: results[p] for p in primes}


def compute_series(model: str, n_max: int, n_primes: int | None = None,
                   prime_bound: int = PRIME_LIMIT, threads: int | None = None,
                   dump_dir: str | Path | None = None, slack: int = 1) -> IntegerSeries:
    """Exact coefficients via CRT, checked by one extra prime."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    k = n_primes or primes_needed(x_order(model, n_max))
    primes = select_primes(k + 1, prime_bound)
    rows = run_primes(model, n_max, primes, slack, threads)
    base = crt_sequences({p: rows[p] for p in primes[:k]})
    check = crt_sequences(rows)
    if base != check:
        bad = [n for n, (u, v) in enumerate(zip(base, check)) if u != v]
        raise CRTUnstable(f"coefficients {bad[:5]} changed with an extra prime; use more primes")
    if dump_dir is not None:
        dump_dir = Path(dump_dir)
        dump_dir.mkdir(parents=True, exist_ok=True)
        for p, vals in rows.items():
            write_residue_dump(dump_dir / f"{model}_{p}.txt", model, p, vals)
    return IntegerSeries(model, base, primes)


def compute_exact(model: str, n_max: int, slack: int = 1) -> IntegerSeries:
    """Same series in exact integer arithmetic (small ``n_max`` only)."""
    return IntegerSeries(model, [int(v) for v in residues_for(model, n_max, None, slack)])


def blob_hash(path: str | Path) -> str:
    """Content hash in the form ``git hash-object`` prints."""
    data = Path(path).read_bytes()
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


def write_manifest(path: str | Path, config: dict, outputs: list[str | Path]) -> Path:
    doc = {"config": config,
           "outputs": {str(p): blob_hash(p) for p in sorted(map(str, outputs))}}
    path = Path(path)
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return path
