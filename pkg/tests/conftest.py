import pytest
import sympy

from eulerorient.residues import select_primes

PRIMES = select_primes(2) + [1_000_003]


def parse_terms(display: dict[int, str], vars: tuple[str, ...]) -> dict[tuple[int, ...], int]:
    """``{x_order: "polynomial"}`` to ``{(x_order, *degrees): coefficient}``."""
    syms = sympy.symbols(vars)
    out = {}
    for n, text in display.items():
        poly = sympy.Poly(sympy.sympify(text), *syms)
        for degs, c in poly.terms():
            out[(n,) + tuple(degs)] = int(c)
    return out


def low_terms(series, top: int, prime) -> dict[tuple[int, ...], int]:
    terms = series.terms()
    return {k: v for k, v in terms.items() if k[0] <= top}


@pytest.fixture(params=[PRIMES[0], PRIMES[2], None], ids=["p31", "p20", "exact"])
def prime(request):
    return request.param



def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
