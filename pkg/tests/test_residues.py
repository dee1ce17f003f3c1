import pytest
import sympy
from hypothesis import given, strategies as st

from eulerorient.residues import (
    DuplicatePrime, NonInvertible, PRIME_LIMIT, ResidueValue, crt_combine, crt_sequences,
    inv_mod, is_prime, primes_needed, read_residue_dump, select_primes, write_residue_dump,
)


def test_select_primes_examples():
    assert select_primes(1, 10) == [7]
    assert select_primes(2, 12) == [11, 7]
    big = select_primes(3, PRIME_LIMIT)
    assert len(set(big)) == 3
    assert all(p < 2**31 and sympy.isprime(p) for p in big)


def test_select_primes_bound_gives_disjoint_sets():
    a = select_primes(4)
    b = select_primes(4, min(a))
    assert not set(a) & set(b)


@given(st.integers(0, 10**6))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_primes_needed_grows():
    assert primes_needed(30) < primes_needed(100)


@pytest.mark.parametrize("a,p,inv", [(1, 7, 1), (2, 7, 4), (5, 11, 9)])
def test_inv_mod_examples(a, p, inv):
    assert inv_mod(ResidueValue(a, p)) == ResidueValue(inv, p)


@given(st.integers(1, 2_147_483_646))
def test_inv_mod_is_inverse(a):
    p = 2_147_483_647
    assert a * inv_mod(ResidueValue(a, p)).value % p == 1


def test_inv_mod_zero():
    with pytest.raises(NonInvertible):
        inv_mod(ResidueValue(0, 7))


def test_residue_must_be_reduced():
    with pytest.raises(ValueError):
        ResidueValue(7, 7)


def test_crt_examples():
    assert crt_combine([ResidueValue(2, 3), ResidueValue(3, 5)]) == 8
    assert crt_combine([ResidueValue(0, 101)]) == 0


def test_crt_rejects_duplicates_and_empty():
    with pytest.raises(DuplicatePrime):
        crt_combine([ResidueValue(1, 7), ResidueValue(2, 7)])
    with pytest.raises(ValueError):
        crt_combine([])


@given(st.integers(0, 2**120))
def test_crt_round_trip(n):
    primes = select_primes(5)
    assert crt_combine([ResidueValue.of(n, p) for p in primes]) == n


def test_crt_sequences_length_check():
    with pytest.raises(ValueError):
        crt_sequences({7: [1, 2], 11: [1]})


def test_residue_dump_round_trip(tmp_path):
    path = write_residue_dump(tmp_path / "d.txt", "general", 101, [1, 2, 10, 66])
    header, values = read_residue_dump(path)
    assert header == {"model": "general", "prime": "101", "nmax": "3"}
    assert values == [1, 2, 10, 66]
