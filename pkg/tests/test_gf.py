from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noninc.errors import NotPrime, OrderTooLarge, ReducibleModulus, WrongCharacteristic, ZeroCoefficient
from noninc.gf import (
    FieldTable,
    default_modulus,
    field_build,
    is_irreducible,
    parse_field,
    prime_power,
    quadratic_irreducible,
    trace,
)


# -- oracles: schoolbook polynomial arithmetic, kept separate from the package ---

def poly_divmod_rem(a, m, p):
    a = list(a)
    while len(a) >= len(m):
        c = a[-1] * pow(m[-1], p - 2, p) % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def has_factor(f, p):
    """Trial division of f by every monic polynomial of degree 1..deg(f)//2."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not poly_divmod_rem(f, list(low) + [1], p):
                return True
    return False


def schoolbook_mul(a, b, f):
    p, k = f.p, f.k
    da = [(a // p**i) % p for i in range(k)]
    db = [(b // p**i) % p for i in range(k)]
    prod = [0] * (2 * k - 1)
    for i in range(k):
        for j in range(k):
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
    r = poly_divmod_rem(prod, list(f.modulus), p) if len(prod) >= len(f.modulus) else prod
    return sum(c * p**i for i, c in enumerate(r))


SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3)]


# -- construction ---------------------------------------------------------------

def test_gf2():
    f = field_build(2, 1)
    assert f.order == 2
    assert f.add(1, 1) == 0
    assert f.mul(1, 1) == 1


def test_gf4_omega_squared():
    # omega = x has index 2; x^2 = x + 1 mod x^2+x+1, index 3
    f = field_build(2, 2, [1, 1, 1])
    assert f.mul(2, 2) == 3
    assert f.add(2, 1) == 3


def test_gf16_cyclic_group():
    f = field_build(2, 4, [1, 1, 0, 0, 1])
    x, powers = 1, []
    for _ in range(15):
        x = f.mul(x, 2)
        powers.append(x)
    assert powers[-1] == 1
    assert sorted(powers) == list(range(1, 16))


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (2, 6), (7, 2)])
def test_default_modulus_is_least_irreducible(p, k):
    mod = default_modulus(p, k)
    assert len(mod) == k + 1 and mod[-1] == 1
    idx = sum(c * p**i for i, c in enumerate(mod[:-1]))
    for smaller in range(idx):
        low = [(smaller // p**i) % p for i in range(k)]
        assert has_factor(low + [1], p) or k == 1
    if k > 1:
        assert not has_factor(mod, p)


def test_default_moduli_known_values():
    assert default_modulus(2, 2) == [1, 1, 1]
    assert default_modulus(2, 3) == [1, 1, 0, 1]
    assert default_modulus(2, 4) == [1, 1, 0, 0, 1]
    assert default_modulus(2, 6) == [1, 1, 0, 0, 0, 0, 1]


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_matches_trial_division(p, k):
    for low in product(range(p), repeat=k):
        f = list(low) + [1]
        assert is_irreducible(f, p) == (not has_factor(f, p)), f


def test_errors():
    with pytest.raises(NotPrime):
        FieldTable(4, 1)
    with pytest.raises(OrderTooLarge):
        FieldTable(2, 17)
    with pytest.raises(ReducibleModulus):
        FieldTable(2, 2, [1, 0, 1])  # (x+1)^2
    with pytest.raises(ReducibleModulus):
        FieldTable(2, 2, [1, 1, 0])  # not monic of degree 2


def test_order_cap_boundary():
    f = FieldTable(2, 16)
    assert f.order == 1 << 16
    a = 12345
    assert f.mul(a, f.inv(a)) == 1


def test_prime_power():
    assert prime_power(16) == (2, 4)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(6) is None
    assert prime_power(1) is None


def test_description_round_trip():
    f = FieldTable(3, 2)
    g = parse_field(f.description)
    assert g.modulus == f.modulus and g.order == 9


# -- field axioms ----------------------------------------------------------------

@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_mul_matches_schoolbook(p, k):
    f = FieldTable(p, k)
    for a in range(f.order):
        for b in range(f.order):
            assert f.mul(a, b) == schoolbook_mul(a, b, f)


@pytest.mark.parametrize("p,k", SMALL_FIELDS + [(2, 5), (2, 6)])
def test_axioms_exhaustive(p, k):
    f = FieldTable(p, k)
    A, M = f.add_table, f.mul_table
    q = f.order
    e = np.arange(q)
    a, b, c = np.meshgrid(e, e, e, indexing="ij")
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[A[a, b], c] == A[a, A[b, c]]).all()
    assert (M[M[a, b], c] == M[a, M[b, c]]).all()
    assert (M[a, A[b, c]] == A[M[a, b], M[a, c]]).all()
    assert (A[0] == e).all() and (M[1] == e).all()
    # every row of the addition table is a permutation; so is every nonzero mul row
    assert all(sorted(A[i]) == list(e) for i in range(q))
    assert all(sorted(M[i]) == list(e) for i in range(1, q))
    for x in range(1, q):
        assert f.mul(x, f.inv(x)) == 1
        assert f.add(x, f.neg(x)) == 0


def test_axioms_gf256():
    f = FieldTable(2, 8)
    A, M = f.add_table, f.mul_table
    e = np.arange(256)
    a, b = np.meshgrid(e, e, indexing="ij")
    for c in range(0, 256, 17):
        assert (M[M[a, b], c] == M[a, M[b, c]]).all()
        assert (M[a, A[b, c]] == A[M[a, b], M[a, c]]).all()
    assert (M[e[1:], [f.inv(int(x)) for x in e[1:]]] == 1).all()


def test_scalar_ops_agree_with_tables():
    f = FieldTable(3, 2)
    for a in range(9):
        for b in range(9):
            assert f.add(a, b) == f.add_table[a, b]
            assert f.mul(a, b) == f.mul_table[a, b]
            assert f.sub(f.add(a, b), b) == a
            if b:
                assert f.mul(f.div(a, b), b) == a


@given(st.integers(1, 255), st.integers(-600, 600))
def test_pow_matches_repeated_multiplication(a, e):
    f = FieldTable(2, 8)
    expected = 1
    base = a if e >= 0 else f.inv(a)
    for _ in range(abs(e)):
        expected = f.mul(expected, base)
    assert f.pow(a, e) == expected


# -- trace and quadratic test ---------------------------------------------------

def test_trace_gf4():
    f = FieldTable(2, 2)
    assert trace(f, 0) == 0
    assert trace(f, 1) == 0
    assert trace(f, 2) == 1  # omega + omega^2 = 1


@pytest.mark.parametrize("k", range(1, 9))
def test_trace_linear_and_frobenius_invariant(k):
    f = FieldTable(2, k)
    tr = [trace(f, a) for a in range(f.order)]
    assert sum(tr) == f.order // 2
    for a in range(f.order):
        assert tr[f.mul(a, a)] == tr[a]
    for a in range(0, f.order, max(1, f.order // 32)):
        for b in range(f.order):
            assert tr[a ^ b] == tr[a] ^ tr[b]


def test_quadratic_examples():
    f4 = FieldTable(2, 2)
    assert quadratic_irreducible(f4, 1) is False
    assert quadratic_irreducible(f4, 2) is True
    assert quadratic_irreducible(FieldTable(2, 1), 1) is True


@pytest.mark.parametrize("k", range(1, 9))
def test_quadratic_matches_root_search(k):
    f = FieldTable(2, k)
    M = f.mul_table
    e = np.arange(f.order)
    squares = M[e, e]
    for b in range(1, f.order):
        has_root = bool(((squares ^ M[b, e] ^ 1) == 0).any())
        assert quadratic_irreducible(f, b) == (not has_root)


def test_characteristic_errors():
    with pytest.raises(WrongCharacteristic):
        trace(FieldTable(3, 1), 1)
    with pytest.raises(WrongCharacteristic):
        quadratic_irreducible(FieldTable(3, 2), 1)
    with pytest.raises(ZeroCoefficient):
        quadratic_irreducible(FieldTable(2, 2), 0)


@settings(max_examples=50)
@given(st.sampled_from([(2, 6), (3, 3), (5, 2), (2, 10)]), st.data())
def test_inverse_property(pk, data):
    f = FieldTable(*pk)
    a = data.draw(st.integers(1, f.order - 1))
    assert f.mul(a, f.inv(a)) == 1
    assert f.pow(a, f.order - 1) == 1
