import numpy as np
import pytest
from hypothesis import given, strategies as st

from mrlrc.gf import (ExtField, FieldElement, PrimeField, find_irreducible, is_irreducible, is_prime,
                      smallest_prime_geq)
from oracles import monic_has_no_factor, next_prime_scan, trial_division_prime

FIELDS = [PrimeField(11), ExtField(3, 2), ExtField(2, 3), ExtField(11, 2), ExtField(13, 4), ExtField(7, 3)]


@pytest.mark.parametrize("n, expected", [(11, 11), (8, 11), (14, 17), (2, 2), (3, 3), (4, 5)])
def test_smallest_prime_geq_examples(n, expected):
    assert smallest_prime_geq(n) == expected


def test_smallest_prime_geq_matches_scan():
    for n in range(2, 400):
        assert smallest_prime_geq(n) == next_prime_scan(n)
        assert is_prime(n) == trial_division_prime(n)


@pytest.mark.parametrize("n", [1, 0, -5])
def test_smallest_prime_geq_rejects_small(n):
    with pytest.raises(ValueError):
        smallest_prime_geq(n)


@pytest.mark.parametrize("q, m, expected", [(3, 2, (1, 0, 1)), (2, 2, (1, 1, 1)), (11, 2, (1, 0, 1))])
def test_find_irreducible_frozen(q, m, expected):
    assert find_irreducible(q, m) == expected


@pytest.mark.parametrize("q, m", [(2, 2), (3, 2), (5, 2), (11, 2), (2, 3), (3, 3), (7, 3), (13, 3)])
def test_find_irreducible_is_first_in_scan_order(q, m):
    # Order: integer value of the lower coefficients, c0 varying fastest.
    for idx in range(q ** m):
        low = [(idx // q ** i) % q for i in range(m)]
        cand = tuple(low) + (1,)
        if monic_has_no_factor(cand, q):
            assert find_irreducible(q, m) == cand
            return
    pytest.fail("oracle found no irreducible")


@pytest.mark.parametrize("q, m", [(2, 4), (3, 4), (13, 4), (17, 6), (5, 5)])
def test_find_irreducible_high_degree(q, m):
    f = find_irreducible(q, m)
    assert len(f) == m + 1 and f[-1] == 1
    assert is_irreducible(f, q)
    # The multiplicative group has order q^m - 1, so y^(q^m) = y.
    F = ExtField(q, m, f)
    y = F.element([0, 1] + [0] * (m - 2))
    assert y ** (q ** m) == y


def test_reducible_moduli_rejected():
    assert not is_irreducible((0, 0, 1), 3)
    assert not is_irreducible((2, 0, 1), 3)      # y^2 - 1
    assert not is_irreducible((1, 0, 1), 5)      # 2^2 + 1 = 5
    with pytest.raises(ValueError):
        ExtField(3, 2, (2, 0, 1))


def test_frobenius_example_f9():
    F = ExtField(3, 2)
    assert F.modulus == (1, 0, 1)
    y = F.element([0, 1])
    assert y.frobenius() == F.element([0, 2])
    assert y ** 3 == F.element([0, 2])


@pytest.mark.parametrize("F", [f for f in FIELDS if f.m > 1], ids=repr)
def test_frobenius_properties(F):
    rng = np.random.default_rng(1)
    a, b = F.random(rng, 500), F.random(rng, 500)
    fa, fb = F.frobenius(a), F.frobenius(b)
    assert np.array_equal(F.frobenius(F.add(a, b)), F.add(fa, fb))
    assert np.array_equal(F.frobenius(F.mul(a, b)), F.mul(fa, fb))
    assert np.array_equal(F.frobenius(a), F.pow(a, F.q))
    assert np.array_equal(F.frobenius(a, F.m), a)
    consts = F.embed(np.arange(F.q))
    assert np.array_equal(F.frobenius(consts), consts)


@pytest.mark.parametrize("F", [ExtField(3, 2), ExtField(2, 3), ExtField(5, 2), ExtField(2, 4)], ids=repr)
def test_frobenius_fixed_set_is_base_field(F):
    allx = F.all_elements()
    fixed = np.all(F.frobenius(allx) == allx, axis=-1)
    assert fixed.sum() == F.q
    assert not allx[fixed][:, 1:].any()


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms_vectorised(F):
    rng = np.random.default_rng(7)
    N = 2000
    a, b, c = F.random(rng, N), F.random(rng, N), F.random(rng, N)
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.add(a, F.neg(a)), F.zeros(N))
    assert np.array_equal(F.mul(a, F.ones(N)), a)
    nz = ~F.is_zero(a)
    assert np.array_equal(F.mul(a[nz], F.inv(a[nz])), F.ones(int(nz.sum())))


def test_inverse_of_zero_raises():
    for F in FIELDS:
        with pytest.raises(ZeroDivisionError):
            F.inv(F.zeros(1))


def test_multiplicative_group_order_f49():
    F = ExtField(7, 2)
    allx = F.all_elements()[1:]
    assert np.array_equal(F.pow(allx, 48), F.ones(48))


@st.composite
def ext_elements(draw, F):
    return F.element([draw(st.integers(0, F.q - 1)) for _ in range(F.m)])


F13_4 = ExtField(13, 4)


@given(ext_elements(F13_4), ext_elements(F13_4), ext_elements(F13_4))
def test_scalar_axioms_hypothesis(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - b + b == a
    if not b.is_zero():
        assert (a / b) * b == a
        assert b.inverse() * b == F13_4.element(1)
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()


@given(st.lists(st.integers(0, 12), min_size=4, max_size=4))
def test_coords_roundtrip_hypothesis(v):
    e = F13_4.element(v)
    assert list(e.coords()) == v
    assert np.array_equal(F13_4.uncoords(F13_4.coords(e.array)), e.array)


def test_coords_roundtrip_bulk():
    F = ExtField(11, 3)
    x = F.random(np.random.default_rng(3), 1000)
    assert np.array_equal(F.uncoords(F.coords(x)), x)
    assert np.array_equal(F.from_int(F.to_int(x)), x)


@pytest.mark.parametrize("bad", [[1, 2], [1, 2, 3, 4]])
def test_uncoords_rejects_wrong_length(bad):
    with pytest.raises(ValueError):
        ExtField(11, 3).uncoords(bad)


def test_element_operators_and_errors():
    F = ExtField(11, 2)
    a = F.element([3, 4])
    assert a + 1 == F.element([4, 4])
    assert 2 * a == F.element([6, 8])
    assert -a == F.element([8, 7])
    assert int(F.element([3, 4])) == 3 + 4 * 11
    with pytest.raises(TypeError):
        a + "x"
    with pytest.raises(ValueError):
        ExtField(11, 3).element(a)
    assert isinstance(a ** 5, FieldElement)


def test_prime_field_basics():
    F = PrimeField(11)
    assert F.m == 1 and F.order == 11
    assert F.element(2).inverse() == F.element(6)
    assert F.element(3).inverse() == F.element(4)
    with pytest.raises(ValueError):
        PrimeField(12)
