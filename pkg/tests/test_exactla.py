import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pretorsion.exactla import PrimeField, Subspace, factorize, is_prime, is_prime_power, lcm, prime_of

PRIMES = st.sampled_from([2, 3, 5])


def matrices(p, max_side=5):
    return st.tuples(st.integers(1, max_side), st.integers(1, max_side)).flatmap(
        lambda rc: st.lists(
            st.lists(st.integers(0, p - 1), min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]
        )
    )


def test_number_helpers():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert is_prime_power(8) and not is_prime_power(12)
    assert prime_of(9) == 3
    assert lcm([4, 6, 10]) == 60


def test_non_prime_field_rejected():
    with pytest.raises(ValueError):
        PrimeField(4)


@settings(max_examples=60, deadline=None)
@given(p=PRIMES, data=st.data())
def test_rank_nullity(p, data):
    F = PrimeField(p)
    m = F.mat(data.draw(matrices(p)))
    ns = F.nullspace(m)
    assert F.rank(m) + ns.dim == m.shape[1]
    if ns.dim:
        assert not np.any(F.matmul(m, ns.basis.T))


@settings(max_examples=60, deadline=None)
@given(p=PRIMES, data=st.data())
def test_solve_finds_preimages(p, data):
    F = PrimeField(p)
    a = F.mat(data.draw(matrices(p)))
    x = F.mat(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = F.matmul(a, x.reshape(-1, 1))[:, 0]
    sol = F.solve(a, b)
    assert sol is not None
    assert np.array_equal(F.matmul(a, sol.reshape(-1, 1))[:, 0], b)


def test_solve_inconsistent_and_inverse():
    F = PrimeField(3)
    assert F.solve(F.mat([[1, 1], [1, 1]]), F.mat([1, 2])) is None
    m = F.mat([[1, 2], [0, 1]])
    assert np.array_equal(F.matmul(m, F.inverse(m)), F.eye(2))
    with pytest.raises(ValueError):
        F.inverse(F.mat([[1, 1], [1, 1]]))


def test_subspace_containment_and_quotient():
    F = PrimeField(2)
    V = F.span([[1, 0, 0], [0, 1, 0]], 3)
    W = F.span([[1, 1, 0]], 3)
    assert V.dim == 2 and V.contains(W) and not W.contains(V)
    assert V.quotient_basis(W).shape[0] == 1
    assert Subspace.full(F, 3).contains(V) and Subspace.zero(F, 3).dim == 0
