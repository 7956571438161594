import pytest
from hypothesis import given, strategies as st

from quadric_cw.cells import top_generators
from quadric_cw.combinatorics import full_mask, labels_of, size
from quadric_cw.intersection import (
    basis_change_det,
    chain_index,
    cone_coordinates,
    cone_frame,
    declared_orientation_sign,
    disk_orientation,
    duality_sign,
    index_with_imaginary,
    pl_sign,
    shift_vectors,
    sphere_self_intersection,
    transverse_count,
    vanishing_closed_form,
    vanishing_pair_index,
)

# certified transverse counts, frozen; |I| = 1 always gives 1
INDEX_VALUES = {
    1: {(1, 2): 1},
    2: {(1, 2): 1, (1, 3): -1, (2, 3): -1, (1, 2, 3): 1},
    3: {(1, 2): 1, (1, 3): -1, (2, 3): -1, (1, 2, 3): 1, (1, 4): 1, (2, 4): 1,
        (1, 2, 4): -1, (3, 4): 1, (1, 3, 4): 1, (2, 3, 4): 1, (1, 2, 3, 4): 1},
}


@pytest.mark.parametrize("N", range(1, 10))
def test_basis_change_det(N):
    for k in range(1, N + 1):
        assert basis_change_det(N - 1, k) == (-1) ** (k - 1)


def test_basis_change_det_range():
    with pytest.raises(ValueError):
        basis_change_det(2, 4)


@given(st.integers(0, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n + 1), st.lists(st.integers(-50, 50), min_size=n + 1, max_size=n + 1))))
def test_cone_coordinates_reconstruct(data):
    n, j, w = data
    d, dl = cone_coordinates(n, j, tuple(w))
    frame = cone_frame(n, j)
    coeffs = dl + [d]
    for r in range(n + 1):
        assert sum(frame[r][c] * coeffs[c] for c in range(n + 1)) == w[r]


def test_shift_vectors_deterministic_and_generic():
    a = shift_vectors(3, 5, 11)
    assert a == shift_vectors(3, 5, 11)
    for w in a:
        for j in range(1, 5):
            d, dl = cone_coordinates(3, j, w)
            assert d and all(dl)


@pytest.mark.parametrize("n", range(0, 6))
def test_declared_orientation_is_uniform(n):
    # one global factor makes every top disk positive
    assert declared_orientation_sign() == -1
    for k in range(1, n + 2):
        assert disk_orientation(n, k, declared_orientation_sign()) == 1


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_singletons_index_one(n):
    for j in range(1, n + 2):
        v, cert = index_with_imaginary(1 << (j - 1), n)
        assert v == 1
        assert cert.shift_invariant and cert.witness_found is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_index_values_frozen(n):
    for I, want in INDEX_VALUES[n].items():
        v, cert = index_with_imaginary(I, n)
        assert v == want, I
        assert cert.shift_invariant
        assert len(cert.points[0]) >= 1


def test_single_point_counterexample_n1():
    # E_12 at n = 1 meets every generic shift of the imaginary line once
    v, cert = index_with_imaginary((1, 2), 1, shifts=16, seed=5)
    assert v == 1
    assert all(len(p) == 1 for p in cert.points)
    assert not cert.witness_found


def test_non_cycle_detected():
    # e_I has no full cone cells, but a single LE cell is not a relative cycle
    g = top_generators(1)
    ch = g.E[0b11]
    c, coef = next((c, v) for c, v in ch if c.k == 1 and c.m == 2 and c.tau)
    single = ch.__class__.of(c, coef)
    counts = {transverse_count(single, 1, w)[0] for w in shift_vectors(1, 16, 0)}
    assert len(counts) > 1
    with pytest.raises(ArithmeticError):
        chain_index(single, 1, shifts=16)


def test_index_rejects_bad_sets():
    with pytest.raises(ValueError):
        index_with_imaginary(0, 2)
    with pytest.raises(ValueError):
        index_with_imaginary(0b1000, 2)


def test_sign_helpers_frozen():
    assert [sphere_self_intersection(k) for k in range(6)] == [2, 0, -2, 0, 2, 0]
    assert pl_sign(3, 3) == 1 and pl_sign(3, 2) == -1
    assert duality_sign(1, 0) == -1 and duality_sign(0, 5) == 1
    for k in range(6):
        assert duality_sign(2, k) == -1
    with pytest.raises(ValueError):
        sphere_self_intersection(-1)


@pytest.mark.parametrize("D", range(2, 12))
def test_pl_sign_bubble_parity(D):
    assert pl_sign(D - 1, 2) == (-1) ** ((D + 1) * (D + 2) // 2)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_vanishing_pairings(n):
    for J in range(1, full_mask(n) + 1):
        for I in range(1, full_mask(n) + 1):
            v, chain = vanishing_pair_index(J, I, n)
            assert v == vanishing_closed_form(J, I, n)
            assert chain.value == v
            assert chain.multiplicity == (1 if I == J else 0)


def test_vanishing_frozen():
    # n=1, I=J={1,2}: k=0, closed form 2*(-1)^3
    assert vanishing_pair_index((1, 2), (1, 2), 1)[0] == -2
    # k odd vanishes
    assert vanishing_pair_index((1,), (1,), 1)[0] == 0
    assert vanishing_pair_index((1,), (2,), 2)[0] == 0
