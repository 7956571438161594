import pytest
from hypothesis import given, settings, strategies as st

from quadric_cw.cells import (
    IntChain,
    boundary,
    boundary_cell,
    cell_degree,
    cube_chain,
    cube_degree,
    generator_prefactor,
    grouped_cell,
    iterated_boundary,
    top_generators,
)
from quadric_cw.combinatorics import Cell, Rel, enumerate_cells, full_mask, labels_of
from quadric_cw.verify import check_boundary_squared, check_cube_lemma, check_generators


def test_degree_frozen():
    assert cell_degree(Cell((1,), 0, 0, Rel.LE, 0)) == 0
    assert cell_degree(Cell((1,), 0, 0, Rel.EQ, 1)) == 0
    assert cell_degree(Cell((1, 3), 0b100, 0, Rel.LE, -1)) == 3


def test_point_boundary_is_empty():
    assert not boundary_cell(Cell((1,), 0, 0, Rel.LE, 0))


def test_arc_boundary_frozen():
    # n=0: the segment over a_1 in the v direction; tau face (-1)^|J| = 1,
    # sphere face (-1)^(|J|+|tau|) = -1
    c = Cell((1,), 0, 0, Rel.LE, 1)
    b = boundary_cell(c)
    assert dict(b.terms) == {Cell((1,), 0, 0, Rel.EQ, 1): -1, Cell((1,), 0, 0, Rel.LE, 0): 1}


def test_chain_arithmetic():
    c = Cell((1,), 0, 0, Rel.LE, 1)
    a = IntChain.of(c, 2)
    assert (a - a).terms == {}
    assert (a * 3)[c] == 6 and (-a)[c] == -2
    with pytest.raises(ValueError):
        a + IntChain.of(Cell((1,), 0, 0, Rel.LE, 0))
    with pytest.raises(ValueError):
        IntChain(5, [(c, 1)])


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_boundary_squared(n):
    r = check_boundary_squared(n)
    assert r.ok, r.line()


@pytest.mark.parametrize("n", [0, 1, 2])
def test_boundary_lowers_degree(n):
    for c in enumerate_cells(n):
        for f, _ in boundary_cell(c):
            assert cell_degree(f) == cell_degree(c) - 1
            assert not f.is_empty()


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_boundary_is_linear(data):
    n = 2
    cells = [c for c in enumerate_cells(n) if not c.is_empty()]
    d = data.draw(st.integers(1, 3))
    pool = [c for c in cells if cell_degree(c) == d]
    picks = data.draw(st.lists(st.tuples(st.sampled_from(pool), st.integers(-5, 5)), max_size=6))
    ch = IntChain(d, picks)
    want = IntChain(d - 1)
    for c, v in picks:
        want = want + v * boundary_cell(c)
    assert boundary(ch) == want
    assert not boundary(boundary(ch))


def test_grouped_cell_without_overlap_is_tau_difference():
    # the empty partition part carries the weight (-1)^(0-1) = -1
    g = grouped_cell((1,), 0b10, 0, Rel.LE)
    assert dict(g.terms) == {Cell((1,), 0b10, 0, Rel.LE, 1): -1, Cell((1,), 0b10, 0, Rel.LE, -1): 1}


def test_grouped_cell_overlap_expands_partitions():
    g = grouped_cell((1,), 0b110, 0b110, Rel.LE)
    assert len(g) == 8
    assert g[Cell((1,), 0b110, 0, Rel.LE, 1)] == -1
    assert g[Cell((1,), 0, 0b110, Rel.LE, 1)] == -1
    assert g[Cell((1,), 0b10, 0b100, Rel.LE, 1)] == 1


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_cube_lemma(n):
    r = check_cube_lemma(n)
    assert r.ok, r.line()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cube_chain_degrees(n):
    for k2 in range(1, full_mask(n) + 1):
        for rel in Rel:
            assert cube_chain(k2, k2, rel, n).degree == cube_degree(k2, k2, rel, n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generator_checks_other_than_iterated_boundary(n):
    cyc, lift, mv, _, rel = check_generators(n)
    for r in (cyc, lift, mv, rel):
        assert r.ok, r.line()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_iterated_boundary_carries_the_prefactor(n):
    # the iterated boundary of the normalized E_I is the EQ cube times the
    # normalization sign (-1)^{min I - 1}
    g = top_generators(n)
    for I in range(1, full_mask(n) + 1):
        labs = labels_of(I)
        got = iterated_boundary(g.E[I], labs)
        assert got == generator_prefactor(labs) * cube_chain(I, I, Rel.EQ, n)


def test_generators_reject_negative_n():
    with pytest.raises(ValueError):
        top_generators(-1)
