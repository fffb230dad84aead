import random

import pytest
from hypothesis import given, settings, strategies as st

from archphase.arch import Architecture, complete, cycle, grid, line, load_architecture
from archphase.circuit import CX, RZ, Circuit
from archphase.gf2 import BitMatrix, SingularMatrixError
from archphase.steiner_gauss import simulate_linear_action, steiner_gauss

from oracles import random_connected_graph, random_invertible_rows, replay_cx

CATALOG = ["line_6", "cycle_6", "grid_2x3", "complete_6", "aspen_16", "singapore_20", "square_16"]


def test_simulate_empty_and_involution():
    assert simulate_linear_action(Circuit(3)).is_identity()
    assert simulate_linear_action(Circuit(2, [CX(0, 1), CX(0, 1)])).is_identity()


def test_simulate_rejects_rz():
    with pytest.raises(TypeError):
        simulate_linear_action(Circuit(2, [RZ(0, 1.0)]))


def test_simulate_matches_replay():
    rng = random.Random(5)
    c = Circuit(5, [CX(*rng.sample(range(5), 2)) for _ in range(30)])
    assert list(simulate_linear_action(c).rows) == replay_cx(5, c.gates)


@pytest.mark.parametrize("name", CATALOG)
def test_identity_gives_empty(name):
    g = load_architecture(name)
    assert len(steiner_gauss(BitMatrix.identity(g.n), g)) == 0


def test_single_transvection_is_one_cx():
    g = line(4)
    m = BitMatrix.identity(4)
    m.row_add(2, 1)
    c = steiner_gauss(m, g)
    assert c.gates == (CX(1, 2),)


def test_random_line6():
    rng = random.Random(2024)
    g = line(6)
    for _ in range(20):
        m = BitMatrix(random_invertible_rows(6, rng), 6)
        c = steiner_gauss(m, g)
        assert BitMatrix(replay_cx(6, c.gates), 6) == m
        assert all(g.are_adjacent(x.control, x.target) for x in c.gates)


def test_singular_raises():
    with pytest.raises(SingularMatrixError):
        steiner_gauss(BitMatrix.from_strings(["110", "011", "101"]), line(3))
    with pytest.raises(ValueError):
        steiner_gauss(BitMatrix.identity(3), line(4))


def test_complete_graph_bound():
    rng = random.Random(9)
    for n in range(2, 11):
        g = complete(n)
        for _ in range(5):
            m = BitMatrix(random_invertible_rows(n, rng), n)
            assert len(steiner_gauss(m, g)) <= n * n


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**32))
def test_random_graphs_property(n, seed):
    rng = random.Random(seed)
    g = Architecture("r", n, random_connected_graph(n, rng))
    m = BitMatrix(random_invertible_rows(n, rng), n)
    c = steiner_gauss(m, g)
    assert BitMatrix(replay_cx(n, c.gates), n) == m
    assert all(g.are_adjacent(x.control, x.target) for x in c.gates)


def test_deterministic():
    rng = random.Random(1)
    g = grid(3, 3)
    m = BitMatrix(random_invertible_rows(9, rng), 9)
    assert steiner_gauss(m, g) == steiner_gauss(m.copy(), g)
    assert steiner_gauss(m, cycle(9)) == steiner_gauss(m, cycle(9))


@pytest.mark.parametrize("name", ["aspen_16", "singapore_20"])
def test_random_on_devices(name):
    g = load_architecture(name)
    rng = random.Random(len(name))
    for _ in range(15):
        m = BitMatrix(random_invertible_rows(g.n, rng), g.n)
        c = steiner_gauss(m, g)
        assert simulate_linear_action(c) == m
        assert all(g.are_adjacent(x.control, x.target) for x in c.gates)
