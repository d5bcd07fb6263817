import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sortnetlab import core


def test_apply_single_transposition():
    seq = core.SwapSequence(2, [1])
    assert list(core.apply(seq)) == [2, 1]


def test_apply_n3_reverse():
    # hand-applied: 123 -> 213 -> 231 -> 321, so positions are (3, 2, 1)
    seq = core.SwapSequence(3, [1, 2, 1])
    assert list(core.apply(seq)) == [3, 2, 1]


def test_apply_n3_not_reverse():
    # (1,1,2) swaps the pair {1,2} twice and never crosses {1,3}
    seq = core.SwapSequence(3, [1, 1, 2])
    assert list(core.apply(seq)) != [3, 2, 1]
    assert not core.is_sorting_network(seq)


@pytest.mark.parametrize("word,expected", [
    ((1, 2, 1), True),
    ((2, 1, 2), True),
    ((1, 2, 2), False),
])
def test_is_sorting_network_n3(word, expected):
    assert core.is_sorting_network(core.SwapSequence(3, word)) is expected


def test_structural_validation():
    with pytest.raises(core.ValidationError):
        core.SwapSequence(3, [1, 2])  # wrong length
    with pytest.raises(core.ValidationError):
        core.SwapSequence(3, [1, 3, 1])  # out of range
    with pytest.raises(core.ValidationError):
        core.network(3, [1, 1, 2])  # not a network


def test_pair_swap_criterion_matches_reversal():
    # both characterizations of a network agree on every length-N word tried
    for net in core.enumerate_all(4):
        pairs = core.swapped_pairs(net.seq)
        assert len(set(pairs)) == net.N
    bad = core.SwapSequence(4, [1, 1, 1, 1, 1, 1])
    assert len(set(core.swapped_pairs(bad))) < bad.N


def test_incremental_stepping():
    # rows are per-particle positions after each prefix of (1, 2, 1)
    seq = core.SwapSequence(3, [1, 2, 1])
    snaps = core.positions_at(seq, [0, 1, 2, 3])
    assert snaps.tolist() == [
        [1, 2, 3],
        [2, 1, 3],
        [3, 1, 2],
        [3, 2, 1],
    ]


def test_trajectory_grid_endpoints_and_rows():
    net = core.network(2, [1])
    grid = core.global_trajectories(net, 1)
    assert grid.positions.tolist() == [[0.0, 1.0], [1.0, 0.0]]

    net4 = core.enumerate_all(4)[0]
    grid4 = core.global_trajectories(net4, 7)
    lattice = sorted(2 * i / 4 - 1 for i in range(1, 5))
    for row in grid4.positions:
        assert sorted(row.tolist()) == pytest.approx(lattice)
    n = net4.n
    assert grid4.positions[0].tolist() == pytest.approx(
        [2 * x / n - 1 for x in range(1, n + 1)])
    assert grid4.positions[-1].tolist() == pytest.approx(
        [2 * (n + 1 - x) / n - 1 for x in range(1, n + 1)])


def test_time_shift_examples_and_bijectivity():
    assert core.time_shift(core.network(3, [1, 2, 1])) == core.network(3, [2, 1, 2])
    assert core.time_shift(core.network(3, [2, 1, 2])) == core.network(3, [1, 2, 1])
    for n in (3, 4):
        nets = core.enumerate_all(n)
        image = {core.time_shift(x) for x in nets}
        assert image == set(nets)


def test_symmetries_bijective_n4():
    nets = set(core.enumerate_all(4))
    for f in (core.time_reverse, core.reflect, core.time_shift):
        assert {f(x) for x in nets} == nets


def test_enumerate_counts():
    assert {tuple(int(k) for k in s.word) for s in core.enumerate_all(3)} == {
        (1, 2, 1), (2, 1, 2)}
    assert len(core.enumerate_all(4)) == 16
    assert len(core.enumerate_all(5)) == 768
    with pytest.raises(core.ValidationError):
        core.enumerate_all(7)


def test_network_file_roundtrip(tmp_path):
    net = core.enumerate_all(5)[123]
    path = str(tmp_path / "net.txt")
    core.write_network(path, net)
    assert core.read_network(path) == net
    text = open(path).read()
    assert text.startswith("sortnet v1 n=5\n")


def test_trajectory_csv(tmp_path):
    net = core.network(3, [1, 2, 1])
    grid = core.global_trajectories(net, 3)
    path = str(tmp_path / "traj.csv")
    core.write_trajectory_csv(path, grid, meta="n=3 G=3")
    lines = open(path).read().splitlines()
    assert lines[0] == "# n=3 G=3"
    assert lines[1] == "particle,t,position_scaled"
    assert len(lines) == 2 + 3 * 4


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=15))
def test_every_n4_network_sorts(idx):
    net = core.enumerate_all(4)[idx]
    assert list(core.apply(net.seq)) == [4, 3, 2, 1]
    assert len(set(core.swapped_pairs(net.seq))) == net.N
