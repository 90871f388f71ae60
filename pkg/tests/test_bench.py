import pytest

from genconc.bench import echo_gap, rows_to_csv, run_bench, speed_ratio, timer_resolution_ns
from genconc.errors import DimTooLarge
from genconc.measure import Bipartition


def test_two_qubit_echo():
    rows = run_bench([(2, 2)], ["0"], reps=3)
    assert [r.route for r in rows] == ["wedge", "trace"]
    assert abs(rows[0].E - rows[1].E) <= 1e-9
    assert all(r.wall_ns > 0 and r.reps == 3 for r in rows)


def test_rows_follow_input_order():
    rows = run_bench([(2, 2, 2), (2, 3)], ["0", (1,)], reps=3, seed=4)
    keys = [("x".join(map(str, r.dims)), r.cut.label, r.route) for r in rows]
    assert keys == [
        ("2x2x2", "0", "wedge"), ("2x2x2", "0", "trace"),
        ("2x2x2", "1", "wedge"), ("2x2x2", "1", "trace"),
        ("2x3", "0", "wedge"), ("2x3", "0", "trace"),
        ("2x3", "1", "wedge"), ("2x3", "1", "trace"),
    ]
    assert echo_gap(rows) <= 1e-9


def test_same_seed_same_values():
    a = run_bench([(2, 3, 2)], [Bipartition(3, (0, 2))], reps=3, seed=8)
    b = run_bench([(2, 3, 2)], ["0+2"], reps=3, seed=8)
    assert [r.E for r in a] == [r.E for r in b]


def test_csv_layout():
    rows = run_bench([(2, 2, 2)], ["0+1"], reps=3)
    lines = rows_to_csv(rows).splitlines()
    assert lines[0] == "dims,cut,route,reps,median_ns,E"
    assert lines[1].startswith("2x2x2,0+1,wedge,3,")
    assert len(lines) == 3


def test_ratio_helper():
    rows = run_bench([(2,) * 8], ["0+1"], reps=3)
    assert speed_ratio(rows, (2,) * 8, "0+1") > 1


def test_reps_minimum():
    with pytest.raises(ValueError):
        run_bench([(2, 2)], ["0"], reps=2)


def test_wedge_cap_checked_up_front():
    with pytest.raises(DimTooLarge):
        run_bench([(2, 2), (2,) * 17], ["0"], reps=3)


def test_timer_resolution_positive():
    assert 0 < timer_resolution_ns() < 1e6
