from math import factorial

import pytest

from qlayout.td.thresholds import TOWER, Thresholds, thresholds_eval


def children_by_hand(k: int, size: int) -> int:
    # ((2^(k+1) + 1)^(size^2) + 1) * (size + k)! * 2^((k + size)^2)
    return ((2 ** (k + 1) + 1) ** (size * size) + 1) * factorial(size + k) * 2 ** ((k + size) ** 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_bottom_levels(k):
    assert thresholds_eval(k, 1) == (0, 0)
    if k >= 2:
        assert thresholds_eval(k, 2)[0] == 1


def test_children_2_2():
    assert thresholds_eval(2, 2) == (1, 30720)
    assert children_by_hand(2, 1) == 10 * 6 * 512 == 30720


@pytest.mark.parametrize("k", range(2, 7))
def test_level_two_and_three_by_hand(k):
    size2, children2 = thresholds_eval(k, 2)
    assert children2 == children_by_hand(k, 1)
    if k >= 3:
        # size(k, 3) = size(k, 2) * children(k, 2) + 1 is still small enough to hold exactly
        assert thresholds_eval(k, 3)[0] == size2 * children2 + 1


def test_tower_values():
    size, children = thresholds_eval(4, 3)
    assert size == 136902082561
    assert children is TOWER
    assert TOWER > 10**100 and not TOWER < 5
    assert thresholds_eval(6, 6)[0] is TOWER


def test_level_out_of_range():
    with pytest.raises(ValueError):
        thresholds_eval(3, 4)
    with pytest.raises(ValueError):
        thresholds_eval(3, 0)


def test_paper_class_requirement():
    # pigeonhole share over at most 2^((k+size)^2) classes
    assert Thresholds.paper().class_fn(2, 2) == 30720 // 2**9 == 60


def test_synthetic_values():
    t = Thresholds.synthetic([5, 7])
    assert [t.children_fn(4, i) for i in range(1, 5)] == [0, 5, 7, 7]
    assert [t.size_fn(4, i) for i in range(1, 5)] == [0, 1, 6, 43]
    assert t.class_fn(4, 3) == 7
    assert thresholds_eval(4, 3, t) == (6, 7)


@pytest.mark.parametrize("text", ["synthetic:", "synthetic:0", "synthetic:a", "towers", "synthetic:-3"])
def test_bad_threshold_specs(text):
    with pytest.raises(ValueError):
        Thresholds.parse(text)


def test_parse_round_trip():
    assert Thresholds.parse("synthetic:5,9").describe() == "synthetic:5,9"
    assert Thresholds.parse("paper").mode == "paper"
