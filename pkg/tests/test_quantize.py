"""Threshold application: region maps, replacement levels, edge rules."""

import numpy as np
import pytest

import helpers
from threshdp.example import SYNTH19_COUNTS
from threshdp.objectives import ThresholdSet
from threshdp.quantize import apply_thresholds


def test_worked_example_region_levels():
    # The 19-level synthesized histogram thresholded at {5, 11}: regions
    # [0,4], [5,10], [11,18] have means 3.31..., 8.0, 14.6..., giving
    # replacement levels 3, 8, 15.
    img = helpers.image_from_counts(SYNTH19_COUNTS)
    qi = apply_thresholds(img, (5, 11), 19)
    assert [(r.lo, r.hi, r.level) for r in qi.region_map] == [
        (0, 4, 3), (5, 10, 8), (11, 18, 15)]
    assert set(np.unique(qi.pixels)) == {3, 8, 15}


def test_accepts_threshold_set_object():
    img = helpers.image_from_counts(SYNTH19_COUNTS)
    ts = ThresholdSet(thresholds=(5, 11), objective_value=1.9)
    a = apply_thresholds(img, ts, 19)
    b = apply_thresholds(img, (5, 11), 19)
    assert np.array_equal(a.pixels, b.pixels)
    assert a.region_map == b.region_map


def test_pixel_equal_to_threshold_joins_upper_region():
    img = np.array([[4, 5, 6], [10, 11, 12]])
    qi = apply_thresholds(img, (5, 11), 19)
    by_level = {int(v): int(q) for v, q in zip(img.ravel(), qi.pixels.ravel())}
    r0, r1, r2 = (r.level for r in qi.region_map)
    assert by_level[4] == r0
    assert by_level[5] == r1 and by_level[10] == r1
    assert by_level[11] == r2 and by_level[12] == r2


def test_binary_image_fixed_point():
    img = np.where(np.arange(30).reshape(5, 6) % 2 == 0, 0, 255).astype(np.uint8)
    qi = apply_thresholds(img, (128,), 256)
    assert np.array_equal(qi.pixels, img)
    assert qi.pixels.dtype == np.uint8


def test_replacement_rounds_half_up():
    # Region [0, 4] holds one pixel at 2 and one at 3: mean 2.5 rounds to 3.
    img = np.array([[2, 3], [9, 9]])
    qi = apply_thresholds(img, (5,), 10)
    assert qi.region_map[0].level == 3


def test_empty_region_uses_midpoint():
    img = np.array([[0, 0], [9, 9]])
    qi = apply_thresholds(img, (3, 6), 10)
    # Region [3, 5] has no pixels; its replacement is the interval midpoint.
    mid = qi.region_map[1]
    assert (mid.lo, mid.hi) == (3, 5)
    assert mid.level == (3 + 5 + 1) // 2


def test_no_thresholds_collapses_to_global_mean():
    img = np.array([[1, 2], [3, 6]])
    qi = apply_thresholds(img, (), 10)
    assert len(qi.region_map) == 1
    assert qi.region_map[0].level == 3
    assert np.all(qi.pixels == 3)


def test_quantization_idempotent():
    rng = np.random.default_rng(41)
    img = rng.integers(0, 256, size=(24, 17)).astype(np.uint8)
    once = apply_thresholds(img, (64, 128, 192), 256)
    twice = apply_thresholds(once.pixels, (64, 128, 192), 256)
    assert np.array_equal(once.pixels, twice.pixels)


def test_mapping_is_monotone_and_shape_preserving():
    rng = np.random.default_rng(43)
    img = rng.integers(0, 19, size=(9, 13))
    qi = apply_thresholds(img, (5, 11), 19)
    assert qi.pixels.shape == img.shape
    flat_in = img.ravel()
    flat_out = qi.pixels.ravel()
    order = np.argsort(flat_in, kind="stable")
    assert np.all(np.diff(flat_out[order].astype(np.int64)) >= 0)


def test_region_map_partitions_level_axis():
    qi = apply_thresholds(helpers.image_from_counts(SYNTH19_COUNTS), (3, 7, 12), 19)
    regions = qi.region_map
    assert regions[0].lo == 0 and regions[-1].hi == 18
    for prev, cur in zip(regions, regions[1:]):
        assert cur.lo == prev.hi + 1
    for r in regions:
        assert r.lo <= r.level <= r.hi


def test_validation_errors():
    img = np.array([[0, 1], [2, 3]])
    with pytest.raises(ValueError, match="strictly increasing"):
        apply_thresholds(img, (2, 2), 4)
    with pytest.raises(ValueError, match="lie in"):
        apply_thresholds(img, (3,), 4)
    with pytest.raises(ValueError, match="outside"):
        apply_thresholds(np.array([[9]]), (1,), 4)
    with pytest.raises(ValueError, match="2-D"):
        apply_thresholds(np.arange(4), (1,), 4)
    with pytest.raises(ValueError, match="empty"):
        apply_thresholds(np.zeros((0, 3), dtype=int), (1,), 4)
