import numpy as np
import pytest

from cathaul.exceptions import CathaulError, EmptyPath, EndpointMismatch, FixtureError, IndexOutOfRange, NotSitting
from cathaul.paths.families import arc, line, path_from_descriptor, square_loop, waypoints
from cathaul.paths.sampled_path import (SampledPath, SittingClock, default_sit, path_compose, point_path, resample,
                                        sample_function, write_csv)


def test_sitting_clock_is_frozen_at_both_ends():
    clock = SittingClock(100, 4)
    s = clock.grid()
    assert np.all(s[:5] == 0.0)
    assert np.all(s[-5:] == 1.0)
    assert np.all(np.diff(s) >= 0)


def test_line_endpoints_and_sitting():
    path = line([0.0, 0.0], [1.0, 2.0], 100)
    assert path.n_steps == 100
    assert path.sit == default_sit(100)
    assert np.allclose(path.start, [0.0, 0.0])
    assert np.allclose(path.end, [1.0, 2.0])
    assert np.allclose(path.derivative(0), 0.0)
    assert np.allclose(path.derivative(100), 0.0)


def test_derivatives_of_unsat_linear_path_are_exact():
    path = sample_function(lambda s: np.outer(s, [2.0, -1.0]), 16, duration=2.0, sitting=False)
    assert np.allclose(path.derivatives(2), [1.0, -0.5])


def test_derivative_index_out_of_range():
    path = line([0.0], [1.0], 10)
    with pytest.raises(IndexOutOfRange):
        path.derivative(11)


def test_empty_samples_are_rejected():
    with pytest.raises(EmptyPath):
        SampledPath(0.0, 1.0, np.zeros((0, 2)))


def test_unfrozen_sitting_ends_are_rejected():
    with pytest.raises(ValueError):
        SampledPath(0.0, 1.0, np.linspace(0, 1, 11)[:, None], sit=2)


def test_compose_concatenates_matching_grids():
    first = line([0.0, 0.0], [1.0, 0.0], 50)
    second = line([1.0, 0.0], [1.0, 1.0], 50)
    composed = path_compose(second, first)
    assert composed.n_steps == 100
    assert composed.duration == pytest.approx(2.0)
    assert np.allclose(composed.samples[50], [1.0, 0.0])
    assert np.allclose(composed.end, [1.0, 1.0])
    assert not composed.resampled


def test_compose_rejects_gaps():
    first = line([0.0, 0.0], [1.0, 0.0], 20)
    second = line([1.0, 0.1], [1.0, 1.0], 20)
    with pytest.raises(EndpointMismatch):
        path_compose(second, first)


def test_compose_resamples_on_grid_mismatch():
    first = line([0.0], [1.0], 40)
    second = line([1.0], [2.0], 20)
    composed = path_compose(second, first)
    assert composed.resampled
    assert composed.n_steps == 80
    assert np.allclose(composed.end, [2.0])


def test_compose_keeps_finer_second_grid():
    first = line([0.0], [1.0], 50)
    second = line([1.0], [2.0], 400)
    composed = path_compose(second, first)
    assert composed.dt == pytest.approx(second.dt)
    assert composed.n_steps == 800
    assert np.allclose(composed.samples[400], [1.0])
    assert np.allclose(composed.end, [2.0])


def test_compose_needs_sitting_ends():
    unsat = sample_function(lambda s: np.outer(s, [1.0]), 16, sitting=False)
    sat = line([1.0], [2.0], 16)
    with pytest.raises(NotSitting):
        path_compose(sat, unsat)
    assert issubclass(NotSitting, CathaulError)


def test_zero_duration_point_is_a_unit_for_composition():
    gamma = line([0.0, 0.0], [0.5, 0.5], 20, t0=3.0)
    identity = point_path([0.0, 0.0])
    assert identity.n_steps == 0
    left = path_compose(gamma, identity)
    assert np.array_equal(left.samples, gamma.samples)
    end = point_path([0.5, 0.5])
    assert path_compose(end, gamma) is gamma


def test_resample_keeps_endpoints():
    gamma = arc([0.0, 0.0], 0.5, 0.0, 2.0, 64)
    coarse = resample(gamma, 32)
    assert coarse.n_steps == 32
    assert np.allclose(coarse.start, gamma.start)
    assert np.allclose(coarse.end, gamma.end)
    assert coarse.resampled


def test_square_loop_closes():
    loop = square_loop([0.1, 0.2], 0.3, 40)
    assert np.allclose(loop.start, loop.end)
    assert loop.n_steps == 40
    assert np.allclose(loop.samples.max(axis=0), [0.4, 0.5])


def test_waypoints_needs_two_points():
    with pytest.raises(ValueError):
        waypoints([[0.0, 0.0]], 10)


def test_path_from_descriptor():
    path = path_from_descriptor({'family': 'arc', 'center': [0, 0], 'radius': 1, 'angle0': 0, 'angle1': 1}, 30)
    assert np.allclose(path.end, [np.cos(1.0), np.sin(1.0)])
    with pytest.raises(FixtureError):
        path_from_descriptor({'family': 'spiral'}, 30)
    with pytest.raises(FixtureError):
        path_from_descriptor({'family': 'line', 'start': [0, 0]}, 30)


def test_write_csv(tmp_path):
    path = line([0.0, 0.0], [1.0, 1.0], 10)
    filename = tmp_path / 'path.csv'
    write_csv(path, filename)
    lines = filename.read_text().splitlines()
    assert lines[0] == 't,x1,x2'
    assert len(lines) == 12
