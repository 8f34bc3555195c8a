from cathaul.paths.families import arc, line, path_from_descriptor, square_loop, waypoints
from cathaul.paths.sampled_path import (GroupPath, SampledPath, SittingClock, default_sit, path_compose,
                                        point_path, resample, sample_function, write_csv)

__all__ = [
    'SampledPath', 'GroupPath', 'SittingClock', 'default_sit', 'sample_function', 'point_path',
    'path_compose', 'resample', 'write_csv',
    'line', 'arc', 'waypoints', 'square_loop', 'path_from_descriptor'
]
