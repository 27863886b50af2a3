# Copyright 2026 The relmot Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Relation-network multi-object tracking: association, metrics and simulation."""

from ._core import (
    Error,
    __version__,
    brute_force,
    default_config,
    evaluate,
    hungarian,
    iou_2d,
    round_trip_labels,
    solve,
    track_simulated,
)

__all__ = [
    "Error",
    "__version__",
    "brute_force",
    "default_config",
    "evaluate",
    "hungarian",
    "iou_2d",
    "round_trip_labels",
    "solve",
    "track_simulated",
]
