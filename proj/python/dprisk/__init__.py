# Copyright 2026 The dprisk Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Disclosure-risk bounds for differential privacy guarantees."""

from dprisk._core import *  # noqa: F401,F403
from dprisk._core import FORMAT_VERSION, InfeasibleError, MechanismPair

__version__ = "0.1.0"


def first_crossing(curve, threshold):
    """First k in a risk_curve() result whose value exceeds threshold, or None."""
    for point in curve:
        if point["criterion_value"] > threshold:
            return point["k"]
    return None
