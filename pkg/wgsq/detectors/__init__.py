# Copyright 2026 The wgsq-lib Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from .base import CircuitNoise, DetectorResponse  # noqa: F401
from .build import build_circuit_noise, build_response  # noqa: F401
from .noise import ConstantCircuitNoise, TabulatedCircuitNoise  # noqa: F401
from .response import FlatResponse, TabulatedResponse, TwoPoleResponse  # noqa: F401
