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

from .base import (  # noqa: F401
    Axis,
    MaterialModel,
    group_index_and_gvd,
    refractive_index,
)
from .sellmeier import (  # noqa: F401
    ConstantIndexModel,
    PoleModel,
    SellmeierModel,
    constant_index,
)
from .library import builtin_materials, get_material, load_materials  # noqa: F401
