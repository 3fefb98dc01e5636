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

import functools
import logging
import os

from wgsq.exceptions import DispersionError

logger = logging.getLogger(__name__)

BUILTIN_COEFFICIENTS = os.path.join(os.path.dirname(__file__), "data", "builtin.json")


def load_materials(path):
    """Load every model in a coefficient file, keyed by name"""
    from wgsq.extractors.coefficients import MaterialCoefficientFile

    extracted = MaterialCoefficientFile.extract(path)
    logger.debug(
        "Loaded %d material models from %s", len(extracted.records), path
    )
    return {model.name: model for model in extracted.records}


@functools.lru_cache(maxsize=None)
def _builtin_materials():
    return load_materials(BUILTIN_COEFFICIENTS)


def builtin_materials():
    return dict(_builtin_materials())


def get_material(name, extra=None):
    """
    Args:
        name: model name, e.g. ``lithium_niobate_e``
        extra: optional mapping of user-supplied models, searched first

    Returns:
        the MaterialModel

    """
    if extra and name in extra:
        return extra[name]

    known = _builtin_materials()
    try:
        return known[name]
    except KeyError:
        names = sorted(set(known) | set(extra or {}))
        raise DispersionError(
            "Unknown material: {} (known: {})".format(name, ", ".join(names))
        )
