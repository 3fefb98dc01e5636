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

import json
import os


def get_test_path(filename):
    """Path of a file in the tests data dir"""
    return os.path.join(
        os.path.dirname(os.path.abspath(__file__)),
        "data",
        filename,
    )


def get_test_data(filename):
    """Load json data from the tests dir"""
    with open(get_test_path(filename)) as f:
        return json.load(f)
