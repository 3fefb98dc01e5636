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

import hashlib

from pydantic import BaseModel


class SourceFileMetadata(BaseModel):
    source: str
    sha256: str
    n_lines: int


def get_source_file_metadata(path, text):
    return SourceFileMetadata(
        source=str(path),
        sha256=hashlib.sha256(text.encode("utf-8")).hexdigest(),
        n_lines=text.count("\n") + (0 if text.endswith("\n") or not text else 1),
    )


def read_source(path):
    with open(path, encoding="utf-8") as f:
        return f.read()
