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

import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schema():
    with open(ROOT / "schema" / "dprisk-output-1.schema.json") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("DPRISK_CLI")
    if not path:
        pytest.skip("DPRISK_CLI is not set")

    def run(*args, check=True):
        proc = subprocess.run([path, *map(str, args)], capture_output=True,
                              text=True, stdin=subprocess.DEVNULL)
        if check and proc.returncode != 0:
            raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
        return proc

    return run
