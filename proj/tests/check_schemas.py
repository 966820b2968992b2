# Copyright 2026 The uncom Authors.
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

"""Checks the published JSON schemas against documents the engine reads and writes.

usage: check_schemas.py SOURCE_DIR [UNCOM_BINARY]
"""

import copy
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    root = pathlib.Path(sys.argv[1])
    binary = sys.argv[2] if len(sys.argv) > 2 else None
    schemas = {p.name: load(p) for p in (root / "schemas").glob("*.schema.json")}
    registry = Registry().with_resources(
        (doc["$id"], Resource.from_contents(doc)) for doc in schemas.values())

    def validator(name):
        jsonschema.Draft202012Validator.check_schema(schemas[name])
        return jsonschema.Draft202012Validator(schemas[name], registry=registry)

    bundle, command, transcript = (validator(n) for n in (
        "perception_bundle.schema.json", "grounded_command.schema.json", "transcript.schema.json"))

    checked = 0
    suite = root / "data" / "suite"
    for path in sorted(suite.glob("*.bundle.json")):
        doc = load(path)
        bundle.validate(doc)
        transcript.validate(doc["transcript"])
        checked += 1
    for path in sorted(suite.glob("*.gold.json")):
        command.validate(load(path)["command"])
        checked += 1
    command.validate(load(root / "tests" / "golden" / "banana" / "command.json"))

    sample = load(suite / "t01_mug_plate.bundle.json")
    broken = copy.deepcopy(sample)
    broken["recordings"][0]["payload"] = {"unexpected": True}
    assert not bundle.is_valid(broken), "schema accepted a malformed recording"
    broken = copy.deepcopy(sample)
    del broken["transcript"]
    assert not bundle.is_valid(broken), "schema accepted a bundle without transcript or audio"

    if binary:
        with tempfile.TemporaryDirectory() as out:
            for path in sorted(suite.glob("*.bundle.json")):
                subprocess.run([binary, "ground", "--bundle", str(path), "--out", out], check=True,
                               stdout=subprocess.DEVNULL)
                command.validate(load(pathlib.Path(out) / "command.json"))
                checked += 1

    print("schemas ok: %d documents" % checked)


if __name__ == "__main__":
    main()
