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

import csv
import io
import json

import jsonschema
import pytest

JSON_COMMANDS = [
    ["bounds", "--epsilon", 0.1, "--delta", 1e-7, "--delta-prime", 0.01, "--prior", 0.5],
    ["bounds", "--epsilon", 1.0],
    ["bounds", "--rho", 0.07, "--delta-prime", 0.01, "--prior", 0.5],
    ["convert", "--from", "zcdp", "--rho", 0.58, "--to", "pdp", "--delta-prime", 0.01,
     "--prior", 0.5],
    ["convert", "--from", "zcdp", "--rho", 0.01, "--to", "approx_dp", "--target-delta", 1e-3],
    ["convert", "--from", "pdp", "--epsilon", 1.0, "--delta", 0.01, "--to", "approx_dp"],
    ["convert", "--from", "diff_bound", "--epsilon", 1.0, "--delta", 0.01, "--to", "pdp"],
    ["convert", "--from", "approx_dp", "--epsilon", 1, "--delta", 1e-6, "--to", "pdp",
     "--log-grid", 10, "--json"],
    ["compose", "--epsilon", 0.05, "--delta", 1e-8, "--k", 12, "--method", "basic"],
    ["compose", "--epsilon", 0.05, "--k", 51, "--method", "advanced", "--total-delta", 1e-6],
    ["compose", "--epsilon", 0.5, "--k", 6, "--method", "optimal", "--frontier",
     "--total-delta", 0.1],
    ["compose", "--rho", 0.01, "--k", 30, "--method", "zcdp"],
    ["curve", "--method", "optimal", "--eps-per", 0.05, "--prior", 0.5, "--k-max", 20,
     "--threshold", 0.8, "--json"],
    ["curve", "--method", "zcdp", "--rho-per", 0.01, "--delta-prime", 0.01,
     "--criterion", "diff-magnitude", "--k-max", 10, "--json"],
    ["plan", "--threshold", 0.2, "--delta-prime", 0.01, "--total-delta", 1e-6, "--k", 12,
     "--per-release-delta", 1e-8],
    ["mech", "--rr", 0.5, "--k", 4, "--epsilon", 0.5, "--pdp-delta", 0.3, "--prior", 0.2,
     "--delta-prime", 0.01],
    ["mech", "--counterexample", 1.0, "--counterexample-delta", 0.01, "--epsilon", 1.0,
     "--pdp-delta", 0.01],
    ["report", "--epsilon", 1.8, "--delta", 1e-5, "--delta-prime", 0.05, "--grid-size", 99],
]


@pytest.mark.parametrize("args", JSON_COMMANDS, ids=lambda a: " ".join(map(str, a[:3])))
def test_json_output_validates_and_is_deterministic(cli, schema, args):
    first = cli(*args).stdout
    doc = json.loads(first)
    jsonschema.validate(doc, schema)
    assert doc["command"] == args[0]
    assert cli(*args).stdout == first


def test_bounds_walkthrough(cli):
    doc = json.loads(cli("bounds", "--epsilon", 0.1, "--delta", 1e-7, "--delta-prime", 0.01,
                         "--prior", 0.5).stdout)
    post = doc["result"]["posterior"]
    assert round(post["lower"], 4) == 0.4750 and round(post["upper"], 4) == 0.5250
    assert post["confidence"] == pytest.approx(0.99)
    assert doc["provenance"] == "formula"


def test_curve_csv_reports_first_crossing(cli):
    out = cli("curve", "--method", "basic", "--eps-per", 0.05, "--prior", 0.5,
              "--delta-prime", 0.05, "--criterion", "posterior-upper", "--k-max", 120,
              "--threshold", 0.8).stdout
    lines = out.splitlines()
    assert lines[0] == "# first_crossing_k=28"
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert list(rows[0]) == ["k", "epsilon_total", "delta_total", "epsilon_prime",
                             "criterion_value"]
    assert len(rows) == 120
    assert float(rows[27]["criterion_value"]) > 0.8 >= float(rows[26]["criterion_value"])


def test_convert_zcdp_example(cli):
    doc = json.loads(cli("convert", "--from", "zcdp", "--rho", 0.58, "--to", "pdp",
                         "--delta-prime", 0.01, "--prior", 0.5).stdout)
    assert doc["provenance"] == "optimized-split"
    assert doc["result"]["posterior"]["upper"] > 0.99


def test_numbers_round_trip(cli):
    out = cli("report", "--epsilon", 1.8, "--delta", 1e-5, "--delta-prime", 0.05,
              "--grid-size", 9).stdout
    doc = json.loads(out)
    for row in doc["result"]["grid"]:
        for value in row.values():
            assert float(repr(value)) == value


def test_pair_file(cli, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"outcomes": ["a", "b"], "prob_with": [0.75, 0.25],
                                "prob_without": [0.25, 0.75]}))
    doc = json.loads(cli("mech", "--pair-file", path, "--epsilon", 0.0).stdout)
    assert doc["result"]["tight_delta"]["expectation_form"] == pytest.approx(0.5)


@pytest.mark.parametrize("args,code", [
    (["frobnicate"], 1),
    (["bounds", "--no-such-flag"], 1),
    ([], 1),
    (["bounds", "--epsilon", -1], 2),
    (["bounds", "--epsilon", 1, "--delta", 1e-6], 2),
    (["mech", "--pair-file", "/nonexistent/pair.json"], 2),
    (["plan", "--threshold", 0.2, "--delta-prime", 0.01, "--total-delta", 0.0099], 3),
    (["plan", "--threshold", 0.2, "--delta-prime", 0.01, "--total-delta", 1e-6,
      "--k", 200, "--per-release-delta", 1e-8, "--method", "advanced"], 3),
])
def test_exit_codes(cli, args, code):
    proc = cli(*args, check=False)
    assert proc.returncode == code
    assert proc.stdout == ""
    assert proc.stderr
