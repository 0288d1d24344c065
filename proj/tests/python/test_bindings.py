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

import math

import pytest

import dprisk


def direct_eps_prime(eps, delta, delta_prime):
    # log of (e^eps (delta' - delta) + delta (1 + e^eps)) / (delta' - delta), unexpanded
    num = math.exp(eps) * (delta_prime - delta) + delta * (1 + math.exp(eps))
    return math.log(num / (delta_prime - delta))


def test_dp_to_pdp_matches_closed_form():
    for eps, delta, dp in [(0.1, 1e-7, 0.01), (1.8, 1e-5, 0.05), (1.0, 1e-6, 1e-5)]:
        assert dprisk.dp_to_pdp(eps, delta, dp) == pytest.approx(
            direct_eps_prime(eps, delta, dp), rel=1e-14)


def test_posterior_interval_is_bayes_at_extreme_ratio():
    eps, p = 0.7, 0.3
    lo, hi, conf = dprisk.posterior_interval(eps, 0.05, p)
    assert hi == pytest.approx(p * math.exp(eps) / (p * math.exp(eps) + 1 - p), rel=1e-14)
    assert lo == pytest.approx(p / (p + (1 - p) * math.exp(eps)), rel=1e-14)
    assert conf == pytest.approx(0.95)


def test_ratio_and_difference():
    assert dprisk.ratio_interval(0.5, 0.0) == pytest.approx((math.exp(-0.5), math.exp(0.5)))
    assert dprisk.diff_interval(0.5, 0.0)[1] == pytest.approx(math.tanh(0.125))
    assert dprisk.epsilon_for_diff(math.tanh(0.125)) == pytest.approx(0.5)


def test_domain_errors_raise_value_error():
    with pytest.raises(ValueError):
        dprisk.dp_to_pdp(1.0, 0.1, 0.05)
    with pytest.raises(ValueError):
        dprisk.posterior_interval(1.0, 0.05, 1.5)


def test_infeasible_raises_infeasible_error():
    with pytest.raises(dprisk.InfeasibleError):
        dprisk.max_total_epsilon("diff-magnitude", 0.2, 0.01, 0.0099)
    assert issubclass(dprisk.InfeasibleError, ValueError)


def test_basic_curve_crosses_at_28():
    curve = dprisk.risk_curve("basic", 60, 0.05, "posterior-upper", prior=0.5, eps_per=0.05)
    assert dprisk.first_crossing(curve, 0.8) == 28
    assert [pt["k"] for pt in curve] == list(range(1, 61))


def test_planner():
    total = dprisk.max_total_epsilon("diff-magnitude", 0.2, 0.01, 1e-6)
    assert total == pytest.approx(0.8107857613387809, abs=1e-12)
    per = dprisk.per_release_epsilon(12, 0.0, 0.0, "basic",
                                     dprisk.max_total_epsilon("diff-magnitude", 0.2, 0.01, 0.0))
    assert per == pytest.approx(0.8109302162163288 / 12, abs=1e-6)


def test_mechanism_pair_oracles():
    rr = dprisk.MechanismPair.randomized_response(0.5, k=3)
    assert len(rr) == 4
    for eps in (0.0, 0.5, 1.0):
        assert rr.tight_delta(eps) == pytest.approx(rr.tight_delta_tail_form(eps), abs=1e-12)
    # Brute force over 2^3 outcomes.
    e = math.exp(0.5)
    p_yes, p_no = e / (1 + e), 1 / (1 + e)
    brute = 0.0
    for bits in range(8):
        ones = bin(bits).count("1")
        p = p_yes ** ones * p_no ** (3 - ones)
        q = p_no ** ones * p_yes ** (3 - ones)
        brute += max(0.0, p - math.exp(0.5) * q)
    assert rr.tight_delta(0.5) == pytest.approx(brute, abs=1e-12)


def test_counterexample_separates_difference_bound_from_pdp():
    gap = dprisk.MechanismPair.diff_gap_counterexample(1.0, 0.01)
    assert not gap.pdp_holds(1.0, 0.01)
    assert gap.pdp_holds(1.0, 0.02)
    assert gap.pdp_holds(dprisk.diff_tilde_epsilon(1.0), 0.01)


def test_worst_case_report():
    report = dprisk.worst_case_report(1.8, 1e-5, 0.05)
    assert report["envelope"]["ratio_upper"] == pytest.approx(6.051057675948136, rel=1e-12)
    assert len(report["grid"]) == 999
