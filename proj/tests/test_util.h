//
// Copyright 2026 The dprisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Status assertions for the unit tests.

#ifndef DPRISK_TESTS_TEST_UTIL_H_
#define DPRISK_TESTS_TEST_UTIL_H_

#include <string>
#include <type_traits>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

#define DPRISK_TEST_CONCAT_INNER(x, y) x##y
#define DPRISK_TEST_CONCAT(x, y) DPRISK_TEST_CONCAT_INNER(x, y)

#define ASSERT_OK(expr) \
  ASSERT_TRUE((expr).ok()) << ::dprisk::testing::ToStatus(expr)
#define EXPECT_OK(expr) \
  EXPECT_TRUE((expr).ok()) << ::dprisk::testing::ToStatus(expr)

#define ASSERT_OK_AND_ASSIGN(lhs, rexpr)                                     \
  ASSERT_OK_AND_ASSIGN_IMPL(DPRISK_TEST_CONCAT(_status_or_, __LINE__), lhs, \
                            rexpr)
#define ASSERT_OK_AND_ASSIGN_IMPL(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                              \
  ASSERT_TRUE(statusor.ok()) << statusor.status();      \
  lhs = *std::move(statusor)

namespace dprisk::testing {

inline absl::Status ToStatus(const absl::Status& status) { return status; }
template <typename T>
absl::Status ToStatus(const absl::StatusOr<T>& status_or) {
  return status_or.status();
}

MATCHER_P(StatusIs, code, "") {
  if constexpr (std::is_same_v<std::decay_t<arg_type>, absl::Status>) {
    return arg.code() == code;
  } else {
    return arg.status().code() == code;
  }
}

}  // namespace dprisk::testing

#endif  // DPRISK_TESTS_TEST_UTIL_H_
