// Copyright 2026 The cvgauss Authors
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


#include <gtest/gtest.h>

#include "support/property_suites.h"

namespace cvgauss::testing {
namespace {

void expect_clean(const SuiteResult& r, std::size_t cases) {
  EXPECT_EQ(r.cases, cases);
  EXPECT_EQ(r.violations, 0u);
}

TEST(Properties, SymplecticIdentity) { expect_clean(symplectic_identity_suite(), 200); }
TEST(Properties, Physicality) { expect_clean(physicality_suite(), 200); }
TEST(Properties, UpwardClosed) { expect_clean(upward_closed_suite(), 200); }
TEST(Properties, TensorMaxOfKappa) { expect_clean(tensor_max_suite(), 100); }
TEST(Properties, FreeSetSurvivesPartialHomodyne) { expect_clean(free_set_homodyne_suite(), 200); }
TEST(Properties, MVarBarMonotone) { expect_clean(m_var_bar_suite(), 200); }

TEST(Properties, ProtocolOutputsRespectBound) {
  const SuiteResult r = protocol_bound_suite();
  EXPECT_GT(r.cases, 0u);
  EXPECT_EQ(r.violations, 0u);
}

}  // namespace
}  // namespace cvgauss::testing
