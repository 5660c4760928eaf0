// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "distmatch/toy_example.h"

namespace distmatch {

ToyExample MakeToyExample() {
  constexpr int kN = 6;
  constexpr int kM = 6;
  MarketBuilder builder;
  builder.AddStudents(kN);
  builder.AddColleges(kM);
  for (CollegeId c = 0; c < kM; ++c) {
    builder.SetCollegePreference(c, {5, 4, 3, 2, 1, 0});
  }
  for (StudentId s = 0; s < kN; ++s) {
    builder.SetStudentPreference(s, {0, 1, 3, 4, 2, 5});
  }
  FeasibilitySpec r1 = FeasibilitySpec::RegionalCap(kM, {0, 1, 2}, 3);
  FeasibilitySpec r2 = FeasibilitySpec::RegionalCap(kM, {3, 4, 5}, 3);
  FeasibilitySpec urban = FeasibilitySpec::LinearCap(kM, {0, 1, 3, 4}, 4);
  return ToyExample{builder.Build(), FeasibilitySpec::And({r1, r2, urban}),
                    FeasibilitySpec::And({r1, r2}), MasterList::Identity(kN)};
}

}  // namespace distmatch
