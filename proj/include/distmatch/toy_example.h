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


// Six students, six colleges in two regions of three, and a cap on the four
// non-rural colleges c1, c2, c4, c5. Everyone ranks c1 > c2 > c4 > c5 > c3
// > c6; every college ranks s6 > s5 > ... > s1.

#ifndef DISTMATCH_TOY_EXAMPLE_H_
#define DISTMATCH_TOY_EXAMPLE_H_

#include "distmatch/constraints.h"
#include "distmatch/market.h"

namespace distmatch {

struct ToyExample {
  Market market;
  FeasibilitySpec spec;           // both regional caps and the non-rural cap
  FeasibilitySpec regional_only;  // without the non-rural cap
  MasterList order;               // s1, ..., s6
};

ToyExample MakeToyExample();

}  // namespace distmatch

#endif  // DISTMATCH_TOY_EXAMPLE_H_
