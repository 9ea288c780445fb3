// Copyright 2026 The cfaug Authors.
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

#ifndef CFAUG_TESTS_ROUGE_CASES_H_
#define CFAUG_TESTS_ROUGE_CASES_H_

namespace cfaug::testing {

struct RougeCase {
  const char* candidate;
  const char* reference;
  int n;
  double precision, recall, f1;
};

// Produced by an independent Counter-based script; not by this library.
inline constexpr RougeCase kRougeOracle[] = {
    {"the cat", "the cat sat", 1, 1, 0.66666666666666663, 0.80000000000000004},
    {"the cat", "the cat sat", 2, 1, 0.5, 0.66666666666666663},
    {"the cat sat on the mat", "the cat sat on the mat", 1, 1, 1, 1},
    {"the cat sat on the mat", "the cat sat on the mat", 2, 1, 1, 1},
    {"a b c", "d e f", 1, 0, 0, 0},
    {"the the the", "the cat", 1, 0.33333333333333331, 0.5, 0.40000000000000002},
    {"the cat", "the the the", 1, 0.5, 0.33333333333333331, 0.40000000000000002},
    {"A bus driver was hurt", "a bus driver was seriously hurt", 1, 1, 0.83333333333333337,
     0.90909090909090906},
    {"A bus driver was hurt", "a bus driver was seriously hurt", 2, 0.75, 0.59999999999999998,
     0.66666666666666652},
    {"police arrested two men", "two men were arrested by police", 1, 1, 0.66666666666666663,
     0.80000000000000004},
    {"police arrested two men", "two men were arrested by police", 2, 0.33333333333333331,
     0.20000000000000001, 0.25},
    {"UKIP has chosen its candidate for London mayor.",
     "UKIP has chosen its candidate to run for London Mayor in the 2016 election", 1, 1,
     0.5714285714285714, 0.72727272727272729},
    {"UKIP has chosen its candidate for London mayor.",
     "UKIP has chosen its candidate to run for London Mayor in the 2016 election", 2,
     0.8571428571428571, 0.46153846153846156, 0.59999999999999998},
    {"Darlington have appealed to the Football Association",
     "Darlington have launched an appeal to raise 150,000", 1, 0.42857142857142855,
     0.33333333333333331, 0.375},
    {"Darlington have appealed to the Football Association",
     "Darlington have launched an appeal to raise 150,000", 2, 0.16666666666666666, 0.125,
     0.14285714285714288},
    {"x y x y x", "x y", 2, 0.25, 1, 0.40000000000000002},
    {"x y", "x y x y x", 2, 1, 0.25, 0.40000000000000002},
    {"", "the cat", 1, 0, 0, 0},
    {"one", "one", 2, 0, 0, 0},
    {"New-York's mayor, Bill!", "new york s mayor bill de blasio", 1, 1, 0.7142857142857143,
     0.83333333333333326},
};

}  // namespace cfaug::testing

#endif  // CFAUG_TESTS_ROUGE_CASES_H_
