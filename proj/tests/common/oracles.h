// Copyright 2026 The t2tfaith Authors.
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

#ifndef T2TFAITH_TESTS_COMMON_ORACLES_H_
#define T2TFAITH_TESTS_COMMON_ORACLES_H_

// Test-only reference implementations, deliberately written along a
// different path than the library code they check.

#include <string>
#include <vector>

namespace t2tfaith::testing {

// Enumerates every strictly increasing index tuple of needle.size() positions
// in haystack and reports whether any of them spells out the needle.
inline bool BruteForceEmbeds(const std::vector<std::string> &needle,
                             const std::vector<std::string> &haystack) {
  const std::size_t k = needle.size();
  const std::size_t n = haystack.size();
  if (k == 0) return true;
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = haystack[idx[i]] == needle[i];
    if (ok) return true;
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace t2tfaith::testing

#endif  // T2TFAITH_TESTS_COMMON_ORACLES_H_
