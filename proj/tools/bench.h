// Copyright 2026 The ringpir Authors
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

#ifndef RINGPIR_TOOLS_BENCH_H_
#define RINGPIR_TOOLS_BENCH_H_

#include <cstdint>
#include <string>

namespace ringpir::tools {

struct BenchOptions {
  std::string out_dir = ".";
  std::uint64_t trials = 20000;
  std::uint64_t seed = 1;
  std::uint64_t n = 16;
};

// Writes experiments.txt, cc_table.txt, cc_table.csv, halving.txt and
// asymptotic.txt into out_dir. Returns false if any experiment failed.
bool run_bench(const BenchOptions& options);

}  // namespace ringpir::tools

#endif  // RINGPIR_TOOLS_BENCH_H_
