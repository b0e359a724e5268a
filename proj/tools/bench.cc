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

#include "bench.h"

#include <spdlog/spdlog.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ringpir/accounting.h"
#include "ringpir/adversary_lab.h"
#include "ringpir/apir.h"
#include "ringpir/edpir.h"

namespace ringpir::tools {
namespace {

struct RingChoice {
  std::uint64_t p;
  unsigned tau;
  unsigned m;
};

SchemeParams make_params(unsigned ell, unsigned t, DpfBackend backend, std::uint64_t n,
                         const RingModulus& mod, unsigned m) {
  const DpfParams dpf = backend == DpfBackend::kAdditive ? DpfParams::additive(ell, n, mod)
                                                         : DpfParams::cnf(ell, t, n, mod);
  return SchemeParams::make(dpf, m);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot write " + path.string());
  out << text;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool run_experiments(const BenchOptions& options, std::ostream& out) {
  const RingChoice rings[] = {{2, 7, 1}, {2, 3, 2}, {3, 3, 2}, {131, 1, 1}, {5, 2, 3}};
  const AdversaryStrategy strategies[] = {AdversaryStrategy::kRandomNonzeroOffset,
                                          AdversaryStrategy::kExhaustiveBest};
  SeededRandom rng(options.seed);
  bool all_pass = true;
  for (const RingChoice& rc : rings) {
    const RingModulus mod(rc.p, rc.tau);
    for (const auto& [backend, t] : {std::pair{DpfBackend::kAdditive, 2u}, std::pair{DpfBackend::kCnf, 1u}}) {
      const SchemeParams params = make_params(3, t, backend, options.n, mod, rc.m);
      const Database db = Database::random(options.n, rc.m, rng);
      const std::uint64_t alpha = 1 + rng.uniform_below(options.n).convert_to<std::uint64_t>();
      std::set<unsigned> corrupted;
      for (unsigned j = 1; j <= t; ++j) corrupted.insert(j);
      for (AdversaryStrategy s : strategies) {
        const AdversarySpec spec = s == AdversaryStrategy::kExhaustiveBest
                                       ? AdversarySpec::exhaustive_best(corrupted)
                                       : AdversarySpec::random_nonzero(corrupted);
        ExperimentReport report = estimate_success(params, db, alpha, spec, options.trials, rng);
        if (s == AdversaryStrategy::kExhaustiveBest) {
          report.context.emplace_back("exact", format_double(
              exact_optimal_success(params, db, alpha, true).convert_to<double>()));
        }
        all_pass &= report.pass;
        out << report.to_record() << '\n';
      }
    }
  }
  return all_pass;
}

}  // namespace

bool run_bench(const BenchOptions& options) {
  const std::filesystem::path dir(options.out_dir);
  std::filesystem::create_directories(dir);

  std::ostringstream experiments;
  const bool pass = run_experiments(options, experiments);
  write_file(dir / "experiments.txt", experiments.str());
  spdlog::info("experiments done");

  const RingChoice rings[] = {{2, 8, 1}, {3, 3, 1}, {2, 1, 1}, {131, 1, 1}, {257, 1, 1}};
  const std::uint64_t sizes[] = {1024, 4096};
  std::vector<CcRow> rows;
  std::ostringstream halving;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %4s %4s %8s %10s %14s %14s %6s\n", "backend", "ell", "t",
                "p", "n", "gamma-query", "apir-query", "ratio");
  halving << line;
  for (const RingChoice& rc : rings) {
    const RingModulus mod(rc.p, rc.tau);
    for (std::uint64_t n : sizes) {
      for (unsigned ell = 2; ell <= 4; ++ell) {
        for (DpfBackend backend : {DpfBackend::kAdditive, DpfBackend::kCnf}) {
          const unsigned t = backend == DpfBackend::kAdditive ? ell - 1 : 1;
          const SchemeParams params = make_params(ell, t, backend, n, mod, rc.m);
          const CcRow gamma = gamma_cc_row(params);
          rows.push_back(gamma);
          if (rc.tau != 1) continue;
          const CcRow apir = apir_cc_row(params);
          rows.push_back(apir);
          std::snprintf(line, sizeof line, "%-10s %4u %4u %8llu %10llu %14llu %14llu %6.3f\n",
                        backend == DpfBackend::kAdditive ? "additive" : "cnf", ell, t,
                        static_cast<unsigned long long>(rc.p), static_cast<unsigned long long>(n),
                        static_cast<unsigned long long>(gamma.query_bytes),
                        static_cast<unsigned long long>(apir.query_bytes),
                        static_cast<double>(gamma.query_bytes) / static_cast<double>(apir.query_bytes));
          halving << line;
        }
      }
    }
  }
  write_file(dir / "cc_table.txt", format_cc_table(rows));
  write_file(dir / "cc_table.csv", format_cc_csv(rows));
  write_file(dir / "halving.txt", halving.str());

  std::ostringstream asym;
  asym << "# log2 of the formula value (constants dropped)\n";
  std::snprintf(line, sizeof line, "%-24s %6s %6s %12s %14s\n", "row", "p", "tau", "n", "log2-value");
  asym << line;
  const CcFormula formulas[] = {CcFormula::kStatisticalThreeServer, CcFormula::kStatisticalFourServer,
                                  CcFormula::kPrimePowerFourServer,            CcFormula::kPerfectEightServer,
                                  CcFormula::kCollusionThreshold,            CcFormula::kApirThreeServer,
                                  CcFormula::kApirFourServer};
  for (CcFormula row : formulas) {
    for (std::uint64_t p : {2, 3, 5}) {
      for (std::uint64_t n : {std::uint64_t{1} << 20, std::uint64_t{1} << 30, std::uint64_t{1} << 40}) {
        AsymptoticInput in{n, BigInt(p), 1, 128, 1, 1};
        std::snprintf(line, sizeof line, "%-24s %6llu %6u %12llu %14.4f\n",
                      std::string(row_name(row)).c_str(), static_cast<unsigned long long>(p), 1u,
                      static_cast<unsigned long long>(n), asymptotic_cc(row, in).log2_value);
        asym << line;
      }
    }
  }
  const std::uint64_t n = std::uint64_t{1} << 30;
  const BigInt big_p = next_prime(BigInt(1) << 128);
  const double small = asymptotic_cc(CcFormula::kPrimePowerFourServer, {n, BigInt(2), 128, 128, 0, 0}).log2_value;
  const double large = asymptotic_cc(CcFormula::kApirThreeServer, {n, big_p, 1, 128, 0, 0}).log2_value;
  asym << "\n# 128-bit rings at n = 2^30\n";
  asym << "prime-power-4server p=2 tau=128 log2=" << format_double(small) << '\n';
  asym << "apir p=" << big_p << " tau=1 log2=" << format_double(large) << '\n';
  asym << "log2-ratio=" << format_double(large - small) << '\n';
  write_file(dir / "asymptotic.txt", asym.str());
  return pass;
}

}  // namespace ringpir::tools
