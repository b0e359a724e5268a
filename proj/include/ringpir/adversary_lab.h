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

#ifndef RINGPIR_ADVERSARY_LAB_H_
#define RINGPIR_ADVERSARY_LAB_H_

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ringpir/edpir.h"
#include "ringpir/random.h"

namespace ringpir {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Verification experiment.
//
// The challenger runs que, hands the corrupted servers' queries to the
// adversary, lets it substitute those servers' answers, answers honestly for
// everyone else and runs rec. The experiment outputs 1 when rec returns a
// value other than x_alpha.
// ---------------------------------------------------------------------------

enum class AdversaryStrategy {
  // Adds a fixed offset Delta_j to each corrupted server's honest answer.
  kFixedOffset,
  // Fresh uniform offsets on the corrupted servers, resampled until their sum
  // is nonzero.
  kRandomNonzeroOffset,
  // The offset that maximizes the exact success probability for the known
  // x_alpha, placed on the first corrupted server. With a perfectly private
  // DPF the corrupted view is independent of (alpha, beta), so no
  // view-dependent strategy does better than this fixed offset.
  kExhaustiveBest,
};

std::string_view strategy_name(AdversaryStrategy s);

struct AdversarySpec {
  std::set<unsigned> corrupted;
  AdversaryStrategy strategy = AdversaryStrategy::kFixedOffset;
  // kFixedOffset only: one offset per server (index j-1), zero outside
  // `corrupted`.
  std::vector<RingElement> offsets;

  static AdversarySpec fixed_offset(std::set<unsigned> corrupted, std::vector<RingElement> offsets);
  static AdversarySpec random_nonzero(std::set<unsigned> corrupted);
  static AdversarySpec exhaustive_best(std::set<unsigned> corrupted);
};

// An adversary sees only the corrupted servers' queries and returns one
// substituted answer per corrupted server.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::vector<Answer> respond(std::span<const Query> view, RandomSource& rng) = 0;
};

// Builds the strategy. The adversary may depend on the experiment inputs
// (db, alpha), which the verifiability game quantifies over. Throws
// kCoalitionTooLarge when |V| > t, kInvalidAdversary on a bad spec.
std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, const SchemeParams& params,
                                          const Database& db, std::uint64_t alpha);

struct ExpVerTrace {
  QueryBundle bundle;
  std::vector<Answer> answers;  // as delivered to rec, ordered by server
  RetrievalResult result = RetrievalResult::reject();
  int output = 0;
};

ExpVerTrace run_exp_ver_traced(const SchemeParams& params, const Database& db, std::uint64_t alpha,
                               const std::set<unsigned>& corrupted, Adversary& adversary,
                               RandomSource& rng);

int run_exp_ver(const SchemeParams& params, const Database& db, std::uint64_t alpha,
                const AdversarySpec& spec, RandomSource& rng);

// ---------------------------------------------------------------------------
// Monte Carlo estimation.
// ---------------------------------------------------------------------------

struct ExperimentReport {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate = 0;
  // (2^m - 1) / |R*|.
  double bound = 0;
  // Binomial standard deviation of the rate at success probability `bound`.
  double sigma = 0;
  // rate <= bound + 4 sigma.
  bool pass = false;
  // Free-form descriptive fields written ahead of the statistics.
  std::vector<std::pair<std::string, std::string>> context;

  // Merges two reports over the same configuration.
  ExperimentReport& operator+=(const ExperimentReport& other);

  // One line of space-separated key=value pairs.
  std::string to_record() const;
  static ExperimentReport from_record(const std::string& line);
};

// Recomputes rate, sigma and pass from trials, successes and bound.
void finalize_report(ExperimentReport& report);

Rational verifiability_bound(const RingModulus& mod, unsigned m);

ExperimentReport estimate_success(const SchemeParams& params, const Database& db,
                                  std::uint64_t alpha, const AdversarySpec& spec,
                                  std::uint64_t trials, RandomSource& rng);

// ---------------------------------------------------------------------------
// Exact enumeration (p^tau <= 2^16).
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kMaxEnumerableModulus = std::uint64_t{1} << 16;

// Pr over beta in R* that beta^-1 (beta x + delta) lands in [0, 2^m) \ {x}.
Rational exact_success_probability(const RingModulus& mod, unsigned m, const BigInt& x_alpha,
                                   const RingElement& delta);

struct OptimalAttack {
  Rational probability;
  RingElement offset;  // smallest maximizing nonzero offset
};

OptimalAttack exact_optimal_attack(const RingModulus& mod, unsigned m, const BigInt& x_alpha);

// Best success probability over all view-independent adversaries. Throws
// kParamMismatch when `adversary_view_independent` is false (the reduction
// to a fixed offset needs a perfectly private DPF), kRingTooLarge above 2^16.
Rational exact_optimal_success(const SchemeParams& params, const Database& db, std::uint64_t alpha,
                               bool adversary_view_independent);

// APIR baseline: Pr over beta in F* of accepting a wrong bit when the
// aggregates are shifted by (d1, d2).
Rational apir_exact_success_probability(const RingModulus& field, const BigInt& x_alpha,
                                        const RingElement& d1, const RingElement& d2);
Rational apir_exact_optimal_success(const RingModulus& field, const BigInt& x_alpha);

// ---------------------------------------------------------------------------
// Privacy lab: coalition views and their distributions.
// ---------------------------------------------------------------------------

using ViewHistogram = std::map<std::vector<std::uint8_t>, std::uint64_t>;

// Concatenated serialized keys of the coalition members, in the given order.
std::vector<std::uint8_t> coalition_view(const DpfKeySet& keys, std::span<const unsigned> coalition);

// Distribution of the coalition view over every random tape of gen. The tape
// holds one word per random element, each ranging over [0, p^tau). Throws
// kRingTooLarge beyond 2^24 tapes.
ViewHistogram exact_view_distribution(const DpfParams& params, const PointFunction& f,
                                      std::span<const unsigned> coalition);

// Histogram of the coalition view over `trials` runs of gen, run s seeded
// with first_seed + s.
ViewHistogram sampled_view_histogram(const DpfParams& params, const PointFunction& f,
                                     std::span<const unsigned> coalition, std::uint64_t trials,
                                     std::uint64_t first_seed);

struct ChiSquareResult {
  double statistic = 0;
  std::uint64_t degrees_of_freedom = 0;
  double p_value = 1;
};

// Two-sample chi-square test of homogeneity over the union of cells.
ChiSquareResult chi_square_homogeneity(const ViewHistogram& a, const ViewHistogram& b);

}  // namespace ringpir

#endif  // RINGPIR_ADVERSARY_LAB_H_
