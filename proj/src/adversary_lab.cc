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

#include "ringpir/adversary_lab.h"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ringpir {
namespace {

std::uint64_t small_modulus(const RingModulus& mod) {
  if (mod.modulus() > kMaxEnumerableModulus) {
    throw Error(ErrorCode::kRingTooLarge, mod.to_string() + " exceeds the 2^16 enumeration guard");
  }
  return mod.modulus().convert_to<std::uint64_t>();
}

class OffsetAdversary final : public Adversary {
 public:
  OffsetAdversary(const Database& db, std::map<unsigned, RingElement> offsets)
      : db_(db), offsets_(std::move(offsets)) {}

  std::vector<Answer> respond(std::span<const Query> view, RandomSource&) override {
    std::vector<Answer> out;
    out.reserve(view.size());
    for (const Query& q : view) {
      Answer a = ans(db_, q);
      auto it = offsets_.find(q.server_index);
      if (it != offsets_.end()) a.value += it->second;
      out.push_back(std::move(a));
    }
    return out;
  }

 private:
  const Database& db_;
  std::map<unsigned, RingElement> offsets_;
};

class RandomNonzeroAdversary final : public Adversary {
 public:
  RandomNonzeroAdversary(const Database& db, RingModulus mod) : db_(db), mod_(std::move(mod)) {}

  std::vector<Answer> respond(std::span<const Query> view, RandomSource& rng) override {
    if (view.empty()) return {};
    std::vector<RingElement> offsets;
    for (;;) {
      offsets.clear();
      RingElement sum = RingElement::zero(mod_);
      for (std::size_t k = 0; k < view.size(); ++k) {
        offsets.push_back(sample_element(mod_, rng));
        sum += offsets.back();
      }
      if (!sum.is_zero()) break;
    }
    std::vector<Answer> out;
    out.reserve(view.size());
    for (std::size_t k = 0; k < view.size(); ++k) {
      Answer a = ans(db_, view[k]);
      a.value += offsets[k];
      out.push_back(std::move(a));
    }
    return out;
  }

 private:
  const Database& db_;
  RingModulus mod_;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string_view strategy_name(AdversaryStrategy s) {
  switch (s) {
    case AdversaryStrategy::kFixedOffset: return "fixed";
    case AdversaryStrategy::kRandomNonzeroOffset: return "random";
    case AdversaryStrategy::kExhaustiveBest: return "best";
  }
  return "unknown";
}

AdversarySpec AdversarySpec::fixed_offset(std::set<unsigned> corrupted,
                                          std::vector<RingElement> offsets) {
  return AdversarySpec{std::move(corrupted), AdversaryStrategy::kFixedOffset, std::move(offsets)};
}

AdversarySpec AdversarySpec::random_nonzero(std::set<unsigned> corrupted) {
  return AdversarySpec{std::move(corrupted), AdversaryStrategy::kRandomNonzeroOffset, {}};
}

AdversarySpec AdversarySpec::exhaustive_best(std::set<unsigned> corrupted) {
  return AdversarySpec{std::move(corrupted), AdversaryStrategy::kExhaustiveBest, {}};
}

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, const SchemeParams& params,
                                          const Database& db, std::uint64_t alpha) {
  if (spec.corrupted.size() > params.t()) {
    throw Error(ErrorCode::kCoalitionTooLarge, std::to_string(spec.corrupted.size()) +
                                                   " corrupted servers exceed t = " +
                                                   std::to_string(params.t()));
  }
  for (unsigned j : spec.corrupted) {
    if (j < 1 || j > params.ell()) {
      throw Error(ErrorCode::kInvalidAdversary, "corrupted server " + std::to_string(j) + " does not exist");
    }
  }
  switch (spec.strategy) {
    case AdversaryStrategy::kFixedOffset: {
      if (spec.offsets.size() != params.ell()) {
        throw Error(ErrorCode::kInvalidAdversary, "fixed offsets need one entry per server");
      }
      std::map<unsigned, RingElement> offsets;
      for (unsigned j = 1; j <= params.ell(); ++j) {
        const RingElement& delta = spec.offsets[j - 1];
        if (!(delta.modulus() == params.mod())) {
          throw Error(ErrorCode::kInvalidAdversary, "offset is not an element of " + params.mod().to_string());
        }
        if (spec.corrupted.contains(j)) {
          offsets.emplace(j, delta);
        } else if (!delta.is_zero()) {
          throw Error(ErrorCode::kInvalidAdversary,
                      "nonzero offset on honest server " + std::to_string(j));
        }
      }
      return std::make_unique<OffsetAdversary>(db, std::move(offsets));
    }
    case AdversaryStrategy::kRandomNonzeroOffset:
      return std::make_unique<RandomNonzeroAdversary>(db, params.mod());
    case AdversaryStrategy::kExhaustiveBest: {
      std::map<unsigned, RingElement> offsets;
      if (!spec.corrupted.empty()) {
        OptimalAttack best = exact_optimal_attack(params.mod(), params.m, db.at(alpha));
        offsets.emplace(*spec.corrupted.begin(), best.offset);
      }
      return std::make_unique<OffsetAdversary>(db, std::move(offsets));
    }
  }
  throw Error(ErrorCode::kInvalidAdversary, "unknown strategy");
}

ExpVerTrace run_exp_ver_traced(const SchemeParams& params, const Database& db, std::uint64_t alpha,
                               const std::set<unsigned>& corrupted, Adversary& adversary,
                               RandomSource& rng) {
  if (corrupted.size() > params.t()) {
    throw Error(ErrorCode::kCoalitionTooLarge, "coalition larger than t");
  }
  ExpVerTrace trace{que(params, alpha, rng), {}, RetrievalResult::reject(), 0};

  std::vector<Query> view;
  for (const Query& q : trace.bundle.queries) {
    if (corrupted.contains(q.server_index)) view.push_back(q);
  }
  std::vector<Answer> forged = adversary.respond(view, rng);
  if (forged.size() != view.size()) {
    throw Error(ErrorCode::kInvalidAdversary, "adversary must answer for every corrupted server");
  }
  std::map<unsigned, Answer> by_server;
  for (Answer& a : forged) {
    if (!corrupted.contains(a.server_index)) {
      throw Error(ErrorCode::kInvalidAdversary, "adversary answered for an honest server");
    }
    by_server.insert_or_assign(a.server_index, std::move(a));
  }
  for (const Query& q : trace.bundle.queries) {
    if (!corrupted.contains(q.server_index)) by_server.insert_or_assign(q.server_index, ans(db, q));
  }
  for (auto& [j, a] : by_server) trace.answers.push_back(std::move(a));

  trace.result = rec(params, trace.answers, trace.bundle.aux);
  trace.output = trace.result.is_value() && trace.result.value() != db.at(alpha) ? 1 : 0;
  return trace;
}

int run_exp_ver(const SchemeParams& params, const Database& db, std::uint64_t alpha,
                const AdversarySpec& spec, RandomSource& rng) {
  auto adversary = make_adversary(spec, params, db, alpha);
  return run_exp_ver_traced(params, db, alpha, spec.corrupted, *adversary, rng).output;
}

Rational verifiability_bound(const RingModulus& mod, unsigned m) {
  return Rational((BigInt(1) << m) - 1, mod.unit_count());
}

void finalize_report(ExperimentReport& report) {
  report.rate = report.trials == 0 ? 0.0
                                   : static_cast<double>(report.successes) / static_cast<double>(report.trials);
  const double b = std::min(report.bound, 1.0);
  report.sigma = report.trials == 0 ? 0.0 : std::sqrt(b * (1.0 - b) / static_cast<double>(report.trials));
  report.pass = report.rate <= report.bound + 4.0 * report.sigma;
}

ExperimentReport& ExperimentReport::operator+=(const ExperimentReport& other) {
  trials += other.trials;
  successes += other.successes;
  finalize_report(*this);
  return *this;
}

std::string ExperimentReport::to_record() const {
  std::ostringstream os;
  for (const auto& [key, value] : context) os << key << '=' << value << ' ';
  os << "trials=" << trials << " successes=" << successes << " rate=" << format_double(rate)
     << " bound=" << format_double(bound) << " sigma=" << format_double(sigma)
     << " pass=" << (pass ? "true" : "false");
  return os.str();
}

ExperimentReport ExperimentReport::from_record(const std::string& line) {
  ExperimentReport report;
  std::istringstream is(line);
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParamMismatch, "record token without '=': " + token);
    }
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "trials") {
      report.trials = std::stoull(value);
    } else if (key == "successes") {
      report.successes = std::stoull(value);
    } else if (key == "rate") {
      report.rate = std::stod(value);
    } else if (key == "bound") {
      report.bound = std::stod(value);
    } else if (key == "sigma") {
      report.sigma = std::stod(value);
    } else if (key == "pass") {
      report.pass = value == "true";
    } else {
      report.context.emplace_back(std::move(key), std::move(value));
    }
  }
  return report;
}

ExperimentReport estimate_success(const SchemeParams& params, const Database& db,
                                  std::uint64_t alpha, const AdversarySpec& spec,
                                  std::uint64_t trials, RandomSource& rng) {
  if (trials < 1) throw Error(ErrorCode::kParamMismatch, "trials must be >= 1");
  auto adversary = make_adversary(spec, params, db, alpha);

  ExperimentReport report;
  report.context = {
      {"ring", params.mod().to_string()},
      {"m", std::to_string(params.m)},
      {"ell", std::to_string(params.ell())},
      {"t", std::to_string(params.t())},
      {"backend", params.dpf.backend == DpfBackend::kAdditive ? "additive" : "cnf"},
      {"strategy", std::string(strategy_name(spec.strategy))},
      {"corrupted", std::to_string(spec.corrupted.size())},
  };
  report.bound = verifiability_bound(params.mod(), params.m).convert_to<double>();
  report.trials = trials;
  for (std::uint64_t k = 0; k < trials; ++k) {
    report.successes += static_cast<std::uint64_t>(
        run_exp_ver_traced(params, db, alpha, spec.corrupted, *adversary, rng).output);
  }
  finalize_report(report);
  return report;
}

Rational exact_success_probability(const RingModulus& mod, unsigned m, const BigInt& x_alpha,
                                   const RingElement& delta) {
  const std::uint64_t n = small_modulus(mod);
  if (!(delta.modulus() == mod)) throw Error(ErrorCode::kModulusMismatch, "offset ring");
  const std::uint64_t p = mod.p().convert_to<std::uint64_t>();
  const std::uint64_t limit = std::uint64_t{1} << m;
  const std::uint64_t x = x_alpha.convert_to<std::uint64_t>();
  const std::uint64_t d = delta.value().convert_to<std::uint64_t>();
  // beta ranges over R*, and so does u = beta^-1; y = x + u * delta.
  std::uint64_t hits = 0;
  for (std::uint64_t u = 1; u < n; ++u) {
    if (u % p == 0) continue;
    const std::uint64_t y = (x + u * d) % n;
    if (y < limit && y != x) ++hits;
  }
  return Rational(BigInt(hits), mod.unit_count());
}

OptimalAttack exact_optimal_attack(const RingModulus& mod, unsigned m, const BigInt& x_alpha) {
  const std::uint64_t n = small_modulus(mod);
  const std::uint64_t p = mod.p().convert_to<std::uint64_t>();
  const std::uint64_t limit = std::uint64_t{1} << m;
  if (x_alpha < 0 || x_alpha >= limit || limit > n) {
    throw Error(ErrorCode::kParamMismatch, "x_alpha must be an m-bit entry embedded in the ring");
  }
  const std::uint64_t x = x_alpha.convert_to<std::uint64_t>();

  // For a fixed beta, each wrong target x' in [0, 2^m) is hit by exactly one
  // offset, delta = beta (x' - x). Scattering over all (beta, x') therefore
  // counts, for every delta, the betas under which it succeeds.
  std::vector<std::uint32_t> hits(n, 0);
  for (std::uint64_t beta = 1; beta < n; ++beta) {
    if (beta % p == 0) continue;
    for (std::uint64_t target = 0; target < limit; ++target) {
      if (target == x) continue;
      const std::uint64_t diff = (target + n - x) % n;
      ++hits[(beta * diff) % n];
    }
  }
  std::uint64_t best = 1;
  for (std::uint64_t d = 2; d < n; ++d) {
    if (hits[d] > hits[best]) best = d;
  }
  return OptimalAttack{Rational(BigInt(hits[best]), mod.unit_count()), RingElement(mod, best)};
}

Rational exact_optimal_success(const SchemeParams& params, const Database& db, std::uint64_t alpha,
                               bool adversary_view_independent) {
  if (!adversary_view_independent) {
    throw Error(ErrorCode::kParamMismatch,
                "exact enumeration covers view-independent (fixed-offset) adversaries only");
  }
  if (alpha < 1 || alpha > db.size()) throw Error(ErrorCode::kInvalidIndex, "alpha outside database");
  return exact_optimal_attack(params.mod(), params.m, db.at(alpha)).probability;
}

Rational apir_exact_success_probability(const RingModulus& field, const BigInt& x_alpha,
                                        const RingElement& d1, const RingElement& d2) {
  if (field.tau() != 1) throw Error(ErrorCode::kUnsupportedModulus, "APIR runs over Z_p");
  small_modulus(field);
  const RingElement x(field, x_alpha);
  const RingElement r1 = x + d1;
  if (r1.value() > 1 || r1 == x) return Rational(0);
  std::uint64_t hits = 0;
  for (RingElement beta = RingElement::one(field); !beta.is_zero(); beta += RingElement::one(field)) {
    if (beta * r1 == beta * x + d2) ++hits;
  }
  return Rational(BigInt(hits), field.unit_count());
}

Rational apir_exact_optimal_success(const RingModulus& field, const BigInt& x_alpha) {
  const std::uint64_t p = small_modulus(field);
  Rational best = 0;
  for (std::uint64_t d1 = 0; d1 < p; ++d1) {
    for (std::uint64_t d2 = 0; d2 < p; ++d2) {
      if (d1 == 0 && d2 == 0) continue;
      best = std::max(best, apir_exact_success_probability(field, x_alpha, RingElement(field, d1),
                                                           RingElement(field, d2)));
    }
  }
  return best;
}

std::vector<std::uint8_t> coalition_view(const DpfKeySet& keys, std::span<const unsigned> coalition) {
  std::vector<std::uint8_t> view;
  for (unsigned j : coalition) append_serialized_key(keys.for_server(j), view);
  return view;
}

ViewHistogram exact_view_distribution(const DpfParams& params, const PointFunction& f,
                                      std::span<const unsigned> coalition) {
  params.validate();
  const std::uint64_t n = small_modulus(params.mod);
  const std::uint64_t vectors =
      params.backend == DpfBackend::kAdditive ? params.ell - 1 : binomial(params.ell, params.t) - 1;
  const std::uint64_t words = vectors * params.n;
  double tapes = std::pow(static_cast<double>(n), static_cast<double>(words));
  if (tapes > static_cast<double>(1 << 24)) {
    throw Error(ErrorCode::kRingTooLarge, "more than 2^24 random tapes to enumerate");
  }
  ViewHistogram histogram;
  std::vector<std::uint64_t> tape(words, 0);
  for (;;) {
    ScriptedRandom rng(tape);
    DpfKeySet keys = gen(params, f, rng);
    ++histogram[coalition_view(keys, coalition)];
    std::size_t pos = 0;
    while (pos < words && ++tape[pos] == n) tape[pos++] = 0;
    if (pos == words) break;
  }
  return histogram;
}

ViewHistogram sampled_view_histogram(const DpfParams& params, const PointFunction& f,
                                     std::span<const unsigned> coalition, std::uint64_t trials,
                                     std::uint64_t first_seed) {
  ViewHistogram histogram;
  for (std::uint64_t s = 0; s < trials; ++s) {
    SeededRandom rng(first_seed + s);
    ++histogram[coalition_view(gen(params, f, rng), coalition)];
  }
  return histogram;
}

ChiSquareResult chi_square_homogeneity(const ViewHistogram& a, const ViewHistogram& b) {
  double total_a = 0, total_b = 0;
  for (const auto& [cell, count] : a) total_a += static_cast<double>(count);
  for (const auto& [cell, count] : b) total_b += static_cast<double>(count);
  ViewHistogram cells = a;
  for (const auto& [cell, count] : b) cells[cell] += 0;

  ChiSquareResult result;
  if (total_a == 0 || total_b == 0 || cells.size() < 2) return result;
  const double total = total_a + total_b;
  for (const auto& [cell, unused] : cells) {
    const auto ia = a.find(cell);
    const auto ib = b.find(cell);
    const double oa = ia == a.end() ? 0.0 : static_cast<double>(ia->second);
    const double ob = ib == b.end() ? 0.0 : static_cast<double>(ib->second);
    const double ea = total_a * (oa + ob) / total;
    const double eb = total_b * (oa + ob) / total;
    result.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  result.degrees_of_freedom = cells.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(result.degrees_of_freedom));
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  return result;
}

}  // namespace ringpir
