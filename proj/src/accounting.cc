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

#include "ringpir/accounting.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ringpir {
namespace {

std::uint64_t key_material_bytes(const DpfKey& key) {
  return key.shares.size() * key.domain_size() * key.modulus().element_width();
}

void row_fail(const std::string& why) { throw Error(ErrorCode::kRowParamMismatch, why); }

// log2(2^a + 2^b) without overflow.
double log2_sum(double a, double b) {
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

double log2_of(const BigInt& v) {
  // Exact enough for formula units; BigInt -> double keeps 53 bits.
  return std::log2(v.convert_to<double>());
}

std::string scheme_label(const SchemeParams& params, std::string_view name) {
  return std::string(name) + (params.dpf.backend == DpfBackend::kAdditive ? "/additive" : "/cnf");
}

}  // namespace

std::uint64_t measure_cc(std::span<const TranscriptEntry> transcript) {
  std::uint64_t bytes = 0;
  for (const TranscriptEntry& e : transcript) bytes += e.payload_bytes;
  return 8 * bytes;
}

std::uint64_t transcript_bytes(std::span<const TranscriptEntry> transcript, Direction direction) {
  std::uint64_t bytes = 0;
  for (const TranscriptEntry& e : transcript) {
    if (e.direction == direction) bytes += e.payload_bytes;
  }
  return bytes;
}

std::uint64_t transcript_overhead_bytes(std::span<const TranscriptEntry> transcript) {
  std::uint64_t bytes = 0;
  for (const TranscriptEntry& e : transcript) bytes += e.overhead_bytes;
  return bytes;
}

std::vector<TranscriptEntry> gamma_transcript(std::span<const Query> queries,
                                              std::span<const Answer> answers) {
  std::vector<TranscriptEntry> out;
  for (const Query& q : queries) {
    const std::uint64_t material = key_material_bytes(q.key);
    out.push_back({q.server_index, Direction::kQuery, material, serialized_key_size(q.key) - material});
  }
  for (const Answer& a : answers) {
    out.push_back({a.server_index, Direction::kAnswer, a.value.modulus().element_width(), 0});
  }
  return out;
}

std::vector<TranscriptEntry> apir_transcript(std::span<const ApirQuery> queries,
                                             std::span<const ApirAnswer> answers) {
  std::vector<TranscriptEntry> out;
  for (const ApirQuery& q : queries) {
    const std::uint64_t material = key_material_bytes(q.key1) + key_material_bytes(q.key2);
    const std::uint64_t total = serialized_key_size(q.key1) + serialized_key_size(q.key2);
    out.push_back({q.server_index, Direction::kQuery, material, total - material});
  }
  for (const ApirAnswer& a : answers) {
    out.push_back({a.server_index, Direction::kAnswer, 2 * a.a1.modulus().element_width(), 0});
  }
  return out;
}

std::string_view row_name(CcFormula row) {
  switch (row) {
    case CcFormula::kStatisticalThreeServer: return "stat-3server";
    case CcFormula::kStatisticalFourServer: return "stat-4server";
    case CcFormula::kPrimePowerFourServer: return "prime-power-4server";
    case CcFormula::kPerfectEightServer: return "perfect-8server";
    case CcFormula::kCollusionThreshold: return "collusion-threshold";
    case CcFormula::kApirThreeServer: return "apir-3server";
    case CcFormula::kApirFourServer: return "apir-4server";
  }
  return "unknown";
}

double c1(const BigInt& p) {
  if (p == 2) return 6;
  if (p == 3) return 10;
  return 2.0 * p.convert_to<double>();
}

double c2(const BigInt& p) {
  if (p == 2) return 6;
  return 2.0 * p.convert_to<double>();
}

double s_of_n(std::uint64_t n) {
  if (n < 2) row_fail("s(n) needs n >= 2");
  const double log_n = std::log2(static_cast<double>(n));
  return std::sqrt(log_n * std::log2(log_n));
}

FormulaValue asymptotic_cc(CcFormula row, const AsymptoticInput& in) {
  if (!is_probable_prime(in.p)) row_fail("p must be prime");
  if (in.tau == 0) row_fail("tau must be >= 1");
  const bool needs_field = row != CcFormula::kPrimePowerFourServer;
  if (needs_field && in.tau != 1) row_fail(std::string(row_name(row)) + " is defined over Z_p (tau = 1)");
  const double log_log_p = std::log2(log2_of(in.p));

  auto need_lambda = [&] {
    if (in.lambda <= 0) row_fail(std::string(row_name(row)) + " needs lambda > 0");
    return std::log2(in.lambda);
  };

  switch (row) {
    case CcFormula::kStatisticalThreeServer:
    case CcFormula::kApirThreeServer:
      return {need_lambda() + log_log_p + c1(in.p) * s_of_n(in.n)};
    case CcFormula::kStatisticalFourServer: {
      const double log_lambda = need_lambda();
      return {log2_sum(log_lambda + 10.0 * s_of_n(in.n), log_lambda + log_log_p)};
    }
    case CcFormula::kPrimePowerFourServer:
      return {std::log2(static_cast<double>(in.tau)) + log_log_p + c2(in.p) * s_of_n(in.n)};
    case CcFormula::kPerfectEightServer:
      return {log2_sum(10.0 * s_of_n(in.n), log_log_p)};
    case CcFormula::kCollusionThreshold: {
      if (in.d < 1 || in.t < 1) row_fail("collusion-threshold row needs d >= 1 and t >= 1");
      const unsigned root = (2 * in.d + 1) / in.t;
      if (root == 0) row_fail("collusion-threshold row needs t <= 2d + 1");
      if (in.n < 1) row_fail("n must be >= 1");
      return {log_log_p + std::log2(static_cast<double>(in.n)) / root};
    }
    case CcFormula::kApirFourServer:
      return {log_log_p + 2.0 * in.p.convert_to<double>() * s_of_n(in.n)};
  }
  row_fail("unknown row");
  return {0};
}

CcRow gamma_cc_row(const SchemeParams& params) {
  CcRow row{scheme_label(params, "gamma"), params.ell(), params.t(), params.mod().p(),
            params.mod().tau(), params.n()};
  row.query_bytes = params.ell() * key_size_bytes(params.dpf);
  row.answer_bytes = params.ell() * params.mod().element_width();
  return row;
}

CcRow apir_cc_row(const SchemeParams& params) {
  CcRow row{scheme_label(params, "apir"), params.ell(), params.t(), params.mod().p(),
            params.mod().tau(), params.n()};
  row.query_bytes = params.ell() * apir_query_bytes(params);
  row.answer_bytes = 2 * params.ell() * params.mod().element_width();
  return row;
}

std::string format_cc_table(std::span<const CcRow> rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %4s %4s %12s %5s %10s %14s %14s %14s\n", "scheme", "ell",
                "t", "p", "tau", "n", "query-bytes", "answer-bytes", "CC-bits");
  os << line;
  for (const CcRow& r : rows) {
    std::snprintf(line, sizeof line, "%-16s %4u %4u %12s %5u %10llu %14llu %14llu %14llu\n",
                  r.scheme.c_str(), r.ell, r.t, r.p.str().c_str(), r.tau,
                  static_cast<unsigned long long>(r.n), static_cast<unsigned long long>(r.query_bytes),
                  static_cast<unsigned long long>(r.answer_bytes),
                  static_cast<unsigned long long>(r.cc_bits()));
    os << line;
  }
  return os.str();
}

std::string format_cc_csv(std::span<const CcRow> rows) {
  std::ostringstream os;
  os << "scheme,ell,t,p,tau,n,query-bytes,answer-bytes,CC-bits\n";
  for (const CcRow& r : rows) {
    os << r.scheme << ',' << r.ell << ',' << r.t << ',' << r.p << ',' << r.tau << ',' << r.n << ','
       << r.query_bytes << ',' << r.answer_bytes << ',' << r.cc_bits() << '\n';
  }
  return os.str();
}

}  // namespace ringpir
