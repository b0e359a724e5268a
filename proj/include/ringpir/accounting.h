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

#ifndef RINGPIR_ACCOUNTING_H_
#define RINGPIR_ACCOUNTING_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringpir/apir.h"
#include "ringpir/edpir.h"

namespace ringpir {

// ---------------------------------------------------------------------------
// Measured communication.
// ---------------------------------------------------------------------------

enum class Direction { kQuery, kAnswer };

// One message of a retrieval. payload_bytes counts key material and answer
// elements; headers (key tag, share count, CNF set ids) go to overhead_bytes.
struct TranscriptEntry {
  unsigned server_index;
  Direction direction;
  std::uint64_t payload_bytes;
  std::uint64_t overhead_bytes = 0;
};

// Total payload bits over every message of one retrieval.
std::uint64_t measure_cc(std::span<const TranscriptEntry> transcript);
std::uint64_t transcript_bytes(std::span<const TranscriptEntry> transcript, Direction direction);
std::uint64_t transcript_overhead_bytes(std::span<const TranscriptEntry> transcript);

std::vector<TranscriptEntry> gamma_transcript(std::span<const Query> queries,
                                              std::span<const Answer> answers);
std::vector<TranscriptEntry> apir_transcript(std::span<const ApirQuery> queries,
                                             std::span<const ApirAnswer> answers);

// ---------------------------------------------------------------------------
// Closed-form communication of DPF-based instantiations. Values are the
// arguments of the big-O terms with constants dropped ("formula units").
// ---------------------------------------------------------------------------

enum class CcFormula {
  kStatisticalThreeServer,  // lambda log p 2^{c1(p) s(n)}
  kStatisticalFourServer,   // lambda 2^{10 s(n)} + lambda log p
  kPrimePowerFourServer,    // tau log p 2^{c2(p) s(n)}
  kPerfectEightServer,      // 2^{10 s(n)} + log p
  kCollusionThreshold,      // log p n^{1 / floor((2d+1)/t)}, ell = d(t+1)
  kApirThreeServer,         // lambda log p 2^{c1(p) s(n)}
  kApirFourServer,          // log p 2^{2p s(n)}
};

std::string_view row_name(CcFormula row);

struct AsymptoticInput {
  std::uint64_t n = 0;
  BigInt p = 2;
  unsigned tau = 1;
  double lambda = 0;
  unsigned d = 0;
  unsigned t = 0;
};

// Formula values overflow doubles for the large-p rows, so they are carried
// as base-2 logarithms.
struct FormulaValue {
  double log2_value;

  double value() const { return std::exp2(log2_value); }
};

double c1(const BigInt& p);
double c2(const BigInt& p);
// sqrt(log2 n * log2 log2 n), n >= 2.
double s_of_n(std::uint64_t n);

// Throws kRowParamMismatch when the input violates the row's constraints.
FormulaValue asymptotic_cc(CcFormula row, const AsymptoticInput& input);

// ---------------------------------------------------------------------------
// Reporting.
// ---------------------------------------------------------------------------

struct CcRow {
  std::string scheme;
  unsigned ell = 0;
  unsigned t = 0;
  BigInt p;
  unsigned tau = 1;
  std::uint64_t n = 0;
  std::uint64_t query_bytes = 0;
  std::uint64_t answer_bytes = 0;

  std::uint64_t cc_bits() const { return 8 * (query_bytes + answer_bytes); }
};

// Per-retrieval totals over all ell servers, from the parameters alone.
CcRow gamma_cc_row(const SchemeParams& params);
CcRow apir_cc_row(const SchemeParams& params);

std::string format_cc_table(std::span<const CcRow> rows);
std::string format_cc_csv(std::span<const CcRow> rows);

}  // namespace ringpir

#endif  // RINGPIR_ACCOUNTING_H_
