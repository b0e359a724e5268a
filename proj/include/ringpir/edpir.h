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

#ifndef RINGPIR_EDPIR_H_
#define RINGPIR_EDPIR_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "ringpir/dpf.h"
#include "ringpir/random.h"
#include "ringpir/ring.h"

namespace ringpir {

// Parameters of the error-detecting scheme: the DPF instance plus the entry
// width m. Entries embed into Z_{p^tau} as integers, so 2^m <= p^tau.
struct SchemeParams {
  DpfParams dpf;
  unsigned m = 1;

  static SchemeParams make(const DpfParams& dpf, unsigned m);
  void validate() const;

  unsigned ell() const { return dpf.ell; }
  unsigned t() const { return dpf.t; }
  std::uint64_t n() const { return dpf.n; }
  const RingModulus& mod() const { return dpf.mod; }
  unsigned lambda() const { return dpf.lambda; }
};

// n entries of m bits each. Identical on every server.
class Database {
 public:
  Database(std::vector<BigInt> entries, unsigned m);

  static Database random(std::uint64_t n, unsigned m, RandomSource& rng);

  std::uint64_t size() const { return entries_.size(); }
  unsigned entry_bits() const { return m_; }
  // 1-based.
  const BigInt& at(std::uint64_t i) const { return entries_.at(i - 1); }
  const std::vector<BigInt>& entries() const { return entries_; }

  friend bool operator==(const Database&, const Database&) = default;

 private:
  std::vector<BigInt> entries_;
  unsigned m_;
};

struct Query {
  unsigned server_index;
  DpfKey key;
};

// Client-side secret; never leaves the client.
struct Aux {
  RingElement beta;
};

struct Answer {
  unsigned server_index;
  RingElement value;
};

// Either a retrieved entry or the rejection symbol.
class RetrievalResult {
 public:
  static RetrievalResult value_of(BigInt v) { return RetrievalResult(std::move(v)); }
  static RetrievalResult reject() { return RetrievalResult(); }

  bool is_reject() const { return !value_.has_value(); }
  bool is_value() const { return value_.has_value(); }
  const BigInt& value() const { return value_.value(); }

  friend bool operator==(const RetrievalResult&, const RetrievalResult&) = default;

 private:
  RetrievalResult() = default;
  explicit RetrievalResult(BigInt v) : value_(std::move(v)) {}

  std::optional<BigInt> value_;
};

std::ostream& operator<<(std::ostream& os, const RetrievalResult& r);

struct QueryBundle {
  std::vector<Query> queries;
  Aux aux;
};

// Samples a fresh beta in R* and shares f_{alpha,beta}; one key per server.
QueryBundle que(const SchemeParams& params, std::uint64_t alpha, RandomSource& rng);

// a_j = sum_i x_i * Eval_j(q_j, i).
Answer ans(const Database& db, const Query& q);

// y = beta^-1 * sum_j a_j; Value(y) when y < 2^m, otherwise Reject.
RetrievalResult rec(const SchemeParams& params, std::span<const Answer> answers,
                    const Aux& aux);

// que -> ans on every server -> optional per-server offsets -> rec.
RetrievalResult retrieve_end_to_end(const SchemeParams& params, const Database& db,
                                    std::uint64_t alpha, RandomSource& rng,
                                    std::optional<std::span<const RingElement>> tamper = {});

// Checks that `answers` holds exactly one answer per server in [1, ell].
// Throws kDuplicateServer / kMissingAnswer / kParamMismatch.
void check_answer_set(unsigned ell, std::span<const unsigned> server_indices);

}  // namespace ringpir

#endif  // RINGPIR_EDPIR_H_
