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

#include "ringpir/edpir.h"

#include <string>

namespace ringpir {

SchemeParams SchemeParams::make(const DpfParams& dpf, unsigned m) {
  SchemeParams params{dpf, m};
  params.validate();
  return params;
}

void SchemeParams::validate() const {
  dpf.validate();
  if (m < 1) throw Error(ErrorCode::kParamMismatch, "entry width m must be >= 1");
  if (BigInt(1) << m > mod().modulus()) {
    throw Error(ErrorCode::kParamMismatch, "2^" + std::to_string(m) + " exceeds " +
                                               mod().to_string() + "; entries would not embed");
  }
}

Database::Database(std::vector<BigInt> entries, unsigned m) : entries_(std::move(entries)), m_(m) {
  if (m_ < 1) throw Error(ErrorCode::kParamMismatch, "entry width m must be >= 1");
  const BigInt limit = BigInt(1) << m_;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 0 || entries_[i] >= limit) {
      throw Error(ErrorCode::kParamMismatch, "entry " + std::to_string(i + 1) +
                                                 " does not fit in " + std::to_string(m_) + " bits");
    }
  }
}

Database Database::random(std::uint64_t n, unsigned m, RandomSource& rng) {
  std::vector<BigInt> entries;
  entries.reserve(n);
  const BigInt limit = BigInt(1) << m;
  for (std::uint64_t i = 0; i < n; ++i) entries.push_back(rng.uniform_below(limit));
  return Database(std::move(entries), m);
}

std::ostream& operator<<(std::ostream& os, const RetrievalResult& r) {
  if (r.is_reject()) return os << "REJECT";
  return os << "VALUE " << r.value();
}

QueryBundle que(const SchemeParams& params, std::uint64_t alpha, RandomSource& rng) {
  params.validate();
  if (alpha < 1 || alpha > params.n()) {
    throw Error(ErrorCode::kInvalidIndex, "alpha = " + std::to_string(alpha) +
                                              " outside [1, " + std::to_string(params.n()) + "]");
  }
  RingElement beta = sample_unit(params.mod(), rng);
  DpfKeySet keys = gen(params.dpf, PointFunction{params.n(), alpha, beta}, rng);
  QueryBundle bundle{{}, Aux{std::move(beta)}};
  bundle.queries.reserve(params.ell());
  for (DpfKey& key : keys.keys) {
    const unsigned j = key.server_index;
    bundle.queries.push_back(Query{j, std::move(key)});
  }
  return bundle;
}

Answer ans(const Database& db, const Query& q) {
  const std::uint64_t n = q.key.domain_size();
  if (db.size() != n) {
    throw Error(ErrorCode::kSizeMismatch, "database has " + std::to_string(db.size()) +
                                              " entries, key covers " + std::to_string(n));
  }
  const RingModulus& mod = q.key.modulus();
  if (BigInt(1) << db.entry_bits() > mod.modulus()) {
    throw Error(ErrorCode::kSizeMismatch, "entries do not embed into " + mod.to_string());
  }
  const std::vector<RingElement> evals = full_eval(q.key);
  BigInt acc = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const BigInt& x = db.entries()[i];
    if (!x.is_zero()) acc = (acc + x * evals[i].value()) % mod.modulus();
  }
  return Answer{q.server_index, RingElement(mod, acc)};
}

void check_answer_set(unsigned ell, std::span<const unsigned> server_indices) {
  std::vector<bool> seen(ell + 1, false);
  for (unsigned j : server_indices) {
    if (j < 1 || j > ell) {
      throw Error(ErrorCode::kParamMismatch, "answer from unknown server " + std::to_string(j));
    }
    if (seen[j]) throw Error(ErrorCode::kDuplicateServer, "two answers from server " + std::to_string(j));
    seen[j] = true;
  }
  for (unsigned j = 1; j <= ell; ++j) {
    if (!seen[j]) throw Error(ErrorCode::kMissingAnswer, "no answer from server " + std::to_string(j));
  }
}

RetrievalResult rec(const SchemeParams& params, std::span<const Answer> answers,
                    const Aux& aux) {
  std::vector<unsigned> indices;
  indices.reserve(answers.size());
  for (const Answer& a : answers) indices.push_back(a.server_index);
  check_answer_set(params.ell(), indices);

  RingElement aggregate = RingElement::zero(params.mod());
  for (const Answer& a : answers) aggregate += a.value;
  const RingElement y = aux.beta.inverse() * aggregate;
  if (y.value() < (BigInt(1) << params.m)) return RetrievalResult::value_of(y.value());
  return RetrievalResult::reject();
}

RetrievalResult retrieve_end_to_end(const SchemeParams& params, const Database& db,
                                    std::uint64_t alpha, RandomSource& rng,
                                    std::optional<std::span<const RingElement>> tamper) {
  if (tamper && tamper->size() != params.ell()) {
    throw Error(ErrorCode::kParamMismatch, "tamper vector must hold one offset per server");
  }
  if (db.entry_bits() != params.m) {
    throw Error(ErrorCode::kSizeMismatch, "database entry width differs from scheme m");
  }
  QueryBundle bundle = que(params, alpha, rng);
  std::vector<Answer> answers;
  answers.reserve(params.ell());
  for (const Query& q : bundle.queries) {
    Answer a = ans(db, q);
    if (tamper) a.value += (*tamper)[q.server_index - 1];
    answers.push_back(std::move(a));
  }
  return rec(params, answers, bundle.aux);
}

}  // namespace ringpir
