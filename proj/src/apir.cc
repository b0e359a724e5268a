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

#include "ringpir/apir.h"

#include <string>

namespace ringpir {
namespace {

void check_field(const SchemeParams& params) {
  params.validate();
  if (params.mod().tau() != 1) {
    throw Error(ErrorCode::kUnsupportedModulus,
                "the APIR baseline needs the prime field Z_p, got " + params.mod().to_string());
  }
  if (params.m != 1) throw Error(ErrorCode::kParamMismatch, "the APIR baseline handles m = 1 only");
}

}  // namespace

ApirQueryBundle apir_que(const SchemeParams& params, std::uint64_t alpha, RandomSource& rng) {
  check_field(params);
  if (alpha < 1 || alpha > params.n()) {
    throw Error(ErrorCode::kInvalidIndex, "alpha = " + std::to_string(alpha) +
                                              " outside [1, " + std::to_string(params.n()) + "]");
  }
  RingElement beta = sample_unit(params.mod(), rng);
  DpfKeySet keys1 =
      gen(params.dpf, PointFunction{params.n(), alpha, RingElement::one(params.mod())}, rng);
  DpfKeySet keys2 = gen(params.dpf, PointFunction{params.n(), alpha, beta}, rng);
  ApirQueryBundle bundle{{}, Aux{std::move(beta)}};
  bundle.queries.reserve(params.ell());
  for (unsigned j = 1; j <= params.ell(); ++j) {
    bundle.queries.push_back(ApirQuery{j, std::move(keys1.keys[j - 1]), std::move(keys2.keys[j - 1])});
  }
  return bundle;
}

ApirAnswer apir_ans(const Database& db, const ApirQuery& q) {
  Answer first = ans(db, Query{q.server_index, q.key1});
  Answer second = ans(db, Query{q.server_index, q.key2});
  return ApirAnswer{q.server_index, std::move(first.value), std::move(second.value)};
}

RetrievalResult apir_rec(const SchemeParams& params, std::span<const ApirAnswer> answers,
                         const Aux& aux) {
  std::vector<unsigned> indices;
  indices.reserve(answers.size());
  for (const ApirAnswer& a : answers) indices.push_back(a.server_index);
  check_answer_set(params.ell(), indices);

  RingElement r1 = RingElement::zero(params.mod());
  RingElement r2 = RingElement::zero(params.mod());
  for (const ApirAnswer& a : answers) {
    r1 += a.a1;
    r2 += a.a2;
  }
  // R_1 must also be a bit.
  if (aux.beta * r1 == r2 && r1.value() <= 1) return RetrievalResult::value_of(r1.value());
  return RetrievalResult::reject();
}

std::uint64_t apir_query_bytes(const SchemeParams& params) {
  return 2 * key_size_bytes(params.dpf);
}

std::vector<std::uint8_t> serialize_apir_query(const ApirQuery& q) {
  std::vector<std::uint8_t> out;
  out.reserve(serialized_key_size(q.key1) + serialized_key_size(q.key2));
  append_serialized_key(q.key1, out);
  append_serialized_key(q.key2, out);
  return out;
}

ApirQuery deserialize_apir_query(std::span<const std::uint8_t> bytes, const RingModulus& mod,
                                 std::uint64_t n) {
  if (bytes.size() % 2 != 0) throw Error(ErrorCode::kMalformedKey, "odd APIR query length");
  const std::size_t half = bytes.size() / 2;
  DpfKey key1 = deserialize_key(bytes.first(half), mod, n);
  DpfKey key2 = deserialize_key(bytes.subspan(half), mod, n);
  if (key1.server_index != key2.server_index || key1.backend != key2.backend) {
    throw Error(ErrorCode::kMalformedKey, "APIR key pair disagrees on server or backend");
  }
  const unsigned j = key1.server_index;
  return ApirQuery{j, std::move(key1), std::move(key2)};
}

}  // namespace ringpir
