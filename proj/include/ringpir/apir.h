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

#ifndef RINGPIR_APIR_H_
#define RINGPIR_APIR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ringpir/dpf.h"
#include "ringpir/edpir.h"

namespace ringpir {

// Dual-key authenticated PIR baseline over the prime field Z_p. Each server
// receives keys for f_{alpha,1} and f_{alpha,beta}; the client accepts R_1
// when beta * R_1 = R_2.

struct ApirQuery {
  unsigned server_index;
  DpfKey key1;  // f_{alpha,1}
  DpfKey key2;  // f_{alpha,beta}
};

struct ApirAnswer {
  unsigned server_index;
  RingElement a1;
  RingElement a2;
};

struct ApirQueryBundle {
  std::vector<ApirQuery> queries;
  Aux aux;
};

// Throws kUnsupportedModulus unless tau == 1, kParamMismatch unless m == 1.
ApirQueryBundle apir_que(const SchemeParams& params, std::uint64_t alpha, RandomSource& rng);

ApirAnswer apir_ans(const Database& db, const ApirQuery& q);

// Value(R_1) iff beta * R_1 = R_2 and R_1 is in {0, 1}; Reject otherwise.
RetrievalResult apir_rec(const SchemeParams& params, std::span<const ApirAnswer> answers,
                         const Aux& aux);

// 2 * key_size_bytes(params.dpf) per server.
std::uint64_t apir_query_bytes(const SchemeParams& params);

// QUERY payload: serialized key1 immediately followed by serialized key2.
std::vector<std::uint8_t> serialize_apir_query(const ApirQuery& q);
// Splits the payload into two equal halves. Throws kMalformedKey on an odd
// length or mismatched key pair.
ApirQuery deserialize_apir_query(std::span<const std::uint8_t> bytes, const RingModulus& mod,
                                 std::uint64_t n);

}  // namespace ringpir

#endif  // RINGPIR_APIR_H_
