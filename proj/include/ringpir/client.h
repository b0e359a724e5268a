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

#ifndef RINGPIR_CLIENT_H_
#define RINGPIR_CLIENT_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringpir/accounting.h"
#include "ringpir/dpf.h"
#include "ringpir/edpir.h"
#include "ringpir/wire.h"

namespace ringpir {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  // "host:port"; throws kInvalidConfig.
  static Endpoint parse(const std::string& text);
  std::string to_string() const;
};

struct QueryOptions {
  // servers[j-1] must report server index j.
  std::vector<Endpoint> servers;
  std::uint64_t alpha = 1;
  SchemeId scheme = SchemeId::kGamma;
  DpfBackend backend = DpfBackend::kAdditive;
  // CNF privacy threshold; additive sharing always uses ell - 1.
  unsigned t = 1;
  std::optional<std::uint64_t> seed;
  std::chrono::milliseconds timeout{5000};
};

struct QueryOutcome {
  RetrievalResult result = RetrievalResult::reject();
  DbInfo info;
  std::vector<TranscriptEntry> transcript;
};

// One retrieval session: DBINFO to every server, then QUERY/ANSWER.
// Transport failures throw kTransport or kTimeout; an ERROR frame from a
// server throws kServerError; inconsistent DBINFO throws kParamMismatch.
QueryOutcome run_query(const QueryOptions& options);

}  // namespace ringpir

#endif  // RINGPIR_CLIENT_H_
