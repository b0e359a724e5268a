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

#include "ringpir/client.h"

#include <spdlog/spdlog.h>

#include <future>

#include "ringpir/apir.h"

namespace ringpir {
namespace {

std::uint64_t key_material_bytes(const DpfKey& key) {
  return key.shares.size() * key.domain_size() * key.modulus().element_width();
}

SessionId random_session(RandomSource& rng) {
  SessionId id{};
  for (std::size_t i = 0; i < id.size(); i += 8) {
    std::uint64_t word = rng.next_u64();
    for (std::size_t b = 0; b < 8; ++b) id[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
  }
  return id;
}

Frame expect(Frame frame, MessageType type, std::size_t server) {
  if (frame.type == static_cast<std::uint8_t>(MessageType::kError)) {
    throw Error(ErrorCode::kServerError,
                "server " + std::to_string(server) + " returned error " +
                    std::to_string(static_cast<int>(error_code_of(frame))) + ": " +
                    error_message_of(frame));
  }
  if (frame.type != static_cast<std::uint8_t>(type)) {
    throw Error(ErrorCode::kTransport, "server " + std::to_string(server) +
                                           " sent unexpected message type " +
                                           std::to_string(frame.type));
  }
  return frame;
}

// Runs fn(j) for every server concurrently and rethrows the first failure.
template <typename Fn>
auto fan_out(std::size_t count, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::future<R>> pending;
  pending.reserve(count);
  for (std::size_t j = 0; j < count; ++j) pending.push_back(std::async(std::launch::async, fn, j));
  std::vector<R> out;
  std::exception_ptr failure;
  for (auto& f : pending) {
    try {
      out.push_back(f.get());
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

Endpoint Endpoint::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(ErrorCode::kInvalidConfig, "endpoint '" + text + "' is not host:port");
  }
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) port = 0;
  } catch (const std::logic_error&) {
  }
  if (port == 0 || port > 65535) {
    throw Error(ErrorCode::kInvalidConfig, "endpoint '" + text + "' has a bad port");
  }
  return Endpoint{text.substr(0, colon), static_cast<std::uint16_t>(port)};
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

QueryOutcome run_query(const QueryOptions& options) {
  const std::size_t ell = options.servers.size();
  if (ell < 2) throw Error(ErrorCode::kParamMismatch, "at least two servers are required");

  std::unique_ptr<RandomSource> rng;
  if (options.seed) {
    rng = std::make_unique<SeededRandom>(*options.seed);
  } else {
    rng = std::make_unique<SystemRandom>();
  }
  const SessionId session = random_session(*rng);
  const auto scheme = options.scheme;

  std::vector<Connection> conns = fan_out(ell, [&](std::size_t j) {
    const Endpoint& ep = options.servers[j];
    return Connection::connect_to(ep.host, ep.port, options.timeout);
  });

  std::vector<DbInfo> infos = fan_out(ell, [&](std::size_t j) {
    conns[j].write_frame(Frame::make(MessageType::kDbInfoRequest, scheme, session));
    Frame reply = expect(conns[j].read_frame(options.timeout), MessageType::kDbInfoResponse, j + 1);
    return decode_db_info(reply.payload);
  });
  for (std::size_t j = 0; j < ell; ++j) {
    DbInfo expected = infos[0];
    expected.server_index = static_cast<std::uint8_t>(j + 1);
    if (infos[j] != expected) {
      throw Error(ErrorCode::kParamMismatch,
                  "server at " + options.servers[j].to_string() + " (position " + std::to_string(j + 1) +
                      ") reports index " + std::to_string(infos[j].server_index) +
                      " or a different database");
    }
  }

  QueryOutcome outcome;
  outcome.info = infos[0];
  const DbInfo& info = outcome.info;
  const RingModulus mod(BigInt(info.p), info.tau);
  const unsigned ell_u = static_cast<unsigned>(ell);
  const DpfParams dpf = options.backend == DpfBackend::kCnf
                            ? DpfParams::cnf(ell_u, options.t, info.n, mod)
                            : DpfParams::additive(ell_u, info.n, mod);
  const SchemeParams params = SchemeParams::make(dpf, info.m);
  spdlog::info("session over {} servers, {}, n={}, m={}", ell, mod.to_string(), info.n, info.m);

  std::vector<std::vector<std::uint8_t>> payloads(ell);
  std::vector<std::uint64_t> material(ell);
  std::optional<QueryBundle> gamma;
  std::optional<ApirQueryBundle> apir;
  if (scheme == SchemeId::kGamma) {
    gamma = que(params, options.alpha, *rng);
    for (std::size_t j = 0; j < ell; ++j) {
      payloads[j] = serialize_key(gamma->queries[j].key);
      material[j] = key_material_bytes(gamma->queries[j].key);
    }
  } else {
    apir = apir_que(params, options.alpha, *rng);
    for (std::size_t j = 0; j < ell; ++j) {
      payloads[j] = serialize_apir_query(apir->queries[j]);
      material[j] = key_material_bytes(apir->queries[j].key1) +
                    key_material_bytes(apir->queries[j].key2);
    }
  }

  const std::size_t w = mod.element_width();
  const std::size_t answer_width = scheme == SchemeId::kGamma ? w : 2 * w;
  std::vector<std::vector<std::uint8_t>> replies = fan_out(ell, [&](std::size_t j) {
    conns[j].write_frame(Frame::make(MessageType::kQuery, scheme, session, payloads[j]));
    Frame reply = expect(conns[j].read_frame(options.timeout), MessageType::kAnswer, j + 1);
    if (reply.session != session) {
      throw Error(ErrorCode::kTransport, "server " + std::to_string(j + 1) + " echoed a foreign session");
    }
    if (reply.payload.size() != answer_width) {
      throw Error(ErrorCode::kMalformedElement,
                  "server " + std::to_string(j + 1) + " sent a " +
                      std::to_string(reply.payload.size()) + "-byte answer");
    }
    return std::move(reply.payload);
  });

  for (std::size_t j = 0; j < ell; ++j) {
    const unsigned idx = static_cast<unsigned>(j + 1);
    outcome.transcript.push_back(TranscriptEntry{idx, Direction::kQuery, material[j],
                                                 payloads[j].size() - material[j] + kFrameHeaderSize});
    outcome.transcript.push_back(
        TranscriptEntry{idx, Direction::kAnswer, answer_width, kFrameHeaderSize});
  }

  if (scheme == SchemeId::kGamma) {
    std::vector<Answer> answers;
    for (std::size_t j = 0; j < ell; ++j) {
      answers.push_back(Answer{static_cast<unsigned>(j + 1), deserialize_element(replies[j], mod)});
    }
    outcome.result = rec(params, answers, gamma->aux);
  } else {
    std::vector<ApirAnswer> answers;
    for (std::size_t j = 0; j < ell; ++j) {
      std::span<const std::uint8_t> bytes(replies[j]);
      answers.push_back(ApirAnswer{static_cast<unsigned>(j + 1),
                                   deserialize_element(bytes.first(w), mod),
                                   deserialize_element(bytes.subspan(w), mod)});
    }
    outcome.result = apir_rec(params, answers, apir->aux);
  }
  return outcome;
}

}  // namespace ringpir
