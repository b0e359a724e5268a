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

#include "ringpir/server.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ringpir/apir.h"
#include "ringpir/edpir.h"

namespace ringpir {
namespace {

constexpr auto kPollInterval = std::chrono::milliseconds(100);
constexpr auto kFrameReadTimeout = std::chrono::seconds(30);

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_config(const std::string& why) { throw Error(ErrorCode::kInvalidConfig, why); }

unsigned long long parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) bad_config(key + ": trailing characters in '" + value + "'");
    return v;
  } catch (const std::logic_error&) {
    bad_config(key + ": '" + value + "' is not a number");
  }
}

}  // namespace

ServerConfig parse_server_config(const std::string& text) {
  ServerConfig config;
  std::optional<std::string> strategy;
  std::vector<std::pair<int, BigInt>> offsets;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad_config("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "bind") {
      config.bind_address = value;
    } else if (key == "port") {
      const auto port = parse_number(key, value);
      if (port > 65535) bad_config("port out of range");
      config.port = static_cast<std::uint16_t>(port);
    } else if (key == "db") {
      config.db_path = value;
    } else if (key == "server_index") {
      const auto j = parse_number(key, value);
      if (j < 1 || j > 255) bad_config("server_index must lie in [1, 255]");
      config.server_index = static_cast<unsigned>(j);
    } else if (key == "malicious") {
      strategy = value;
    } else if (key == "offset" || key == "offset2") {
      try {
        offsets.emplace_back(key == "offset" ? 0 : 1, BigInt(value));
      } catch (const std::exception&) {
        bad_config(key + ": '" + value + "' is not an integer");
      }
    } else {
      bad_config("unknown key '" + key + "'");
    }
  }
  if (strategy && *strategy != "none") {
    MaliciousConfig malicious;
    if (*strategy == "fixed") {
      malicious.strategy = AdversaryStrategy::kFixedOffset;
      malicious.offsets.assign(2, BigInt(0));
      bool have_first = false;
      for (auto& [slot, v] : offsets) {
        malicious.offsets[slot] = v;
        have_first |= slot == 0;
      }
      if (!have_first) bad_config("malicious=fixed needs offset=<value>");
    } else if (*strategy == "random") {
      malicious.strategy = AdversaryStrategy::kRandomNonzeroOffset;
    } else {
      bad_config("malicious must be none, fixed or random");
    }
    config.malicious = std::move(malicious);
  }
  return config;
}

ServerConfig load_server_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_server_config(buffer.str());
}

PirServer::PirServer(ServerConfig config)
    : PirServer(config, read_database_file(config.db_path)) {}

PirServer::PirServer(ServerConfig config, DatabaseFile database)
    : config_(std::move(config)), database_(std::move(database)) {
  if (config_.server_index < 1 || config_.server_index > 255) {
    bad_config("server_index must lie in [1, 255]");
  }
}

PirServer::~PirServer() {
  stop();
  reap_workers(true);
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

DbInfo PirServer::info() const {
  return DbInfo{database_.db.size(), static_cast<std::uint16_t>(database_.db.entry_bits()),
                database_.mod.p().convert_to<std::uint64_t>(),
                static_cast<std::uint16_t>(database_.mod.tau()),
                static_cast<std::uint8_t>(config_.server_index)};
}

std::uint16_t PirServer::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listen_fd_ < 0) throw Error(ErrorCode::kTransport, std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(config_.port);
  if (::inet_pton(AF_INET, config_.bind_address.c_str(), &addr.sin_addr) != 1) {
    bad_config("bind address '" + config_.bind_address + "' is not an IPv4 address");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 128) != 0) {
    throw Error(ErrorCode::kTransport, std::string("bind/listen: ") + std::strerror(errno));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  const std::uint16_t port = ntohs(addr.sin_port);
  spdlog::info("server {} listening on {}:{} ({} entries, m={}, {})", config_.server_index,
               config_.bind_address, port, database_.db.size(), database_.db.entry_bits(),
               database_.mod.to_string());
  return port;
}

void PirServer::run() {
  while (!stopping_.load()) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(kPollInterval.count()));
    reap_workers(false);
    if (ready <= 0) continue;
    const int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) continue;
    auto done = std::make_shared<std::atomic<bool>>(false);
    std::lock_guard lock(workers_mutex_);
    workers_.push_back(Worker{std::thread([this, fd, done] {
                                serve_connection(Connection(fd));
                                done->store(true);
                              }),
                              done});
  }
  reap_workers(true);
}

void PirServer::stop() { stopping_.store(true); }

void PirServer::reap_workers(bool all) {
  std::list<Worker> finished;
  {
    std::lock_guard lock(workers_mutex_);
    for (auto it = workers_.begin(); it != workers_.end();) {
      if (all || it->done->load()) {
        finished.splice(finished.end(), workers_, it++);
      } else {
        ++it;
      }
    }
  }
  for (Worker& w : finished) w.thread.join();
}

void PirServer::serve_connection(Connection conn) {
  while (!stopping_.load()) {
    if (!conn.wait_readable(kPollInterval)) continue;
    Frame request;
    try {
      request = conn.read_frame(kFrameReadTimeout);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kMalformedFrame) {
        spdlog::info("dropping connection: {}", e.what());
        try {
          conn.write_frame(Frame{static_cast<std::uint8_t>(MessageType::kError), 0, {},
                                 encode_error(WireError::kMalformedFrame, e.what())});
        } catch (const Error&) {
        }
      }
      return;
    }
    try {
      conn.write_frame(handle(request));
    } catch (const Error& e) {
      spdlog::info("write failed: {}", e.what());
      return;
    }
  }
}

Frame PirServer::error_frame(const Frame& request, WireError code, const std::string& message) const {
  spdlog::info("server {}: error {:#04x}: {}", config_.server_index, static_cast<int>(code), message);
  return Frame{static_cast<std::uint8_t>(MessageType::kError), request.scheme, request.session,
               encode_error(code, message)};
}

Frame PirServer::handle(const Frame& request) {
  switch (static_cast<MessageType>(request.type)) {
    case MessageType::kDbInfoRequest:
      return Frame{static_cast<std::uint8_t>(MessageType::kDbInfoResponse), request.scheme,
                   request.session, encode_db_info(info())};
    case MessageType::kQuery:
      if (request.scheme == static_cast<std::uint8_t>(SchemeId::kGamma)) return answer_gamma(request);
      if (request.scheme == static_cast<std::uint8_t>(SchemeId::kApir)) return answer_apir(request);
      return error_frame(request, WireError::kSchemeMismatch,
                         "unknown scheme id " + std::to_string(request.scheme));
    default:
      return error_frame(request, WireError::kUnexpectedMessage,
                         "unexpected message type " + std::to_string(request.type));
  }
}

RingElement PirServer::tamper(const RingElement& value, std::size_t component) {
  if (!config_.malicious) return value;
  const RingModulus& mod = value.modulus();
  if (config_.malicious->strategy == AdversaryStrategy::kRandomNonzeroOffset) {
    std::lock_guard lock(rng_mutex_);
    RingElement delta = RingElement::zero(mod);
    while (delta.is_zero()) delta = sample_element(mod, rng_);
    return value + delta;
  }
  const auto& offsets = config_.malicious->offsets;
  if (component >= offsets.size()) return value;
  return value + RingElement(mod, offsets[component]);
}

Frame PirServer::answer_gamma(const Frame& request) {
  std::optional<DpfKey> key;
  try {
    key = deserialize_key(request.payload, database_.mod, database_.db.size());
  } catch (const Error& e) {
    const WireError code =
        e.code() == ErrorCode::kSizeMismatch ? WireError::kDbMismatch : WireError::kMalformedKey;
    return error_frame(request, code, e.what());
  }
  if (key->server_index != config_.server_index) {
    return error_frame(request, WireError::kDbMismatch,
                       "key addressed to server " + std::to_string(key->server_index));
  }
  const unsigned j = key->server_index;
  Answer answer = ans(database_.db, Query{j, std::move(*key)});
  const RingElement value = tamper(answer.value, 0);
  served_.fetch_add(1);
  return Frame{static_cast<std::uint8_t>(MessageType::kAnswer), request.scheme, request.session,
               serialize(value)};
}

Frame PirServer::answer_apir(const Frame& request) {
  if (database_.mod.tau() != 1 || database_.db.entry_bits() != 1) {
    return error_frame(request, WireError::kSchemeMismatch,
                       "APIR needs a 1-bit database over a prime field, have " +
                           database_.mod.to_string());
  }
  std::optional<ApirQuery> query;
  try {
    query = deserialize_apir_query(request.payload, database_.mod, database_.db.size());
  } catch (const Error& e) {
    const WireError code =
        e.code() == ErrorCode::kSizeMismatch ? WireError::kDbMismatch : WireError::kMalformedKey;
    return error_frame(request, code, e.what());
  }
  if (query->server_index != config_.server_index) {
    return error_frame(request, WireError::kDbMismatch,
                       "key addressed to server " + std::to_string(query->server_index));
  }
  const ApirAnswer answer = apir_ans(database_.db, *query);
  std::vector<std::uint8_t> payload = serialize(tamper(answer.a1, 0));
  append_serialized(tamper(answer.a2, 1), payload);
  served_.fetch_add(1);
  return Frame{static_cast<std::uint8_t>(MessageType::kAnswer), request.scheme, request.session,
               std::move(payload)};
}

}  // namespace ringpir
