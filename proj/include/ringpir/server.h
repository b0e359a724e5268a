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

#ifndef RINGPIR_SERVER_H_
#define RINGPIR_SERVER_H_

#include <atomic>
#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ringpir/adversary_lab.h"
#include "ringpir/database_file.h"
#include "ringpir/wire.h"

namespace ringpir {

// Tampering applied to this server's answers. The protocol is unchanged; only
// the returned values differ.
struct MaliciousConfig {
  // kFixedOffset or kRandomNonzeroOffset.
  AdversaryStrategy strategy = AdversaryStrategy::kFixedOffset;
  // Fixed offsets: [delta] for Gamma answers, [delta1, delta2] for APIR
  // answers (a missing delta2 counts as zero).
  std::vector<BigInt> offsets;
};

struct ServerConfig {
  std::string bind_address = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks an ephemeral port
  std::string db_path;
  unsigned server_index = 1;
  std::optional<MaliciousConfig> malicious;
};

// Flat key=value file; '#' starts a comment. Keys: bind, port, db,
// server_index, malicious (none|fixed|random), offset, offset2.
ServerConfig parse_server_config(const std::string& text);
ServerConfig load_server_config(const std::string& path);

class PirServer {
 public:
  explicit PirServer(ServerConfig config);
  PirServer(ServerConfig config, DatabaseFile database);
  ~PirServer();

  PirServer(const PirServer&) = delete;
  PirServer& operator=(const PirServer&) = delete;

  // Binds and listens; returns the bound port.
  std::uint16_t start();
  // Accept loop; returns after stop().
  void run();
  void stop();

  // Socket-free request handling: one response frame per request frame.
  Frame handle(const Frame& request);

  std::uint64_t served_sessions() const { return served_.load(); }
  DbInfo info() const;

 private:
  struct Worker {
    std::thread thread;
    std::shared_ptr<std::atomic<bool>> done;
  };

  Frame answer_gamma(const Frame& request);
  Frame answer_apir(const Frame& request);
  Frame error_frame(const Frame& request, WireError code, const std::string& message) const;
  RingElement tamper(const RingElement& value, std::size_t component);
  void serve_connection(Connection conn);
  void reap_workers(bool all);

  ServerConfig config_;
  DatabaseFile database_;
  std::atomic<std::uint64_t> served_{0};
  std::atomic<bool> stopping_{false};
  int listen_fd_ = -1;
  std::mutex rng_mutex_;
  SystemRandom rng_;
  std::mutex workers_mutex_;
  std::list<Worker> workers_;
};

}  // namespace ringpir

#endif  // RINGPIR_SERVER_H_
