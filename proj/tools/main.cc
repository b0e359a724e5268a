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

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <csignal>
#include <iostream>

#include "bench.h"
#include "ringpir/client.h"
#include "ringpir/database_file.h"
#include "ringpir/log.h"
#include "ringpir/server.h"

namespace {

using namespace ringpir;

PirServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const std::string& config_path, ServerConfig flags, const std::string& malicious,
              const std::vector<std::string>& offsets) {
  ServerConfig config = config_path.empty() ? std::move(flags) : load_server_config(config_path);
  if (config_path.empty() && malicious != "none") {
    std::string text = "malicious=" + malicious + "\n";
    if (!offsets.empty()) text += "offset=" + offsets[0] + "\n";
    if (offsets.size() > 1) text += "offset2=" + offsets[1] + "\n";
    config.malicious = parse_server_config(text).malicious;
  }
  if (config.db_path.empty()) throw Error(ErrorCode::kInvalidConfig, "no database given");
  PirServer server(config);
  const std::uint16_t port = server.start();
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "LISTENING " << port << std::endl;
  server.run();
  g_server = nullptr;
  return 0;
}

int cmd_query(QueryOptions options, const std::vector<std::string>& servers,
              const std::string& scheme, const std::string& backend, long timeout_ms) {
  for (const std::string& s : servers) options.servers.push_back(Endpoint::parse(s));
  options.scheme = scheme == "apir" ? SchemeId::kApir : SchemeId::kGamma;
  options.backend = backend == "cnf" ? DpfBackend::kCnf : DpfBackend::kAdditive;
  options.timeout = std::chrono::milliseconds(timeout_ms);
  const QueryOutcome outcome = run_query(options);
  if (outcome.result.is_reject()) {
    std::cout << "REJECT" << std::endl;
    return 2;
  }
  std::cout << "VALUE " << outcome.result.value() << std::endl;
  return 0;
}

int cmd_mkdb(std::uint64_t n, unsigned m, std::uint64_t p, unsigned tau, std::uint64_t seed,
             const std::string& out) {
  const RingModulus mod(p, tau);
  SeededRandom rng(seed);
  const Database db = Database::random(n, m, rng);
  if ((BigInt(1) << m) > mod.modulus()) {
    throw Error(ErrorCode::kParamMismatch, "2^m exceeds " + mod.to_string());
  }
  write_database_file(out, db, mod);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging_from_env();
  CLI::App app{"Error-detecting private information retrieval over Z_{p^tau}"};
  app.require_subcommand(1);

  auto* serve = app.add_subcommand("serve", "Host one server's share of the protocol");
  std::string config_path;
  ServerConfig flags;
  std::string malicious = "none";
  std::vector<std::string> offsets;
  serve->add_option("--config", config_path, "key=value configuration file");
  serve->add_option("--bind", flags.bind_address, "IPv4 address to bind");
  serve->add_option("--port", flags.port, "TCP port (0 = ephemeral)");
  serve->add_option("--db", flags.db_path, "database file");
  serve->add_option("--index", flags.server_index, "server index j")->check(CLI::Range(1, 255));
  serve->add_option("--malicious", malicious, "none, fixed or random")
      ->check(CLI::IsMember({"none", "fixed", "random"}));
  serve->add_option("--offset", offsets, "fixed offset(s)");

  auto* query = app.add_subcommand("query", "Retrieve one entry");
  QueryOptions qopts;
  std::vector<std::string> servers;
  std::string scheme = "gamma";
  std::string backend = "additive";
  long timeout_ms = 5000;
  std::uint64_t seed = 0;
  query->add_option("--server", servers, "host:port, in server-index order")
      ->required()
      ->delimiter(',');
  query->add_option("--index", qopts.alpha, "1-based entry index")->required();
  query->add_option("--scheme", scheme)->check(CLI::IsMember({"gamma", "apir"}));
  query->add_option("--backend", backend)->check(CLI::IsMember({"additive", "cnf"}));
  query->add_option("--t", qopts.t, "CNF threshold");
  auto* seed_opt = query->add_option("--seed", seed, "deterministic client randomness");
  query->add_option("--timeout-ms", timeout_ms, "per-server timeout")->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Run the experiment grid and write reports");
  tools::BenchOptions bopts;
  bench->add_option("--out-dir", bopts.out_dir);
  bench->add_option("--trials", bopts.trials)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bopts.seed);
  bench->add_option("--n", bopts.n, "database size for the experiments")->check(CLI::PositiveNumber);

  auto* mkdb = app.add_subcommand("mkdb", "Write a random database file");
  std::uint64_t n = 0, p = 0, db_seed = 0;
  unsigned m = 1, tau = 1;
  std::string out;
  mkdb->add_option("--n", n)->required();
  mkdb->add_option("--m", m)->required();
  mkdb->add_option("--p", p)->required();
  mkdb->add_option("--tau", tau);
  mkdb->add_option("--seed", db_seed);
  mkdb->add_option("--out", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return cmd_serve(config_path, flags, malicious, offsets);
    if (*query) {
      if (*seed_opt) qopts.seed = seed;
      return cmd_query(qopts, servers, scheme, backend, timeout_ms);
    }
    if (*bench) return tools::run_bench(bopts) ? 0 : 3;
    if (*mkdb) return cmd_mkdb(n, m, p, tau, db_seed, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}
