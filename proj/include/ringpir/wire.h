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

#ifndef RINGPIR_WIRE_H_
#define RINGPIR_WIRE_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ringpir/errors.h"

namespace ringpir {

// Frame layout (all integers big-endian):
//   payload length (4) | message type (1) | scheme id (1) | session id (16) | payload
inline constexpr std::size_t kFrameHeaderSize = 22;
inline constexpr std::uint32_t kMaxPayloadSize = std::uint32_t{1} << 24;

enum class MessageType : std::uint8_t {
  kQuery = 0x01,
  kAnswer = 0x02,
  kError = 0x03,
  kDbInfoRequest = 0x04,
  kDbInfoResponse = 0x05,
};

enum class SchemeId : std::uint8_t {
  kGamma = 0x01,
  kApir = 0x02,
};

// First payload byte of an ERROR frame.
enum class WireError : std::uint8_t {
  kMalformedKey = 0x01,
  kSchemeMismatch = 0x02,
  kDbMismatch = 0x03,
  kUnexpectedMessage = 0x04,
  kMalformedFrame = 0x05,
};

using SessionId = std::array<std::uint8_t, 16>;

// Type and scheme are kept as raw bytes so unknown values survive decoding
// and can be answered with an ERROR frame.
struct Frame {
  std::uint8_t type = 0;
  std::uint8_t scheme = 0;
  SessionId session{};
  std::vector<std::uint8_t> payload;

  static Frame make(MessageType type, SchemeId scheme, const SessionId& session,
                    std::vector<std::uint8_t> payload = {});

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct FrameHeader {
  std::uint32_t payload_size;
  std::uint8_t type;
  std::uint8_t scheme;
  SessionId session;
};

std::vector<std::uint8_t> encode_frame(const Frame& frame);
// Throws kMalformedFrame when the declared size exceeds kMaxPayloadSize.
FrameHeader decode_frame_header(std::span<const std::uint8_t, kFrameHeaderSize> bytes);
// Decodes exactly one frame occupying all of `bytes`.
Frame decode_frame(std::span<const std::uint8_t> bytes);

struct DbInfo {
  std::uint64_t n = 0;
  std::uint16_t m = 0;
  std::uint64_t p = 0;
  std::uint16_t tau = 0;
  std::uint8_t server_index = 0;

  friend bool operator==(const DbInfo&, const DbInfo&) = default;
};

inline constexpr std::size_t kDbInfoSize = 21;

std::vector<std::uint8_t> encode_db_info(const DbInfo& info);
DbInfo decode_db_info(std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> encode_error(WireError code, const std::string& message);
WireError error_code_of(const Frame& frame);
std::string error_message_of(const Frame& frame);

// Blocking TCP connection with per-call deadlines. Owns its descriptor.
class Connection {
 public:
  explicit Connection(int fd) : fd_(fd) {}
  Connection(Connection&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
  Connection& operator=(Connection&& other) noexcept;
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;
  ~Connection();

  // Throws kTransport / kTimeout.
  static Connection connect_to(const std::string& host, std::uint16_t port,
                               std::chrono::milliseconds timeout);

  void write_frame(const Frame& frame);
  // Throws kTimeout past the deadline, kTransport on EOF or socket error,
  // kMalformedFrame on an oversized header.
  Frame read_frame(std::chrono::milliseconds timeout);
  // Waits up to `timeout` for the peer to send something or hang up.
  bool wait_readable(std::chrono::milliseconds timeout);

  void shutdown();
  int fd() const { return fd_; }

 private:
  void read_exact(std::span<std::uint8_t> out, std::chrono::steady_clock::time_point deadline);

  int fd_ = -1;
};

}  // namespace ringpir

#endif  // RINGPIR_WIRE_H_
