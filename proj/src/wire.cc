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

#include "ringpir/wire.h"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <memory>

namespace ringpir {
namespace {

using Clock = std::chrono::steady_clock;

void put_be(std::uint64_t v, int bytes, std::vector<std::uint8_t>& out) {
  for (int shift = 8 * (bytes - 1); shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

std::uint64_t get_be(std::span<const std::uint8_t> bytes) {
  std::uint64_t v = 0;
  for (std::uint8_t b : bytes) v = (v << 8) | b;
  return v;
}

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return static_cast<int>(std::max<std::int64_t>(0, left.count()));
}

[[noreturn]] void transport(const std::string& what) {
  throw Error(ErrorCode::kTransport, what + ": " + std::strerror(errno));
}

}  // namespace

Frame Frame::make(MessageType type, SchemeId scheme, const SessionId& session,
                  std::vector<std::uint8_t> payload) {
  return Frame{static_cast<std::uint8_t>(type), static_cast<std::uint8_t>(scheme), session,
               std::move(payload)};
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayloadSize) {
    throw Error(ErrorCode::kMalformedFrame, "payload exceeds 2^24 bytes");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kFrameHeaderSize + frame.payload.size());
  put_be(frame.payload.size(), 4, out);
  out.push_back(frame.type);
  out.push_back(frame.scheme);
  out.insert(out.end(), frame.session.begin(), frame.session.end());
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

FrameHeader decode_frame_header(std::span<const std::uint8_t, kFrameHeaderSize> bytes) {
  FrameHeader header{};
  header.payload_size = static_cast<std::uint32_t>(get_be(bytes.first(4)));
  if (header.payload_size > kMaxPayloadSize) {
    throw Error(ErrorCode::kMalformedFrame,
                "declared payload of " + std::to_string(header.payload_size) + " bytes");
  }
  header.type = bytes[4];
  header.scheme = bytes[5];
  std::copy_n(bytes.begin() + 6, 16, header.session.begin());
  return header;
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFrameHeaderSize) throw Error(ErrorCode::kMalformedFrame, "truncated header");
  const FrameHeader header = decode_frame_header(bytes.first<kFrameHeaderSize>());
  if (bytes.size() != kFrameHeaderSize + header.payload_size) {
    throw Error(ErrorCode::kMalformedFrame, "payload length does not match header");
  }
  Frame frame{header.type, header.scheme, header.session, {}};
  frame.payload.assign(bytes.begin() + kFrameHeaderSize, bytes.end());
  return frame;
}

std::vector<std::uint8_t> encode_db_info(const DbInfo& info) {
  std::vector<std::uint8_t> out;
  out.reserve(kDbInfoSize);
  put_be(info.n, 8, out);
  put_be(info.m, 2, out);
  put_be(info.p, 8, out);
  put_be(info.tau, 2, out);
  out.push_back(info.server_index);
  return out;
}

DbInfo decode_db_info(std::span<const std::uint8_t> payload) {
  if (payload.size() != kDbInfoSize) throw Error(ErrorCode::kMalformedFrame, "DBINFO payload size");
  DbInfo info;
  info.n = get_be(payload.subspan(0, 8));
  info.m = static_cast<std::uint16_t>(get_be(payload.subspan(8, 2)));
  info.p = get_be(payload.subspan(10, 8));
  info.tau = static_cast<std::uint16_t>(get_be(payload.subspan(18, 2)));
  info.server_index = payload[20];
  return info;
}

std::vector<std::uint8_t> encode_error(WireError code, const std::string& message) {
  std::vector<std::uint8_t> out;
  out.reserve(1 + message.size());
  out.push_back(static_cast<std::uint8_t>(code));
  out.insert(out.end(), message.begin(), message.end());
  return out;
}

WireError error_code_of(const Frame& frame) {
  if (frame.payload.empty()) throw Error(ErrorCode::kMalformedFrame, "ERROR frame without code");
  return static_cast<WireError>(frame.payload[0]);
}

std::string error_message_of(const Frame& frame) {
  if (frame.payload.size() <= 1) return {};
  return std::string(frame.payload.begin() + 1, frame.payload.end());
}

Connection& Connection::operator=(Connection&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

Connection::~Connection() {
  if (fd_ >= 0) ::close(fd_);
}

Connection Connection::connect_to(const std::string& host, std::uint16_t port,
                                  std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  if (int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &found); rc != 0) {
    throw Error(ErrorCode::kTransport, "resolve " + host + ": " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(found, ::freeaddrinfo);

  std::string last_error = "no addresses";
  for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
    Connection conn(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
    if (conn.fd_ < 0) transport("socket");
    const int flags = ::fcntl(conn.fd_, F_GETFL);
    ::fcntl(conn.fd_, F_SETFL, flags | O_NONBLOCK);
    if (::connect(conn.fd_, ai->ai_addr, ai->ai_addrlen) != 0) {
      if (errno != EINPROGRESS) {
        last_error = std::strerror(errno);
        continue;
      }
      pollfd pfd{conn.fd_, POLLOUT, 0};
      const int ready = ::poll(&pfd, 1, remaining_ms(deadline));
      if (ready == 0) throw Error(ErrorCode::kTimeout, "connect to " + host + ":" + std::to_string(port));
      int so_error = 0;
      socklen_t len = sizeof so_error;
      ::getsockopt(conn.fd_, SOL_SOCKET, SO_ERROR, &so_error, &len);
      if (ready < 0 || so_error != 0) {
        last_error = std::strerror(ready < 0 ? errno : so_error);
        continue;
      }
    }
    ::fcntl(conn.fd_, F_SETFL, flags & ~O_NONBLOCK);
    int one = 1;
    ::setsockopt(conn.fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return conn;
  }
  throw Error(ErrorCode::kTransport, "connect to " + host + ":" + std::to_string(port) + ": " + last_error);
}

void Connection::write_frame(const Frame& frame) {
  const auto bytes = encode_frame(frame);
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      transport("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

void Connection::read_exact(std::span<std::uint8_t> out, Clock::time_point deadline) {
  std::size_t got = 0;
  while (got < out.size()) {
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, remaining_ms(deadline));
    if (ready == 0) throw Error(ErrorCode::kTimeout, "read timed out");
    if (ready < 0) {
      if (errno == EINTR) continue;
      transport("poll");
    }
    const ssize_t n = ::recv(fd_, out.data() + got, out.size() - got, 0);
    if (n == 0) throw Error(ErrorCode::kTransport, "connection closed by peer");
    if (n < 0) {
      if (errno == EINTR) continue;
      transport("recv");
    }
    got += static_cast<std::size_t>(n);
  }
}

Frame Connection::read_frame(std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  std::array<std::uint8_t, kFrameHeaderSize> raw{};
  read_exact(raw, deadline);
  const FrameHeader header = decode_frame_header(raw);
  Frame frame{header.type, header.scheme, header.session, {}};
  frame.payload.resize(header.payload_size);
  read_exact(frame.payload, deadline);
  return frame;
}

bool Connection::wait_readable(std::chrono::milliseconds timeout) {
  pollfd pfd{fd_, POLLIN, 0};
  return ::poll(&pfd, 1, static_cast<int>(timeout.count())) > 0;
}

void Connection::shutdown() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

}  // namespace ringpir
