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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "ringpir/database_file.h"
#include "ringpir/errors.h"
#include "ringpir/server.h"
#include "ringpir/wire.h"

namespace ringpir {
namespace {

TEST(Frame, ByteLayout) {
  SessionId s{};
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint8_t>(0xA0 + i);
  const Frame f = Frame::make(MessageType::kQuery, SchemeId::kApir, s, {0xDE, 0xAD});
  const auto bytes = encode_frame(f);
  ASSERT_EQ(bytes.size(), kFrameHeaderSize + 2);
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 6),
            (std::vector<std::uint8_t>{0, 0, 0, 2, 0x01, 0x02}));
  EXPECT_EQ(bytes[6], 0xA0);
  EXPECT_EQ(bytes[21], 0xAF);
  EXPECT_EQ(bytes[22], 0xDE);
  EXPECT_EQ(decode_frame(bytes), f);
}

TEST(Frame, RandomRoundTrip) {
  std::mt19937_64 gen(7);
  for (int k = 0; k < 500; ++k) {
    Frame f;
    f.type = static_cast<std::uint8_t>(gen());
    f.scheme = static_cast<std::uint8_t>(gen());
    for (auto& b : f.session) b = static_cast<std::uint8_t>(gen());
    f.payload.resize(gen() % 3000);
    for (auto& b : f.payload) b = static_cast<std::uint8_t>(gen());
    ASSERT_EQ(decode_frame(encode_frame(f)), f);
  }
}

TEST(Frame, Guards) {
  std::vector<std::uint8_t> header(kFrameHeaderSize, 0);
  header[0] = 0x01;
  header[3] = 0x01;  // 2^24 + 1
  try {
    decode_frame_header(std::span<const std::uint8_t, kFrameHeaderSize>(header.data(), kFrameHeaderSize));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedFrame);
  }
  header[3] = 0x00;  // exactly 2^24 is allowed
  EXPECT_EQ(decode_frame_header(std::span<const std::uint8_t, kFrameHeaderSize>(header.data(), kFrameHeaderSize))
                .payload_size,
            kMaxPayloadSize);
  EXPECT_THROW(decode_frame(std::vector<std::uint8_t>(10, 0)), Error);
  std::vector<std::uint8_t> short_payload(kFrameHeaderSize, 0);
  short_payload[3] = 4;
  EXPECT_THROW(decode_frame(short_payload), Error);
}

TEST(DbInfo, RoundTrip) {
  const DbInfo info{1ULL << 40, 3, 131, 2, 7};
  const auto bytes = encode_db_info(info);
  ASSERT_EQ(bytes.size(), kDbInfoSize);
  EXPECT_EQ(bytes[7], 0);
  EXPECT_EQ(bytes[2], 1);
  EXPECT_EQ(bytes[17], 131);
  EXPECT_EQ(bytes[20], 7);
  EXPECT_EQ(decode_db_info(bytes), info);
  EXPECT_THROW(decode_db_info(std::vector<std::uint8_t>(20, 0)), Error);
}

TEST(ErrorPayload, CodeAndMessage) {
  Frame f;
  f.type = static_cast<std::uint8_t>(MessageType::kError);
  f.payload = encode_error(WireError::kDbMismatch, "n differs");
  EXPECT_EQ(f.payload[0], 0x03);
  EXPECT_EQ(error_code_of(f), WireError::kDbMismatch);
  EXPECT_EQ(error_message_of(f), "n differs");
}

TEST(DatabaseFile, ByteLayout) {
  const RingModulus mod(3, 2);
  const Database db({1, 2, 3}, 2);
  const auto bytes = encode_database_file(db, mod);
  const std::vector<std::uint8_t> expected{'R', 'P', 'I', 'R', 0x01,  //
                                           0, 0, 0, 0, 0, 0, 0, 3,    // n
                                           0, 2,                      // m
                                           0, 0, 0, 0, 0, 0, 0, 3,    // p
                                           0, 2,                      // tau
                                           1, 2, 3};
  EXPECT_EQ(bytes, expected);
  const DatabaseFile back = decode_database_file(bytes);
  EXPECT_EQ(back.db, db);
  EXPECT_EQ(back.mod, mod);
}

TEST(DatabaseFile, WideEntriesAreLittleEndian) {
  const RingModulus mod(2, 16);
  const Database db({0x1234, 0xFFFF}, 16);
  const auto bytes = encode_database_file(db, mod);
  ASSERT_EQ(bytes.size(), kDatabaseHeaderSize + 4);
  EXPECT_EQ(bytes[25], 0x34);
  EXPECT_EQ(bytes[26], 0x12);
  EXPECT_EQ(decode_database_file(bytes).db, db);
}

TEST(DatabaseFile, RejectsMalformedFiles) {
  const RingModulus mod(2, 3);
  const auto good = encode_database_file(Database({1, 0, 1}, 1), mod);
  auto expect_bad = [](std::vector<std::uint8_t> bytes) {
    try {
      decode_database_file(bytes);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedDatabase) << e.what();
    }
  };
  auto magic = good;
  magic[0] = 'X';
  expect_bad(magic);
  auto version = good;
  version[4] = 2;
  expect_bad(version);
  auto longer = good;
  longer.push_back(0);
  expect_bad(longer);
  auto shorter = good;
  shorter.pop_back();
  expect_bad(shorter);
  auto entry = good;
  entry[25] = 2;  // not a 1-bit value
  expect_bad(entry);
  auto width = good;
  width[14] = 4;  // 2^4 > 8
  expect_bad(width);
  auto modulus = good;
  modulus[22] = 4;  // p = 4
  expect_bad(modulus);
  expect_bad({});
}

TEST(DatabaseFile, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "ringpir_dbfile_test.rpir";
  SeededRandom rng(8);
  const Database db = Database::random(300, 5, rng);
  write_database_file(path.string(), db, RingModulus(131, 1));
  const DatabaseFile back = read_database_file(path.string());
  EXPECT_EQ(back.db, db);
  EXPECT_EQ(back.mod, RingModulus(131, 1));
  std::filesystem::remove(path);
  EXPECT_THROW(read_database_file(path.string()), Error);
}

TEST(ServerConfig, Parsing) {
  const ServerConfig c = parse_server_config(
      "# comment\n"
      "bind = 0.0.0.0\n"
      "port=7001\n"
      "db=/tmp/x.rpir   # trailing\n"
      "server_index=3\n"
      "malicious=fixed\n"
      "offset=5\n"
      "offset2=9\n");
  EXPECT_EQ(c.bind_address, "0.0.0.0");
  EXPECT_EQ(c.port, 7001);
  EXPECT_EQ(c.db_path, "/tmp/x.rpir");
  EXPECT_EQ(c.server_index, 3u);
  ASSERT_TRUE(c.malicious.has_value());
  EXPECT_EQ(c.malicious->strategy, AdversaryStrategy::kFixedOffset);
  EXPECT_EQ(c.malicious->offsets, (std::vector<BigInt>{5, 9}));

  EXPECT_FALSE(parse_server_config("malicious=none\n").malicious.has_value());
  EXPECT_EQ(parse_server_config("malicious=random\n").malicious->strategy,
            AdversaryStrategy::kRandomNonzeroOffset);
  for (const char* bad : {"port=70000\n", "server_index=0\n", "colour=blue\n", "novalue\n",
                          "malicious=fixed\n", "malicious=sometimes\n", "port=12x\n"}) {
    try {
      parse_server_config(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig) << bad;
    }
  }
}

}  // namespace
}  // namespace ringpir
