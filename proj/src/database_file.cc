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

#include "ringpir/database_file.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>

namespace ringpir {
namespace {

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

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedDatabase, why);
}

}  // namespace

std::vector<std::uint8_t> encode_database_file(const Database& db, const RingModulus& mod) {
  if (mod.p() > std::numeric_limits<std::uint64_t>::max()) malformed("p does not fit 8 bytes");
  if (mod.tau() > 0xffff || db.entry_bits() > 0xffff) malformed("tau or m does not fit 2 bytes");
  if (BigInt(1) << db.entry_bits() > mod.modulus()) malformed("2^m exceeds p^tau");
  const std::size_t width = (db.entry_bits() + 7) / 8;
  std::vector<std::uint8_t> out(std::begin(kDatabaseMagic), std::end(kDatabaseMagic));
  out.reserve(kDatabaseHeaderSize + db.size() * width);
  out.push_back(kDatabaseVersion);
  put_be(db.size(), 8, out);
  put_be(db.entry_bits(), 2, out);
  put_be(mod.p().convert_to<std::uint64_t>(), 8, out);
  put_be(mod.tau(), 2, out);
  for (const BigInt& x : db.entries()) append_le(x, width, out);
  return out;
}

DatabaseFile decode_database_file(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kDatabaseHeaderSize) malformed("truncated header");
  if (!std::equal(std::begin(kDatabaseMagic), std::end(kDatabaseMagic), bytes.begin())) {
    malformed("bad magic");
  }
  if (bytes[4] != kDatabaseVersion) malformed("unsupported version " + std::to_string(bytes[4]));
  const std::uint64_t n = get_be(bytes.subspan(5, 8));
  const auto m = static_cast<unsigned>(get_be(bytes.subspan(13, 2)));
  const std::uint64_t p = get_be(bytes.subspan(15, 8));
  const auto tau = static_cast<unsigned>(get_be(bytes.subspan(23, 2)));
  if (m == 0) malformed("m must be >= 1");

  std::optional<RingModulus> mod;
  try {
    mod.emplace(BigInt(p), tau);
  } catch (const Error& e) {
    malformed(e.what());
  }
  if (BigInt(1) << m > mod->modulus()) malformed("2^m exceeds p^tau");

  const std::size_t width = (m + 7) / 8;
  const std::size_t body = bytes.size() - kDatabaseHeaderSize;
  if (width == 0 || body % width != 0 || body / width != n) {
    malformed("body holds " + std::to_string(body) + " bytes, expected " + std::to_string(n) +
              " entries of " + std::to_string(width));
  }
  const BigInt limit = BigInt(1) << m;
  std::vector<BigInt> entries;
  entries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    BigInt x = read_le(bytes.subspan(kDatabaseHeaderSize + i * width, width));
    if (x >= limit) malformed("entry " + std::to_string(i + 1) + " exceeds 2^m");
    entries.push_back(std::move(x));
  }
  return DatabaseFile{*mod, Database(std::move(entries), m)};
}

void write_database_file(const std::string& path, const Database& db, const RingModulus& mod) {
  const auto bytes = encode_database_file(db, mod);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) malformed("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) malformed("write to " + path + " failed");
}

DatabaseFile read_database_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_database_file(bytes);
}

}  // namespace ringpir
