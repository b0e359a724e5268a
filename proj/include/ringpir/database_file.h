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

#ifndef RINGPIR_DATABASE_FILE_H_
#define RINGPIR_DATABASE_FILE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ringpir/edpir.h"
#include "ringpir/ring.h"

namespace ringpir {

// On-disk database: "RPIR", version 0x01, n (8, BE), m (2, BE), p (8, BE),
// tau (2, BE), then n entries of ceil(m/8) bytes each, little-endian.
inline constexpr std::uint8_t kDatabaseMagic[4] = {'R', 'P', 'I', 'R'};
inline constexpr std::uint8_t kDatabaseVersion = 0x01;
inline constexpr std::size_t kDatabaseHeaderSize = 25;

struct DatabaseFile {
  RingModulus mod;
  Database db;
};

std::vector<std::uint8_t> encode_database_file(const Database& db, const RingModulus& mod);
// Throws kMalformedDatabase.
DatabaseFile decode_database_file(std::span<const std::uint8_t> bytes);

void write_database_file(const std::string& path, const Database& db, const RingModulus& mod);
DatabaseFile read_database_file(const std::string& path);

}  // namespace ringpir

#endif  // RINGPIR_DATABASE_FILE_H_
