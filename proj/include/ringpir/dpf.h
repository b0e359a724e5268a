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

#ifndef RINGPIR_DPF_H_
#define RINGPIR_DPF_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ringpir/random.h"
#include "ringpir/ring.h"

namespace ringpir {

// f_{alpha,beta} over the 1-based domain [n]: beta at alpha, zero elsewhere.
struct PointFunction {
  std::uint64_t n;
  std::uint64_t alpha;
  RingElement beta;

  // Throws kIndexOutOfRange unless 1 <= i <= n.
  RingElement operator()(std::uint64_t i) const;
  std::vector<RingElement> truth_table() const;
};

enum class DpfBackend : std::uint8_t {
  // Additive truth-table sharing, (ell-1)-private.
  kAdditive = 0x01,
  // Replicated (CNF) sharing, t-private for any t < ell.
  kCnf = 0x02,
};

// Upper bound on binomial(ell, t) for the CNF backend.
inline constexpr std::uint64_t kMaxCnfShareSets = std::uint64_t{1} << 20;

struct DpfParams {
  unsigned ell;
  unsigned t;
  std::uint64_t n;
  RingModulus mod;
  DpfBackend backend;
  // Statistical security parameter; unused by both backends.
  unsigned lambda = 0;

  static DpfParams additive(unsigned ell, std::uint64_t n, const RingModulus& mod);
  static DpfParams cnf(unsigned ell, unsigned t, std::uint64_t n, const RingModulus& mod);

  // Throws kParamMismatch on an inconsistent combination.
  void validate() const;
};

// One additive share vector. For CNF keys, set_id is the bitmask of the
// size-t set T (bit j-1 set iff server j is in T); additive keys use 0.
struct DpfShare {
  std::uint32_t set_id = 0;
  std::vector<RingElement> values;
};

struct DpfKey {
  unsigned server_index;
  DpfBackend backend;
  std::vector<DpfShare> shares;

  std::uint64_t domain_size() const;
  const RingModulus& modulus() const;
};

struct DpfKeySet {
  std::vector<DpfKey> keys;

  const DpfKey& for_server(unsigned j) const { return keys.at(j - 1); }
};

DpfKeySet gen(const DpfParams& params, const PointFunction& f, RandomSource& rng);

// Server j's share of f(i). Throws kIndexOutOfRange unless 1 <= i <= n.
RingElement eval(const DpfKey& key, std::uint64_t i);
std::vector<RingElement> full_eval(const DpfKey& key);

// Key material size in bytes (elements only, no header or set ids).
std::uint64_t key_size_bytes(const DpfParams& params);

// Wire layout: backend tag (1), server index (1), share count (2, BE), then
// per share an optional 4-byte BE set id (CNF only) followed by n elements.
std::vector<std::uint8_t> serialize_key(const DpfKey& key);
void append_serialized_key(const DpfKey& key, std::vector<std::uint8_t>& out);
std::size_t serialized_key_size(const DpfKey& key);

// Parses a key of domain size n that occupies all of `bytes`. Throws
// kMalformedKey on structural errors, kSizeMismatch when the key is
// well-formed but not for an n-entry domain.
DpfKey deserialize_key(std::span<const std::uint8_t> bytes, const RingModulus& mod,
                       std::uint64_t n);

// CNF bookkeeping, exposed for tests and the privacy lab.
std::uint64_t binomial(unsigned n, unsigned k);
// All size-t subsets of [ell] as bitmasks, in lexicographic order of their
// sorted member lists.
std::vector<std::uint32_t> cnf_share_sets(unsigned ell, unsigned t);
// min([ell] \ T): the unique server that evaluates share T.
unsigned cnf_assignee(std::uint32_t set_id);

}  // namespace ringpir

#endif  // RINGPIR_DPF_H_
