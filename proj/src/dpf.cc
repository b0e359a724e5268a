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

#include "ringpir/dpf.h"

#include <bit>
#include <string>

namespace ringpir {
namespace {

void check_index(std::uint64_t i, std::uint64_t n) {
  if (i < 1 || i > n) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  }
}

std::vector<RingElement> random_vector(const RingModulus& mod, std::uint64_t n,
                                       RandomSource& rng) {
  std::vector<RingElement> v;
  v.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) v.push_back(sample_element(mod, rng));
  return v;
}

void put_u16_be(std::uint16_t v, std::vector<std::uint8_t>& out) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32_be(std::uint32_t v, std::vector<std::uint8_t>& out) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

RingElement PointFunction::operator()(std::uint64_t i) const {
  check_index(i, n);
  return i == alpha ? beta : RingElement::zero(beta.modulus());
}

std::vector<RingElement> PointFunction::truth_table() const {
  std::vector<RingElement> table(n, RingElement::zero(beta.modulus()));
  table.at(alpha - 1) = beta;
  return table;
}

DpfParams DpfParams::additive(unsigned ell, std::uint64_t n, const RingModulus& mod) {
  DpfParams params{ell, ell - 1, n, mod, DpfBackend::kAdditive};
  params.validate();
  return params;
}

DpfParams DpfParams::cnf(unsigned ell, unsigned t, std::uint64_t n, const RingModulus& mod) {
  DpfParams params{ell, t, n, mod, DpfBackend::kCnf};
  params.validate();
  return params;
}

void DpfParams::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kParamMismatch, why); };
  if (ell < 2 || ell > 255) fail("ell must lie in [2, 255]");
  if (t < 1 || t >= ell) fail("t must satisfy 1 <= t < ell");
  if (n < 1) fail("domain size must be positive");
  switch (backend) {
    case DpfBackend::kAdditive:
      if (t != ell - 1) fail("additive backend is (ell-1)-private only");
      break;
    case DpfBackend::kCnf:
      if (ell > 32) fail("cnf backend supports at most 32 servers");
      if (binomial(ell, t) > kMaxCnfShareSets) fail("binomial(ell, t) exceeds 2^20");
      break;
    default:
      fail("unknown backend");
  }
}

std::uint64_t DpfKey::domain_size() const {
  return shares.empty() ? 0 : shares.front().values.size();
}

const RingModulus& DpfKey::modulus() const {
  return shares.at(0).values.at(0).modulus();
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::vector<std::uint32_t> cnf_share_sets(unsigned ell, unsigned t) {
  std::vector<std::uint32_t> sets;
  std::vector<unsigned> members(t);
  for (unsigned i = 0; i < t; ++i) members[i] = i + 1;
  for (;;) {
    std::uint32_t mask = 0;
    for (unsigned m : members) mask |= std::uint32_t{1} << (m - 1);
    sets.push_back(mask);
    // Advance to the next combination in lexicographic order.
    int pos = static_cast<int>(t) - 1;
    while (pos >= 0 && members[pos] == ell - t + 1 + static_cast<unsigned>(pos)) --pos;
    if (pos < 0) break;
    ++members[pos];
    for (unsigned i = pos + 1; i < t; ++i) members[i] = members[i - 1] + 1;
  }
  return sets;
}

unsigned cnf_assignee(std::uint32_t set_id) {
  return static_cast<unsigned>(std::countr_one(set_id)) + 1;
}

DpfKeySet gen(const DpfParams& params, const PointFunction& f, RandomSource& rng) {
  params.validate();
  if (f.n != params.n) throw Error(ErrorCode::kParamMismatch, "point function domain != params.n");
  if (!(f.beta.modulus() == params.mod)) {
    throw Error(ErrorCode::kParamMismatch, "beta is not an element of " + params.mod.to_string());
  }
  check_index(f.alpha, f.n);

  DpfKeySet set;
  set.keys.reserve(params.ell);
  for (unsigned j = 1; j <= params.ell; ++j) set.keys.push_back(DpfKey{j, params.backend, {}});

  std::vector<RingElement> last = f.truth_table();
  if (params.backend == DpfBackend::kAdditive) {
    for (unsigned j = 1; j < params.ell; ++j) {
      auto r = random_vector(params.mod, params.n, rng);
      for (std::uint64_t i = 0; i < params.n; ++i) last[i] -= r[i];
      set.keys[j - 1].shares.push_back(DpfShare{0, std::move(r)});
    }
    set.keys[params.ell - 1].shares.push_back(DpfShare{0, std::move(last)});
    return set;
  }

  // CNF: every size-t set T gets a share r_T withheld from exactly the
  // servers in T; the lexicographically last set absorbs the truth table.
  const auto sets = cnf_share_sets(params.ell, params.t);
  std::vector<DpfShare> shares;
  shares.reserve(sets.size());
  for (std::size_t s = 0; s + 1 < sets.size(); ++s) {
    auto r = random_vector(params.mod, params.n, rng);
    for (std::uint64_t i = 0; i < params.n; ++i) last[i] -= r[i];
    shares.push_back(DpfShare{sets[s], std::move(r)});
  }
  shares.push_back(DpfShare{sets.back(), std::move(last)});

  for (const DpfShare& share : shares) {
    for (unsigned j = 1; j <= params.ell; ++j) {
      if ((share.set_id >> (j - 1) & 1U) == 0) set.keys[j - 1].shares.push_back(share);
    }
  }
  return set;
}

RingElement eval(const DpfKey& key, std::uint64_t i) {
  check_index(i, key.domain_size());
  if (key.backend == DpfBackend::kAdditive) return key.shares.front().values[i - 1];
  RingElement sum = RingElement::zero(key.modulus());
  for (const DpfShare& share : key.shares) {
    if (cnf_assignee(share.set_id) == key.server_index) sum += share.values[i - 1];
  }
  return sum;
}

std::vector<RingElement> full_eval(const DpfKey& key) {
  const std::uint64_t n = key.domain_size();
  if (key.backend == DpfBackend::kAdditive) return key.shares.front().values;
  std::vector<RingElement> out(n, RingElement::zero(key.modulus()));
  for (const DpfShare& share : key.shares) {
    if (cnf_assignee(share.set_id) != key.server_index) continue;
    for (std::uint64_t i = 0; i < n; ++i) out[i] += share.values[i];
  }
  return out;
}

std::uint64_t key_size_bytes(const DpfParams& params) {
  params.validate();
  const std::uint64_t vector_bytes = params.n * params.mod.element_width();
  if (params.backend == DpfBackend::kAdditive) return vector_bytes;
  return binomial(params.ell - 1, params.t) * vector_bytes;
}

std::size_t serialized_key_size(const DpfKey& key) {
  const std::size_t per_share = (key.backend == DpfBackend::kCnf ? 4 : 0) +
                                key.domain_size() * key.modulus().element_width();
  return 4 + key.shares.size() * per_share;
}

void append_serialized_key(const DpfKey& key, std::vector<std::uint8_t>& out) {
  out.push_back(static_cast<std::uint8_t>(key.backend));
  out.push_back(static_cast<std::uint8_t>(key.server_index));
  put_u16_be(static_cast<std::uint16_t>(key.shares.size()), out);
  for (const DpfShare& share : key.shares) {
    if (key.backend == DpfBackend::kCnf) put_u32_be(share.set_id, out);
    for (const RingElement& e : share.values) append_serialized(e, out);
  }
}

std::vector<std::uint8_t> serialize_key(const DpfKey& key) {
  std::vector<std::uint8_t> out;
  out.reserve(serialized_key_size(key));
  append_serialized_key(key, out);
  return out;
}

DpfKey deserialize_key(std::span<const std::uint8_t> bytes, const RingModulus& mod,
                       std::uint64_t n) {
  auto malformed = [](const std::string& why) { throw Error(ErrorCode::kMalformedKey, why); };
  if (bytes.size() < 4) malformed("truncated key header");
  DpfKey key;
  const std::uint8_t tag = bytes[0];
  if (tag != static_cast<std::uint8_t>(DpfBackend::kAdditive) &&
      tag != static_cast<std::uint8_t>(DpfBackend::kCnf)) {
    malformed("unknown backend tag " + std::to_string(tag));
  }
  key.backend = static_cast<DpfBackend>(tag);
  key.server_index = bytes[1];
  if (key.server_index == 0) malformed("server index 0");
  const unsigned count = (unsigned{bytes[2]} << 8) | bytes[3];
  if (count == 0) malformed("key has no shares");
  if (key.backend == DpfBackend::kAdditive && count != 1) malformed("additive key must hold one share");

  const std::size_t width = mod.element_width();
  const std::size_t id_bytes = key.backend == DpfBackend::kCnf ? 4 : 0;
  const std::size_t body = bytes.size() - 4;
  // Infer the domain size first so a wrong-n key is told apart from garbage.
  if (body % count != 0 || body / count < id_bytes || (body / count - id_bytes) % width != 0) {
    malformed("key body length " + std::to_string(body) + " is not a whole number of shares");
  }
  const std::uint64_t key_n = (body / count - id_bytes) / width;
  if (key_n != n) {
    throw Error(ErrorCode::kSizeMismatch, "key domain " + std::to_string(key_n) +
                                              " != database size " + std::to_string(n));
  }

  std::size_t offset = 4;
  key.shares.reserve(count);
  for (unsigned s = 0; s < count; ++s) {
    DpfShare share;
    if (id_bytes != 0) {
      share.set_id = (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
                     (std::uint32_t{bytes[offset + 2]} << 8) | bytes[offset + 3];
      offset += 4;
      if (share.set_id == 0 || (share.set_id >> (key.server_index - 1) & 1U) != 0) {
        malformed("share set does not exclude the holding server");
      }
    }
    share.values.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      try {
        share.values.push_back(deserialize_element(bytes.subspan(offset, width), mod));
      } catch (const Error& e) {
        malformed(e.what());
      }
      offset += width;
    }
    key.shares.push_back(std::move(share));
  }
  return key;
}

}  // namespace ringpir
