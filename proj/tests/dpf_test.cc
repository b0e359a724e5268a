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

#include <set>

#include "ringpir/dpf.h"
#include "ringpir/errors.h"

namespace ringpir {
namespace {

std::vector<std::uint64_t> values(const std::vector<RingElement>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& e : v) out.push_back(e.value().convert_to<std::uint64_t>());
  return out;
}

std::vector<RingElement> sum_of_full_evals(const DpfKeySet& keys) {
  std::vector<RingElement> total = full_eval(keys.keys.front());
  for (std::size_t j = 1; j < keys.keys.size(); ++j) {
    const auto part = full_eval(keys.keys[j]);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
  }
  return total;
}

TEST(PointFunction, TruthTable) {
  const RingModulus z8(2, 3);
  const PointFunction f{3, 2, RingElement(z8, 5)};
  EXPECT_EQ(values(f.truth_table()), (std::vector<std::uint64_t>{0, 5, 0}));
  EXPECT_EQ(f(2).value(), 5);
  EXPECT_EQ(f(1).value(), 0);
  EXPECT_THROW(f(0), Error);
  EXPECT_THROW(f(4), Error);
}

TEST(DpfParams, Validation) {
  const RingModulus z8(2, 3);
  EXPECT_NO_THROW(DpfParams::additive(2, 4, z8).validate());
  EXPECT_THROW(DpfParams::additive(1, 4, z8).validate(), Error);
  EXPECT_THROW(DpfParams::additive(2, 0, z8).validate(), Error);
  EXPECT_THROW(DpfParams::cnf(3, 3, 4, z8).validate(), Error);
  EXPECT_THROW(DpfParams::cnf(3, 0, 4, z8).validate(), Error);
  EXPECT_THROW(DpfParams::cnf(33, 1, 4, z8).validate(), Error);
  DpfParams odd = DpfParams::additive(3, 4, z8);
  odd.t = 1;
  EXPECT_THROW(odd.validate(), Error);
}

TEST(AdditiveDpf, TwoServerExample) {
  const RingModulus z8(2, 3);
  SeededRandom rng(11);
  const auto keys = gen(DpfParams::additive(2, 3, z8), PointFunction{3, 2, RingElement(z8, 5)}, rng);
  ASSERT_EQ(keys.keys.size(), 2u);
  EXPECT_EQ(values(sum_of_full_evals(keys)), (std::vector<std::uint64_t>{0, 5, 0}));
  for (std::uint64_t i = 1; i <= 3; ++i) {
    EXPECT_EQ(eval(keys.for_server(1), i) + eval(keys.for_server(2), i),
              PointFunction({3, 2, RingElement(z8, 5)})(i));
  }
}

TEST(CnfDpf, ThreeServerExample) {
  const RingModulus z8(2, 3);
  SeededRandom rng(12);
  const auto keys = gen(DpfParams::cnf(3, 1, 2, z8), PointFunction{2, 1, RingElement(z8, 3)}, rng);
  // Distinct share vectors across all servers.
  std::map<std::uint32_t, std::vector<RingElement>> distinct;
  for (const DpfKey& k : keys.keys) {
    EXPECT_EQ(k.shares.size(), 2u);
    for (const DpfShare& s : k.shares) {
      EXPECT_EQ(s.set_id >> (k.server_index - 1) & 1u, 0u);
      auto [it, fresh] = distinct.emplace(s.set_id, s.values);
      if (!fresh) EXPECT_EQ(it->second, s.values);
    }
  }
  ASSERT_EQ(distinct.size(), 3u);
  std::vector<RingElement> total(2, RingElement::zero(z8));
  for (const auto& [id, v] : distinct) {
    for (std::size_t i = 0; i < 2; ++i) total[i] += v[i];
  }
  EXPECT_EQ(values(total), (std::vector<std::uint64_t>{3, 0}));
  EXPECT_EQ(values(sum_of_full_evals(keys)), (std::vector<std::uint64_t>{3, 0}));
}

TEST(CnfDpf, ShareSetsAndAssignees) {
  EXPECT_EQ(cnf_share_sets(3, 1), (std::vector<std::uint32_t>{0b001, 0b010, 0b100}));
  EXPECT_EQ(cnf_share_sets(4, 2).size(), 6u);
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(32, 16), 601080390u);
  EXPECT_EQ(binomial(3, 4), 0u);
  EXPECT_EQ(cnf_assignee(0b001), 2u);
  EXPECT_EQ(cnf_assignee(0b010), 1u);
  EXPECT_EQ(cnf_assignee(0b011), 3u);
}

// Every share vector is counted by exactly one server, which never misses
// it, for every (ell, t) up to six servers.
TEST(CnfDpf, EvaluationPartitionsShares) {
  for (unsigned ell = 2; ell <= 6; ++ell) {
    for (unsigned t = 1; t < ell; ++t) {
      std::map<std::uint32_t, unsigned> evaluated_by;
      for (std::uint32_t id : cnf_share_sets(ell, t)) {
        ASSERT_EQ(static_cast<unsigned>(std::popcount(id)), t);
        const unsigned j = cnf_assignee(id);
        ASSERT_GE(j, 1u);
        ASSERT_LE(j, ell);
        ASSERT_EQ(id >> (j - 1) & 1u, 0u) << "assignee must hold the share";
        ++evaluated_by[id];
      }
      EXPECT_EQ(evaluated_by.size(), binomial(ell, t));
    }
  }
}

TEST(Dpf, CorrectnessExhaustive) {
  for (auto [p, tau] : {std::pair{2u, 1u}, std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{3u, 3u}}) {
    const RingModulus mod(p, tau);
    const unsigned N = mod.modulus().convert_to<unsigned>();
    for (unsigned ell = 2; ell <= 4; ++ell) {
      std::vector<DpfParams> variants;
      for (std::uint64_t n : {1u, 2u, 5u, 16u}) {
        variants.push_back(DpfParams::additive(ell, n, mod));
        for (unsigned t = 1; t < ell; ++t) variants.push_back(DpfParams::cnf(ell, t, n, mod));
      }
      for (const DpfParams& params : variants) {
        for (std::uint64_t alpha = 1; alpha <= params.n; ++alpha) {
          for (unsigned b = 0; b < N; ++b) {
            SeededRandom rng(alpha * 1000 + b);
            const PointFunction f{params.n, alpha, RingElement(mod, b)};
            const auto keys = gen(params, f, rng);
            ASSERT_EQ(sum_of_full_evals(keys), f.truth_table())
                << mod.to_string() << " ell=" << ell << " t=" << params.t << " n=" << params.n;
            for (const DpfKey& k : keys.keys) {
              const auto full = full_eval(k);
              for (std::uint64_t i = 1; i <= params.n; ++i) ASSERT_EQ(full[i - 1], eval(k, i));
            }
          }
        }
      }
    }
  }
}

TEST(Dpf, EvalIndexBounds) {
  const RingModulus z8(2, 3);
  SeededRandom rng(1);
  for (const DpfParams& params : {DpfParams::additive(2, 4, z8), DpfParams::cnf(3, 1, 4, z8)}) {
    const auto keys = gen(params, PointFunction{4, 1, RingElement(z8, 1)}, rng);
    try {
      eval(keys.keys[0], 0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
    }
    EXPECT_THROW(eval(keys.keys[0], 5), Error);
  }
}

TEST(Dpf, SingletonDomain) {
  const RingModulus z8(2, 3);
  SeededRandom rng(2);
  const auto keys = gen(DpfParams::additive(2, 1, z8), PointFunction{1, 1, RingElement(z8, 7)}, rng);
  EXPECT_EQ(full_eval(keys.keys[0]).size(), 1u);
}

TEST(Dpf, GenRejectsMismatchedInputs) {
  const RingModulus z8(2, 3), z9(3, 2);
  SeededRandom rng(3);
  EXPECT_THROW(gen(DpfParams::additive(2, 4, z8), PointFunction{3, 1, RingElement(z8, 1)}, rng), Error);
  EXPECT_THROW(gen(DpfParams::additive(2, 4, z8), PointFunction{4, 1, RingElement(z9, 1)}, rng), Error);
  EXPECT_THROW(gen(DpfParams::additive(2, 4, z8), PointFunction{4, 5, RingElement(z8, 1)}, rng), Error);
}

TEST(Dpf, KeySizes) {
  EXPECT_EQ(key_size_bytes(DpfParams::additive(2, 1024, RingModulus(2, 8))), 1024u);
  EXPECT_EQ(key_size_bytes(DpfParams::cnf(3, 1, 4, RingModulus(2, 3))), 8u);
  EXPECT_EQ(key_size_bytes(DpfParams::cnf(4, 2, 4, RingModulus(2, 3))), 12u);
  EXPECT_EQ(key_size_bytes(DpfParams::additive(3, 10, RingModulus(257, 1))), 20u);
}

TEST(Dpf, KeySizeMatchesGeneratedKeys) {
  const RingModulus mod(3, 5);
  SeededRandom rng(4);
  for (unsigned ell = 2; ell <= 5; ++ell) {
    for (unsigned t = 1; t < ell; ++t) {
      const DpfParams params = DpfParams::cnf(ell, t, 7, mod);
      const auto keys = gen(params, PointFunction{7, 3, RingElement(mod, 2)}, rng);
      for (const DpfKey& k : keys.keys) {
        EXPECT_EQ(k.shares.size() * 7 * mod.element_width(), key_size_bytes(params));
        EXPECT_EQ(serialized_key_size(k), serialize_key(k).size());
      }
    }
  }
}

TEST(DpfSerialization, RoundTrip) {
  const RingModulus mod(2, 12);
  SeededRandom rng(5);
  for (const DpfParams& params : {DpfParams::additive(3, 9, mod), DpfParams::cnf(4, 2, 9, mod)}) {
    const auto keys = gen(params, PointFunction{9, 4, RingElement(mod, 77)}, rng);
    for (const DpfKey& k : keys.keys) {
      const auto bytes = serialize_key(k);
      const DpfKey back = deserialize_key(bytes, mod, 9);
      EXPECT_EQ(back.server_index, k.server_index);
      EXPECT_EQ(back.backend, k.backend);
      EXPECT_EQ(full_eval(back), full_eval(k));
      EXPECT_EQ(serialize_key(back), bytes);
    }
  }
}

TEST(DpfSerialization, RejectsCorruptKeys) {
  const RingModulus z8(2, 3);
  SeededRandom rng(6);
  const auto keys = gen(DpfParams::cnf(3, 1, 4, z8), PointFunction{4, 2, RingElement(z8, 3)}, rng);
  const auto good = serialize_key(keys.keys[0]);
  auto expect_code = [&](std::vector<std::uint8_t> bytes, ErrorCode code, std::uint64_t n = 4) {
    try {
      deserialize_key(bytes, z8, n);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  };
  expect_code({}, ErrorCode::kMalformedKey);
  auto bad_tag = good;
  bad_tag[0] = 9;
  expect_code(bad_tag, ErrorCode::kMalformedKey);
  auto bad_index = good;
  bad_index[1] = 0;
  expect_code(bad_index, ErrorCode::kMalformedKey);
  auto bad_element = good;
  bad_element.back() = 8;
  expect_code(bad_element, ErrorCode::kMalformedKey);
  // Set 0b001 excludes server 1, which is holding the key.
  auto own_set = good;
  own_set[7] = 0x01;
  expect_code(own_set, ErrorCode::kMalformedKey);
  auto truncated = good;
  truncated.pop_back();
  expect_code(truncated, ErrorCode::kMalformedKey);
  expect_code(good, ErrorCode::kSizeMismatch, 5);
}

}  // namespace
}  // namespace ringpir
