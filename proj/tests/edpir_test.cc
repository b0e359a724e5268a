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

#include <sstream>

#include "ringpir/edpir.h"
#include "ringpir/errors.h"

namespace ringpir {
namespace {

SchemeParams additive_params(unsigned ell, std::uint64_t n, const RingModulus& mod, unsigned m) {
  return SchemeParams::make(DpfParams::additive(ell, n, mod), m);
}

std::vector<Answer> honest_answers(const Database& db, const QueryBundle& bundle) {
  std::vector<Answer> out;
  for (const Query& q : bundle.queries) out.push_back(ans(db, q));
  return out;
}

TEST(SchemeParams, EntryWidthMustFitRing) {
  const RingModulus z8(2, 3);
  EXPECT_NO_THROW(additive_params(2, 4, z8, 3));
  try {
    additive_params(2, 4, z8, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParamMismatch);
  }
  EXPECT_THROW(additive_params(2, 4, z8, 0), Error);
}

TEST(Database, Validation) {
  EXPECT_THROW(Database({BigInt(0), BigInt(4)}, 2), Error);
  EXPECT_NO_THROW(Database({BigInt(0), BigInt(3)}, 2));
  SeededRandom rng(1);
  const Database db = Database::random(100, 3, rng);
  EXPECT_EQ(db.size(), 100u);
  for (const BigInt& x : db.entries()) EXPECT_LT(x, 8);
  EXPECT_EQ(db.at(1), db.entries()[0]);
}

TEST(Que, ProducesSharesOfBlindedPoint) {
  const RingModulus z8(2, 3);
  const auto params = additive_params(2, 5, z8, 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SeededRandom rng(seed);
    const QueryBundle b = que(params, 3, rng);
    ASSERT_TRUE(b.aux.beta.is_unit());
    ASSERT_EQ(b.queries.size(), 2u);
    for (std::uint64_t i = 1; i <= 5; ++i) {
      const RingElement s = eval(b.queries[0].key, i) + eval(b.queries[1].key, i);
      ASSERT_EQ(s, i == 3 ? b.aux.beta : RingElement::zero(z8));
    }
  }
  SeededRandom rng(0);
  try {
    que(params, 0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidIndex);
  }
  EXPECT_THROW(que(params, 6, rng), Error);
}

// Regression fixture: seed 1, Z_8, n = 4, alpha = 2, two additive servers.
TEST(Que, GoldenVector) {
  const RingModulus z8(2, 3);
  SeededRandom rng(1);
  const QueryBundle b = que(additive_params(2, 4, z8, 1), 2, rng);
  EXPECT_EQ(b.aux.beta.value(), 1);
  EXPECT_EQ(serialize_key(b.queries[0].key), (std::vector<std::uint8_t>{0x01, 0x01, 0x00, 0x01, 4, 1, 0, 0}));
  EXPECT_EQ(serialize_key(b.queries[1].key), (std::vector<std::uint8_t>{0x01, 0x02, 0x00, 0x01, 4, 0, 0, 0}));
}

TEST(Ans, Examples) {
  const RingModulus z8(2, 3);
  const auto params = additive_params(2, 4, z8, 1);
  SeededRandom rng(2);
  const QueryBundle b = que(params, 2, rng);
  const Database zeros({0, 0, 0, 0}, 1);
  for (const Answer& a : honest_answers(zeros, b)) EXPECT_TRUE(a.value.is_zero());

  const Database db({1, 1, 0, 1}, 1);
  const auto answers = honest_answers(db, b);
  EXPECT_EQ(answers[0].value + answers[1].value, b.aux.beta);

  const auto single = additive_params(2, 1, z8, 1);
  const QueryBundle one = que(single, 1, rng);
  const auto a = honest_answers(Database({1}, 1), one);
  EXPECT_EQ(a[0].value + a[1].value, one.aux.beta);

  try {
    ans(Database({1, 1, 1}, 1), b.queries[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeMismatch);
  }
}

TEST(Rec, HandComputedReject) {
  // beta = 3, x = 1, delta = 1: y = 3^-1 (3 + 1) = 3 * 4 = 4 in Z_8.
  const RingModulus z8(2, 3);
  const auto params = additive_params(2, 1, z8, 1);
  const Aux aux{RingElement(z8, 3)};
  const std::vector<Answer> answers{{1, RingElement(z8, 2)}, {2, RingElement(z8, 2)}};
  EXPECT_TRUE(rec(params, answers, aux).is_reject());
  const std::vector<Answer> honest{{1, RingElement(z8, 2)}, {2, RingElement(z8, 1)}};
  EXPECT_EQ(rec(params, honest, aux), RetrievalResult::value_of(1));
}

TEST(Rec, AnswerSetChecks) {
  const RingModulus z8(2, 3);
  const auto params = additive_params(3, 1, z8, 1);
  const Aux aux{RingElement(z8, 1)};
  const RingElement z = RingElement::zero(z8);
  auto code_of = [&](std::vector<Answer> answers) {
    try {
      rec(params, answers, aux);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kServerError;
  };
  EXPECT_EQ(code_of({{1, z}, {2, z}}), ErrorCode::kMissingAnswer);
  EXPECT_EQ(code_of({{1, z}, {2, z}, {2, z}}), ErrorCode::kDuplicateServer);
  EXPECT_EQ(code_of({{1, z}, {2, z}, {4, z}}), ErrorCode::kParamMismatch);
  EXPECT_EQ(code_of({{1, z}, {2, z}, {3, RingElement(RingModulus(3, 2), 0)}}),
            ErrorCode::kModulusMismatch);
  // Order of arrival does not matter.
  EXPECT_EQ(rec(params, std::vector<Answer>{{3, z}, {1, z}, {2, z}}, aux), RetrievalResult::value_of(0));
}

TEST(Rec, MultiBitAcceptsWholeRange) {
  const RingModulus z27(3, 3);
  const auto params = additive_params(2, 1, z27, 2);
  const Aux aux{RingElement(z27, 2)};
  for (unsigned y = 0; y < 27; ++y) {
    const std::vector<Answer> answers{{1, RingElement(z27, 2 * y)}, {2, RingElement::zero(z27)}};
    const RetrievalResult r = rec(params, answers, aux);
    if (y < 4) {
      EXPECT_EQ(r, RetrievalResult::value_of(y));
    } else {
      EXPECT_TRUE(r.is_reject());
    }
  }
}

TEST(RetrievalResult, Printing) {
  std::ostringstream os;
  os << RetrievalResult::value_of(3) << ' ' << RetrievalResult::reject();
  EXPECT_EQ(os.str(), "VALUE 3 REJECT");
}

TEST(EndToEnd, HonestRunsAlwaysSucceed) {
  SeededRandom rng(3);
  for (auto [p, tau] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{131u, 1u}, std::pair{2u, 64u}}) {
    const RingModulus mod(p, tau);
    for (unsigned m : {1u, 2u, 3u}) {
      for (unsigned ell : {2u, 3u, 5u}) {
        for (const DpfParams& dpf : {DpfParams::additive(ell, 6, mod), DpfParams::cnf(ell, ell / 2, 6, mod)}) {
          const auto params = SchemeParams::make(dpf, m);
          const Database db = Database::random(6, m, rng);
          for (std::uint64_t alpha = 1; alpha <= 6; ++alpha) {
            ASSERT_EQ(retrieve_end_to_end(params, db, alpha, rng), RetrievalResult::value_of(db.at(alpha)));
          }
        }
      }
    }
  }
}

TEST(EndToEnd, SelfCancellingTamperingIsInvisible) {
  const RingModulus z8(2, 3);
  const auto params = additive_params(3, 4, z8, 1);
  const Database db({0, 1, 1, 0}, 1);
  const std::vector<RingElement> offsets{RingElement(z8, 3), RingElement(z8, 5), RingElement(z8, 0)};
  SeededRandom rng(4);
  for (int k = 0; k < 200; ++k) {
    ASSERT_EQ(retrieve_end_to_end(params, db, 2, rng, offsets), RetrievalResult::value_of(1));
  }
  const std::vector<RingElement> too_few{RingElement(z8, 1)};
  EXPECT_THROW(retrieve_end_to_end(params, db, 2, rng, too_few), Error);
}

// For every beta, x and delta in Z_8 with m = 1 the verdict matches the
// closed form: accept a wrong bit iff beta = delta (x = 0) or beta = -delta
// (x = 1).
TEST(EndToEnd, TamperedVerdictMatchesClosedForm) {
  const RingModulus z8(2, 3);
  const auto params = additive_params(2, 1, z8, 1);
  for (unsigned x = 0; x < 2; ++x) {
    for (unsigned beta : {1u, 3u, 5u, 7u}) {
      for (unsigned delta = 1; delta < 8; ++delta) {
        const Aux aux{RingElement(z8, beta)};
        const std::vector<Answer> answers{{1, RingElement(z8, beta * x + delta)},
                                          {2, RingElement::zero(z8)}};
        const RetrievalResult r = rec(params, answers, aux);
        const bool wrong = x == 0 ? beta == delta : (beta + delta) % 8 == 0;
        if (wrong) {
          EXPECT_EQ(r, RetrievalResult::value_of(1 - x)) << beta << ' ' << delta;
        } else {
          EXPECT_TRUE(r.is_reject()) << beta << ' ' << delta;
        }
      }
    }
  }
}

}  // namespace
}  // namespace ringpir
