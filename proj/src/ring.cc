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

#include "ringpir/ring.h"

#include <array>
#include <sstream>

namespace ringpir {
namespace {

using boost::multiprecision::msb;
using boost::multiprecision::powm;

const BigInt kTwoTo64 = BigInt(1) << 64;

bool miller_rabin_round(const BigInt& n, const BigInt& n_minus_1, const BigInt& d,
                        unsigned s, const BigInt& base) {
  BigInt x = powm(base, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  static constexpr std::array<unsigned, 12> kSmall = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};
  for (unsigned q : kSmall) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  const BigInt n_minus_1 = n - 1;
  BigInt d = n_minus_1;
  unsigned s = 0;
  while (!bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  if (n < kTwoTo64) {
    // These bases are a proven witness set for every n < 2^64.
    for (unsigned base : kSmall) {
      if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
    }
    return true;
  }
  std::mt19937_64 bases(0x52494e4750495221ULL);
  const BigInt span = n - 3;
  for (int round = 0; round < 64; ++round) {
    BigInt base = 0;
    for (unsigned w = 0; w <= msb(span) / 64; ++w) base |= BigInt(bases()) << (64 * w);
    base = base % span + 2;
    if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

BigInt next_prime(const BigInt& n) {
  BigInt candidate = n + 1;
  while (!is_probable_prime(candidate)) ++candidate;
  return candidate;
}

RingModulus::RingModulus(const BigInt& p, unsigned tau) {
  if (tau == 0) throw Error(ErrorCode::kInvalidModulus, "tau must be >= 1");
  if (!is_probable_prime(p)) {
    throw Error(ErrorCode::kInvalidModulus, "p = " + p.str() + " is not prime");
  }
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->tau = tau;
  impl->modulus = boost::multiprecision::pow(p, tau);
  impl->unit_count = impl->modulus - impl->modulus / p;
  impl->bit_width = static_cast<unsigned>(msb(BigInt(impl->modulus - 1))) + 1;
  impl->element_width = (impl->bit_width + 7) / 8;
  impl_ = std::move(impl);
}

BigInt RingModulus::reduce(const BigInt& v) const {
  BigInt r = v % impl_->modulus;
  if (r < 0) r += impl_->modulus;
  return r;
}

std::string RingModulus::to_string() const {
  std::ostringstream os;
  os << "Z_" << impl_->p;
  if (impl_->tau > 1) os << '^' << impl_->tau;
  return os.str();
}

RingElement::RingElement(const RingModulus& mod, const BigInt& value)
    : value_(mod.reduce(value)), mod_(mod) {}

void RingElement::check_same_modulus(const RingElement& other) const {
  if (!(mod_ == other.mod_)) {
    throw Error(ErrorCode::kModulusMismatch,
                mod_.to_string() + " vs " + other.mod_.to_string());
  }
}

bool RingElement::is_unit() const { return BigInt(value_ % mod_.p()) != 0; }

RingElement RingElement::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorCode::kNonInvertible,
                value_.str() + " is not a unit of " + mod_.to_string());
  }
  // Invariant: old_r = old_s * value (mod N), r = s * value (mod N).
  BigInt old_r = value_, r = mod_.modulus();
  BigInt old_s = 1, s = 0;
  while (!r.is_zero()) {
    const BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  return RingElement(mod_, old_s);
}

RingElement& RingElement::operator+=(const RingElement& other) {
  check_same_modulus(other);
  value_ += other.value_;
  if (value_ >= mod_.modulus()) value_ -= mod_.modulus();
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& other) {
  check_same_modulus(other);
  if (value_ < other.value_) value_ += mod_.modulus();
  value_ -= other.value_;
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& other) {
  check_same_modulus(other);
  value_ = (value_ * other.value_) % mod_.modulus();
  return *this;
}

RingElement RingElement::operator-() const {
  if (value_.is_zero()) return *this;
  return RingElement(mod_, mod_.modulus() - value_);
}

std::ostream& operator<<(std::ostream& os, const RingElement& e) {
  return os << e.value() << " (" << e.modulus().to_string() << ')';
}

RingElement sample_unit(const RingModulus& mod, RandomSource& rng) {
  for (;;) {
    BigInt v = rng.uniform_below(mod.modulus());
    if (BigInt(v % mod.p()) != 0) return RingElement(mod, v);
  }
}

RingElement sample_element(const RingModulus& mod, RandomSource& rng) {
  return RingElement(mod, rng.uniform_below(mod.modulus()));
}

void append_le(const BigInt& value, std::size_t width, std::vector<std::uint8_t>& out) {
  BigInt v = value;
  for (std::size_t i = 0; i < width; ++i) {
    out.push_back(static_cast<std::uint8_t>(static_cast<unsigned>(v & 0xff)));
    v >>= 8;
  }
}

BigInt read_le(std::span<const std::uint8_t> bytes) {
  BigInt v = 0;
  for (std::size_t i = bytes.size(); i-- > 0;) {
    v <<= 8;
    v |= bytes[i];
  }
  return v;
}

void append_serialized(const RingElement& e, std::vector<std::uint8_t>& out) {
  append_le(e.value(), e.modulus().element_width(), out);
}

std::vector<std::uint8_t> serialize(const RingElement& e) {
  std::vector<std::uint8_t> out;
  out.reserve(e.modulus().element_width());
  append_serialized(e, out);
  return out;
}

RingElement deserialize_element(std::span<const std::uint8_t> bytes,
                                const RingModulus& mod) {
  if (bytes.size() != mod.element_width()) {
    throw Error(ErrorCode::kMalformedElement,
                "expected " + std::to_string(mod.element_width()) + " bytes, got " +
                    std::to_string(bytes.size()));
  }
  BigInt v = read_le(bytes);
  if (v >= mod.modulus()) {
    throw Error(ErrorCode::kMalformedElement,
                v.str() + " is out of range for " + mod.to_string());
  }
  return RingElement(mod, v);
}

}  // namespace ringpir
