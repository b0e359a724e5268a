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

#ifndef RINGPIR_RING_H_
#define RINGPIR_RING_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ringpir/errors.h"
#include "ringpir/random.h"

namespace ringpir {

// Deterministic Miller-Rabin for n < 2^64; 64 random-base rounds above
// (error below 2^-128).
bool is_probable_prime(const BigInt& n);

// Smallest prime strictly greater than n.
BigInt next_prime(const BigInt& n);

// The ring Z_{p^tau}. Immutable and cheap to copy; copies share storage.
class RingModulus {
 public:
  // Throws kInvalidModulus when p is not prime or tau == 0.
  RingModulus(const BigInt& p, unsigned tau);

  const BigInt& p() const { return impl_->p; }
  unsigned tau() const { return impl_->tau; }
  const BigInt& modulus() const { return impl_->modulus; }
  // |R*| = p^tau - p^(tau-1).
  const BigInt& unit_count() const { return impl_->unit_count; }
  // ceil(log2(p^tau)), the bit length of the largest element.
  unsigned bit_width() const { return impl_->bit_width; }
  // Serialized element width in bytes.
  std::size_t element_width() const { return impl_->element_width; }

  // Reduces v (possibly negative) into [0, p^tau).
  BigInt reduce(const BigInt& v) const;

  std::string to_string() const;

  friend bool operator==(const RingModulus& a, const RingModulus& b) {
    return a.impl_ == b.impl_ ||
           (a.impl_->tau == b.impl_->tau && a.impl_->p == b.impl_->p);
  }

 private:
  struct Impl {
    BigInt p;
    unsigned tau;
    BigInt modulus;
    BigInt unit_count;
    unsigned bit_width;
    std::size_t element_width;
  };
  std::shared_ptr<const Impl> impl_;
};

class RingElement {
 public:
  // Reduces value modulo p^tau.
  RingElement(const RingModulus& mod, const BigInt& value);

  static RingElement zero(const RingModulus& mod) { return RingElement(mod, 0); }
  static RingElement one(const RingModulus& mod) { return RingElement(mod, 1); }

  const BigInt& value() const { return value_; }
  const RingModulus& modulus() const { return mod_; }

  bool is_zero() const { return value_.is_zero(); }
  // True iff p does not divide the value.
  bool is_unit() const;
  // Multiplicative inverse by the extended Euclidean algorithm. Throws
  // kNonInvertible for non-units.
  RingElement inverse() const;

  RingElement& operator+=(const RingElement& other);
  RingElement& operator-=(const RingElement& other);
  RingElement& operator*=(const RingElement& other);
  RingElement operator-() const;

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.mod_ == b.mod_ && a.value_ == b.value_;
  }

 private:
  void check_same_modulus(const RingElement& other) const;

  BigInt value_;
  RingModulus mod_;
};

std::ostream& operator<<(std::ostream& os, const RingElement& e);

// Uniform element of R* by rejection: draw from [0, p^tau), discard
// multiples of p.
RingElement sample_unit(const RingModulus& mod, RandomSource& rng);

// Uniform element of R.
RingElement sample_element(const RingModulus& mod, RandomSource& rng);

// Fixed-width little-endian encoding, element_width() bytes.
std::vector<std::uint8_t> serialize(const RingElement& e);
void append_serialized(const RingElement& e, std::vector<std::uint8_t>& out);
// Throws kMalformedElement on a width mismatch or value >= p^tau.
RingElement deserialize_element(std::span<const std::uint8_t> bytes,
                                const RingModulus& mod);

// Little-endian helpers shared with the file and wire codecs.
void append_le(const BigInt& value, std::size_t width, std::vector<std::uint8_t>& out);
BigInt read_le(std::span<const std::uint8_t> bytes);

}  // namespace ringpir

#endif  // RINGPIR_RING_H_
