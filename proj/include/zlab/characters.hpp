#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "zlab/precision.hpp"

namespace zlab {

// A Dirichlet character mod q with exact values: chi(a) = exp(2 pi i angle(a)/order)
// for units a, and 0 otherwise (stored as angle -1).
class Character {
 public:
  Character() : Character(1, 1, {0}, {}) {}  // the trivial character mod 1
  Character(std::int64_t modulus, std::int64_t order, std::vector<std::int64_t> angles, std::vector<int> exponents);

  std::int64_t modulus() const { return q_; }
  // Common denominator of all angles (the exponent of (Z/q)^*).
  std::int64_t order() const { return order_; }
  bool is_principal() const { return principal_; }
  std::int64_t conductor() const { return conductor_; }
  // Equal keys <=> the characters induce the same primitive character.
  const std::string& equivalence_key() const { return key_; }
  const std::vector<int>& exponents() const { return exponents_; }
  std::string label() const;

  // Angle numerator of chi(n mod q), or -1 when gcd(n, q) > 1.
  std::int64_t angle(std::int64_t n) const;
  bool is_unit(std::int64_t n) const { return angle(n) >= 0; }
  std::complex<double> operator()(std::int64_t n) const;
  MpComplex value_mp(std::int64_t n) const;

  bool equivalent_to(const Character& other) const { return key_ == other.key_; }
  // Complex conjugate character; its exponents are the negated ones.
  Character conjugate() const;

 private:
  std::int64_t q_;
  std::int64_t order_;
  std::vector<std::int64_t> angles_;
  std::vector<int> exponents_;
  bool principal_ = false;
  std::int64_t conductor_ = 1;
  std::string key_;
  std::vector<std::complex<double>> values_;
};

class CharacterSet {
 public:
  std::int64_t modulus() const { return q_; }
  std::int64_t phi() const { return static_cast<std::int64_t>(characters_.size()); }
  const std::vector<Character>& characters() const { return characters_; }
  const Character& operator[](size_t i) const { return characters_[i]; }
  size_t size() const { return characters_.size(); }
  const Character& principal() const { return characters_.front(); }

  friend CharacterSet character_table(std::int64_t q);

 private:
  std::int64_t q_ = 1;
  std::vector<Character> characters_;
};

// Full character group mod q, built from discrete-log tables on the prime-power
// factors and assembled by CRT. characters()[0] is principal.
CharacterSet character_table(std::int64_t q);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t q);

// Smallest-modulus character (ordered by (modulus, index)) not equivalent to
// any of `chars`. With avoid_conjugates it also avoids every conj(chi_k), so
// that chi_k * aux is never principal.
Character auxiliary_character(const std::vector<Character>& chars, bool avoid_conjugates = false);

// Look up a character by modulus and index in character_table(q).
Character character(std::int64_t q, size_t index);

}  // namespace zlab
