#include "zlab/characters.hpp"

#include <numbers>
#include <numeric>
#include <sstream>

namespace zlab {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

namespace {

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// One cyclic factor of (Z/q)^*: its prime-power modulus, its order, and the
// discrete log of every residue mod that prime power (-1 for non-units).
struct CyclicComponent {
  std::int64_t modulus;
  std::int64_t order;
  std::vector<std::int64_t> log;
};

std::vector<CyclicComponent> components_for(std::int64_t p, int e) {
  std::int64_t m = 1;
  for (int i = 0; i < e; ++i) m *= p;
  std::vector<CyclicComponent> out;
  if (p == 2) {
    if (e == 1) return out;
    if (e == 2) {
      CyclicComponent c{4, 2, std::vector<std::int64_t>(4, -1)};
      c.log[1] = 0;
      c.log[3] = 1;
      out.push_back(c);
      return out;
    }
    std::int64_t half = m / 4;  // order of 5
    CyclicComponent sign{m, 2, std::vector<std::int64_t>(m, -1)};
    CyclicComponent five{m, half, std::vector<std::int64_t>(m, -1)};
    std::int64_t x = 1;
    for (std::int64_t v = 0; v < half; ++v) {
      sign.log[x] = 0;
      five.log[x] = v;
      sign.log[m - x] = 1;
      five.log[m - x] = v;
      x = mulmod(x, 5, m);
    }
    out.push_back(sign);
    out.push_back(five);
    return out;
  }
  std::int64_t phi = m / p * (p - 1);
  auto fphi = factor(phi);
  std::int64_t g = 2;
  for (;; ++g) {
    if (gcd64(g, p) != 1) continue;
    bool prim = true;
    for (auto [r, _] : fphi) {
      if (powmod(g, phi / r, m) == 1) {
        prim = false;
        break;
      }
    }
    if (prim) break;
  }
  CyclicComponent c{m, phi, std::vector<std::int64_t>(m, -1)};
  std::int64_t x = 1;
  for (std::int64_t k = 0; k < phi; ++k) {
    c.log[x] = k;
    x = mulmod(x, g, m);
  }
  out.push_back(c);
  return out;
}

std::string reduced_fraction(std::int64_t num, std::int64_t den) {
  std::int64_t g = gcd64(num, den);
  if (g == 0) g = 1;
  std::ostringstream os;
  os << num / g << "/" << den / g;
  return os.str();
}

}  // namespace

std::int64_t euler_phi(std::int64_t q) {
  if (q <= 0) throw DomainError("modulus must be positive");
  std::int64_t r = q;
  for (auto [p, _] : factor(q)) r = r / p * (p - 1);
  return r;
}

Character::Character(std::int64_t modulus, std::int64_t order, std::vector<std::int64_t> angles,
                     std::vector<int> exponents)
    : q_(modulus), order_(order), angles_(std::move(angles)), exponents_(std::move(exponents)) {
  principal_ = true;
  for (auto a : angles_) {
    if (a > 0) principal_ = false;
  }
  values_.resize(q_);
  for (std::int64_t a = 0; a < q_; ++a) {
    values_[a] = angles_[a] < 0 ? std::complex<double>(0.0)
                                : std::polar(1.0, 2 * std::numbers::pi * double(angles_[a]) / double(order_));
  }

  for (std::int64_t d = 1; d <= q_; ++d) {
    if (q_ % d) continue;
    bool trivial = true;
    for (std::int64_t a = 1; a < q_ && trivial; a += d) {
      if (angles_[a] > 0) trivial = false;
    }
    if (q_ == 1 || trivial) {
      conductor_ = d;
      break;
    }
  }
  std::ostringstream key;
  key << "f=" << conductor_ << ";";
  for (std::int64_t b = 1; b < conductor_; ++b) {
    if (gcd64(b, conductor_) != 1) continue;
    std::int64_t a = b;
    while (gcd64(a, q_) != 1) a += conductor_;
    key << reduced_fraction(angles_[a % q_], order_) << ",";
  }
  key_ = key.str();
}

std::int64_t Character::angle(std::int64_t n) const {
  std::int64_t r = n % q_;
  if (r < 0) r += q_;
  return angles_[r];
}

std::complex<double> Character::operator()(std::int64_t n) const {
  std::int64_t r = n % q_;
  if (r < 0) r += q_;
  return values_[r];
}

MpComplex Character::value_mp(std::int64_t n) const {
  std::int64_t a = angle(n);
  if (a < 0) return MpComplex();
  if (a == 0) return MpComplex(Real(1), Real(0));
  return unit_root(Real(Real(a) / Real(order_)));
}

std::string Character::label() const {
  std::ostringstream os;
  os << "chi_" << q_ << "(";
  for (size_t i = 0; i < exponents_.size(); ++i) os << (i ? "," : "") << exponents_[i];
  os << ")";
  return os.str();
}

CharacterSet character_table(std::int64_t q) {
  if (q <= 0) throw DomainError("character_table requires q >= 1");
  std::vector<CyclicComponent> comps;
  for (auto [p, e] : factor(q)) {
    auto c = components_for(p, e);
    comps.insert(comps.end(), c.begin(), c.end());
  }
  std::int64_t exponent = 1;
  std::int64_t count = 1;
  for (auto& c : comps) {
    exponent = std::lcm(exponent, c.order);
    count *= c.order;
  }

  CharacterSet set;
  set.q_ = q;
  std::vector<int> ex(comps.size(), 0);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::int64_t rem = idx;
    for (size_t i = comps.size(); i-- > 0;) {
      ex[i] = static_cast<int>(rem % comps[i].order);
      rem /= comps[i].order;
    }
    std::vector<std::int64_t> angles(q, -1);
    for (std::int64_t a = 0; a < q; ++a) {
      if (gcd64(a, q) != 1) continue;
      std::int64_t ang = 0;
      for (size_t i = 0; i < comps.size(); ++i) {
        std::int64_t l = comps[i].log[a % comps[i].modulus];
        ang = (ang + mulmod(ex[i] * l % comps[i].order, exponent / comps[i].order, exponent)) % exponent;
      }
      angles[a] = ang;
    }
    set.characters_.emplace_back(q, exponent, std::move(angles), ex);
  }
  return set;
}

Character Character::conjugate() const {
  std::vector<std::int64_t> a(angles_.size());
  for (size_t i = 0; i < a.size(); ++i) a[i] = angles_[i] < 0 ? -1 : (order_ - angles_[i]) % order_;
  std::vector<int> e(exponents_.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = -exponents_[i];
  return Character(q_, order_, std::move(a), std::move(e));
}

Character auxiliary_character(const std::vector<Character>& chars, bool avoid_conjugates) {
  std::vector<Character> avoid = chars;
  if (avoid_conjugates) {
    for (const auto& k : chars) avoid.push_back(k.conjugate());
  }
  for (std::int64_t q = 1;; ++q) {
    CharacterSet set = character_table(q);
    for (const auto& c : set.characters()) {
      bool clash = false;
      for (const auto& k : avoid) {
        if (c.equivalent_to(k)) {
          clash = true;
          break;
        }
      }
      if (!clash) return c;
    }
  }
}

Character character(std::int64_t q, size_t index) {
  CharacterSet set = character_table(q);
  if (index >= set.size()) throw DomainError("character index out of range");
  return set[index];
}

}  // namespace zlab
