#pragma once

#include <cstdint>

#include "zlab/characters.hpp"
#include "zlab/precision.hpp"

namespace zlab {

// L(s, chi) for Re(s) > 1: direct summation over n <= N q with an
// Euler-Maclaurin tail per residue class, remainder folded into err_abs.
PrecisionComplex dirichlet_L(const PrecisionComplex& s, const Character& chi, int prec_bits);

// sum_{p <= P_cut} -log(1 - chi(p) p^{-s}); the prime tail beyond P_cut is
// bounded by 2 P^{1-sigma}/(sigma-1) and added to err_abs.
PrecisionComplex log_L_euler(const PrecisionComplex& s, const Character& chi, std::int64_t P_cut, int prec_bits);

struct DecompositionResult {
  PrecisionComplex value;
  // Set when p = 1 (mod q): sum over chi of chi(p) equals phi(q), not zero,
  // so the character-orthogonality step used by the rational pipeline fails.
  bool orthogonality_gap = false;
  std::int64_t p = 0;
  std::int64_t q = 0;
};

// q^s/phi(q) sum_{chi mod q} conj(chi(p)) L(s, chi), which equals zeta(s, p/q).
DecompositionResult hurwitz_char_decomposition(const PrecisionComplex& s, std::int64_t p, std::int64_t q,
                                               int prec_bits);

// sum over all chi mod q of chi(a), at the given precision.
PrecisionComplex character_sum(const CharacterSet& set, std::int64_t a, int prec_bits);

}  // namespace zlab
