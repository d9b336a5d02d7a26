#pragma once

#include <cstdint>
#include <vector>

#include "rswan/logdiff.hpp"
#include "rswan/witt.hpp"

namespace rswan {

/// Refined Swan conductor of a character: a degree-1 form class with window
/// (n, m), n = Sw(chi), m = [n/p].
struct RswValue {
  WindowedForm value;
  Character source;
};

/// Lower end of the window. Characteristic p has e_K = infinity, so this is
/// always [n/p]; `absolute_ramification` is kept for the mixed case.
std::int64_t rsw_window_low(std::int64_t n, int p, std::int64_t absolute_ramification = -1);

/// -sum_i a_i^{p^i - 1} da_i on a reduced representative. Refuses
/// non-reduced input (NotReduced) and unramified characters.
RswValue rsw_char_p(const Character& chi);

/// Window (n, n-1).
WindowedForm rsw_leading_term(const RswValue& v);

/// The i with the class in m^{-i} but not m^{-i+1}.
std::int64_t sw_from_rsw(const RswValue& v);

/// pi^n * Rsw = sum_l a_l db_l + c dlog pi, with db_l = T_l dlog T_l.
struct RswDecomposition {
  std::vector<Series> residual;      // a_l for each residue variable T_1..T_{d-1}
  std::vector<bool> residual_unit;   // a_l is a unit of O_K
  Series c;
  bool c_unit = false;
};
RswDecomposition rsw_decompose(const RswValue& v);

}  // namespace rswan
