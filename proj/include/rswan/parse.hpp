#pragma once

#include <string>

#include "rswan/series.hpp"

namespace rswan {

/// Parses a series literal:
///   expr   := term ('+' term)*
///   term   := factor ('*' factor)*
///   factor := coeff | var | var '^' int
///   coeff  := int | 'g' | 'g' '^' int
/// `g` is the generator of F_q; integers are reduced into the coefficient
/// ring. The result lives at `level` (default: the tower dimension) and
/// only the first `level` variables may appear.
Series parse_series(const std::string& text, const RingPtr& ring, int level = -1);

/// Canonical literal: terms by ascending exponent of the outermost variable,
/// then inner variables; variables printed in tower order. Coefficients of
/// F_q are split along the basis 1, g, ..., g^{k-1}. Only known terms are
/// printed.
std::string render_series(const Series& x);

}  // namespace rswan
