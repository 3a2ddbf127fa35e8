/* textio.hpp
 *
 * Text formats: polynomials as signed terms "+c*a1^2*a3 ...", graphs as
 * "u v" edge lines.  The polynomial printer emits terms in the fixed
 * monomial order (leading first) so files diff cleanly.
 */
#pragma once

#include <string>
#include <vector>

#include "feynred/poly.hpp"

namespace feynred {

std::string poly_to_text(const Poly& p);
Poly poly_from_text(const std::string& s);

// Edge list "u v" per line; '#' starts a comment.  two_digit_tokens accepts
// lines of compact tokens like "34 14 13" (or comma separated) where each
// token names the two endpoint digits of one edge.
std::vector<std::pair<int, int>> parse_edge_list(const std::string& text,
                                                 bool two_digit_tokens = false);

}  // namespace feynred
