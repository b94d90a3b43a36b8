#pragma once

#include <string_view>

#include "cardvote/mechanisms.hpp"

namespace cardvote {

/// Builds a mechanism from the textual form used by the CLI:
///
///   rv | jstar | j1:<q> | j2:<q> | const:<j> | sym:<spec>
///   mix:<w1>*<spec1>+<w2>*<spec2>+...
///
/// Weights are exact rationals ("1/3", "0.5"). A mix nested inside another
/// mix term must be parenthesised. `m` and `n` size the jstar and sym
/// constructions. Throws ParseError naming the offending token.
Mechanism parse_mechanism(std::string_view spec, int m, int n);

}  // namespace cardvote
