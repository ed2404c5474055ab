#pragma once

#include <string_view>

#include "spider/laurent.hpp"

namespace spider {

/// Coefficients of the rewriting rules and of the two crossing smoothings.
///
/// The square rule is fixed (sum of the two reconnections, unit
/// coefficients); everything else is a configuration value so an
/// alternative convention can be loaded from file. The standard set:
///
///   delta (circle)   = A^6 + 1 + A^-6
///   bigon            = A^3 + A^-3
///   positive crossing = A^2 * (oriented)  - A^-1 * (webbed)
///   negative crossing = A^-2 * (oriented) - A    * (webbed)
///
/// Any set must satisfy the kink identity
///   pos_oriented*delta + pos_web*bigon = A^8     (mirrored for negative)
/// which is what makes the writhe normalization A^(-8w) an invariant.
struct RuleSet {
    LaurentPoly delta;
    LaurentPoly bigon;
    LaurentPoly pos_oriented;
    LaurentPoly pos_web;
    LaurentPoly neg_oriented;
    LaurentPoly neg_web;

    static RuleSet standard();

    /// name = polynomial, one per line, '#' comments; unset names keep the
    /// standard value. ValidationError on unknown names; consistency is
    /// checked unless `check` is false.
    static RuleSet load(std::string_view text, bool check = true);

    /// Throws ValidationError if the kink identity fails.
    void check_consistency() const;

    const LaurentPoly& crossing_coeff(int sign, bool webbed) const {
        return sign > 0 ? (webbed ? pos_web : pos_oriented)
                        : (webbed ? neg_web : neg_oriented);
    }
};

} // namespace spider
