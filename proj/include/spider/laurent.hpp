#pragma once

#include <map>
#include <string>
#include <string_view>

#include "spider/bigint.hpp"

namespace spider {

/// Laurent polynomial in one variable over the integers, exact.
///
/// The variable is anonymous; 'A' or 'a' is chosen at formatting time only.
/// Invariant: no stored coefficient is zero.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(BigInt coeff, int exp);
    static LaurentPoly monomial(long long coeff, int exp) {
        return monomial(BigInt(coeff), exp);
    }
    static LaurentPoly one() { return monomial(1, 0); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::map<int, BigInt>& terms() const { return terms_; }

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    bool operator<(const LaurentPoly& o) const;

    /// max exponent - min exponent. DomainError on the zero polynomial.
    int span() const;
    int min_exp() const;
    int max_exp() const;

    /// A -> A^-1 (negates every exponent).
    LaurentPoly substitute_inverse() const;

    /// Multiply by A^shift.
    LaurentPoly shifted(int shift) const;

    /// p^k for k >= 0.
    LaurentPoly pow(int k) const;

    /// Terms by strictly descending exponent, explicit signs, "A^-6" style.
    std::string format(char variable = 'A') const;

    /// Grammar: term (('+'|'-') term)*, term = [int]['*']['A'|'a']['^' int].
    /// Whitespace is ignored. ParseError carries the offending position.
    static LaurentPoly parse(std::string_view text);

private:
    std::map<int, BigInt> terms_;
};

} // namespace spider
