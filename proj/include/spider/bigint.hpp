#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spider {

/// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
///
/// State sums add up to 2^16 monomial contributions and reduction factors
/// multiply on top of that, so coefficients are kept exact with no width
/// ceiling. Only the ring operations needed by LaurentPoly are provided.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(std::string_view text);
    std::string to_string() const;

    bool is_zero() const { return mag_.empty(); }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    bool operator==(const BigInt& o) const { return sign_ == o.sign_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;

private:
    int sign_ = 0;                  // -1, 0, +1; zero iff mag_ empty
    std::vector<std::uint32_t> mag_; // little-endian, no trailing zero limb

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
};

} // namespace spider
