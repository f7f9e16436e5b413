#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>

namespace subseq
{
    /// Exact nonnegative occurrence count. Counts overflow 64 bits quickly, so
    /// everything user-facing is arbitrary precision.
    using CountValue = boost::multiprecision::cpp_int;

    auto to_decimal(const CountValue & c) -> std::string;
    auto parse_count(const std::string & decimal) -> CountValue;

    auto binomial(std::size_t n, std::size_t k) -> CountValue;
    auto ipow(const CountValue & base, std::size_t exponent) -> CountValue;

    enum class Rounding { down, up };

    /// Decimal rendering of a^(1/n) with `digits` fractional digits, rounded in the
    /// given direction. Computed exactly: the result r satisfies r^n <= a (down) or
    /// r^n >= a (up) with r a multiple of 10^-digits.
    auto root_decimal(const CountValue & a, std::size_t n, unsigned digits, Rounding direction) -> std::string;
}
