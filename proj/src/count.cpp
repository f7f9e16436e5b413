#include <subseq/count.hpp>
#include <subseq/errors.hpp>

namespace subseq
{
    auto to_decimal(const CountValue & c) -> std::string
    {
        return c.str();
    }

    auto parse_count(const std::string & decimal) -> CountValue
    {
        if (decimal.empty() || decimal.find_first_not_of("0123456789") != std::string::npos)
            throw ContractError("not a nonnegative decimal integer: '" + decimal + "'");
        return CountValue(decimal);
    }

    auto binomial(std::size_t n, std::size_t k) -> CountValue
    {
        if (k > n)
            return 0;
        k = std::min(k, n - k);
        CountValue result = 1;
        for (std::size_t i = 1 ; i <= k ; ++i) {
            result *= n - k + i;
            result /= i;
        }
        return result;
    }

    auto ipow(const CountValue & base, std::size_t exponent) -> CountValue
    {
        CountValue result = 1, b = base;
        while (exponent) {
            if (exponent & 1)
                result *= b;
            exponent >>= 1;
            if (exponent)
                b *= b;
        }
        return result;
    }

    auto root_decimal(const CountValue & a, std::size_t n, unsigned digits, Rounding direction) -> std::string
    {
        if (n == 0)
            throw ContractError("root of order zero");

        CountValue scale = ipow(10, digits);
        CountValue target = a * ipow(scale, n);

        // largest r with r^n <= target, by bisection on integers
        CountValue lo = 0, hi = 1;
        while (ipow(hi, n) <= target)
            hi *= 2;
        while (hi - lo > 1) {
            CountValue mid = (lo + hi) / 2;
            if (ipow(mid, n) <= target)
                lo = mid;
            else
                hi = mid;
        }
        CountValue r = lo;
        if (direction == Rounding::up && ipow(r, n) != target)
            ++r;

        std::string whole = to_decimal(r / scale);
        if (digits == 0)
            return whole;
        std::string frac = to_decimal(r % scale);
        frac.insert(0, digits - frac.size(), '0');
        return whole + "." + frac;
    }
}
