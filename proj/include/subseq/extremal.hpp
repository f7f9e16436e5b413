#pragma once

#include <subseq/count.hpp>
#include <subseq/word.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace subseq
{
    enum class Method { exhaustive, verified_external };

    auto to_string(Method m) -> std::string;
    auto parse_method(const std::string & s) -> Method;

    /// M_k(n) together with a minimising word (a canonical-orbit representative).
    /// Externally verified records carry no minimiser.
    struct ExtremalRecord
    {
        unsigned k = 2;
        std::size_t n = 0;
        CountValue value;
        Word minimizer;
        Method method = Method::exhaustive;
        std::string source;
    };

    /// Largest n searched exhaustively per alphabet size.
    struct ExtremalBudget
    {
        std::map<unsigned, std::size_t> max_n = { { 2, 16 }, { 3, 9 }, { 4, 7 } };
        std::size_t other_max_n = 6;
        /// Worker threads for the orbit enumeration; 0 means hardware concurrency.
        unsigned threads = 0;

        auto max_n_for(unsigned k) const -> std::size_t;
    };

    /// Exact M_k(n) = min over w in [k]^n of M(w), enumerating one word per
    /// relabelling/reversal orbit. The minimiser is the smallest canonical key
    /// among all minimisers, independent of thread count.
    auto extremal_value(unsigned k, std::size_t n, const ExtremalBudget & budget = {}) -> ExtremalRecord;

    /// Records for n = 1..n_max.
    auto extremal_table(unsigned k, std::size_t n_max, const ExtremalBudget & budget = {}) -> std::vector<ExtremalRecord>;

    /// The real number base^(1/exponent).
    struct RootBound
    {
        CountValue base;
        std::size_t exponent = 1;
    };

    /// Order of a^(1/n1) against b^(1/n2), decided by comparing a^n2 with b^n1 exactly.
    auto cross_compare(const CountValue & a, std::size_t n1, const CountValue & b, std::size_t n2) -> std::strong_ordering;
    auto cross_compare(const RootBound & x, const RootBound & y) -> std::strong_ordering;

    /// Rigorous bracket lower <= mu_k <= upper. Decimal strings are rounded
    /// outwards: lower down, upper up.
    struct MuWindow
    {
        unsigned k = 2;
        RootBound lower, upper;
        unsigned digits = 3;
        std::string lower_decimal, upper_decimal;
    };

    /// From M_k(n), n >= 3: M_k(n)^(1/n) <= mu_k <= (n M_k(n))^(1/n).
    auto mu_window_thm1(const ExtremalRecord & record, unsigned digits = 3) -> MuWindow;

    /// Tightest window obtainable from several records: the largest lower bound and the smallest upper bound.
    auto best_window(std::span<const ExtremalRecord> records, unsigned digits = 3) -> MuWindow;

    /// For a single word w of length n: mu_k <= (sum over l of M(w | l))^(1/n).
    auto mu_upper_technical(const Word & w) -> RootBound;

    struct SubmultiplicativityReport
    {
        unsigned k = 2;
        std::size_t m = 1, n = 1;
        CountValue lhs;            ///< M_k(mn)
        CountValue coefficient;    ///< binom(mn + m - 1, m - 1)
        CountValue base;           ///< M_k(n)
        CountValue rhs;            ///< coefficient * base^m
        bool holds = false;
    };

    /// Evaluates M_k(mn) <= binom(mn + m - 1, m - 1) M_k(n)^m with both sides exact.
    auto check_submultiplicativity(unsigned k, std::size_t m, std::size_t n, const ExtremalBudget & budget = {})
        -> SubmultiplicativityReport;

    /// Literature values that were not recomputed here.
    struct Registry
    {
        std::vector<ExtremalRecord> records;

        auto find(unsigned k, std::size_t n) const -> std::optional<ExtremalRecord>;
    };

    auto parse_registry(const std::string & json_text) -> Registry;
    auto load_registry(const std::string & path) -> Registry;
}
