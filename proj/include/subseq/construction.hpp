#pragma once

// Signed-lexicographic permutations of [t]^r and the periodic block word built
// from eight fixed sign vectors.
//
// Tuple symbols have coordinates in 1..t. They pack into symbol ids by mixed
// radix with coordinate 1 most significant (digit = coordinate - 1), so the
// all-plus permutation lists symbol ids in ascending order.

#include <subseq/lcs.hpp>
#include <subseq/word.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subseq
{
    /// Cap on the alphabet size t^r and on the length of a construction word.
    inline constexpr std::size_t default_construction_budget = 100'000'000;

    struct SignVector
    {
        /// Each entry is +1 or -1.
        std::vector<int> entries;

        auto size() const -> std::size_t { return entries.size(); }
        auto operator[](std::size_t i) const -> int { return entries[i]; }

        /// Entries from 1-based coordinate `from` to the end.
        auto suffix(std::size_t from) const -> SignVector;

        auto operator<=>(const SignVector &) const = default;
    };

    /// Parses "+-+-" (ASCII or U+2212 minus).
    auto parse_sign_vector(std::string_view text) -> SignVector;
    auto to_string(const SignVector & u) -> std::string;

    struct TupleSymbol
    {
        /// Coordinates in 1..t.
        std::vector<unsigned> coordinates;

        auto operator<=>(const TupleSymbol &) const = default;
    };

    /// Number of tuple symbols t^r; throws ResourceError beyond `budget`.
    auto tuple_alphabet_size(unsigned t, std::size_t r, std::size_t budget = default_construction_budget) -> std::size_t;
    auto pack(const TupleSymbol & a, unsigned t) -> Symbol;
    auto unpack(Symbol s, unsigned t, std::size_t r) -> TupleSymbol;

    /// (u_1 a_1, ..., u_r a_r).
    auto signed_key(const SignVector & u, const TupleSymbol & a) -> std::vector<int>;

    /// All of [t]^r sorted by signed key, as a word over t^r symbols.
    auto build_permutation(const SignVector & u, unsigned t, std::size_t budget = default_construction_budget) -> Word;

    /// The eight fixed vectors of length 8, u^(1)..u^(8).
    auto reference_sign_vectors() -> std::vector<SignVector>;

    /// Maps a 1-based block index onto 1..8 by ((i - 1) mod 8) + 1.
    auto periodic_index(std::size_t i) -> std::size_t;

    /// 1-based coordinates on which every vector of U carries the same sign.
    auto agreement_set(std::span<const SignVector> family) -> std::vector<std::size_t>;

    /// One tested statement: the worst value found over its instances against the allowed limit.
    struct PropertyCheck
    {
        std::string name;
        /// "periodic" (indices wrap across periods) or "within-period"; empty when the readings coincide.
        std::string reading;
        std::string statement;
        std::size_t instances = 0;
        std::size_t worst = 0;
        std::size_t limit = 0;
        /// For equality statements worst must also be at least this.
        std::size_t floor = 0;
        bool holds = true;
        /// First failing instance, 1-based indices.
        std::vector<std::size_t> counterexample;
    };

    struct PropertyReport
    {
        std::vector<PropertyCheck> checks;
        /// Statements not evaluated because a budget would be exceeded.
        std::vector<std::string> skipped;

        auto all_hold() const -> bool;
    };

    /// Agreement-count form of properties (a)-(h) for a period-8 family of
    /// vectors of length 8, with indices taken over two periods.
    auto verify_sign_properties(std::span<const SignVector> vectors) -> PropertyReport;

    struct ConstructionWord
    {
        unsigned t = 2;
        std::size_t r = 8;
        std::size_t blocks = 0;
        /// t^r, the length of every block.
        std::size_t block_length = 0;
        Word word;

        /// Block i (1-based).
        auto block(std::size_t i) const -> Word;
    };

    /// pi(u^(1)) pi(u^(2)) ... over `blocks` blocks, cycling with period 8.
    auto build_construction_word(unsigned t, std::size_t blocks, std::size_t budget = default_construction_budget) -> ConstructionWord;

    struct IntermediateReport
    {
        std::vector<std::size_t> agreement;
        std::size_t expected = 0;
        std::size_t lcs = 0;
        bool holds = false;
    };

    /// LCS of {pi(u) : u in U} by the product-space table, compared with t^|J|.
    auto verify_lemma_intermediate(unsigned t, std::span<const SignVector> family,
            std::size_t budget = default_lcs_budget) -> IntermediateReport;

    struct LemmaSweep
    {
        unsigned t = 2;
        std::size_t r = 1;
        std::size_t max_family = 0;
        std::size_t families = 0;
        std::size_t failures = 0;
        /// First failing family and its report.
        std::vector<SignVector> failing_family;
        std::optional<IntermediateReport> failure;
    };

    /// verify_lemma_intermediate on every nonempty family of distinct sign
    /// vectors of length r with at most max_family members.
    auto sweep_lemma_intermediate(unsigned t, std::size_t r, std::size_t max_family,
            std::size_t budget = default_lcs_budget) -> LemmaSweep;

    /// LCS form of properties (a)-(h) for the permutations of the reference
    /// vectors. Three-way statements use the cubic table and are skipped when it
    /// exceeds `budget`; prefix-class statements take the maximum over classes of
    /// the pairwise LCS restricted to one class.
    auto verify_permutation_properties(unsigned t, std::size_t budget = default_lcs_budget,
            unsigned threads = 0) -> PropertyReport;
}
