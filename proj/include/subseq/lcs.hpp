#pragma once

#include <subseq/word.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace subseq
{
    /// Default cap on dynamic-programming table cells for the multi-sequence LCS.
    inline constexpr std::size_t default_lcs_budget = 100'000'000;

    struct LcsResult
    {
        std::size_t length = 0;
        /// Lexicographically smallest common subsequence of maximum length.
        Word witness;
    };

    /// True when no symbol repeats.
    auto is_permutation_word(const Word & w) -> bool;

    /// Pairwise LCS. Permutation inputs go through the longest-increasing-subsequence
    /// reduction, anything else through the quadratic table.
    auto lcs2(const Word & a, const Word & b) -> LcsResult;
    auto lcs2_table(const Word & a, const Word & b) -> LcsResult;
    auto lcs2_permutations(const Word & a, const Word & b) -> LcsResult;

    /// Three-way LCS by the cubic table; throws ResourceError beyond `budget` cells.
    auto lcs3(const Word & a, const Word & b, const Word & c, std::size_t budget = default_lcs_budget) -> LcsResult;

    /// LCS length of any number of words. Uses the chain formulation when every
    /// input is a permutation word, the product-space table otherwise.
    auto multi_lcs(std::span<const Word> words, std::size_t budget = default_lcs_budget) -> std::size_t;

    /// Product-space dynamic programme over all position tuples.
    auto multi_lcs_table(std::span<const Word> words, std::size_t budget = default_lcs_budget) -> std::size_t;

    /// Longest chain of common symbols increasing in every input; inputs must be permutation words.
    auto multi_lcs_permutations(std::span<const Word> words) -> std::size_t;

    /// Keeps only the symbols of w that belong to `keep` (indexed by symbol id).
    auto restrict_to(const Word & w, const std::vector<bool> & keep) -> Word;

    struct TripleProductReport
    {
        std::size_t support = 0;
        std::size_t lcs12 = 0, lcs13 = 0, lcs23 = 0;
        std::size_t product = 0;
        bool holds = false;
    };

    /// For three permutations of one symbol set: LCS12 * LCS13 * LCS23 >= |support|.
    auto check_triple_product(const Word & p1, const Word & p2, const Word & p3) -> TripleProductReport;
}
