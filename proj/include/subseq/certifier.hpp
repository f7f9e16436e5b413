#pragma once

// Lower-bound certificates for M(w): a witness v together with a bound that
// follows from block structure, checked by recounting M(v, w) from scratch.

#include <subseq/count.hpp>
#include <subseq/lcs.hpp>
#include <subseq/word.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace subseq
{
    struct BlockDecomposition
    {
        Word word;
        std::size_t blocks = 0;
        std::size_t block_length = 0;
        /// Trailing symbols not covered by any block.
        std::size_t remainder = 0;
        std::vector<Word> parts;
        /// permutation[i - 1]: block i has no repeated symbol.
        std::vector<bool> permutation;
        /// 1-based indices of the permutation blocks.
        std::vector<std::size_t> permutation_blocks;

        /// Block i, 1-based.
        auto block(std::size_t i) const -> const Word &;
    };

    /// Splits the first blocks * floor(|w| / blocks) symbols into equal consecutive blocks.
    auto decompose(const Word & w, std::size_t blocks) -> BlockDecomposition;

    /// Block layout for parameter r: k = 2^r - (2^r mod r^2), 2r^2 + 5r blocks of length k / r^2.
    struct BlockParameters
    {
        unsigned r = 0;
        std::size_t k = 0;
        std::size_t blocks = 0;
        std::size_t block_length = 0;
    };

    auto block_parameters(unsigned r) -> BlockParameters;

    struct CertificateStep
    {
        /// "repeated-letter", "split", "concatenation", "chunk-product" or "trivial".
        std::string rule;
        /// Facts the step relies on.
        std::vector<std::string> refs;
        /// 1-based blocks (or chunks, for chunk-product) involved.
        std::vector<std::size_t> blocks;
        std::string note;
    };

    struct Certificate
    {
        Word witness;
        CountValue claimed = 1;
        /// count_occurrences(witness, word), computed independently of the claim.
        CountValue verified = 0;
        std::vector<CertificateStep> steps;
        /// Informational only: product of alpha*beta*gamma over the triples used, and the
        /// exponent 2r+1 under which it bounds a power of M(w). Zero when no triples were used.
        CountValue triple_product = 0;
        std::size_t implied_exponent = 0;

        auto sound() const -> bool { return verified >= claimed; }
    };

    /// One repeated letter per non-permutation block, 2^(number of such blocks).
    /// Empty when every block is a permutation.
    auto duplicate_letter_certificate(const BlockDecomposition & bd) -> std::optional<Certificate>;

    struct TripleFinding
    {
        /// 1-based block indices i < j < l.
        std::size_t i = 0, j = 0, l = 0;
        std::size_t common = 0;
        /// Pairwise LCS of the blocks restricted to their common symbols: (i,j), (i,l), (j,l).
        std::size_t alpha = 0, beta = 0, gamma = 0;
        TripleProductReport product;
    };

    /// Triple of permutation blocks (among `candidates`, or all of them) sharing the
    /// most symbols; ties go to the lexicographically smallest (i, j, l).
    auto best_triple(const BlockDecomposition & bd) -> std::optional<TripleFinding>;
    auto best_triple(const BlockDecomposition & bd, const std::vector<std::size_t> & candidates) -> std::optional<TripleFinding>;

    struct TripleFamily
    {
        /// Sorted by middle index.
        std::vector<TripleFinding> triples;
        /// Fewer triples than requested were available.
        bool short_of_request = false;
    };

    /// Repeatedly takes the best triple and removes its blocks.
    auto disjoint_triples(const BlockDecomposition & bd, std::size_t count) -> TripleFamily;

    /// x = LCS(block i, block j) occurs at least |x| + 1 times: a prefix of x in block i, the rest in block j.
    auto lcs_pair_certificate(const BlockDecomposition & bd, std::size_t i, std::size_t j) -> Certificate;

    /// Best of the split bounds on (j_1, l_1), (i_r, j_r), every (i_m, l_m), and the
    /// products of (i_m, j_m) with (j_{m+1}, l_{m+1}). Falls back to the best pair of
    /// permutation blocks when there are no triples.
    auto chained_certificate(const BlockDecomposition & bd, const std::vector<TripleFinding> & triples) -> Certificate;

    /// Block counts tried per chunk by certify_word.
    inline const std::vector<std::size_t> default_block_counts = { 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64 };

    /// Cuts w into consecutive chunks of `chunk` symbols (the last may be shorter),
    /// certifies each with the best block count, and multiplies across chunks.
    auto certify_word(const Word & w, std::size_t chunk,
            const std::vector<std::size_t> & block_counts = default_block_counts) -> Certificate;
}
