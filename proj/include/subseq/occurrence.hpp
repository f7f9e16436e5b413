#pragma once

#include <subseq/count.hpp>
#include <subseq/word.hpp>

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace subseq
{
    /// A strictly increasing position sequence realising v inside w:
    /// v[i] == w[positions[i]] for every i.
    struct EmbeddingMap
    {
        std::vector<std::size_t> positions;

        friend auto operator<=> (const EmbeddingMap &, const EmbeddingMap &) = default;
    };

    /// M(v, w): number of embeddings of v into w. The empty word embeds once.
    auto count_occurrences(const Word & v, const Word & w) -> CountValue;

    auto is_subsequence(const Word & v, const Word & w) -> bool;
    auto is_embedding(const Word & v, const Word & w, const EmbeddingMap & f) -> bool;

    /// All embeddings in lexicographic order of position sequences, truncated at cap.
    auto enumerate_embeddings(const Word & v, const Word & w, std::size_t cap) -> std::vector<EmbeddingMap>;

    /// The last `cap` embeddings in lexicographic order, returned in decreasing order.
    auto enumerate_embeddings_from_end(const Word & v, const Word & w, std::size_t cap) -> std::vector<EmbeddingMap>;

    struct MostCommon
    {
        CountValue count;
        Word witness;
    };

    /// M(w | length) with the lexicographically smallest maximiser. Length 0 gives
    /// (1, empty); a length beyond |w| gives (0, 0^length).
    auto max_occurrences_of_length(const Word & w, std::size_t length) -> MostCommon;

    /// M(w) = max over v of M(v, w). The witness is the lexicographically smallest
    /// nonempty maximiser; the empty word is returned only for empty w.
    auto max_occurrences(const Word & w) -> MostCommon;

    /// True iff M(w) >= threshold. Stops as soon as a witness is found.
    auto reaches_occurrences(const Word & w, const CountValue & threshold) -> bool;

    /// M(w | l) with witnesses for l = 0..|w|.
    auto occurrence_profile(const Word & w) -> std::vector<MostCommon>;

    /// Sum over l = 0..|w| of M(w | l).
    auto sum_over_lengths(const Word & w) -> CountValue;

    /// Embedding counts of a prefix of v into every prefix of a fixed word w:
    /// counts()[j] is the number of embeddings into w[0, j).
    class PrefixCountState
    {
        public:
            /// State of the empty prefix: every count is 1.
            explicit PrefixCountState(const Word & w);

            auto extend(Symbol a) const -> PrefixCountState;
            auto counts() const -> std::span<const CountValue> { return _counts; }
            auto total() const -> const CountValue & { return _counts.back(); }

            /// Pointwise >=.
            auto dominates(const PrefixCountState & other) const -> bool;

        private:
            PrefixCountState(const Word * w, std::vector<CountValue> counts);

            const Word * _w;
            std::vector<CountValue> _counts;
    };
}
