#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subseq
{
    using Symbol = std::uint32_t;

    /// A finite word over the alphabet {0, ..., k-1}.
    ///
    /// Symbols are 0-based: symbol id s corresponds to letter s+1 of the usual
    /// 1-based alphabet [k] = {1, ..., k}. Positions are 0-based as well.
    class Word
    {
        public:
            Word() = default;
            explicit Word(unsigned alphabet_size);
            Word(unsigned alphabet_size, std::vector<Symbol> symbols);

            /// 'a' -> 0, 'b' -> 1, ...; every letter must be below alphabet_size.
            static Word from_letters(std::string_view letters, unsigned alphabet_size);

            auto alphabet_size() const -> unsigned { return _alphabet_size; }
            auto size() const -> std::size_t { return _symbols.size(); }
            auto empty() const -> bool { return _symbols.empty(); }

            auto operator[] (std::size_t i) const -> Symbol { return _symbols[i]; }
            auto symbols() const -> std::span<const Symbol> { return _symbols; }
            auto begin() const { return _symbols.begin(); }
            auto end() const { return _symbols.end(); }

            auto push_back(Symbol s) -> void;

            /// Lexicographic on the symbol sequence (a proper prefix is smaller), then alphabet size.
            friend auto operator<=> (const Word &, const Word &) = default;
            friend auto operator== (const Word &, const Word &) -> bool = default;

        private:
            // member order matters for the defaulted comparison
            std::vector<Symbol> _symbols;
            unsigned _alphabet_size = 1;
    };

    /// Inclusive position range [lo, hi]; hi == lo - 1 denotes the empty range.
    struct Interval
    {
        std::ptrdiff_t lo = 0;
        std::ptrdiff_t hi = -1;

        auto length() const -> std::size_t { return static_cast<std::size_t>(hi - lo + 1); }
    };

    auto subword(const Word & w, Interval iv) -> Word;
    auto concat(const Word & w1, const Word & w2) -> Word;
    auto power(const Word & w, std::size_t copies) -> Word;
    auto reverse(const Word & w) -> Word;

    /// Relabels symbols so that first occurrences appear as 0, 1, 2, ... in order.
    auto first_occurrence_form(const Word & w) -> Word;

    /// Representative of the orbit of a word under alphabet relabelling and reversal.
    struct CanonicalKey
    {
        Word normalized;
        /// True when the representative came from the reversed word.
        bool reversed = false;

        friend auto operator== (const CanonicalKey & a, const CanonicalKey & b) -> bool
        {
            return a.normalized == b.normalized;
        }

        friend auto operator<=> (const CanonicalKey & a, const CanonicalKey & b)
        {
            return a.normalized <=> b.normalized;
        }
    };

    auto canonical_key(const Word & w) -> CanonicalKey;

    /// Letters a, b, c, ... when k <= 26, otherwise comma-separated decimal ids.
    /// The empty word is written as "-".
    auto to_text(const Word & w) -> std::string;
    auto parse_word(std::string_view text, unsigned alphabet_size) -> Word;

    auto operator<< (std::ostream &, const Word &) -> std::ostream &;

    /// Word file: a header line "alphabet k=<int>" followed by one word per line.
    struct WordFile
    {
        unsigned alphabet_size = 2;
        std::vector<Word> words;
    };

    auto read_word_file(std::istream & in) -> WordFile;
    auto read_word_file(const std::string & path) -> WordFile;
    auto write_word_file(std::ostream & out, const WordFile & file) -> void;
}
