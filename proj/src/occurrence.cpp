#include <subseq/occurrence.hpp>
#include <subseq/errors.hpp>

#include "occurrence_search.hpp"

#include <algorithm>

namespace subseq
{
    namespace
    {
        auto check_alphabets(const Word & v, const Word & w) -> void
        {
            if (v.alphabet_size() != w.alphabet_size())
                throw ContractError("words over different alphabets");
        }

        template <class Int>
        auto count_dp(const Word & v, const Word & w) -> Int
        {
            // table[i] = embeddings of v[0, i) into the part of w scanned so far
            std::vector<Int> table(v.size() + 1, Int(0));
            table[0] = Int(1);
            for (auto symbol : w)
                for (std::size_t i = v.size() ; i > 0 ; --i)
                    if (v[i - 1] == symbol)
                        table[i] += table[i - 1];
            return table[v.size()];
        }

        auto to_count(std::uint64_t x) -> CountValue
        {
            return CountValue(x);
        }

        auto to_count(const CountValue & x) -> const CountValue &
        {
            return x;
        }

        template <class Int>
        auto most_common(const Word & w) -> MostCommon
        {
            std::vector<Int> tail;
            auto r = detail::full_tail_table<Int>(w.symbols(), w.alphabet_size(), std::nullopt, tail);
            return MostCommon{ to_count(r.best), Word(w.alphabet_size(), std::move(r.witness)) };
        }

        template <class Int>
        auto reaches(const Word & w, const Int & threshold) -> bool
        {
            std::vector<Int> tail;
            return detail::full_tail_table<Int>(w.symbols(), w.alphabet_size(), threshold, tail).reached;
        }

        template <class Int>
        auto profile(const Word & w) -> std::vector<MostCommon>
        {
            std::vector<std::vector<Int>> table;
            std::vector<std::vector<Symbol>> witnesses;
            detail::length_table<Int>(w.symbols(), w.alphabet_size(), table, witnesses);
            std::vector<MostCommon> out;
            for (std::size_t l = 0 ; l <= w.size() ; ++l)
                out.push_back(MostCommon{ to_count(table[0][l]), Word(w.alphabet_size(), std::move(witnesses[l])) });
            return out;
        }

        // positions of every symbol, for the enumerators
        auto occurrences_by_symbol(const Word & w) -> std::vector<std::vector<std::size_t>>
        {
            std::vector<std::vector<std::size_t>> by_symbol(w.alphabet_size());
            for (std::size_t p = 0 ; p < w.size() ; ++p)
                by_symbol[w[p]].push_back(p);
            return by_symbol;
        }
    }

    auto count_occurrences(const Word & v, const Word & w) -> CountValue
    {
        check_alphabets(v, w);
        if (w.size() < 64)
            return CountValue(count_dp<std::uint64_t>(v, w));
        return count_dp<CountValue>(v, w);
    }

    auto is_subsequence(const Word & v, const Word & w) -> bool
    {
        check_alphabets(v, w);
        std::size_t i = 0;
        for (auto symbol : w)
            if (i < v.size() && v[i] == symbol)
                ++i;
        return i == v.size();
    }

    auto is_embedding(const Word & v, const Word & w, const EmbeddingMap & f) -> bool
    {
        if (v.alphabet_size() != w.alphabet_size() || f.positions.size() != v.size())
            return false;
        for (std::size_t i = 0 ; i < v.size() ; ++i) {
            if (f.positions[i] >= w.size() || w[f.positions[i]] != v[i])
                return false;
            if (i > 0 && f.positions[i] <= f.positions[i - 1])
                return false;
        }
        return true;
    }

    auto enumerate_embeddings(const Word & v, const Word & w, std::size_t cap) -> std::vector<EmbeddingMap>
    {
        check_alphabets(v, w);
        std::vector<EmbeddingMap> out;
        if (cap == 0)
            return out;
        std::size_t m = v.size();
        if (m == 0) {
            out.push_back(EmbeddingMap{});
            return out;
        }

        // latest[i]: the largest position v[i] can take in an embedding of v[i, m)
        std::vector<std::ptrdiff_t> latest(m);
        std::ptrdiff_t p = static_cast<std::ptrdiff_t>(w.size());
        for (std::size_t i = m ; i-- > 0 ; ) {
            do
                --p;
            while (p >= 0 && w[p] != v[i]);
            if (p < 0)
                return out;
            latest[i] = p;
        }

        auto by_symbol = occurrences_by_symbol(w);
        std::vector<std::size_t> cursor(m), positions(m);
        std::size_t i = 0;
        std::size_t lower = 0;
        auto first_from = [&] (std::size_t depth, std::size_t from) {
            auto & list = by_symbol[v[depth]];
            return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), from) - list.begin());
        };
        cursor[0] = first_from(0, 0);
        while (true) {
            auto & list = by_symbol[v[i]];
            if (cursor[i] < list.size() && static_cast<std::ptrdiff_t>(list[cursor[i]]) <= latest[i]) {
                positions[i] = list[cursor[i]];
                if (i + 1 == m) {
                    out.push_back(EmbeddingMap{ positions });
                    if (out.size() == cap)
                        return out;
                    ++cursor[i];
                }
                else {
                    lower = positions[i] + 1;
                    ++i;
                    cursor[i] = first_from(i, lower);
                }
            }
            else {
                if (i == 0)
                    return out;
                --i;
                ++cursor[i];
            }
        }
    }

    auto enumerate_embeddings_from_end(const Word & v, const Word & w, std::size_t cap) -> std::vector<EmbeddingMap>
    {
        auto reversed = enumerate_embeddings(reverse(v), reverse(w), cap);
        for (auto & f : reversed) {
            std::reverse(f.positions.begin(), f.positions.end());
            for (auto & p : f.positions)
                p = w.size() - 1 - p;
        }
        return reversed;
    }

    auto max_occurrences_of_length(const Word & w, std::size_t length) -> MostCommon
    {
        if (length == 0)
            return MostCommon{ 1, Word(w.alphabet_size()) };
        if (length > w.size())
            return MostCommon{ 0, Word(w.alphabet_size(), std::vector<Symbol>(length, 0)) };
        auto table = occurrence_profile(w);
        return std::move(table[length]);
    }

    auto max_occurrences(const Word & w) -> MostCommon
    {
        if (w.size() <= detail::native_max_length)
            return most_common<std::uint64_t>(w);
        return most_common<CountValue>(w);
    }

    auto reaches_occurrences(const Word & w, const CountValue & threshold) -> bool
    {
        if (threshold <= 1)
            return true;
        if (w.size() <= detail::native_max_length) {
            // M(w) <= 2^n < threshold needs no search
            if (threshold > (CountValue(1) << w.size()))
                return false;
            return reaches<std::uint64_t>(w, threshold.convert_to<std::uint64_t>());
        }
        return reaches<CountValue>(w, threshold);
    }

    auto occurrence_profile(const Word & w) -> std::vector<MostCommon>
    {
        if (w.size() <= detail::native_max_length)
            return profile<std::uint64_t>(w);
        return profile<CountValue>(w);
    }

    auto sum_over_lengths(const Word & w) -> CountValue
    {
        CountValue total = 0;
        for (auto & entry : occurrence_profile(w))
            total += entry.count;
        return total;
    }

    PrefixCountState::PrefixCountState(const Word & w) :
        _w(&w),
        _counts(w.size() + 1, CountValue(1))
    {
    }

    PrefixCountState::PrefixCountState(const Word * w, std::vector<CountValue> counts) :
        _w(w),
        _counts(std::move(counts))
    {
    }

    auto PrefixCountState::extend(Symbol a) const -> PrefixCountState
    {
        std::vector<CountValue> next(_counts.size());
        next[0] = 0;
        for (std::size_t j = 1 ; j < next.size() ; ++j)
            next[j] = next[j - 1] + ((*_w)[j - 1] == a ? _counts[j - 1] : CountValue(0));
        return PrefixCountState(_w, std::move(next));
    }

    auto PrefixCountState::dominates(const PrefixCountState & other) const -> bool
    {
        if (other._counts.size() != _counts.size())
            throw ContractError("comparing states over different words");
        for (std::size_t j = 0 ; j < _counts.size() ; ++j)
            if (_counts[j] < other._counts[j])
                return false;
        return true;
    }
}
