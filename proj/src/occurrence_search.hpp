#pragma once

// Branch-and-bound maximisation of M(v, w) over v. Internal to the library;
// the public entry points live in occurrence.hpp.
//
// Search state: c_j = number of embeddings of the current prefix of v into
// w[0, j), j = 0..n. Appending a symbol a gives
//     c'_0 = 0,   c'_j = c'_{j-1} + [w_{j-1} == a] * c_{j-1}.
// The difference e_j = c'_j - c'_{j-1} counts embeddings ending exactly at
// position j-1, so for any continuation x
//     M(v a x, w) = sum_j e_j * M(x, w[j, n))  <=  sum_j e_j * bound(j, |x|).
// Both the update and the bound are monotone in c, which makes pointwise
// dominance between states at equal depth a sound pruning rule.

#include <subseq/word.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace subseq::detail
{
    /// Largest word length for which every count and every bound sum fits in
    /// 64 bits: counts are at most 2^n and bound sums at most n * 2^n.
    inline constexpr std::size_t native_max_length = 56;

    template <class Int>
    struct SearchResult
    {
        Int best{};
        std::vector<Symbol> witness;
        bool reached = false;
    };

    /// Bound(j, remaining) must return an upper bound on M(x, w[j, n)) over all x
    /// with |x| == remaining (fixed-length mode) or over all x (full mode, where
    /// `remaining` is passed as 0 and ignored).
    template <class Int, class Bound>
    class BranchAndBound
    {
        public:
            BranchAndBound(std::span<const Symbol> w, unsigned alphabet_size, Bound bound,
                    std::optional<std::size_t> target_length, std::optional<Int> threshold,
                    std::size_t archive_cap = 24) :
                _w(w),
                _n(w.size()),
                _k(alphabet_size),
                _bound(std::move(bound)),
                _target(target_length),
                _threshold(std::move(threshold)),
                _archive_cap(archive_cap)
            {
            }

            auto run() -> SearchResult<Int>
            {
                _result = SearchResult<Int>{};
                _stop = false;

                std::size_t max_depth = _target ? *_target : _n;
                if (_target) {
                    // smallest word of the target length, count 0 until something better appears
                    _result.witness.assign(*_target, 0);
                    if (*_target == 0) {
                        _result.best = 1;
                        _result.reached = _threshold && _result.best >= *_threshold;
                        return _result;
                    }
                    if (*_target > _n)
                        return _result;
                }

                _states.assign(max_depth + 1, std::vector<Int>(_n + 1));
                _archive.assign(max_depth + 1, {});
                _prefix.clear();
                std::fill(_states[0].begin(), _states[0].end(), Int(1));

                if (_threshold && _result.best >= *_threshold)
                    _result.reached = true;
                else if (max_depth > 0)
                    expand(0);
                return _result;
            }

        private:
            auto expand(std::size_t depth) -> void
            {
                const auto & parent = _states[depth];
                auto & child = _states[depth + 1];
                std::size_t remaining = _target ? *_target - depth - 1 : 0;
                bool leaf = _target && depth + 1 == *_target;

                for (Symbol a = 0 ; a < _k && ! _stop ; ++a) {
                    Int upper{};
                    child[0] = Int(0);
                    for (std::size_t j = 1 ; j <= _n ; ++j) {
                        if (_w[j - 1] == a) {
                            child[j] = child[j - 1] + parent[j - 1];
                            if (! leaf && parent[j - 1] != 0)
                                upper += parent[j - 1] * _bound(j, remaining);
                        }
                        else
                            child[j] = child[j - 1];
                    }

                    const Int & count = child[_n];
                    if (count == 0)
                        continue;

                    _prefix.push_back(a);

                    if (! _target || leaf) {
                        if (count > _result.best) {
                            _result.best = count;
                            _result.witness = _prefix;
                            if (_threshold && _result.best >= *_threshold) {
                                _result.reached = true;
                                _stop = true;
                            }
                        }
                    }

                    if (! leaf && ! _stop && depth + 1 < _states.size() - 1
                            && upper > _result.best && ! dominated(depth + 1)) {
                        remember(depth + 1);
                        expand(depth + 1);
                    }

                    _prefix.pop_back();
                }
            }

            auto dominated(std::size_t depth) const -> bool
            {
                const auto & s = _states[depth];
                for (const auto & other : _archive[depth]) {
                    bool below = true;
                    for (std::size_t j = 0 ; j <= _n && below ; ++j)
                        if (s[j] > other[j])
                            below = false;
                    if (below)
                        return true;
                }
                return false;
            }

            auto remember(std::size_t depth) -> void
            {
                if (_archive[depth].size() < _archive_cap)
                    _archive[depth].push_back(_states[depth]);
            }

            std::span<const Symbol> _w;
            std::size_t _n;
            unsigned _k;
            Bound _bound;
            std::optional<std::size_t> _target;
            std::optional<Int> _threshold;
            std::size_t _archive_cap;

            std::vector<std::vector<Int>> _states;
            std::vector<std::vector<std::vector<Int>>> _archive;
            std::vector<Symbol> _prefix;
            SearchResult<Int> _result;
            bool _stop = false;
    };

    /// M(w) over nonempty v, given tail[q] >= M(w[q, n)) for q = 1..n (tail[n] == 1).
    template <class Int>
    auto full_search(std::span<const Symbol> w, unsigned k, std::span<const Int> tail,
            std::optional<Int> threshold) -> SearchResult<Int>
    {
        auto bound = [tail] (std::size_t j, std::size_t) -> const Int & { return tail[j]; };
        BranchAndBound<Int, decltype(bound)> search(w, k, bound, std::nullopt, std::move(threshold));
        return search.run();
    }

    /// Suffix maxima tail[j] = M(w[j, n)) built shortest suffix first, each search
    /// bounded by the ones before it. Stops early (reached = true) as soon as some
    /// suffix, and therefore w itself, reaches the threshold.
    template <class Int>
    auto full_tail_table(std::span<const Symbol> w, unsigned k, std::optional<Int> threshold,
            std::vector<Int> & tail) -> SearchResult<Int>
    {
        std::size_t n = w.size();
        tail.assign(n + 1, Int(1));
        SearchResult<Int> top;
        top.best = Int(1);
        if (threshold && top.best >= *threshold)
            top.reached = true;
        for (std::size_t j = n ; j-- > 0 ; ) {
            auto r = full_search<Int>(w.subspan(j), k, std::span<const Int>(tail).subspan(j), threshold);
            if (r.reached)
                return r;
            tail[j] = r.best;
            if (j == 0)
                top = std::move(r);
        }
        return top;
    }

    /// table[j][r] = M(w[j, n) | r) for r = 0..n-j, plus lexicographically
    /// smallest witnesses for the full word (j == 0).
    template <class Int>
    auto length_table(std::span<const Symbol> w, unsigned k,
            std::vector<std::vector<Int>> & table, std::vector<std::vector<Symbol>> & witnesses) -> void
    {
        std::size_t n = w.size();
        table.assign(n + 1, {});
        table[n] = { Int(1) };
        witnesses.assign(n + 1, {});
        for (std::size_t j = n ; j-- > 0 ; ) {
            std::size_t len = n - j;
            table[j].assign(len + 1, Int(0));
            table[j][0] = Int(1);
            auto sub = w.subspan(j);
            for (std::size_t r = 1 ; r <= len ; ++r) {
                auto bound = [&table, j] (std::size_t q, std::size_t remaining) -> Int {
                    const auto & row = table[j + q];
                    return remaining < row.size() ? row[remaining] : Int(0);
                };
                BranchAndBound<Int, decltype(bound)> search(sub, k, bound, r, std::nullopt);
                auto res = search.run();
                table[j][r] = res.best;
                if (j == 0)
                    witnesses[r] = std::move(res.witness);
            }
        }
    }
}
