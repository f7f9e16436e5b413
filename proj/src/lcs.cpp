#include <subseq/errors.hpp>
#include <subseq/lcs.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>

namespace subseq
{
    namespace
    {
        constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();

        auto check_alphabets(std::span<const Word> words) -> void
        {
            for (auto & w : words)
                if (w.alphabet_size() != words.front().alphabet_size())
                    throw ContractError("LCS inputs over different alphabets");
        }

        // sorted occurrence lists per symbol, for "next occurrence at or after p"
        class NextOccurrence
        {
            public:
                explicit NextOccurrence(const Word & w) :
                    _positions(w.alphabet_size())
                {
                    for (std::size_t p = 0 ; p < w.size() ; ++p)
                        _positions[w[p]].push_back(p);
                }

                auto at_or_after(Symbol s, std::size_t p) const -> std::size_t
                {
                    auto & list = _positions[s];
                    auto it = std::lower_bound(list.begin(), list.end(), p);
                    return it == list.end() ? absent : *it;
                }

                auto contains(Symbol s) const -> bool { return ! _positions[s].empty(); }

            private:
                std::vector<std::vector<std::size_t>> _positions;
        };

        auto common_symbols(std::span<const Word> words) -> std::vector<Symbol>
        {
            unsigned k = words.front().alphabet_size();
            std::vector<unsigned> seen_in(k, 0);
            for (std::size_t i = 0 ; i < words.size() ; ++i)
                for (auto s : words[i])
                    if (seen_in[s] == i)
                        seen_in[s] = i + 1;
            std::vector<Symbol> out;
            for (Symbol s = 0 ; s < k ; ++s)
                if (seen_in[s] == words.size())
                    out.push_back(s);
            return out;
        }

        // Max-Fenwick over ranks, queried on suffixes by indexing ranks in reverse.
        class SuffixMax
        {
            public:
                explicit SuffixMax(std::size_t size) : _tree(size + 1, 0) {}

                auto update(std::size_t rank, std::size_t value) -> void
                {
                    for (std::size_t i = _tree.size() - 1 - rank ; i < _tree.size() ; i += i & (~i + 1))
                        _tree[i] = std::max(_tree[i], value);
                }

                /// Max over ranks strictly greater than `rank`.
                auto above(std::size_t rank) const -> std::size_t
                {
                    std::size_t best = 0;
                    for (std::size_t i = _tree.size() - 2 - rank ; i > 0 ; i -= i & (~i + 1))
                        best = std::max(best, _tree[i]);
                    return best;
                }

            private:
                std::vector<std::size_t> _tree;
        };
    }

    auto is_permutation_word(const Word & w) -> bool
    {
        std::vector<bool> seen(w.alphabet_size(), false);
        for (auto s : w) {
            if (seen[s])
                return false;
            seen[s] = true;
        }
        return true;
    }

    auto restrict_to(const Word & w, const std::vector<bool> & keep) -> Word
    {
        std::vector<Symbol> out;
        for (auto s : w)
            if (s < keep.size() && keep[s])
                out.push_back(s);
        return Word(w.alphabet_size(), std::move(out));
    }

    auto lcs2_table(const Word & a, const Word & b) -> LcsResult
    {
        Word pair[] = { a, b };
        check_alphabets(pair);
        std::size_t n = a.size(), m = b.size();
        // suffix[i][j] = LCS(a[i, n), b[j, m))
        std::vector<std::uint32_t> suffix((n + 1) * (m + 1), 0);
        auto at = [m] (std::size_t i, std::size_t j) { return i * (m + 1) + j; };
        for (std::size_t i = n ; i-- > 0 ; )
            for (std::size_t j = m ; j-- > 0 ; )
                suffix[at(i, j)] = a[i] == b[j] ? suffix[at(i + 1, j + 1)] + 1
                    : std::max(suffix[at(i + 1, j)], suffix[at(i, j + 1)]);

        LcsResult result{ suffix[at(0, 0)], Word(a.alphabet_size()) };
        NextOccurrence next_a(a), next_b(b);
        auto symbols = common_symbols(pair);
        std::size_t i = 0, j = 0;
        for (std::size_t remaining = result.length ; remaining > 0 ; --remaining)
            for (auto s : symbols) {
                auto p = next_a.at_or_after(s, i), q = next_b.at_or_after(s, j);
                if (p != absent && q != absent && suffix[at(p + 1, q + 1)] + 1 == remaining) {
                    result.witness.push_back(s);
                    i = p + 1;
                    j = q + 1;
                    break;
                }
            }
        return result;
    }

    auto lcs2_permutations(const Word & a, const Word & b) -> LcsResult
    {
        if (a.alphabet_size() != b.alphabet_size())
            throw ContractError("LCS inputs over different alphabets");
        if (! is_permutation_word(a) || ! is_permutation_word(b))
            throw ContractError("the increasing-subsequence reduction needs permutation words");

        std::vector<std::size_t> position_in_b(a.alphabet_size(), absent);
        for (std::size_t q = 0 ; q < b.size() ; ++q)
            position_in_b[b[q]] = q;

        // a's common symbols in order, each tagged with its position in b
        std::vector<Symbol> symbols;
        std::vector<std::size_t> rank;
        for (auto s : a)
            if (position_in_b[s] != absent) {
                symbols.push_back(s);
                rank.push_back(position_in_b[s]);
            }

        // longest[i] = longest increasing run of ranks starting at i
        std::size_t count = symbols.size();
        std::vector<std::size_t> longest(count);
        SuffixMax best_after(b.size());
        std::size_t length = 0;
        for (std::size_t i = count ; i-- > 0 ; ) {
            longest[i] = 1 + best_after.above(rank[i]);
            best_after.update(rank[i], longest[i]);
            length = std::max(length, longest[i]);
        }

        LcsResult result{ length, Word(a.alphabet_size()) };
        std::size_t from = 0, min_rank = 0;
        for (std::size_t remaining = length ; remaining > 0 ; --remaining) {
            std::size_t chosen = absent;
            for (std::size_t i = from ; i < count ; ++i)
                if (longest[i] == remaining && rank[i] >= min_rank
                        && (chosen == absent || symbols[i] < symbols[chosen]))
                    chosen = i;
            result.witness.push_back(symbols[chosen]);
            from = chosen + 1;
            min_rank = rank[chosen] + 1;
        }
        return result;
    }

    auto lcs2(const Word & a, const Word & b) -> LcsResult
    {
        if (is_permutation_word(a) && is_permutation_word(b))
            return lcs2_permutations(a, b);
        return lcs2_table(a, b);
    }

    auto lcs3(const Word & a, const Word & b, const Word & c, std::size_t budget) -> LcsResult
    {
        Word triple[] = { a, b, c };
        check_alphabets(triple);
        std::size_t na = a.size() + 1, nb = b.size() + 1, nc = c.size() + 1;
        if (na * nb * nc > budget)
            throw ResourceError("lcs_cells", std::to_string(na * nb * nc) + " cells > " + std::to_string(budget));

        std::vector<std::uint16_t> suffix(na * nb * nc, 0);
        auto at = [nb, nc] (std::size_t i, std::size_t j, std::size_t l) { return (i * nb + j) * nc + l; };
        for (std::size_t i = a.size() ; i-- > 0 ; )
            for (std::size_t j = b.size() ; j-- > 0 ; )
                for (std::size_t l = c.size() ; l-- > 0 ; ) {
                    if (a[i] == b[j] && b[j] == c[l])
                        suffix[at(i, j, l)] = suffix[at(i + 1, j + 1, l + 1)] + 1;
                    else
                        suffix[at(i, j, l)] = std::max({ suffix[at(i + 1, j, l)], suffix[at(i, j + 1, l)],
                                suffix[at(i, j, l + 1)] });
                }

        LcsResult result{ suffix[at(0, 0, 0)], Word(a.alphabet_size()) };
        NextOccurrence next_a(a), next_b(b), next_c(c);
        auto symbols = common_symbols(triple);
        std::size_t i = 0, j = 0, l = 0;
        for (std::size_t remaining = result.length ; remaining > 0 ; --remaining)
            for (auto s : symbols) {
                auto p = next_a.at_or_after(s, i), q = next_b.at_or_after(s, j), r = next_c.at_or_after(s, l);
                if (p != absent && q != absent && r != absent && suffix[at(p + 1, q + 1, r + 1)] + 1u == remaining) {
                    result.witness.push_back(s);
                    i = p + 1;
                    j = q + 1;
                    l = r + 1;
                    break;
                }
            }
        return result;
    }

    auto multi_lcs_table(std::span<const Word> words, std::size_t budget) -> std::size_t
    {
        if (words.empty())
            throw ContractError("LCS of an empty family");
        check_alphabets(words);

        std::size_t dims = words.size();
        std::vector<std::size_t> stride(dims);
        std::size_t cells = 1;
        for (std::size_t c = dims ; c-- > 0 ; ) {
            stride[c] = cells;
            auto extent = words[c].size() + 1;
            if (cells > budget / extent)
                throw ResourceError("lcs_cells", "product of lengths exceeds " + std::to_string(budget));
            cells *= extent;
        }

        std::size_t diagonal = 0;
        for (auto s : stride)
            diagonal += s;

        std::vector<std::uint16_t> table(cells, 0);
        std::vector<std::size_t> pos(dims);
        for (std::size_t idx = cells ; idx-- > 0 ; ) {
            std::size_t rest = idx;
            bool boundary = false;
            for (std::size_t c = 0 ; c < dims ; ++c) {
                pos[c] = rest / stride[c];
                rest %= stride[c];
                boundary = boundary || pos[c] == words[c].size();
            }
            if (boundary)
                continue;
            bool match = true;
            for (std::size_t c = 1 ; c < dims && match ; ++c)
                match = words[c][pos[c]] == words[0][pos[0]];
            if (match)
                table[idx] = table[idx + diagonal] + 1;
            else {
                std::uint16_t best = 0;
                for (std::size_t c = 0 ; c < dims ; ++c)
                    best = std::max(best, table[idx + stride[c]]);
                table[idx] = best;
            }
        }
        return table[0];
    }

    auto multi_lcs_permutations(std::span<const Word> words) -> std::size_t
    {
        if (words.empty())
            throw ContractError("LCS of an empty family");
        check_alphabets(words);
        for (auto & w : words)
            if (! is_permutation_word(w))
                throw ContractError("the chain formulation needs permutation words");

        auto symbols = common_symbols(words);
        std::size_t dims = words.size(), count = symbols.size();
        std::vector<std::size_t> where(words.front().alphabet_size());
        // coordinates[x * dims + c] = position of the x-th common symbol in words[c]
        std::vector<std::size_t> coordinates(count * dims);
        for (std::size_t c = 0 ; c < dims ; ++c) {
            for (std::size_t p = 0 ; p < words[c].size() ; ++p)
                where[words[c][p]] = p;
            for (std::size_t x = 0 ; x < count ; ++x)
                coordinates[x * dims + c] = where[symbols[x]];
        }

        std::vector<std::size_t> order(count);
        for (std::size_t x = 0 ; x < count ; ++x)
            order[x] = x;
        std::sort(order.begin(), order.end(), [&] (std::size_t x, std::size_t y) {
                return coordinates[x * dims] < coordinates[y * dims]; });

        std::vector<std::size_t> chain(count, 1);
        std::size_t best = 0;
        for (std::size_t i = 0 ; i < count ; ++i) {
            auto x = order[i];
            for (std::size_t j = 0 ; j < i ; ++j) {
                auto y = order[j];
                if (chain[j] + 1 <= chain[i])
                    continue;
                bool below = true;
                for (std::size_t c = 1 ; c < dims && below ; ++c)
                    below = coordinates[y * dims + c] < coordinates[x * dims + c];
                if (below)
                    chain[i] = chain[j] + 1;
            }
            best = std::max(best, chain[i]);
        }
        return best;
    }

    auto multi_lcs(std::span<const Word> words, std::size_t budget) -> std::size_t
    {
        if (words.empty())
            throw ContractError("LCS of an empty family");
        if (std::all_of(words.begin(), words.end(), is_permutation_word))
            return multi_lcs_permutations(words);
        return multi_lcs_table(words, budget);
    }

    auto check_triple_product(const Word & p1, const Word & p2, const Word & p3) -> TripleProductReport
    {
        for (auto * p : { &p1, &p2, &p3 })
            if (! is_permutation_word(*p) || p->alphabet_size() != p1.alphabet_size())
                throw ContractError("triple product check needs permutation words");
        auto support = [] (const Word & w) {
            std::vector<Symbol> s(w.begin(), w.end());
            std::sort(s.begin(), s.end());
            return s;
        };
        if (support(p1) != support(p2) || support(p1) != support(p3))
            throw ContractError("triple product check needs permutations of one common set");

        TripleProductReport report;
        report.support = p1.size();
        report.lcs12 = lcs2(p1, p2).length;
        report.lcs13 = lcs2(p1, p3).length;
        report.lcs23 = lcs2(p2, p3).length;
        report.product = report.lcs12 * report.lcs13 * report.lcs23;
        report.holds = report.product >= report.support;
        return report;
    }
}
