#include <subseq/certifier.hpp>
#include <subseq/errors.hpp>
#include <subseq/occurrence.hpp>

#include <algorithm>

namespace subseq
{
    namespace
    {
        auto split_step(std::size_t i, std::size_t j, std::size_t length) -> CertificateStep
        {
            return CertificateStep{ "split", { "prefix/suffix split of a common subsequence" }, { i, j },
                "common subsequence of length " + std::to_string(length) + " gives "
                    + std::to_string(length + 1) + " embeddings" };
        }

        auto membership(const Word & w) -> std::vector<bool>
        {
            std::vector<bool> in(w.alphabet_size(), false);
            for (auto s : w)
                in[s] = true;
            return in;
        }

        auto recount(Certificate & c, const Word & w) -> Certificate &
        {
            c.verified = count_occurrences(c.witness, w);
            return c;
        }
    }

    auto BlockDecomposition::block(std::size_t i) const -> const Word &
    {
        if (i < 1 || i > blocks)
            throw RangeError("block index out of range");
        return parts[i - 1];
    }

    auto decompose(const Word & w, std::size_t blocks) -> BlockDecomposition
    {
        if (blocks < 1)
            throw ContractError("need at least one block");
        if (blocks > w.size())
            throw ContractError("more blocks than symbols");
        BlockDecomposition bd;
        bd.word = w;
        bd.blocks = blocks;
        bd.block_length = w.size() / blocks;
        bd.remainder = w.size() - blocks * bd.block_length;
        for (std::size_t i = 0 ; i < blocks ; ++i) {
            auto lo = static_cast<std::ptrdiff_t>(i * bd.block_length);
            bd.parts.push_back(subword(w, Interval{ lo, lo + static_cast<std::ptrdiff_t>(bd.block_length) - 1 }));
            bd.permutation.push_back(is_permutation_word(bd.parts.back()));
            if (bd.permutation.back())
                bd.permutation_blocks.push_back(i + 1);
        }
        return bd;
    }

    auto block_parameters(unsigned r) -> BlockParameters
    {
        if (r < 1 || r > 40)
            throw ContractError("r must lie in 1..40");
        BlockParameters p;
        p.r = r;
        std::size_t two_r = std::size_t(1) << r;
        p.k = two_r - two_r % (std::size_t(r) * r);
        p.blocks = 2 * std::size_t(r) * r + 5 * std::size_t(r);
        p.block_length = p.k / (std::size_t(r) * r);
        return p;
    }

    auto duplicate_letter_certificate(const BlockDecomposition & bd) -> std::optional<Certificate>
    {
        Certificate c;
        c.witness = Word(bd.word.alphabet_size());
        std::vector<std::size_t> used;
        for (std::size_t i = 1 ; i <= bd.blocks ; ++i) {
            if (bd.permutation[i - 1])
                continue;
            std::vector<unsigned> seen(bd.word.alphabet_size(), 0);
            for (auto s : bd.block(i))
                ++seen[s];
            auto letter = static_cast<Symbol>(std::find_if(seen.begin(), seen.end(), [] (unsigned n) { return n >= 2; }) - seen.begin());
            c.witness.push_back(letter);
            c.claimed *= 2;
            used.push_back(i);
            c.steps.push_back(CertificateStep{ "repeated-letter", { "a letter twice in a block occurs twice" }, { i }, "" });
        }
        if (used.empty())
            return std::nullopt;
        if (used.size() > 1)
            c.steps.push_back(CertificateStep{ "concatenation", { "counts multiply across consecutive factors" }, used, "" });
        return recount(c, bd.word);
    }

    auto best_triple(const BlockDecomposition & bd) -> std::optional<TripleFinding>
    {
        return best_triple(bd, bd.permutation_blocks);
    }

    auto best_triple(const BlockDecomposition & bd, const std::vector<std::size_t> & candidates) -> std::optional<TripleFinding>
    {
        if (candidates.size() < 3)
            return std::nullopt;
        for (auto i : candidates)
            if (bd.block(i).empty() || ! bd.permutation[i - 1])
                throw ContractError("triples are formed from permutation blocks only");

        std::vector<std::vector<bool>> in;
        for (auto i : candidates)
            in.push_back(membership(bd.block(i)));

        std::optional<TripleFinding> best;
        std::size_t n = candidates.size();
        for (std::size_t a = 0 ; a < n ; ++a)
            for (std::size_t b = a + 1 ; b < n ; ++b)
                for (std::size_t c = b + 1 ; c < n ; ++c) {
                    std::size_t common = 0;
                    for (auto s : bd.block(candidates[a]))
                        common += in[b][s] && in[c][s];
                    if (! best || common > best->common) {
                        best = TripleFinding{};
                        best->i = candidates[a];
                        best->j = candidates[b];
                        best->l = candidates[c];
                        best->common = common;
                    }
                }

        auto & t = *best;
        std::vector<bool> keep(bd.word.alphabet_size(), false);
        auto in_j = membership(bd.block(t.j)), in_l = membership(bd.block(t.l));
        for (auto s : bd.block(t.i))
            keep[s] = in_j[s] && in_l[s];
        auto ri = restrict_to(bd.block(t.i), keep), rj = restrict_to(bd.block(t.j), keep), rl = restrict_to(bd.block(t.l), keep);
        t.product = check_triple_product(ri, rj, rl);
        t.alpha = t.product.lcs12;
        t.beta = t.product.lcs13;
        t.gamma = t.product.lcs23;
        return best;
    }

    auto disjoint_triples(const BlockDecomposition & bd, std::size_t count) -> TripleFamily
    {
        TripleFamily family;
        auto remaining = bd.permutation_blocks;
        while (family.triples.size() < count) {
            auto t = best_triple(bd, remaining);
            if (! t) {
                family.short_of_request = true;
                break;
            }
            std::erase_if(remaining, [&] (std::size_t x) { return x == t->i || x == t->j || x == t->l; });
            family.triples.push_back(*t);
        }
        std::sort(family.triples.begin(), family.triples.end(),
                [] (const TripleFinding & a, const TripleFinding & b) { return a.j < b.j; });
        return family;
    }

    auto lcs_pair_certificate(const BlockDecomposition & bd, std::size_t i, std::size_t j) -> Certificate
    {
        if (i >= j)
            throw ContractError("pair certificate needs i < j");
        auto x = lcs2(bd.block(i), bd.block(j));
        Certificate c;
        c.witness = x.witness;
        c.claimed = CountValue(x.length + 1);
        c.steps.push_back(split_step(i, j, x.length));
        return recount(c, bd.word);
    }

    auto chained_certificate(const BlockDecomposition & bd, const std::vector<TripleFinding> & triples) -> Certificate
    {
        for (std::size_t m = 1 ; m < triples.size() ; ++m)
            if (triples[m - 1].j >= triples[m].j)
                throw ContractError("triples must be ordered by their middle index");

        if (triples.empty()) {
            // best pair of permutation blocks, or nothing at all
            auto & r = bd.permutation_blocks;
            std::optional<Certificate> best;
            for (std::size_t a = 0 ; a < r.size() ; ++a)
                for (std::size_t b = a + 1 ; b < r.size() ; ++b) {
                    auto c = lcs_pair_certificate(bd, r[a], r[b]);
                    if (! best || c.claimed > best->claimed)
                        best = std::move(c);
                }
            if (best)
                return *best;
            Certificate trivial;
            trivial.witness = Word(bd.word.alphabet_size());
            trivial.steps.push_back(CertificateStep{ "trivial", { "the empty word occurs once" }, {}, "" });
            return recount(trivial, bd.word);
        }

        struct Pair
        {
            std::size_t i, j;
            LcsResult lcs;
        };
        auto pair = [&] (std::size_t i, std::size_t j) { return Pair{ i, j, lcs2(bd.block(i), bd.block(j)) }; };

        std::vector<Certificate> candidates;
        auto single = [&] (const Pair & p) {
            Certificate c;
            c.witness = p.lcs.witness;
            c.claimed = CountValue(p.lcs.length + 1);
            c.steps.push_back(split_step(p.i, p.j, p.lcs.length));
            candidates.push_back(std::move(c));
        };

        std::size_t r = triples.size();
        single(pair(triples.front().j, triples.front().l));
        single(pair(triples.back().i, triples.back().j));
        for (auto & t : triples)
            single(pair(t.i, t.l));
        for (std::size_t m = 0 ; m + 1 < r ; ++m) {
            // x lives in blocks up to j_m, y in blocks from j_{m+1} on
            auto x = pair(triples[m].i, triples[m].j);
            auto y = pair(triples[m + 1].j, triples[m + 1].l);
            Certificate c;
            c.witness = concat(x.lcs.witness, y.lcs.witness);
            c.claimed = CountValue(x.lcs.length + 1) * CountValue(y.lcs.length + 1);
            c.steps.push_back(split_step(x.i, x.j, x.lcs.length));
            c.steps.push_back(split_step(y.i, y.j, y.lcs.length));
            c.steps.push_back(CertificateStep{ "concatenation", { "counts multiply across consecutive factors" },
                    { x.j, y.i }, "factors separated after block " + std::to_string(x.j) });
            candidates.push_back(std::move(c));
        }

        std::size_t chosen = 0;
        for (std::size_t c = 1 ; c < candidates.size() ; ++c)
            if (candidates[c].claimed > candidates[chosen].claimed)
                chosen = c;
        auto & out = candidates[chosen];
        out.triple_product = 1;
        for (auto & t : triples)
            out.triple_product *= CountValue(t.alpha) * t.beta * t.gamma;
        out.implied_exponent = 2 * r + 1;
        return recount(out, bd.word);
    }

    auto certify_word(const Word & w, std::size_t chunk, const std::vector<std::size_t> & block_counts) -> Certificate
    {
        if (chunk < 1)
            throw ContractError("chunk length must be positive");

        Certificate total;
        total.witness = Word(w.alphabet_size());
        std::vector<std::size_t> chunk_ids;
        for (std::size_t start = 0, id = 1 ; start < w.size() ; start += chunk, ++id) {
            auto lo = static_cast<std::ptrdiff_t>(start);
            auto hi = static_cast<std::ptrdiff_t>(std::min(w.size(), start + chunk)) - 1;
            auto piece = subword(w, Interval{ lo, hi });

            std::optional<Certificate> best;
            auto consider = [&] (Certificate c, std::size_t blocks) {
                for (auto & s : c.steps)
                    s.note = "chunk " + std::to_string(id) + ", " + std::to_string(blocks) + " blocks"
                        + (s.note.empty() ? "" : ": " + s.note);
                if (! best || c.claimed > best->claimed)
                    best = std::move(c);
            };
            for (auto blocks : block_counts) {
                if (blocks > piece.size())
                    continue;
                auto bd = decompose(piece, blocks);
                if (auto dup = duplicate_letter_certificate(bd))
                    consider(std::move(*dup), blocks);
                auto family = disjoint_triples(bd, bd.permutation_blocks.size() / 3);
                consider(chained_certificate(bd, family.triples), blocks);
            }
            if (! best)
                continue;
            total.witness = concat(total.witness, best->witness);
            total.claimed *= best->claimed;
            for (auto & s : best->steps)
                total.steps.push_back(std::move(s));
            chunk_ids.push_back(id);
        }
        if (chunk_ids.size() > 1)
            total.steps.push_back(CertificateStep{ "chunk-product", { "counts multiply across consecutive factors" },
                    chunk_ids, "" });
        if (total.steps.empty())
            total.steps.push_back(CertificateStep{ "trivial", { "the empty word occurs once" }, {}, "" });
        return recount(total, w);
    }
}
