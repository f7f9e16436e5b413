#include <subseq/errors.hpp>
#include <subseq/shape.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace subseq
{
    namespace
    {
        auto power(std::size_t base, std::size_t e) -> std::size_t
        {
            std::size_t p = 1;
            while (e-- > 0)
                p *= base;
            return p;
        }

        auto histogram_slot(std::uint8_t c) -> std::size_t
        {
            return c == 8 ? 5 : c;
        }

        auto in(std::uint8_t c, std::initializer_list<std::uint8_t> set) -> bool
        {
            return std::find(set.begin(), set.end(), c) != set.end();
        }

        enum Claim : std::size_t { b0, b0_next, b0_after_nonzero, b0_tail, bb_a, bb_b, bs0, b7, bn, claim_count };
    }

    auto gh_profile(const Word & v, const EmbeddingMap & f, const ConstructionWord & cw) -> GHProfile
    {
        if (! is_embedding(v, cw.word, f))
            throw ContractError("map is not an embedding into the construction word");

        std::size_t blocks = cw.blocks, k = cw.block_length, m = v.size();
        GHProfile p;
        p.m = m;
        p.g.resize(blocks);
        p.h.resize(blocks);
        p.d.resize(blocks - 1);

        // position of every symbol inside each of the (at most 8) distinct blocks
        std::size_t distinct = std::min<std::size_t>(blocks, 8);
        std::vector<std::vector<std::size_t>> rank(distinct, std::vector<std::size_t>(k));
        for (std::size_t b = 0 ; b < distinct ; ++b)
            for (std::size_t q = 0 ; q < k ; ++q)
                rank[b][cw.word[b * k + q]] = q;

        for (std::size_t i = 1 ; i <= blocks ; ++i) {
            auto it = std::lower_bound(f.positions.begin(), f.positions.end(), k * (i - 1));
            auto g = static_cast<std::size_t>(it - f.positions.begin());
            // greedy leftmost matching of v[g..] into block i
            auto & r = rank[periodic_index(i) - 1];
            std::size_t j = g;
            for (std::ptrdiff_t last = -1 ; j < m && static_cast<std::ptrdiff_t>(r[v[j]]) > last ; ++j)
                last = static_cast<std::ptrdiff_t>(r[v[j]]);
            p.g[i - 1] = static_cast<std::ptrdiff_t>(g);
            p.h[i - 1] = static_cast<std::ptrdiff_t>(j) - 1;
        }
        for (std::size_t i = 1 ; i < blocks ; ++i)
            p.d[i - 1] = p.h[i - 1] - p.g[i];
        return p;
    }

    auto profile_violations(const Word & v, const GHProfile & p, const ConstructionWord & cw) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        auto m = static_cast<std::ptrdiff_t>(v.size());
        for (std::size_t i = 1 ; i <= p.g.size() ; ++i) {
            auto g = p.g[i - 1], h = p.h[i - 1];
            auto where = " at block " + std::to_string(i);
            if (i < p.g.size() && g > p.g[i])
                out.push_back("g decreases" + where);
            if (h < g - 1)
                out.push_back("h below g - 1" + where);
            if (i < p.g.size() && p.d[i - 1] < -1)
                out.push_back("d below -1" + where);
            if (g < 0 || g > m || h >= m) {
                out.push_back("g or h out of range" + where);
                continue;
            }
            auto block = cw.block(i);
            if (! is_subsequence(subword(v, Interval{ g, h }), block))
                out.push_back("v[g..h] is not a subsequence of the block" + where);
            if (h + 1 < m && is_subsequence(subword(v, Interval{ g, h + 1 }), block))
                out.push_back("h is not maximal" + where);
        }
        return out;
    }

    auto shape_class(std::ptrdiff_t d, unsigned t) -> std::uint8_t
    {
        auto scale = [t] (std::size_t e) { return static_cast<std::ptrdiff_t>(10 * power(t, e)); };
        if (d >= scale(4))
            return 8;
        if (d >= scale(3))
            return 4;
        if (d >= scale(2))
            return 3;
        if (d >= scale(1))
            return 2;
        if (d >= 1)
            return 1;
        return 0;
    }

    auto shape_of(const GHProfile & p, unsigned t) -> ShapeVector
    {
        ShapeVector s;
        for (auto d : p.d)
            s.push_back(shape_class(d, t));
        return s;
    }

    auto to_string(const ShapeVector & s) -> std::string
    {
        std::string out;
        for (auto c : s)
            out += static_cast<char>('0' + c);
        return out;
    }

    ShapeClaims::ShapeClaims() :
        _tallies(claim_count)
    {
        auto name = [this] (Claim c, const char * n, const char * statement) {
            _tallies[c].name = n;
            _tallies[c].statement = statement;
        };
        name(b0, "b0", "s_i in {3,4,8}: s_{i+1}=0, or s_{i+1}=1 and s_{i+2}=0, or s_{i+1}=2, s_{i+2}=0 and s_{i+3..i+7} in {0,1}");
        name(b0_next, "b0.next", "s_i in {3,4,8} implies s_{i+1} in {0,1,2}");
        name(b0_after_nonzero, "b0.after-nonzero", "s_i in {3,4,8} and s_{i+1} != 0 imply s_{i+2} = 0");
        name(b0_tail, "b0.tail", "s_i in {3,4,8} and s_{i+1} = 2 imply s_{i+j} in {0,1} for j = 3..7");
        name(bb_a, "bb.a", "s_i = 8 implies s_{i+j} != 8 for j = 1..7");
        name(bb_b, "bb.b", "s_i = 8 implies [g_{i+j}, h_{i+j}] within [g_i, h_i] for j = 1..7");
        name(bs0, "bs0", "s_i = 8 and s_{i+j} in {2,3,4} for j in 1..6 imply s_{i+j+1} in {0,1}");
        name(b7, "b7", "s_i = 8 implies s_{i+7} in {0,1,2}");
        name(bn, "bn", "s_i = 8 implies at most one s_{i+j}, j = 1..7, in {3,4}");
    }

    auto ShapeClaims::add(const ShapeVector & s, const GHProfile * profile) -> void
    {
        auto record = [&] (Claim c, bool holds, std::size_t i) {
            auto & tally = _tallies[c];
            ++tally.applicable;
            if (! holds) {
                ++tally.violations;
                if (! tally.counterexample)
                    tally.counterexample = std::make_pair(s, i);
            }
        };
        for (std::size_t i = 1 ; i + 8 <= s.size() ; ++i) {
            auto at = [&] (std::size_t j) { return s[i + j - 1]; };
            if (in(at(0), { 3, 4, 8 })) {
                bool tail = true;
                for (std::size_t j = 3 ; j <= 7 ; ++j)
                    tail = tail && in(at(j), { 0, 1 });
                record(b0, at(1) == 0 || (at(1) == 1 && at(2) == 0) || (at(1) == 2 && at(2) == 0 && tail), i);
                record(b0_next, in(at(1), { 0, 1, 2 }), i);
                if (at(1) != 0)
                    record(b0_after_nonzero, at(2) == 0, i);
                if (at(1) == 2)
                    record(b0_tail, tail, i);
            }
            if (at(0) != 8)
                continue;
            bool no_eight = true, nested = true;
            std::size_t big = 0;
            for (std::size_t j = 1 ; j <= 7 ; ++j) {
                no_eight = no_eight && at(j) != 8;
                big += in(at(j), { 3, 4 });
                if (profile)
                    nested = nested && profile->g[i + j - 1] >= profile->g[i - 1] && profile->h[i + j - 1] <= profile->h[i - 1];
            }
            record(bb_a, no_eight, i);
            if (profile)
                record(bb_b, nested, i);
            for (std::size_t j = 1 ; j <= 6 ; ++j)
                if (in(at(j), { 2, 3, 4 }))
                    record(bs0, in(at(j + 1), { 0, 1 }), i);
            record(b7, in(at(7), { 0, 1, 2 }), i);
            record(bn, big <= 1, i);
        }
    }

    auto ShapeClaims::merge(const ShapeClaims & other) -> void
    {
        for (std::size_t c = 0 ; c < _tallies.size() ; ++c) {
            auto & mine = _tallies[c];
            auto & theirs = other._tallies[c];
            mine.applicable += theirs.applicable;
            mine.violations += theirs.violations;
            if (! mine.counterexample)
                mine.counterexample = theirs.counterexample;
        }
    }

    auto ShapeClaims::violations() const -> std::size_t
    {
        std::size_t total = 0;
        for (auto & t : _tallies)
            total += t.violations;
        return total;
    }

    auto e_set(const Word & b, std::size_t x, unsigned t, std::size_t r) -> std::vector<std::size_t>
    {
        if (x < 1 || x > r)
            throw ContractError("prefix length must lie in 1.." + std::to_string(r));
        auto divisor = power(t, r - x);
        std::vector<std::size_t> out;
        for (std::size_t z = 1 ; z < b.size() ; ++z)
            if (b[z - 1] / divisor != b[z] / divisor)
                out.push_back(z);
        return out;
    }

    auto e_subsample(const Word & b, std::size_t x, std::size_t y, unsigned t, std::size_t r) -> std::vector<std::size_t>
    {
        if (y < 1)
            throw ContractError("subsampling step must be positive");
        auto all = e_set(b, x, t, r);
        std::vector<std::size_t> out;
        for (std::size_t q = 0 ; q < all.size() ; q += y)
            out.push_back(all[q]);
        return out;
    }

    auto to_string(SegmentRule rule) -> std::string
    {
        switch (rule) {
            case SegmentRule::singleton_012: return "singleton-012";
            case SegmentRule::pair_34_0: return "pair-34-0";
            case SegmentRule::triple_34_12: return "triple-34-12";
            case SegmentRule::nine_8_special: return "nine-8-special";
            case SegmentRule::eight_8: return "eight-8";
        }
        return "?";
    }

    auto decompose_shape(const ShapeVector & s) -> Decomposition
    {
        Decomposition out;
        std::size_t i = 0;
        auto take = [&] (std::size_t length, SegmentRule rule) {
            out.segments.push_back(ShapeSegment{ i + 1, ShapeVector(s.begin() + static_cast<std::ptrdiff_t>(i),
                        s.begin() + static_cast<std::ptrdiff_t>(i + length)), rule });
            i += length;
        };
        while (s.size() - i >= 9) {
            auto head = s[i], next = s[i + 1];
            if (in(head, { 0, 1, 2 }))
                take(1, SegmentRule::singleton_012);
            else if (in(head, { 3, 4 }) && next == 0)
                take(2, SegmentRule::pair_34_0);
            else if (in(head, { 3, 4 }) && in(next, { 1, 2 }))
                take(3, SegmentRule::triple_34_12);
            else if (head == 8 && in(s[i + 6], { 3, 4 }) && s[i + 7] == 1)
                take(9, SegmentRule::nine_8_special);
            else if (head == 8)
                take(8, SegmentRule::eight_8);
            else {
                out.failure = i + 1;
                break;
            }
        }
        out.uncovered = s.size() - i;
        return out;
    }

    auto segment_conforms(const ShapeSegment & segment) -> bool
    {
        auto & s = segment.symbols;
        switch (segment.rule) {
            case SegmentRule::singleton_012:
                return s.size() == 1 && in(s[0], { 0, 1, 2 });
            case SegmentRule::pair_34_0:
                return s.size() == 2 && in(s[0], { 3, 4 }) && s[1] == 0;
            case SegmentRule::triple_34_12:
                return s.size() == 3 && in(s[0], { 3, 4 }) && in(s[1], { 1, 2 });
            case SegmentRule::nine_8_special:
                return s.size() == 9 && s[0] == 8 && in(s[6], { 3, 4 }) && s[7] == 1;
            case SegmentRule::eight_8:
                return s.size() == 8 && s[0] == 8 && ! (in(s[6], { 3, 4 }) && s[7] == 1);
        }
        return false;
    }

    auto ShapeSuiteReport::passed() const -> bool
    {
        return profile_violations == 0 && determination_violations == 0 && simple_bound_violations == 0
            && break_violations == 0 && decomposition_failures == 0 && claims.violations() == 0;
    }

    namespace
    {
        struct WordOutcome
        {
            std::size_t embeddings = 0;
            std::size_t profile_violations = 0;
            std::size_t determination_violations = 0;
            std::size_t simple_bound_checks = 0;
            std::size_t simple_bound_violations = 0;
            std::size_t shapes = 0;
            std::size_t decomposition_failures = 0;
            std::size_t max_uncovered = 0;
            std::vector<std::size_t> class_histogram = std::vector<std::size_t>(6, 0);
            ShapeClaims claims;
            std::vector<std::string> failures;
        };

        // random subsequence of cw.word with one of several density patterns
        auto sample_word(std::mt19937_64 & rng, const ConstructionWord & cw, std::size_t pattern) -> Word
        {
            std::uniform_real_distribution<double> unit(0, 1);
            std::size_t n = cw.word.size(), k = cw.block_length;
            std::vector<double> keep(n);
            if (pattern == 0) {
                // uniform density
                static constexpr double densities[] = { 0.05, 0.1, 0.2, 0.35, 0.5 };
                double p = densities[rng() % 5];
                std::fill(keep.begin(), keep.end(), p);
            }
            else if (pattern == 1) {
                // one dense window over roughly one to three blocks, sparse elsewhere
                static constexpr double sparse[] = { 0.0, 0.002, 0.01, 0.03 };
                std::fill(keep.begin(), keep.end(), sparse[rng() % 4]);
                std::size_t length = k / 2 + rng() % (3 * k);
                std::size_t start = rng() % n;
                for (std::size_t q = start ; q < std::min(n, start + length) ; ++q)
                    keep[q] = 0.9;
            }
            else if (pattern == 2) {
                // a dense window early enough to slide one full period to the right
                std::size_t room = cw.blocks > 8 ? (cw.blocks - 8) * k : n;
                std::size_t length = k / 4 + rng() % (2 * k);
                std::size_t start = rng() % room;
                double p = 0.5 + 0.5 * unit(rng);
                for (std::size_t q = start ; q < std::min(room, start + length) ; ++q)
                    keep[q] = p;
            }
            else {
                // a density chosen per block
                static constexpr double densities[] = { 0.0, 0.05, 0.7, 0.95 };
                for (std::size_t b = 0 ; b < cw.blocks ; ++b) {
                    double p = densities[rng() % 4];
                    std::fill(keep.begin() + static_cast<std::ptrdiff_t>(b * k),
                            keep.begin() + static_cast<std::ptrdiff_t>((b + 1) * k), p);
                }
            }
            std::vector<Symbol> symbols;
            for (std::size_t q = 0 ; q < n ; ++q)
                if (unit(rng) < keep[q])
                    symbols.push_back(cw.word[q]);
            return Word(cw.word.alphabet_size(), std::move(symbols));
        }

        auto examine(const Word & v, const ConstructionWord & cw, const ShapeSuiteConfig & config,
                const std::string & label) -> WordOutcome
        {
            WordOutcome out;
            auto note = [&] (const std::string & what) {
                if (out.failures.size() < 4)
                    out.failures.push_back(label + ": " + what);
            };

            std::set<EmbeddingMap> maps;
            for (auto & f : enumerate_embeddings(v, cw.word, config.embeddings_per_end))
                maps.insert(f);
            for (auto & f : enumerate_embeddings_from_end(v, cw.word, config.embeddings_per_end))
                maps.insert(f);

            std::set<std::vector<std::ptrdiff_t>> g_sequences;
            std::map<std::tuple<std::size_t, std::ptrdiff_t, std::uint8_t>, std::set<std::ptrdiff_t>> next_g;
            for (auto & f : maps) {
                ++out.embeddings;
                auto p = gh_profile(v, f, cw);
                auto problems = profile_violations(v, p, cw);
                if (! problems.empty()) {
                    ++out.profile_violations;
                    note(problems.front());
                }
                if (! g_sequences.insert(p.g).second) {
                    ++out.determination_violations;
                    note("two embeddings share a g sequence");
                }

                auto s = shape_of(p, config.t);
                ++out.shapes;
                for (std::size_t i = 0 ; i < s.size() ; ++i) {
                    ++out.class_histogram[histogram_slot(s[i])];
                    if (s[i] == 0) {
                        ++out.simple_bound_checks;
                        if (p.d[i] != -1 && p.d[i] != 0) {
                            ++out.simple_bound_violations;
                            note("class 0 with d = " + std::to_string(p.d[i]));
                        }
                    }
                    else
                        next_g[{ i + 1, p.g[i], s[i] }].insert(p.g[i + 1]);
                }
                out.claims.add(s, &p);

                auto parts = decompose_shape(s);
                bool sound = ! parts.failure && parts.uncovered <= 8;
                std::size_t expected_start = 1;
                for (auto & seg : parts.segments) {
                    sound = sound && seg.start == expected_start && segment_conforms(seg);
                    expected_start += seg.symbols.size();
                }
                sound = sound && expected_start - 1 + parts.uncovered == s.size();
                out.max_uncovered = std::max(out.max_uncovered, parts.uncovered);
                if (! sound) {
                    ++out.decomposition_failures;
                    note("decomposition failed on shape " + to_string(s));
                }
            }
            for (auto & [key, values] : next_g) {
                ++out.simple_bound_checks;
                auto x = std::get<2>(key);
                if (values.size() > 10 * power(config.t, x)) {
                    ++out.simple_bound_violations;
                    note("block " + std::to_string(std::get<0>(key)) + " class " + std::to_string(x) + ": "
                            + std::to_string(values.size()) + " successors");
                }
            }
            return out;
        }
    }

    auto run_shape_suite(const ShapeSuiteConfig & config) -> ShapeSuiteReport
    {
        if (config.min_blocks < 2 || config.max_blocks < config.min_blocks)
            throw ContractError("block range must satisfy 2 <= min <= max");

        ShapeSuiteReport report;
        report.config = config;

        std::vector<ConstructionWord> words;
        for (auto b = config.min_blocks ; b <= config.max_blocks ; ++b)
            words.push_back(build_construction_word(config.t, b));

        struct Job { std::size_t word, sample; };
        std::vector<Job> jobs;
        for (std::size_t w = 0 ; w < words.size() ; ++w)
            for (std::size_t q = 0 ; q < config.samples_per_blocks ; ++q)
                jobs.push_back({ w, q });

        std::vector<WordOutcome> outcomes(jobs.size());
        std::atomic<std::size_t> next = 0;
        auto work = [&] {
            for (std::size_t j ; (j = next++) < jobs.size() ; ) {
                auto & cw = words[jobs[j].word];
                std::seed_seq seq{ config.seed, static_cast<std::uint64_t>(cw.blocks),
                    static_cast<std::uint64_t>(jobs[j].sample) };
                std::mt19937_64 rng(seq);
                auto v = sample_word(rng, cw, jobs[j].sample % 4);
                outcomes[j] = examine(v, cw, config,
                        "blocks " + std::to_string(cw.blocks) + " sample " + std::to_string(jobs[j].sample));
            }
        };
        unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
        {
            std::vector<std::jthread> pool;
            for (unsigned i = 1 ; i < threads ; ++i)
                pool.emplace_back(work);
            work();
        }

        for (auto & o : outcomes) {
            ++report.words;
            report.embeddings += o.embeddings;
            report.profile_violations += o.profile_violations;
            report.determination_violations += o.determination_violations;
            report.simple_bound_checks += o.simple_bound_checks;
            report.simple_bound_violations += o.simple_bound_violations;
            report.shapes += o.shapes;
            report.decomposition_failures += o.decomposition_failures;
            report.max_uncovered = std::max(report.max_uncovered, o.max_uncovered);
            for (std::size_t c = 0 ; c < 6 ; ++c)
                report.class_histogram[c] += o.class_histogram[c];
            report.claims.merge(o.claims);
            for (auto & f : o.failures)
                if (report.failures.size() < 16)
                    report.failures.push_back(f);
        }

        // break-set bound on subsequences of single blocks
        std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_real_distribution<double> unit(0, 1);
        auto vectors = reference_sign_vectors();
        for (std::size_t q = 0 ; q < config.break_samples ; ++q) {
            auto pi = build_permutation(vectors[rng() % 8], config.t);
            double p = unit(rng);
            std::vector<Symbol> kept;
            for (auto s : pi)
                if (unit(rng) < p)
                    kept.push_back(s);
            Word b(pi.alphabet_size(), std::move(kept));
            for (std::size_t x = 1 ; x <= 8 ; ++x) {
                ++report.break_checks;
                if (e_set(b, x, config.t).size() > power(config.t, x)) {
                    ++report.break_violations;
                    if (report.failures.size() < 16)
                        report.failures.push_back("break set exceeds t^" + std::to_string(x));
                }
            }
        }
        return report;
    }
}
