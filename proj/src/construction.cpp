#include <subseq/construction.hpp>
#include <subseq/errors.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace subseq
{
    namespace
    {
        constexpr std::size_t period = 8;

        auto checked_power(unsigned t, std::size_t r, std::size_t budget) -> std::size_t
        {
            std::size_t n = 1;
            for (std::size_t i = 0 ; i < r ; ++i) {
                if (n > budget / t)
                    throw ResourceError("construction_symbols",
                            std::to_string(t) + "^" + std::to_string(r) + " > " + std::to_string(budget));
                n *= t;
            }
            return n;
        }

        auto power(std::size_t base, std::size_t e) -> std::size_t
        {
            std::size_t p = 1;
            while (e-- > 0)
                p *= base;
            return p;
        }

        /// Coordinates from 1-based `from` on which all members agree.
        auto agreement_count(std::span<const SignVector * const> family, std::size_t from) -> std::size_t
        {
            std::size_t count = 0;
            for (std::size_t c = from - 1 ; c < family.front()->size() ; ++c) {
                bool same = true;
                for (auto * u : family)
                    same = same && (*u)[c] == (*family.front())[c];
                count += same;
            }
            return count;
        }

        /// Evaluates `value` on every instance (using worker threads) and folds the
        /// results in instance order.
        auto evaluate(const std::vector<std::vector<std::size_t>> & instances,
                const std::function<std::size_t(const std::vector<std::size_t> &)> & value,
                unsigned threads) -> std::vector<std::size_t>
        {
            std::vector<std::size_t> out(instances.size());
            std::atomic<std::size_t> next = 0;
            auto work = [&] {
                for (std::size_t i ; (i = next++) < instances.size() ; )
                    out[i] = value(instances[i]);
            };
            if (threads == 0)
                threads = std::max(1u, std::thread::hardware_concurrency());
            threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, instances.size())));
            {
                std::vector<std::jthread> pool;
                for (unsigned i = 1 ; i < threads ; ++i)
                    pool.emplace_back(work);
                work();
            }
            return out;
        }

        auto fold(std::string name, std::string reading, std::string statement,
                const std::vector<std::vector<std::size_t>> & instances, const std::vector<std::size_t> & values,
                std::size_t limit, std::size_t floor, const std::function<bool(const std::vector<std::size_t> &)> & include)
            -> PropertyCheck
        {
            PropertyCheck check;
            check.name = std::move(name);
            check.reading = std::move(reading);
            check.statement = std::move(statement);
            check.limit = limit;
            check.floor = floor;
            bool first = true;
            for (std::size_t i = 0 ; i < instances.size() ; ++i) {
                if (! include(instances[i]))
                    continue;
                ++check.instances;
                check.worst = first ? values[i] : std::max(check.worst, values[i]);
                first = false;
                if ((values[i] > limit || values[i] < floor) && check.holds) {
                    check.holds = false;
                    check.counterexample = instances[i];
                }
            }
            return check;
        }

        auto any_reading(const std::vector<std::size_t> &) -> bool { return true; }

        auto one_period(const std::vector<std::size_t> & instance) -> bool
        {
            return std::all_of(instance.begin(), instance.end(), [] (std::size_t i) { return i <= period; });
        }

        // instance families shared by both property sweeps, indices 1-based over two periods
        struct Instances
        {
            std::vector<std::vector<std::size_t>> adjacent, distinct_pairs, three_adjacent, adjacent_plus_one,
                distinct_triples, offset3, offset7;
        };

        auto instances(const std::function<bool(std::size_t, std::size_t)> & same) -> Instances
        {
            Instances out;
            for (std::size_t i = 1 ; i <= period ; ++i) {
                out.adjacent.push_back({ i, i + 1 });
                out.three_adjacent.push_back({ i, i + 1, i + 2 });
                for (std::size_t j = 1 ; j <= period ; ++j)
                    if (! same(j, i) && ! same(j, i + 1))
                        out.adjacent_plus_one.push_back({ i, i + 1, j });
                for (std::size_t j = 1 ; j <= 7 ; ++j) {
                    if (j <= 3)
                        out.offset3.push_back({ i, i + j });
                    out.offset7.push_back({ i, i + j });
                }
                for (std::size_t j = i + 1 ; j <= period ; ++j) {
                    if (! same(i, j))
                        out.distinct_pairs.push_back({ i, j });
                    for (std::size_t l = j + 1 ; l <= period ; ++l)
                        if (! same(i, j) && ! same(i, l) && ! same(j, l))
                            out.distinct_triples.push_back({ i, j, l });
                }
            }
            return out;
        }
    }

    auto SignVector::suffix(std::size_t from) const -> SignVector
    {
        if (from < 1 || from > entries.size() + 1)
            throw RangeError("sign vector coordinate out of range");
        return SignVector{ std::vector<int>(entries.begin() + static_cast<std::ptrdiff_t>(from - 1), entries.end()) };
    }

    auto parse_sign_vector(std::string_view text) -> SignVector
    {
        SignVector u;
        for (std::size_t i = 0 ; i < text.size() ; ++i) {
            char c = text[i];
            if (c == '+')
                u.entries.push_back(1);
            else if (c == '-')
                u.entries.push_back(-1);
            else if (text.substr(i, 3) == "−") {
                u.entries.push_back(-1);
                i += 2;
            }
            else if (c != ',' && c != ' ' && c != '(' && c != ')')
                throw ContractError("invalid sign character in \"" + std::string(text) + "\"");
        }
        if (u.entries.empty())
            throw ContractError("empty sign vector");
        return u;
    }

    auto to_string(const SignVector & u) -> std::string
    {
        std::string s;
        for (auto e : u.entries)
            s += e > 0 ? '+' : '-';
        return s;
    }

    auto tuple_alphabet_size(unsigned t, std::size_t r, std::size_t budget) -> std::size_t
    {
        if (t < 2)
            throw ContractError("tuple coordinates need t >= 2");
        if (r < 1)
            throw ContractError("tuples need at least one coordinate");
        return checked_power(t, r, budget);
    }

    auto pack(const TupleSymbol & a, unsigned t) -> Symbol
    {
        std::size_t id = 0;
        for (auto c : a.coordinates) {
            if (c < 1 || c > t)
                throw ContractError("tuple coordinate outside 1.." + std::to_string(t));
            id = id * t + (c - 1);
        }
        return static_cast<Symbol>(id);
    }

    auto unpack(Symbol s, unsigned t, std::size_t r) -> TupleSymbol
    {
        TupleSymbol a{ std::vector<unsigned>(r) };
        for (std::size_t c = r ; c-- > 0 ; ) {
            a.coordinates[c] = s % t + 1;
            s /= t;
        }
        if (s != 0)
            throw RangeError("symbol id outside [t]^r");
        return a;
    }

    auto signed_key(const SignVector & u, const TupleSymbol & a) -> std::vector<int>
    {
        if (u.size() != a.coordinates.size())
            throw ContractError("sign vector and tuple differ in length");
        std::vector<int> key(u.size());
        for (std::size_t c = 0 ; c < u.size() ; ++c)
            key[c] = u[c] * static_cast<int>(a.coordinates[c]);
        return key;
    }

    auto build_permutation(const SignVector & u, unsigned t, std::size_t budget) -> Word
    {
        std::size_t r = u.size();
        std::size_t n = tuple_alphabet_size(t, r, budget);
        // Ascending signed key is ascending mixed radix after replacing digit d by
        // t-1-d on the negative coordinates; that map is an involution, so the
        // m-th symbol is the image of m itself.
        std::vector<Symbol> out(n);
        std::vector<unsigned> digits(r);
        for (std::size_t m = 0 ; m < n ; ++m) {
            std::size_t id = 0;
            for (std::size_t c = 0 ; c < r ; ++c) {
                auto d = digits[c];
                id = id * t + (u[c] > 0 ? d : t - 1 - d);
            }
            out[m] = static_cast<Symbol>(id);
            for (std::size_t c = r ; c-- > 0 ; ) {
                if (++digits[c] < t)
                    break;
                digits[c] = 0;
            }
        }
        return Word(static_cast<unsigned>(n), std::move(out));
    }

    auto reference_sign_vectors() -> std::vector<SignVector>
    {
        std::vector<SignVector> out;
        for (auto s : { "++++++++", "---+-+--", "+++----+", "-+--+++-",
                        "+--+--++", "-++++---", "+---++-+", "--+---+-" })
            out.push_back(parse_sign_vector(s));
        return out;
    }

    auto periodic_index(std::size_t i) -> std::size_t
    {
        if (i == 0)
            throw RangeError("block indices start at 1");
        return (i - 1) % period + 1;
    }

    auto agreement_set(std::span<const SignVector> family) -> std::vector<std::size_t>
    {
        if (family.empty())
            throw ContractError("agreement of an empty family");
        for (auto & u : family)
            if (u.size() != family.front().size())
                throw ContractError("sign vectors differ in length");
        std::vector<std::size_t> out;
        for (std::size_t c = 0 ; c < family.front().size() ; ++c)
            if (std::all_of(family.begin(), family.end(), [&] (const SignVector & u) { return u[c] == family.front()[c]; }))
                out.push_back(c + 1);
        return out;
    }

    auto PropertyReport::all_hold() const -> bool
    {
        return std::all_of(checks.begin(), checks.end(), [] (const PropertyCheck & c) { return c.holds; });
    }

    auto verify_sign_properties(std::span<const SignVector> vectors) -> PropertyReport
    {
        if (vectors.size() != period)
            throw ContractError("expected eight sign vectors");
        for (auto & u : vectors)
            if (u.size() != 8)
                throw ContractError("expected sign vectors of length 8");

        auto at = [&] (std::size_t i) -> const SignVector * { return &vectors[periodic_index(i) - 1]; };
        auto same = [&] (std::size_t i, std::size_t j) { return *at(i) == *at(j); };
        auto agreement = [&] (std::size_t from) {
            return [&, from] (const std::vector<std::size_t> & instance) {
                std::vector<const SignVector *> family;
                for (auto i : instance)
                    family.push_back(at(i));
                return agreement_count(family, from);
            };
        };
        auto sets = instances(same);

        PropertyReport report;
        auto add = [&] (std::string name, std::string statement, const std::vector<std::vector<std::size_t>> & inst,
                std::size_t from, std::size_t limit) {
            auto values = evaluate(inst, agreement(from), 1);
            report.checks.push_back(fold(std::move(name), "", std::move(statement), inst, values, limit, 0, any_reading));
        };
        add("a", "consecutive vectors agree on at most 2 coordinates", sets.adjacent, 1, 2);
        add("b", "distinct vectors agree on at most 4 coordinates", sets.distinct_pairs, 1, 4);
        add("c", "three consecutive vectors agree on no coordinate", sets.three_adjacent, 1, 0);
        add("d", "two consecutive vectors and a third distinct one agree on at most 1 coordinate",
                sets.adjacent_plus_one, 1, 1);
        add("e", "three distinct vectors agree on at most 2 coordinates", sets.distinct_triples, 1, 2);
        add("f", "coordinates 7..8 differ between vectors at offsets 1..3", sets.offset3, 7, 1);
        add("g", "coordinates 6..8 differ between vectors at offsets 1..7", sets.offset7, 6, 2);
        add("h", "coordinates 4..8 agree in at most 3 places at offsets 1..7", sets.offset7, 4, 3);
        return report;
    }

    auto ConstructionWord::block(std::size_t i) const -> Word
    {
        if (i < 1 || i > blocks)
            throw RangeError("block index out of range");
        auto lo = static_cast<std::ptrdiff_t>((i - 1) * block_length);
        return subword(word, Interval{ lo, lo + static_cast<std::ptrdiff_t>(block_length) - 1 });
    }

    auto build_construction_word(unsigned t, std::size_t blocks, std::size_t budget) -> ConstructionWord
    {
        if (blocks < 1)
            throw ContractError("construction word needs at least one block");
        ConstructionWord cw;
        cw.t = t;
        cw.r = period;
        cw.blocks = blocks;
        cw.block_length = tuple_alphabet_size(t, period, budget);
        if (cw.block_length > budget / blocks)
            throw ResourceError("construction_length",
                    std::to_string(blocks) + " blocks of " + std::to_string(cw.block_length) + " > " + std::to_string(budget));

        auto vectors = reference_sign_vectors();
        std::vector<Word> perms;
        for (std::size_t i = 0 ; i < std::min(blocks, period) ; ++i)
            perms.push_back(build_permutation(vectors[i], t, budget));
        std::vector<Symbol> symbols;
        symbols.reserve(blocks * cw.block_length);
        for (std::size_t i = 1 ; i <= blocks ; ++i) {
            auto s = perms[periodic_index(i) - 1].symbols();
            symbols.insert(symbols.end(), s.begin(), s.end());
        }
        cw.word = Word(static_cast<unsigned>(cw.block_length), std::move(symbols));
        return cw;
    }

    auto verify_lemma_intermediate(unsigned t, std::span<const SignVector> family, std::size_t budget) -> IntermediateReport
    {
        IntermediateReport report;
        report.agreement = agreement_set(family);
        report.expected = power(t, report.agreement.size());
        std::vector<Word> perms;
        for (auto & u : family)
            perms.push_back(build_permutation(u, t));
        report.lcs = multi_lcs_table(perms, budget);
        report.holds = report.lcs == report.expected;
        return report;
    }

    auto sweep_lemma_intermediate(unsigned t, std::size_t r, std::size_t max_family, std::size_t budget) -> LemmaSweep
    {
        if (r < 1 || r > 16)
            throw ContractError("sign vector length must lie in 1..16");
        LemmaSweep sweep;
        sweep.t = t;
        sweep.r = r;
        sweep.max_family = max_family;

        std::vector<SignVector> all;
        for (std::size_t bits = 0 ; bits < (std::size_t(1) << r) ; ++bits) {
            SignVector u;
            for (std::size_t c = 0 ; c < r ; ++c)
                u.entries.push_back(bits >> (r - 1 - c) & 1 ? -1 : 1);
            all.push_back(u);
        }
        // families as increasing index tuples, smallest first
        std::vector<std::size_t> pick;
        auto visit = [&] (auto & self, std::size_t from) -> void {
            if (! pick.empty()) {
                std::vector<SignVector> family;
                for (auto i : pick)
                    family.push_back(all[i]);
                auto report = verify_lemma_intermediate(t, family, budget);
                ++sweep.families;
                if (! report.holds && sweep.failures++ == 0) {
                    sweep.failing_family = family;
                    sweep.failure = report;
                }
            }
            if (pick.size() == max_family)
                return;
            for (std::size_t i = from ; i < all.size() ; ++i) {
                pick.push_back(i);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        visit(visit, 0);
        return sweep;
    }

    auto verify_permutation_properties(unsigned t, std::size_t budget, unsigned threads) -> PropertyReport
    {
        auto vectors = reference_sign_vectors();
        std::vector<Word> perms;
        for (auto & u : vectors)
            perms.push_back(build_permutation(u, t));
        std::size_t n = perms.front().size();

        auto at = [&] (std::size_t i) -> const Word & { return perms[periodic_index(i) - 1]; };
        auto same = [&] (std::size_t i, std::size_t j) { return at(i) == at(j); };
        auto sets = instances(same);

        // restrictions of every permutation to the classes of a fixed coordinate prefix
        auto classes = [&] (std::size_t prefix) {
            std::size_t divisor = power(t, period - prefix);
            std::vector<std::vector<Word>> out(period, std::vector<Word>(n / divisor, Word(perms.front().alphabet_size())));
            for (std::size_t i = 0 ; i < period ; ++i)
                for (auto s : perms[i])
                    out[i][s / divisor].push_back(s);
            return out;
        };
        auto pair_value = [&] (const std::vector<std::size_t> & inst) { return lcs2(at(inst[0]), at(inst[1])).length; };
        auto triple_value = [&] (const std::vector<std::size_t> & inst) {
            return lcs3(at(inst[0]), at(inst[1]), at(inst[2]), budget).length;
        };
        auto class_value = [&] (const std::vector<std::vector<Word>> & by_class) {
            return [&] (const std::vector<std::size_t> & inst) {
                auto & a = by_class[periodic_index(inst[0]) - 1];
                auto & b = by_class[periodic_index(inst[1]) - 1];
                std::size_t best = 0;
                for (std::size_t c = 0 ; c < a.size() ; ++c)
                    best = std::max(best, lcs2(a[c], b[c]).length);
                return best;
            };
        };

        PropertyReport report;
        auto add = [&] (std::string name, std::string statement, const std::vector<std::vector<std::size_t>> & inst,
                const std::function<std::size_t(const std::vector<std::size_t> &)> & value,
                std::size_t limit, std::size_t floor, bool adjacency) {
            auto values = evaluate(inst, value, threads);
            if (adjacency)
                report.checks.push_back(fold(name, "within-period", statement, inst, values, limit, floor, one_period));
            report.checks.push_back(fold(std::move(name), adjacency ? "periodic" : "", std::move(statement),
                        inst, values, limit, floor, any_reading));
        };

        add("a", "LCS of consecutive blocks <= t^2", sets.adjacent, pair_value, power(t, 2), 0, true);
        add("b", "LCS of distinct blocks <= t^4", sets.distinct_pairs, pair_value, power(t, 4), 0, false);
        if ((n + 1) * (n + 1) * (n + 1) <= budget) {
            add("c", "LCS of three consecutive blocks = 1", sets.three_adjacent, triple_value, 1, 1, true);
            add("d", "LCS of two consecutive blocks and a distinct third <= t", sets.adjacent_plus_one, triple_value,
                    t, 0, true);
            add("e", "LCS of three distinct blocks <= t^2", sets.distinct_triples, triple_value, power(t, 2), 0, false);
        }
        else
            report.skipped = { "c", "d", "e" };
        auto by6 = classes(6), by5 = classes(5), by3 = classes(3);
        add("f", "common subsequence within one class of coordinates 1..6, offsets 1..3, <= t", sets.offset3,
                class_value(by6), t, 0, true);
        add("g", "common subsequence within one class of coordinates 1..5, offsets 1..7, <= t^2", sets.offset7,
                class_value(by5), power(t, 2), 0, true);
        add("h", "common subsequence within one class of coordinates 1..3, offsets 1..7, <= t^3", sets.offset7,
                class_value(by3), power(t, 3), 0, true);
        return report;
    }
}
