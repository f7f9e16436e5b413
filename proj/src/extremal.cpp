#include <subseq/errors.hpp>
#include <subseq/extremal.hpp>
#include <subseq/occurrence.hpp>

#include "occurrence_search.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace subseq
{
    namespace
    {
        using Count = std::uint64_t;
        constexpr Count unbounded = std::numeric_limits<Count>::max();

        auto normal_form_of_reverse(std::span<const Symbol> y, unsigned k) -> std::vector<Symbol>
        {
            std::vector<Symbol> relabel(k, k), out;
            Symbol next = 0;
            for (auto it = y.rbegin() ; it != y.rend() ; ++it) {
                if (relabel[*it] == k)
                    relabel[*it] = next++;
                out.push_back(relabel[*it]);
            }
            return out;
        }

        struct BlockResult
        {
            Count value = unbounded;
            std::vector<Symbol> minimizer;
        };

        // Depth-first enumeration of words y in first-occurrence normal form.
        // Each node evaluates M(y[0, L)) through the reversed word x, whose suffix
        // maxima are exactly the values already computed at the ancestors
        // (x[j, L) is the reverse of y[0, L - j)). Since M(prefix) <= M(y), a
        // prefix that reaches the threshold prunes its whole subtree.
        class OrbitSearch
        {
            public:
                OrbitSearch(unsigned k, std::size_t n) :
                    _k(k), _n(n), _values(n + 1, 1), _y(), _x(n)
                {
                }

                auto run_block(std::span<const Symbol> prefix, Count snapshot) -> BlockResult
                {
                    _snapshot = snapshot;
                    _result = BlockResult{};
                    _y.clear();
                    _values[0] = 1;
                    Symbol used = 0;
                    for (auto s : prefix) {
                        _y.push_back(s);
                        used = std::max<Symbol>(used, s + 1);
                        if (! evaluate())
                            return _result;
                    }
                    descend(used);
                    return _result;
                }

            private:
                auto threshold() const -> Count
                {
                    Count t = _result.value;
                    if (_snapshot != unbounded)
                        t = std::min(t, _snapshot + 1);
                    return t;
                }

                // Computes _values[L] for L = |y|; false when M(y) reaches the threshold.
                auto evaluate() -> bool
                {
                    std::size_t len = _y.size();
                    for (std::size_t j = 0 ; j < len ; ++j)
                        _x[j] = _y[len - 1 - j];
                    _tail.resize(len + 1);
                    for (std::size_t j = 0 ; j <= len ; ++j)
                        _tail[j] = _values[len - j];

                    Count t = threshold();
                    std::optional<Count> limit;
                    if (t != unbounded)
                        limit = t;
                    auto r = detail::full_search<Count>(std::span<const Symbol>(_x.data(), len), _k, _tail, limit);
                    if (r.reached)
                        return false;
                    _values[len] = r.best;
                    return true;
                }

                auto descend(Symbol used) -> void
                {
                    if (_y.size() == _n) {
                        if (normal_form_of_reverse(_y, _k) < _y)
                            return;
                        // not reached, so strictly below the threshold
                        _result.value = _values[_n];
                        _result.minimizer = _y;
                        return;
                    }
                    Symbol limit = std::min<Symbol>(used + 1, _k);
                    for (Symbol s = 0 ; s < limit ; ++s) {
                        _y.push_back(s);
                        if (evaluate())
                            descend(std::max<Symbol>(used, s + 1));
                        _y.pop_back();
                    }
                }

                unsigned _k;
                std::size_t _n;
                std::vector<Count> _values;
                std::vector<Symbol> _y, _x;
                std::vector<Count> _tail;
                Count _snapshot = unbounded;
                BlockResult _result;
        };

        auto normal_form_prefixes(unsigned k, std::size_t depth) -> std::vector<std::vector<Symbol>>
        {
            std::vector<std::vector<Symbol>> out;
            std::vector<Symbol> y;
            auto rec = [&] (auto & self, Symbol used) -> void {
                if (y.size() == depth) {
                    out.push_back(y);
                    return;
                }
                for (Symbol s = 0 ; s < std::min<Symbol>(used + 1, k) ; ++s) {
                    y.push_back(s);
                    self(self, std::max<Symbol>(used, s + 1));
                    y.pop_back();
                }
            };
            rec(rec, 0);
            return out;
        }

        // Quick upper bound on M_k(n) from a deterministic local search; lets the
        // exhaustive pass prune from the start.
        auto heuristic_upper_bound(unsigned k, std::size_t n) -> Count
        {
            std::mt19937_64 rng(0x5eed + 31 * k + n);
            std::uniform_int_distribution<Symbol> sym(0, k - 1);
            std::uniform_int_distribution<std::size_t> pos(0, n - 1);

            auto value = [&] (const std::vector<Symbol> & s) {
                return max_occurrences(Word(k, s)).count.convert_to<Count>();
            };

            Count best = unbounded;
            for (int start = 0 ; start < 8 ; ++start) {
                std::vector<Symbol> s(n);
                for (auto & x : s)
                    x = sym(rng);
                Count current = value(s);
                for (int step = 0 ; step < 24 ; ++step) {
                    auto candidate = s;
                    candidate[pos(rng)] = sym(rng);
                    Count c = value(candidate);
                    if (c <= current) {
                        current = c;
                        s = std::move(candidate);
                    }
                }
                best = std::min(best, current);
            }
            return best;
        }
    }

    auto to_string(Method m) -> std::string
    {
        return m == Method::exhaustive ? "exhaustive" : "verified-external";
    }

    auto parse_method(const std::string & s) -> Method
    {
        if (s == "exhaustive")
            return Method::exhaustive;
        if (s == "verified-external")
            return Method::verified_external;
        throw ContractError("unknown record method '" + s + "'");
    }

    auto ExtremalBudget::max_n_for(unsigned k) const -> std::size_t
    {
        auto it = max_n.find(k);
        return it == max_n.end() ? other_max_n : it->second;
    }

    auto extremal_value(unsigned k, std::size_t n, const ExtremalBudget & budget) -> ExtremalRecord
    {
        if (k < 2)
            throw ContractError("extremal values need an alphabet of size at least 2");
        if (n < 1)
            throw ContractError("extremal values need n >= 1");
        auto limit = budget.max_n_for(k);
        if (n > limit || n > detail::native_max_length)
            throw ResourceError("max_n[k=" + std::to_string(k) + "]",
                    "n=" + std::to_string(n) + " exceeds " + std::to_string(std::min(limit, detail::native_max_length)));

        std::size_t prefix_depth = std::min<std::size_t>(n, k == 2 ? 6 : 4);
        auto blocks = normal_form_prefixes(k, prefix_depth);
        std::vector<BlockResult> results(blocks.size());

        std::atomic<Count> shared_best{ heuristic_upper_bound(k, n) };
        std::atomic<std::size_t> next_block{ 0 };

        unsigned threads = budget.threads ? budget.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = std::min<unsigned>(threads, static_cast<unsigned>(blocks.size()));

        auto worker = [&] {
            OrbitSearch search(k, n);
            while (true) {
                auto b = next_block.fetch_add(1);
                if (b >= blocks.size())
                    return;
                results[b] = search.run_block(blocks[b], shared_best.load());
                Count seen = shared_best.load();
                while (results[b].value < seen && ! shared_best.compare_exchange_weak(seen, results[b].value))
                    ;
            }
        };

        if (threads <= 1)
            worker();
        else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0 ; t < threads ; ++t)
                pool.emplace_back(worker);
        }

        // blocks are in lexicographic order, so the first minimum is the smallest key
        const BlockResult * best = nullptr;
        for (auto & r : results)
            if (r.value != unbounded && (! best || r.value < best->value))
                best = &r;
        if (! best)
            throw std::logic_error("orbit enumeration produced no candidate");

        ExtremalRecord record;
        record.k = k;
        record.n = n;
        record.minimizer = Word(k, best->minimizer);
        record.value = max_occurrences(record.minimizer).count;
        record.method = Method::exhaustive;
        record.source = "exhaustive orbit enumeration";
        if (record.value != best->value)
            throw std::logic_error("recount of the minimiser disagrees with the search");
        return record;
    }

    auto extremal_table(unsigned k, std::size_t n_max, const ExtremalBudget & budget) -> std::vector<ExtremalRecord>
    {
        std::vector<ExtremalRecord> out;
        for (std::size_t n = 1 ; n <= n_max ; ++n)
            out.push_back(extremal_value(k, n, budget));
        return out;
    }

    auto cross_compare(const CountValue & a, std::size_t n1, const CountValue & b, std::size_t n2) -> std::strong_ordering
    {
        if (n1 == 0 || n2 == 0)
            throw ContractError("root exponents must be positive");
        auto lhs = ipow(a, n2), rhs = ipow(b, n1);
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    auto cross_compare(const RootBound & x, const RootBound & y) -> std::strong_ordering
    {
        return cross_compare(x.base, x.exponent, y.base, y.exponent);
    }

    namespace
    {
        auto make_window(unsigned k, RootBound lower, RootBound upper, unsigned digits) -> MuWindow
        {
            MuWindow w;
            w.k = k;
            w.digits = digits;
            w.lower_decimal = root_decimal(lower.base, lower.exponent, digits, Rounding::down);
            w.upper_decimal = root_decimal(upper.base, upper.exponent, digits, Rounding::up);
            w.lower = std::move(lower);
            w.upper = std::move(upper);
            return w;
        }
    }

    auto mu_window_thm1(const ExtremalRecord & record, unsigned digits) -> MuWindow
    {
        if (record.n < 3)
            throw ContractError("the window needs n >= 3, got n=" + std::to_string(record.n));
        return make_window(record.k, RootBound{ record.value, record.n },
                RootBound{ record.value * record.n, record.n }, digits);
    }

    auto best_window(std::span<const ExtremalRecord> records, unsigned digits) -> MuWindow
    {
        std::optional<RootBound> lower, upper;
        unsigned k = 0;
        for (auto & r : records) {
            if (r.n < 3)
                continue;
            if (k && r.k != k)
                throw ContractError("records over different alphabets");
            k = r.k;
            RootBound lo{ r.value, r.n }, hi{ r.value * r.n, r.n };
            if (! lower || cross_compare(lo, *lower) == std::strong_ordering::greater)
                lower = lo;
            if (! upper || cross_compare(hi, *upper) == std::strong_ordering::less)
                upper = hi;
        }
        if (! lower)
            throw ContractError("no record with n >= 3");
        return make_window(k, *lower, *upper, digits);
    }

    auto mu_upper_technical(const Word & w) -> RootBound
    {
        if (w.empty())
            throw ContractError("the technical bound needs a nonempty word");
        return RootBound{ sum_over_lengths(w), w.size() };
    }

    auto check_submultiplicativity(unsigned k, std::size_t m, std::size_t n, const ExtremalBudget & budget)
        -> SubmultiplicativityReport
    {
        if (m < 1 || n < 1)
            throw ContractError("m and n must be positive");
        SubmultiplicativityReport report;
        report.k = k;
        report.m = m;
        report.n = n;
        report.lhs = extremal_value(k, m * n, budget).value;
        report.base = extremal_value(k, n, budget).value;
        report.coefficient = binomial(m * n + m - 1, m - 1);
        report.rhs = report.coefficient * ipow(report.base, m);
        report.holds = report.lhs <= report.rhs;
        return report;
    }

    auto Registry::find(unsigned k, std::size_t n) const -> std::optional<ExtremalRecord>
    {
        for (auto & r : records)
            if (r.k == k && r.n == n)
                return r;
        return std::nullopt;
    }

    auto parse_registry(const std::string & json_text) -> Registry
    {
        Registry registry;
        try {
            auto doc = nlohmann::json::parse(json_text);
            for (auto & entry : doc.at("values")) {
                ExtremalRecord r;
                r.k = entry.at("k").get<unsigned>();
                r.n = entry.at("n").get<std::size_t>();
                r.value = parse_count(entry.at("value").get<std::string>());
                r.method = parse_method(entry.at("method").get<std::string>());
                r.source = entry.value("source", "");
                r.minimizer = Word(r.k);
                if (entry.contains("witness"))
                    r.minimizer = parse_word(entry.at("witness").get<std::string>(), r.k);
                registry.records.push_back(std::move(r));
            }
        }
        catch (const nlohmann::json::exception & e) {
            throw ContractError(std::string("malformed registry: ") + e.what());
        }
        return registry;
    }

    auto load_registry(const std::string & path) -> Registry
    {
        std::ifstream in(path);
        if (! in)
            throw ContractError("cannot open registry '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_registry(buffer.str());
    }
}
