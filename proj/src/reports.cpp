#include <subseq/reports.hpp>

#include <cmath>
#include <cstdio>

namespace subseq::reports
{
    namespace
    {
        auto decimals(const std::vector<std::size_t> & xs) -> json
        {
            auto out = json::array();
            for (auto x : xs)
                out.push_back(decimal(x));
            return out;
        }

        auto decimals(const std::vector<std::ptrdiff_t> & xs) -> json
        {
            auto out = json::array();
            for (auto x : xs)
                out.push_back(decimal(x));
            return out;
        }
    }

    auto decimal(const CountValue & x) -> std::string
    {
        return x.str();
    }

    auto to_json(const Word & w) -> json
    {
        return to_text(w);
    }

    auto to_json(const MostCommon & m) -> json
    {
        return { { "count", decimal(m.count) }, { "witness", to_json(m.witness) } };
    }

    auto to_json(const ExtremalRecord & r) -> json
    {
        json out = {
            { "k", decimal(r.k) },
            { "n", decimal(r.n) },
            { "value", decimal(r.value) },
            { "method", to_string(r.method) },
        };
        if (r.method == Method::exhaustive)
            out["minimizer"] = to_json(r.minimizer);
        if (! r.source.empty())
            out["source"] = r.source;
        return out;
    }

    auto to_json(const RootBound & b) -> json
    {
        return { { "base", decimal(b.base) }, { "exponent", decimal(b.exponent) } };
    }

    auto to_json(const MuWindow & m) -> json
    {
        return {
            { "k", decimal(m.k) },
            { "lower", to_json(m.lower) },
            { "upper", to_json(m.upper) },
            { "digits", decimal(m.digits) },
            { "lower_decimal", m.lower_decimal },
            { "upper_decimal", m.upper_decimal },
        };
    }

    auto to_json(const SubmultiplicativityReport & r) -> json
    {
        return {
            { "k", decimal(r.k) },
            { "m", decimal(r.m) },
            { "n", decimal(r.n) },
            { "lhs", decimal(r.lhs) },
            { "coefficient", decimal(r.coefficient) },
            { "base", decimal(r.base) },
            { "rhs", decimal(r.rhs) },
            { "holds", r.holds },
        };
    }

    auto to_json(const LcsResult & r) -> json
    {
        return { { "length", decimal(r.length) }, { "witness", to_json(r.witness) } };
    }

    auto to_json(const TripleProductReport & r) -> json
    {
        return {
            { "support", decimal(r.support) },
            { "lcs12", decimal(r.lcs12) },
            { "lcs13", decimal(r.lcs13) },
            { "lcs23", decimal(r.lcs23) },
            { "product", decimal(r.product) },
            { "holds", r.holds },
        };
    }

    auto to_json(const PropertyCheck & c) -> json
    {
        json out = { { "name", c.name } };
        if (! c.reading.empty())
            out["reading"] = c.reading;
        out["statement"] = c.statement;
        out["instances"] = decimal(c.instances);
        out["worst"] = decimal(c.worst);
        out["limit"] = decimal(c.limit);
        if (c.floor > 0)
            out["floor"] = decimal(c.floor);
        out["holds"] = c.holds;
        if (! c.counterexample.empty())
            out["counterexample"] = decimals(c.counterexample);
        return out;
    }

    auto to_json(const PropertyReport & r) -> json
    {
        auto checks = json::array();
        for (auto & c : r.checks)
            checks.push_back(to_json(c));
        return { { "all_hold", r.all_hold() }, { "checks", checks }, { "skipped", r.skipped } };
    }

    auto to_json(const IntermediateReport & r) -> json
    {
        return {
            { "agreement", decimals(r.agreement) },
            { "expected", decimal(r.expected) },
            { "lcs", decimal(r.lcs) },
            { "holds", r.holds },
        };
    }

    auto to_json(const ClaimTally & t) -> json
    {
        json out = {
            { "name", t.name },
            { "statement", t.statement },
            { "applicable", decimal(t.applicable) },
            { "violations", decimal(t.violations) },
        };
        if (t.counterexample)
            out["counterexample"] = { { "shape", to_string(t.counterexample->first) },
                { "i", decimal(t.counterexample->second) } };
        return out;
    }

    auto to_json(const ShapeSuiteReport & r) -> json
    {
        auto & c = r.config;
        json config = {
            { "t", decimal(c.t) },
            { "min_blocks", decimal(c.min_blocks) },
            { "max_blocks", decimal(c.max_blocks) },
            { "samples_per_blocks", decimal(c.samples_per_blocks) },
            { "embeddings_per_end", decimal(c.embeddings_per_end) },
            { "break_samples", decimal(c.break_samples) },
            { "seed", decimal(c.seed) },
        };
        json histogram;
        const char * labels[] = { "0", "1", "2", "3", "4", "8" };
        for (std::size_t i = 0 ; i < 6 ; ++i)
            histogram[labels[i]] = decimal(r.class_histogram[i]);
        auto claims = json::array();
        for (auto & t : r.claims.tallies())
            claims.push_back(to_json(t));
        return {
            { "passed", r.passed() },
            { "config", config },
            { "words", decimal(r.words) },
            { "embeddings", decimal(r.embeddings) },
            { "profile_violations", decimal(r.profile_violations) },
            { "determination_violations", decimal(r.determination_violations) },
            { "simple_bound_checks", decimal(r.simple_bound_checks) },
            { "simple_bound_violations", decimal(r.simple_bound_violations) },
            { "break_checks", decimal(r.break_checks) },
            { "break_violations", decimal(r.break_violations) },
            { "shapes", decimal(r.shapes) },
            { "decomposition_failures", decimal(r.decomposition_failures) },
            { "max_uncovered", decimal(r.max_uncovered) },
            { "class_histogram", histogram },
            { "claims", claims },
            { "failures", r.failures },
        };
    }

    auto to_json(const CertificateStep & s) -> json
    {
        json out = { { "rule", s.rule }, { "refs", s.refs }, { "blocks", decimals(s.blocks) } };
        if (! s.note.empty())
            out["note"] = s.note;
        return out;
    }

    auto to_json(const Certificate & c) -> json
    {
        auto steps = json::array();
        for (auto & s : c.steps)
            steps.push_back(to_json(s));
        json out = {
            { "witness", to_json(c.witness) },
            { "witness_length", decimal(c.witness.size()) },
            { "claimed", decimal(c.claimed) },
            { "verified", decimal(c.verified) },
            { "sound", c.sound() },
            { "steps", steps },
        };
        if (c.implied_exponent > 0) {
            // informational: the triple product bounds a power of M(w), not a single count
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6g",
                    std::pow(c.triple_product.convert_to<double>(), 1.0 / static_cast<double>(c.implied_exponent)));
            out["implied"] = {
                { "triple_product", decimal(c.triple_product) },
                { "exponent", decimal(c.implied_exponent) },
                { "root", buf },
            };
        }
        return out;
    }

    auto envelope(const std::string & command, std::uint64_t seed, const json & budgets, json result) -> json
    {
        return {
            { "schema_version", schema_version },
            { "tool_version", tool_version },
            { "command", command },
            { "seed", decimal(seed) },
            { "budgets", budgets },
            { "result", std::move(result) },
        };
    }
}
