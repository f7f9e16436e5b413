#include "cli.hpp"

#include <subseq/certifier.hpp>
#include <subseq/construction.hpp>
#include <subseq/errors.hpp>
#include <subseq/extremal.hpp>
#include <subseq/lcs.hpp>
#include <subseq/occurrence.hpp>
#include <subseq/reports.hpp>
#include <subseq/shape.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#ifndef SUBSEQ_DEFAULT_REGISTRY
#define SUBSEQ_DEFAULT_REGISTRY "data/known_values.json"
#endif

namespace subseq::cli
{
    namespace
    {
        using reports::json;
        using reports::decimal;

        struct UsageError : std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        struct Budgets
        {
            std::string profile = "default";
            std::size_t lcs = default_lcs_budget;
            std::size_t construction = default_construction_budget;
            ExtremalBudget extremal;
        };

        auto budgets_from_environment() -> Budgets
        {
            Budgets b;
            auto env = std::getenv("SUBSEQ_BUDGET_PROFILE");
            if (! env || std::string(env).empty() || std::string(env) == "default")
                return b;
            b.profile = env;
            if (b.profile == "small") {
                b.lcs = 10'000'000;
                b.construction = 10'000'000;
                b.extremal.max_n = { { 2, 14 }, { 3, 8 }, { 4, 6 } };
                b.extremal.other_max_n = 5;
            }
            else if (b.profile == "large") {
                b.lcs = 1'000'000'000;
                b.construction = 1'000'000'000;
                b.extremal.max_n = { { 2, 20 }, { 3, 11 }, { 4, 8 } };
                b.extremal.other_max_n = 7;
            }
            else
                throw UsageError("SUBSEQ_BUDGET_PROFILE must be small, default or large, not '" + b.profile + "'");
            return b;
        }

        auto to_json(const Budgets & b) -> json
        {
            json max_n;
            for (auto & [k, n] : b.extremal.max_n)
                max_n[std::to_string(k)] = decimal(n);
            max_n["other"] = decimal(b.extremal.other_max_n);
            return {
                { "profile", b.profile },
                { "lcs_cells", decimal(b.lcs) },
                { "construction_symbols", decimal(b.construction) },
                { "max_n", max_n },
            };
        }

        /// Letters give k = largest letter + 1, comma-separated ids the largest id + 1; --k overrides.
        auto infer_alphabet(const std::string & text) -> unsigned
        {
            if (text == "-" || text.empty())
                return 2;
            unsigned k = 0;
            if (text.find(',') == std::string::npos && std::all_of(text.begin(), text.end(), [] (char c) { return c >= 'a' && c <= 'z'; })) {
                for (char c : text)
                    k = std::max(k, static_cast<unsigned>(c - 'a') + 1);
            }
            else {
                std::stringstream in(text);
                std::string item;
                while (std::getline(in, item, ',')) {
                    try {
                        k = std::max(k, static_cast<unsigned>(std::stoul(item)) + 1);
                    }
                    catch (const std::logic_error &) {
                        throw UsageError("cannot read word '" + text + "'");
                    }
                }
            }
            return std::max(k, 2u);
        }

        auto read_words(const std::vector<std::string> & texts, unsigned k) -> std::vector<Word>
        {
            if (k == 0)
                for (auto & t : texts)
                    k = std::max(k, infer_alphabet(t));
            std::vector<Word> out;
            for (auto & t : texts)
                out.push_back(parse_word(t, k));
            return out;
        }

        auto read_word(const std::string & text, unsigned k) -> Word
        {
            return read_words({ text }, k).front();
        }

        // brute force over all 2^n position subsets, kept apart from the library's search
        auto brute_most_common(const Word & w) -> std::uint64_t
        {
            std::map<std::vector<Symbol>, std::uint64_t> tally;
            for (std::uint64_t mask = 1 ; mask < (std::uint64_t(1) << w.size()) ; ++mask) {
                std::vector<Symbol> v;
                for (std::size_t i = 0 ; i < w.size() ; ++i)
                    if (mask >> i & 1)
                        v.push_back(w[i]);
                ++tally[v];
            }
            std::uint64_t best = 1;
            for (auto & [v, c] : tally)
                best = std::max(best, c);
            return best;
        }

        auto mutation_tripwire() -> std::pair<std::size_t, std::size_t>
        {
            auto vectors = reference_sign_vectors();
            std::size_t tried = 0, broken = 0;
            for (std::size_t i = 0 ; i < vectors.size() ; ++i)
                for (std::size_t c = 0 ; c < vectors[i].size() ; ++c) {
                    auto mutated = vectors;
                    mutated[i].entries[c] = -mutated[i].entries[c];
                    ++tried;
                    broken += ! verify_sign_properties(mutated).all_hold();
                }
            return { tried, broken };
        }

        auto signs_report() -> json
        {
            auto report = verify_sign_properties(reference_sign_vectors());
            auto [tried, broken] = mutation_tripwire();
            return {
                { "passed", report.all_hold() && broken == tried },
                { "properties", reports::to_json(report) },
                { "mutations", { { "tried", decimal(tried) }, { "broken", decimal(broken) } } },
            };
        }

        auto sweep_json(const LemmaSweep & s) -> json
        {
            json out = {
                { "t", decimal(s.t) },
                { "r", decimal(s.r) },
                { "max_family", decimal(s.max_family) },
                { "families", decimal(s.families) },
                { "failures", decimal(s.failures) },
            };
            if (s.failure) {
                auto family = json::array();
                for (auto & u : s.failing_family)
                    family.push_back(to_string(u));
                out["failing_family"] = family;
                out["failing_report"] = reports::to_json(*s.failure);
            }
            return out;
        }

        /// All U for r <= 2 and t <= max_t, plus |U| <= 3 at r = 3 when t <= 3.
        auto lemma_report(unsigned max_t, std::size_t budget, bool with_r3) -> json
        {
            auto sweeps = json::array();
            bool passed = true;
            for (unsigned t = 2 ; t <= max_t ; ++t) {
                for (std::size_t r = 1 ; r <= 2 ; ++r) {
                    auto s = sweep_lemma_intermediate(t, r, std::size_t(1) << r, budget);
                    passed = passed && s.failures == 0;
                    sweeps.push_back(sweep_json(s));
                }
                if (with_r3 && t <= 3) {
                    auto s = sweep_lemma_intermediate(t, 3, 3, budget);
                    passed = passed && s.failures == 0;
                    sweeps.push_back(sweep_json(s));
                }
            }
            return { { "passed", passed }, { "sweeps", sweeps } };
        }

        struct Common
        {
            std::uint64_t seed = 1;
            unsigned threads = 0;
            std::string format;
            std::string out_path;
            std::optional<std::size_t> budget;
        };

        struct Outcome
        {
            std::string text;
            bool violation = false;
        };

        auto emit_json(const std::string & command, const Common & common, const Budgets & budgets, json result) -> std::string
        {
            return reports::envelope(command, common.seed, to_json(budgets), std::move(result)).dump(2) + "\n";
        }

        auto require_format(const std::string & format, std::initializer_list<const char *> allowed) -> void
        {
            for (auto a : allowed)
                if (format == a)
                    return;
            throw UsageError("format '" + format + "' is not available for this command");
        }
    }

    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{ "Exact subsequence-occurrence toolkit", "subseq" };
        app.require_subcommand(1);
        app.fallthrough();
        app.set_version_flag("--version", reports::tool_version);

        Common common;
        app.add_option("--seed", common.seed, "Seed for sampling, recorded in every report");
        app.add_option("--threads", common.threads, "Worker threads (0: hardware concurrency)");
        app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({ "json", "csv", "text" }));
        app.add_option("--out", common.out_path, "Write results to this file instead of stdout");
        app.add_option("--budget", common.budget, "Cell budget for LCS tables (overrides the profile)")->check(CLI::PositiveNumber);

        unsigned k = 0;
        std::string v_text, w_text;

        auto count = app.add_subcommand("count", "M(v, w): number of embeddings of v into w");
        count->add_option("--v", v_text, "Pattern word")->required();
        count->add_option("--w", w_text, "Host word")->required();
        count->add_option("--k", k, "Alphabet size (inferred when omitted)");

        auto most_common = app.add_subcommand("most-common", "M(w) with the lexicographically smallest maximiser");
        most_common->add_option("--w", w_text, "Word")->required();
        most_common->add_option("--k", k, "Alphabet size");

        auto profile = app.add_subcommand("profile", "M(w | l) for every length l, and their sum");
        profile->add_option("--w", w_text, "Word")->required();
        profile->add_option("--k", k, "Alphabet size");

        unsigned table_k = 2;
        std::size_t n_max = 10, n = 0, max_n = 0;
        unsigned digits = 3;
        std::string registry_path = SUBSEQ_DEFAULT_REGISTRY;
        auto table = app.add_subcommand("table", "Exact M_k(n) for n = 1..n-max");
        table->add_option("--k", table_k, "Alphabet size")->check(CLI::Range(1u, 64u));
        table->add_option("--n-max", n_max, "Largest length")->check(CLI::Range(1, 64));
        table->add_option("--max-n", max_n, "Override the exhaustive-search limit for this k");

        auto mu = app.add_subcommand("mu", "Rigorous window for the growth constant from M_k(n)");
        mu->add_option("--k", table_k, "Alphabet size")->check(CLI::Range(1u, 64u));
        mu->add_option("--n", n, "Length, at least 3")->required();
        mu->add_option("--digits", digits, "Decimal digits of the rounded bounds")->check(CLI::Range(1u, 30u));
        mu->add_option("--registry", registry_path, "Registry of literature values used beyond the search limit");
        mu->add_option("--max-n", max_n, "Override the exhaustive-search limit for this k");

        std::vector<std::string> lcs_words;
        auto lcs = app.add_subcommand("lcs", "Longest common subsequence of two or more words");
        lcs->add_option("words", lcs_words, "Words")->required();
        lcs->add_option("--k", k, "Alphabet size");

        unsigned t = 2;
        std::size_t blocks = 16;
        auto construct = app.add_subcommand("construct", "Write the periodic permutation word as a word file");
        construct->add_option("--t", t, "Coordinate range")->check(CLI::Range(2u, 64u));
        construct->add_option("--blocks", blocks, "Number of blocks")->check(CLI::PositiveNumber);

        std::string level = "signs";
        auto verify_construction = app.add_subcommand("verify-construction", "Check the sign-vector and permutation properties");
        verify_construction->add_option("--t", t, "Coordinate range")->check(CLI::Range(2u, 64u));
        verify_construction->add_option("--level", level, "What to check")->check(CLI::IsMember({ "signs", "lemma", "permutations" }));

        ShapeSuiteConfig shape_config;
        std::optional<std::size_t> shape_blocks;
        auto shape = app.add_subcommand("shape", "Sample embeddings into construction words and check the shape claims");
        shape->add_option("--t", shape_config.t, "Coordinate range")->check(CLI::Range(2u, 8u));
        shape->add_option("--blocks", shape_blocks, "Single block count (sets both bounds)")->check(CLI::Range(9, 64));
        shape->add_option("--min-blocks", shape_config.min_blocks, "Smallest block count")->check(CLI::Range(9, 64));
        shape->add_option("--max-blocks", shape_config.max_blocks, "Largest block count")->check(CLI::Range(9, 64));
        shape->add_option("--samples", shape_config.samples_per_blocks, "Sampled words per block count");
        shape->add_option("--embeddings", shape_config.embeddings_per_end, "Embeddings enumerated from each end");
        shape->add_option("--break-samples", shape_config.break_samples, "Sampled block subsequences for the break bound");

        std::string in_path;
        std::size_t chunk = 0;
        auto certify = app.add_subcommand("certify", "Lower-bound certificate for M(w), checked by recounting");
        certify->add_option("--w", w_text, "Word");
        certify->add_option("--in", in_path, "Word file; every word is certified");
        certify->add_option("--chunk", chunk, "Chunk length (0: the whole word)");
        certify->add_option("--k", k, "Alphabet size");

        bool quick = false;
        auto verify_all = app.add_subcommand("verify-all", "Run the verification suites");
        verify_all->add_flag("--quick", quick, "Small instances only");

        auto start = std::chrono::steady_clock::now();
        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            app.exit(e, out, err);
            return e.get_exit_code() == 0 ? success : usage_error;
        }

        Outcome outcome;
        try {
            auto budgets = budgets_from_environment();
            if (common.budget)
                budgets.lcs = *common.budget;
            budgets.extremal.threads = common.threads;
            auto format = [&] (const char * fallback) { return common.format.empty() ? std::string(fallback) : common.format; };

            if (*count) {
                auto f = format("text");
                require_format(f, { "text", "json" });
                auto words = read_words({ v_text, w_text }, k);
                auto c = count_occurrences(words[0], words[1]);
                if (f == "text")
                    outcome.text = decimal(c) + "\n";
                else
                    outcome.text = emit_json("count", common, budgets,
                            { { "v", to_text(words[0]) }, { "w", to_text(words[1]) }, { "count", decimal(c) } });
            }
            else if (*most_common) {
                auto f = format("json");
                require_format(f, { "text", "json" });
                auto w = read_word(w_text, k);
                auto m = max_occurrences(w);
                if (f == "text")
                    outcome.text = decimal(m.count) + " " + to_text(m.witness) + "\n";
                else
                    outcome.text = emit_json("most-common", common, budgets, { { "w", to_text(w) }, { "most_common", reports::to_json(m) } });
            }
            else if (*profile) {
                auto f = format("json");
                require_format(f, { "csv", "json" });
                auto w = read_word(w_text, k);
                auto p = occurrence_profile(w);
                CountValue sum = 0;
                for (auto & m : p)
                    sum += m.count;
                if (f == "csv") {
                    outcome.text = "length,count,witness\n";
                    for (std::size_t l = 0 ; l < p.size() ; ++l)
                        outcome.text += std::to_string(l) + "," + decimal(p[l].count) + "," + to_text(p[l].witness) + "\n";
                }
                else {
                    auto rows = json::array();
                    for (std::size_t l = 0 ; l < p.size() ; ++l)
                        rows.push_back({ { "length", decimal(l) }, { "count", decimal(p[l].count) }, { "witness", to_text(p[l].witness) } });
                    outcome.text = emit_json("profile", common, budgets, { { "w", to_text(w) }, { "profile", rows }, { "sum", decimal(sum) } });
                }
            }
            else if (*table) {
                auto f = format("json");
                require_format(f, { "csv", "json" });
                if (max_n > 0)
                    budgets.extremal.max_n[table_k] = max_n;
                auto records = extremal_table(table_k, n_max, budgets.extremal);
                if (f == "csv") {
                    outcome.text = "k,n,value,method,minimizer\n";
                    for (auto & r : records)
                        outcome.text += std::to_string(r.k) + "," + std::to_string(r.n) + "," + decimal(r.value) + ","
                            + to_string(r.method) + "," + to_text(r.minimizer) + "\n";
                }
                else {
                    auto rows = json::array();
                    for (auto & r : records)
                        rows.push_back(reports::to_json(r));
                    outcome.text = emit_json("table", common, budgets, { { "records", rows } });
                }
            }
            else if (*mu) {
                require_format(format("json"), { "json" });
                if (max_n > 0)
                    budgets.extremal.max_n[table_k] = max_n;
                if (n < 3)
                    throw UsageError("--n must be at least 3");
                std::optional<ExtremalRecord> record;
                if (n <= budgets.extremal.max_n_for(table_k))
                    record = extremal_value(table_k, n, budgets.extremal);
                else
                    record = load_registry(registry_path).find(table_k, n);
                if (! record)
                    throw ResourceError("extremal_n", "M_" + std::to_string(table_k) + "(" + std::to_string(n)
                            + ") is beyond the search limit and not in the registry");
                outcome.text = emit_json("mu", common, budgets,
                        { { "record", reports::to_json(*record) }, { "window", reports::to_json(mu_window_thm1(*record, digits)) } });
            }
            else if (*lcs) {
                auto f = format("json");
                require_format(f, { "text", "json" });
                if (lcs_words.size() < 2)
                    throw UsageError("lcs needs at least two words");
                auto words = read_words(lcs_words, k);
                json result = { { "words", lcs_words } };
                std::string text;
                if (words.size() == 2) {
                    auto r = lcs2(words[0], words[1]);
                    result["lcs"] = reports::to_json(r);
                    text = std::to_string(r.length) + " " + to_text(r.witness) + "\n";
                }
                else {
                    auto length = multi_lcs(words, budgets.lcs);
                    result["lcs"] = { { "length", decimal(length) } };
                    text = std::to_string(length) + "\n";
                }
                outcome.text = f == "text" ? text : emit_json("lcs", common, budgets, result);
            }
            else if (*construct) {
                auto cw = build_construction_word(t, blocks, budgets.construction);
                std::ostringstream file;
                write_word_file(file, WordFile{ static_cast<unsigned>(cw.word.alphabet_size()), { cw.word } });
                outcome.text = file.str();
                err << "construction word: t=" << t << ", " << blocks << " blocks of " << cw.block_length << " symbols\n";
            }
            else if (*verify_construction) {
                require_format(format("json"), { "json" });
                json result = { { "t", decimal(t) }, { "level", level } };
                bool passed = true;
                if (level == "signs") {
                    auto r = signs_report();
                    passed = r["passed"].get<bool>();
                    result["report"] = r;
                }
                else if (level == "lemma") {
                    auto r = lemma_report(t, budgets.lcs, true);
                    passed = r["passed"].get<bool>();
                    result["report"] = r;
                }
                else {
                    auto r = verify_permutation_properties(t, budgets.lcs, common.threads);
                    passed = r.all_hold();
                    result["report"] = reports::to_json(r);
                }
                result["passed"] = passed;
                outcome.violation = ! passed;
                outcome.text = emit_json("verify-construction", common, budgets, result);
            }
            else if (*shape) {
                require_format(format("json"), { "json" });
                if (shape_blocks)
                    shape_config.min_blocks = shape_config.max_blocks = *shape_blocks;
                if (shape_config.min_blocks > shape_config.max_blocks)
                    throw UsageError("--min-blocks exceeds --max-blocks");
                shape_config.seed = common.seed;
                shape_config.threads = common.threads;
                auto report = run_shape_suite(shape_config);
                outcome.violation = ! report.passed();
                outcome.text = emit_json("shape", common, budgets, reports::to_json(report));
            }
            else if (*certify) {
                require_format(format("json"), { "json" });
                std::vector<Word> words;
                if (! in_path.empty())
                    words = read_word_file(in_path).words;
                if (! w_text.empty())
                    words.push_back(read_word(w_text, k));
                if (words.empty())
                    throw UsageError("certify needs --w or --in");
                auto results = json::array();
                for (auto & w : words) {
                    auto c = certify_word(w, chunk == 0 ? std::max<std::size_t>(w.size(), 1) : chunk);
                    outcome.violation = outcome.violation || ! c.sound();
                    results.push_back({ { "length", decimal(w.size()) }, { "certificate", reports::to_json(c) } });
                }
                outcome.text = emit_json("certify", common, budgets,
                        { { "chunk", decimal(chunk) }, { "all_sound", ! outcome.violation }, { "certificates", results } });
            }
            else if (*verify_all) {
                require_format(format("json"), { "json" });
                auto suites = json::array();
                auto suite = [&] (const std::string & name, const std::function<json()> & body) {
                    auto begin = std::chrono::steady_clock::now();
                    auto r = body();
                    bool passed = r["passed"].get<bool>();
                    outcome.violation = outcome.violation || ! passed;
                    suites.push_back({ { "name", name }, { "passed", passed }, { "detail", r } });
                    err << (passed ? "PASS " : "FAIL ") << name << " ("
                        << std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count() << " s)\n";
                };

                suite("introduction-count", [] {
                    auto c = count_occurrences(Word::from_letters("abra", 26), Word::from_letters("abracadabra", 26));
                    return json{ { "passed", c == 9 }, { "count", decimal(c) } };
                });
                suite("sign-vectors", [] { return signs_report(); });
                suite("intermediate-lemma", [&] { return lemma_report(quick ? 3 : 4, budgets.lcs, ! quick); });
                std::size_t oracle_n = quick ? 8 : 10;
                suite("extremal-oracle", [&] {
                    bool passed = true;
                    auto rows = json::array();
                    for (std::size_t len = 1 ; len <= oracle_n ; ++len) {
                        std::uint64_t best = UINT64_MAX;
                        for (std::uint64_t bits = 0 ; bits < (std::uint64_t(1) << len) ; ++bits) {
                            std::vector<Symbol> s;
                            for (std::size_t i = 0 ; i < len ; ++i)
                                s.push_back(bits >> i & 1);
                            Word w(2, s);
                            auto brute = brute_most_common(w);
                            passed = passed && max_occurrences(w).count == brute;
                            best = std::min(best, brute);
                        }
                        auto record = extremal_value(2, len, budgets.extremal);
                        passed = passed && record.value == best;
                        rows.push_back({ { "n", decimal(len) }, { "value", decimal(record.value) }, { "brute_force", decimal(best) } });
                    }
                    return json{ { "passed", passed }, { "values", rows } };
                });
                suite("triple-product", [] {
                    std::vector<Symbol> base = { 0, 1, 2, 3 };
                    std::vector<Word> perms;
                    do
                        perms.emplace_back(4, base);
                    while (std::next_permutation(base.begin(), base.end()));
                    std::size_t checked = 0, failures = 0;
                    for (auto & a : perms)
                        for (auto & b : perms)
                            for (auto & c : perms) {
                                ++checked;
                                failures += ! check_triple_product(a, b, c).holds;
                            }
                    return json{ { "passed", failures == 0 }, { "triples", decimal(checked) }, { "failures", decimal(failures) } };
                });
                suite("submultiplicativity", [&] {
                    auto r = check_submultiplicativity(2, 2, 3, budgets.extremal);
                    return json{ { "passed", r.holds }, { "report", reports::to_json(r) } };
                });
                if (! quick) {
                    suite("permutation-properties", [&] {
                        auto r = verify_permutation_properties(2, budgets.lcs, common.threads);
                        return json{ { "passed", r.all_hold() }, { "report", reports::to_json(r) } };
                    });
                    suite("shape-claims", [&] {
                        ShapeSuiteConfig config;
                        config.seed = common.seed;
                        config.threads = common.threads;
                        auto r = run_shape_suite(config);
                        return json{ { "passed", r.passed() }, { "report", reports::to_json(r) } };
                    });
                    suite("certifier", [&] {
                        auto cw = build_construction_word(2, 16, budgets.construction);
                        auto c = certify_word(cw.word, 2 * cw.block_length);
                        return json{ { "passed", c.sound() }, { "claimed", decimal(c.claimed) }, { "verified", decimal(c.verified) } };
                    });
                    suite("registry-window", [&] {
                        auto record = load_registry(registry_path).find(2, 40);
                        if (! record)
                            return json{ { "passed", false }, { "error", "M_2(40) missing from the registry" } };
                        auto window = mu_window_thm1(*record, 3);
                        return json{ { "passed", window.lower_decimal == "1.474" && window.upper_decimal == "1.617" },
                            { "window", reports::to_json(window) } };
                    });
                }
                outcome.text = emit_json("verify-all", common, budgets,
                        { { "quick", quick }, { "passed", ! outcome.violation }, { "suites", suites } });
            }
        }
        catch (const UsageError & e) {
            err << "usage error: " << e.what() << "\n";
            return usage_error;
        }
        catch (const ResourceError & e) {
            err << e.what() << "\n";
            return usage_error;
        }
        catch (const std::logic_error & e) {
            // ContractError, RangeError and malformed input
            err << "invalid input: " << e.what() << "\n";
            return usage_error;
        }
        catch (const std::runtime_error & e) {
            err << "error: " << e.what() << "\n";
            return usage_error;
        }

        if (common.out_path.empty())
            out << outcome.text;
        else {
            std::ofstream file(common.out_path);
            if (! file) {
                err << "cannot write " << common.out_path << "\n";
                return usage_error;
            }
            file << outcome.text;
        }
        err << "wall time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
        return outcome.violation ? property_violation : success;
    }
}
