// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any line fails.

#include <subseq/certifier.hpp>
#include <subseq/construction.hpp>
#include <subseq/extremal.hpp>
#include <subseq/lcs.hpp>
#include <subseq/occurrence.hpp>
#include <subseq/shape.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace subseq;

namespace
{
    using clock_type = std::chrono::steady_clock;

    auto seconds_since(clock_type::time_point start) -> double
    {
        return std::chrono::duration<double>(clock_type::now() - start).count();
    }

    int failures = 0;

    auto criterion(int number, const char * title, const std::function<bool(std::ostringstream &)> & body) -> void
    {
        std::ostringstream detail;
        auto start = clock_type::now();
        bool passed = false;
        try {
            passed = body(detail);
        }
        catch (const std::exception & e) {
            detail << "exception: " << e.what();
        }
        failures += ! passed;
        std::printf("criterion %2d: %s  %s [%s; %.2f s]\n", number, passed ? "PASS" : "FAIL", title,
                detail.str().c_str(), seconds_since(start));
        std::fflush(stdout);
    }

    // x^(1/n) <= p/q  <=>  x q^n <= p^n
    auto root_at_most(const RootBound & r, std::uint64_t p, std::uint64_t q) -> bool
    {
        return r.base * ipow(q, r.exponent) <= ipow(p, r.exponent);
    }

    auto root_at_least(const RootBound & r, std::uint64_t p, std::uint64_t q) -> bool
    {
        return r.base * ipow(q, r.exponent) >= ipow(p, r.exponent);
    }

    auto letters(const char * s) -> Word
    {
        return Word::from_letters(s, 26);
    }
}

int main()
{
    criterion(1, "introduction count abra in abracadabra", [] (auto & out) {
        auto v = letters("abra"), w = letters("abracadabra");
        auto c = count_occurrences(v, w);
        constexpr int reps = 1000;
        auto start = clock_type::now();
        for (int i = 0 ; i < reps ; ++i)
            c = count_occurrences(v, w);
        double per_call = seconds_since(start) / reps;
        out << "count=" << c << ", " << per_call * 1e6 << " us per call";
        return c == 9 && per_call < 1e-3;
    });

    criterion(2, "M_2(n) equals double brute force for n <= 10", [] (auto & out) {
        auto start = clock_type::now();
        bool ok = true;
        for (std::size_t n = 1 ; n <= 10 ; ++n) {
            auto fast = extremal_value(2, n).value;
            auto brute = oracle::extremal(2, n);
            ok = ok && fast == brute;
            out << fast << (n < 10 ? "," : "");
        }
        return ok && seconds_since(start) <= 600;
    });

    criterion(3, "DP counts equal embedding enumeration on 1000 random pairs", [] (auto & out) {
        std::mt19937_64 rng(3);
        std::size_t mismatches = 0;
        for (int trial = 0 ; trial < 1000 ; ++trial) {
            unsigned k = 1 + trial % 3;
            auto w = oracle::random_word(rng, k, trial % 13);
            auto v = oracle::random_word(rng, k, trial % 5);
            auto dp = count_occurrences(v, w);
            auto listed = enumerate_embeddings(v, w, std::size_t(1) << 20).size();
            mismatches += dp != listed || dp != oracle::count(v, w);
        }
        out << mismatches << " mismatches";
        return mismatches == 0;
    });

    criterion(4, "growth-constant windows from n = 3..14 are mutually consistent", [] (auto & out) {
        auto table = extremal_table(2, 14);
        std::size_t conflicts = 0;
        for (std::size_t n = 3 ; n <= 14 ; ++n)
            for (std::size_t m = 3 ; m <= 14 ; ++m) {
                RootBound lower{ table[n - 1].value, n }, upper{ table[m - 1].value * m, m };
                conflicts += cross_compare(lower, upper) == std::strong_ordering::greater;
            }
        std::vector<ExtremalRecord> usable(table.begin() + 2, table.end());
        auto window = best_window(usable);
        out << conflicts << " conflicts, window [" << window.lower_decimal << ", " << window.upper_decimal << "]";
        return conflicts == 0 && root_at_most(window.lower, 15547, 10000) && root_at_least(window.upper, 3, 2);
    });

    criterion(5, "M_2(6) <= C(7,1) M_2(3)^2 with exact values", [] (auto & out) {
        auto r = check_submultiplicativity(2, 2, 3);
        out << r.lhs << " <= " << r.coefficient << " * " << r.base << "^2 = " << r.rhs;
        return r.holds && r.coefficient == 7 && r.lhs == oracle::extremal(2, 6) && r.base == oracle::extremal(2, 3);
    });

    criterion(6, "sign vectors satisfy (a)-(h); every single-sign mutation breaks one", [] (auto & out) {
        auto vectors = reference_sign_vectors();
        auto start = clock_type::now();
        auto report = verify_sign_properties(vectors);
        double elapsed = seconds_since(start);
        std::size_t broken = 0;
        for (std::size_t i = 0 ; i < 8 ; ++i)
            for (std::size_t c = 0 ; c < 8 ; ++c) {
                auto mutated = vectors;
                mutated[i].entries[c] = -mutated[i].entries[c];
                broken += ! verify_sign_properties(mutated).all_hold();
            }
        out << report.checks.size() << " checks in " << elapsed * 1e3 << " ms, " << broken << "/64 mutations broken";
        return report.all_hold() && elapsed < 1.0 && broken == 64;
    });

    criterion(7, "LCS of signed permutations equals t^|J| on all small families", [] (auto & out) {
        std::size_t families = 0, failed = 0;
        for (unsigned t = 2 ; t <= 4 ; ++t)
            for (std::size_t r = 1 ; r <= 2 ; ++r) {
                auto s = sweep_lemma_intermediate(t, r, std::size_t(1) << r);
                families += s.families;
                failed += s.failures;
            }
        for (unsigned t = 2 ; t <= 3 ; ++t) {
            auto s = sweep_lemma_intermediate(t, 3, 3);
            families += s.families;
            failed += s.failures;
        }
        out << families << " families, " << failed << " failures";
        return failed == 0 && families == 3 * (3 + 15) + 2 * (8 + 28 + 56);
    });

    criterion(8, "product of pairwise LCS of three permutations is at least |alphabet|", [] (auto & out) {
        std::vector<Symbol> base = { 0, 1, 2, 3 };
        std::vector<Word> perms;
        do
            perms.emplace_back(4, base);
        while (std::next_permutation(base.begin(), base.end()));
        std::size_t checked = 0, failed = 0;
        auto check = [&] (const Word & a, const Word & b, const Word & c) {
            auto r = check_triple_product(a, b, c);
            auto independent = oracle::lcs({ a, b }) * oracle::lcs({ a, c }) * oracle::lcs({ b, c });
            failed += ! r.holds || r.product != independent || independent < a.size();
            ++checked;
        };
        for (auto & a : perms)
            for (auto & b : perms)
                for (auto & c : perms)
                    check(a, b, c);
        std::mt19937_64 rng(8);
        for (int trial = 0 ; trial < 10000 ; ++trial)
            check(oracle::random_permutation(rng, 9), oracle::random_permutation(rng, 9), oracle::random_permutation(rng, 9));
        out << checked << " triples, " << failed << " failures";
        return failed == 0 && checked == 13824 + 10000;
    });

    criterion(9, "permutation properties at t = 2", [] (auto & out) {
        auto report = verify_permutation_properties(2);
        auto u = reference_sign_vectors();
        std::vector<Word> pi;
        for (auto & v : u)
            pi.push_back(build_permutation(v, 2));
        std::size_t worst_pair = 0, worst_triple = 0;
        for (std::size_t i = 0 ; i < 8 ; ++i) {
            worst_pair = std::max(worst_pair, lcs2(pi[i], pi[(i + 1) % 8]).length);
            worst_triple = std::max(worst_triple, lcs3(pi[i], pi[(i + 1) % 8], pi[(i + 2) % 8]).length);
        }
        std::size_t failing = 0;
        for (auto & c : report.checks)
            failing += ! c.holds;
        out << report.checks.size() << " checks, " << failing << " failing, adjacent pairs <= " << worst_pair
            << ", adjacent triples = " << worst_triple;
        return report.all_hold() && report.skipped.empty() && worst_pair <= 4 && worst_triple == 1;
    });

    ShapeSuiteReport shape_report;
    criterion(10, "shape claims on sampled embeddings at t = 2", [&] (auto & out) {
        auto start = clock_type::now();
        shape_report = run_shape_suite(ShapeSuiteConfig{});
        std::size_t claim_violations = shape_report.claims.violations();
        out << shape_report.words << " words, " << shape_report.embeddings << " embeddings, "
            << shape_report.profile_violations << " profile, " << claim_violations << " claim, "
            << shape_report.simple_bound_violations << " count-bound, " << shape_report.break_violations << " break violations";
        return shape_report.words >= 100 && shape_report.embeddings >= 10000 && shape_report.profile_violations == 0
            && shape_report.determination_violations == 0 && claim_violations == 0
            && shape_report.simple_bound_violations == 0 && shape_report.break_violations == 0
            && seconds_since(start) <= 600;
    });

    criterion(11, "every sampled shape decomposes up to at most 8 trailing entries", [&] (auto & out) {
        out << shape_report.shapes << " shapes, " << shape_report.decomposition_failures << " failures, max uncovered "
            << shape_report.max_uncovered;
        return shape_report.shapes > 0 && shape_report.decomposition_failures == 0 && shape_report.max_uncovered <= 8;
    });

    criterion(12, "certificates are confirmed by recounting", [] (auto & out) {
        std::mt19937_64 rng(12);
        std::size_t unsound = 0;
        CountValue largest = 0;
        for (int trial = 0 ; trial < 200 ; ++trial) {
            unsigned k = trial % 2 ? 6 : 4;
            std::uniform_int_distribution<std::size_t> length(1, 400);
            auto w = oracle::random_word(rng, k, length(rng));
            auto c = certify_word(w, 25 + trial % 100);
            unsound += ! c.sound() || c.verified != count_occurrences(c.witness, w);
            largest = std::max(largest, c.claimed);
        }
        auto cw = build_construction_word(2, 16);
        auto c = certify_word(cw.word, 2 * cw.block_length);
        unsound += ! c.sound();
        out << "201 words, " << unsound << " unsound, construction word bound " << c.claimed << " (recount " << c.verified << ")";
        return unsound == 0;
    });

    criterion(13, "registry value M_2(40) and the window derived from it", [] (auto & out) {
        auto registry = load_registry(SUBSEQ_REGISTRY);
        auto record = registry.find(2, 40);
        if (! record)
            return false;
        auto window = mu_window_thm1(*record, 3);
        out << "M_2(40)=" << record->value << " (" << to_string(record->method) << "), window [" << window.lower_decimal
            << ", " << window.upper_decimal << "]";
        // the exhaustive search never reaches n = 40, so the value cannot feed an oracle comparison
        return record->value == 5500610 && record->method == Method::verified_external
            && ExtremalBudget{}.max_n_for(2) < 40 && window.lower_decimal == "1.474" && window.upper_decimal == "1.617"
            && root_at_least(window.lower, 1474, 1000) && root_at_most(window.upper, 1617, 1000);
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
