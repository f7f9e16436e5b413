#include <subseq/construction.hpp>
#include <subseq/errors.hpp>
#include <subseq/lcs.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <chrono>

using namespace subseq;

namespace
{
    auto all_tuples(unsigned t, std::size_t r) -> std::vector<TupleSymbol>
    {
        std::vector<TupleSymbol> out;
        std::vector<unsigned> c(r, 1);
        while (true) {
            out.push_back(TupleSymbol{ c });
            std::size_t i = r;
            while (i > 0 && c[i - 1] == t)
                c[--i] = 1;
            if (i == 0)
                return out;
            ++c[i - 1];
        }
    }

    auto all_sign_vectors(std::size_t r) -> std::vector<SignVector>
    {
        std::vector<SignVector> out;
        for (unsigned mask = 0 ; mask < (1u << r) ; ++mask) {
            SignVector u;
            for (std::size_t c = 0 ; c < r ; ++c)
                u.entries.push_back(mask >> (r - 1 - c) & 1 ? -1 : 1);
            out.push_back(u);
        }
        return out;
    }

    // sorts tuples by their signed keys directly
    auto sorted_by_key(const SignVector & u, unsigned t) -> std::vector<TupleSymbol>
    {
        auto tuples = all_tuples(t, u.size());
        std::stable_sort(tuples.begin(), tuples.end(), [&] (const TupleSymbol & a, const TupleSymbol & b) {
                return signed_key(u, a) < signed_key(u, b); });
        return tuples;
    }

    auto find(const PropertyReport & report, const std::string & name, const std::string & reading = "") -> const PropertyCheck &
    {
        for (auto & c : report.checks)
            if (c.name == name && (reading.empty() || c.reading == reading || c.reading.empty()))
                return c;
        throw std::logic_error("no check " + name);
    }
}

TEST_CASE("signed keys and permutation order")
{
    CHECK(signed_key(parse_sign_vector("++"), TupleSymbol{ { 1, 2 } }) == std::vector<int>{ 1, 2 });
    CHECK(signed_key(parse_sign_vector("-+"), TupleSymbol{ { 2, 1 } }) == std::vector<int>{ -2, 1 });
    CHECK_THROWS_AS(signed_key(parse_sign_vector("-"), TupleSymbol{ { 2, 1 } }), ContractError);

    auto order = [] (const char * u) {
        std::vector<std::vector<unsigned>> out;
        for (auto s : build_permutation(parse_sign_vector(u), 2))
            out.push_back(unpack(s, 2, 2).coordinates);
        return out;
    };
    using V = std::vector<std::vector<unsigned>>;
    CHECK(order("-+") == V{ { 2, 1 }, { 2, 2 }, { 1, 1 }, { 1, 2 } });
    CHECK(order("++") == V{ { 1, 1 }, { 1, 2 }, { 2, 1 }, { 2, 2 } });
    CHECK(order("--") == V{ { 2, 2 }, { 2, 1 }, { 1, 2 }, { 1, 1 } });
}

TEST_CASE("packing is a bijection, coordinate 1 most significant")
{
    for (unsigned t = 2 ; t <= 4 ; ++t) {
        std::size_t id = 0;
        for (auto & a : all_tuples(t, 3)) {
            CHECK(pack(a, t) == id);
            CHECK(unpack(static_cast<Symbol>(id), t, 3) == a);
            ++id;
        }
    }
    CHECK_THROWS_AS(pack(TupleSymbol{ { 3 } }, 2), ContractError);
    CHECK_THROWS_AS(tuple_alphabet_size(1, 3), ContractError);
    CHECK_THROWS_AS(tuple_alphabet_size(10, 9), ResourceError);
}

TEST_CASE("permutations match a direct sort by signed key")
{
    for (std::size_t r = 1 ; r <= 3 ; ++r)
        for (unsigned t = 2 ; t <= 4 ; ++t)
            for (auto & u : all_sign_vectors(r)) {
                auto pi = build_permutation(u, t);
                REQUIRE(pi.size() == tuple_alphabet_size(t, r));
                CHECK(is_permutation_word(pi));
                auto expected = sorted_by_key(u, t);
                for (std::size_t i = 0 ; i < pi.size() ; ++i)
                    REQUIRE(unpack(pi[i], t, r) == expected[i]);
            }
}

TEST_CASE("flipping one sign reverses exactly the pairs first separated there")
{
    unsigned t = 3;
    std::size_t r = 3;
    for (auto & u : all_sign_vectors(r))
        for (std::size_t c = 0 ; c < r ; ++c) {
            auto flipped = u;
            flipped.entries[c] = -flipped.entries[c];
            auto p = build_permutation(u, t), q = build_permutation(flipped, t);
            std::vector<std::size_t> rank_p(p.size()), rank_q(q.size());
            for (std::size_t i = 0 ; i < p.size() ; ++i) {
                rank_p[p[i]] = i;
                rank_q[q[i]] = i;
            }
            for (Symbol a = 0 ; a < p.size() ; ++a)
                for (Symbol b = a + 1 ; b < p.size() ; ++b) {
                    auto ta = unpack(a, t, r).coordinates, tb = unpack(b, t, r).coordinates;
                    std::size_t first = 0;
                    while (ta[first] == tb[first])
                        ++first;
                    bool reversed = (rank_p[a] < rank_p[b]) != (rank_q[a] < rank_q[b]);
                    REQUIRE(reversed == (first == c));
                }
        }
}

TEST_CASE("reference vectors and agreement")
{
    auto u = reference_sign_vectors();
    REQUIRE(u.size() == 8);
    CHECK(to_string(u[0]) == "++++++++");
    CHECK(to_string(u[1]) == "---+-+--");
    CHECK(to_string(u[7]) == "--+---+-");
    CHECK(parse_sign_vector("(−,−,+)") == parse_sign_vector("--+"));
    CHECK_THROWS_AS(parse_sign_vector("+x"), ContractError);

    SignVector one[] = { u[0] };
    CHECK(agreement_set(one).size() == 8);
    SignVector two[] = { u[0], u[1] };
    CHECK(agreement_set(two) == std::vector<std::size_t>{ 4, 6 });
    SignVector three[] = { u[0], u[1], u[2] };
    CHECK(agreement_set(three).empty());
    CHECK_THROWS_AS(agreement_set(std::span<const SignVector>{}), ContractError);

    CHECK(periodic_index(1) == 1);
    CHECK(periodic_index(8) == 8);
    CHECK(periodic_index(9) == 1);
    CHECK(periodic_index(16) == 8);
    CHECK_THROWS_AS(periodic_index(0), RangeError);
}

TEST_CASE("sign-vector properties")
{
    auto start = std::chrono::steady_clock::now();
    auto report = verify_sign_properties(reference_sign_vectors());
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
    CHECK(report.all_hold());
    CHECK(report.checks.size() == 8);
    CHECK(find(report, "a").worst == 2);
    CHECK(find(report, "c").worst == 0);
    CHECK(find(report, "f").instances == 24);

    std::vector<SignVector> equal(8, reference_sign_vectors()[0]);
    auto bad = verify_sign_properties(equal);
    CHECK_FALSE(find(bad, "a").holds);
    CHECK(find(bad, "a").worst == 8);

    // every single-sign mutation of the family breaks something
    std::size_t broken = 0;
    for (std::size_t i = 0 ; i < 8 ; ++i)
        for (std::size_t c = 0 ; c < 8 ; ++c) {
            auto mutated = reference_sign_vectors();
            mutated[i].entries[c] = -mutated[i].entries[c];
            broken += ! verify_sign_properties(mutated).all_hold();
        }
    CHECK(broken == 64);
}

TEST_CASE("construction word")
{
    auto one = build_construction_word(2, 1);
    CHECK(one.word.size() == 256);
    for (std::size_t i = 0 ; i < 256 ; ++i)
        REQUIRE(one.word[i] == i);

    auto nine = build_construction_word(2, 9);
    CHECK(nine.word.size() == 9 * 256);
    CHECK(nine.block(1) == nine.block(9));
    CHECK(nine.block(2) == build_permutation(reference_sign_vectors()[1], 2));
    CHECK(nine.block(8) == build_permutation(reference_sign_vectors()[7], 2));
    CHECK_THROWS_AS(nine.block(10), RangeError);
    CHECK_THROWS_AS(build_construction_word(2, 0), ContractError);
    CHECK_THROWS_AS(build_construction_word(3, 100, 10000), ResourceError);
}

TEST_CASE("LCS of a signed family is t to the number of agreeing coordinates")
{
    SignVector pair[] = { parse_sign_vector("++"), parse_sign_vector("--") };
    auto r = verify_lemma_intermediate(2, pair);
    CHECK(r.agreement.empty());
    CHECK(r.lcs == 1);
    CHECK(r.holds);

    SignVector agreeing[] = { parse_sign_vector("+-"), parse_sign_vector("++") };
    r = verify_lemma_intermediate(3, agreeing);
    CHECK(r.agreement == std::vector<std::size_t>{ 1 });
    CHECK(r.lcs == 3);

    SignVector single[] = { parse_sign_vector("+-+") };
    CHECK(verify_lemma_intermediate(2, single).lcs == 8);

    // the product table against the subset oracle on the smallest cases
    for (unsigned t = 2 ; t <= 3 ; ++t) {
        auto vs = all_sign_vectors(2);
        for (unsigned mask = 1 ; mask < 16 ; ++mask) {
            std::vector<SignVector> family;
            std::vector<Word> perms;
            for (std::size_t i = 0 ; i < 4 ; ++i)
                if (mask >> i & 1) {
                    family.push_back(vs[i]);
                    perms.push_back(build_permutation(vs[i], t));
                }
            auto report = verify_lemma_intermediate(t, family);
            CHECK(report.holds);
            CHECK(report.lcs == oracle::lcs(perms));
        }
    }
}

TEST_CASE("permutation properties at t = 2")
{
    auto report = verify_permutation_properties(2);
    CHECK(report.skipped.empty());
    CHECK(report.all_hold());
    CHECK(find(report, "a", "periodic").worst <= 4);
    CHECK(find(report, "c", "periodic").worst == 1);
    CHECK(find(report, "f", "periodic").worst <= 2);
    CHECK(find(report, "a", "within-period").instances == 7);
    CHECK(find(report, "a", "periodic").instances == 8);

    auto u = reference_sign_vectors();
    auto p1 = build_permutation(u[0], 2), p2 = build_permutation(u[1], 2), p3 = build_permutation(u[2], 2);
    CHECK(lcs3(p1, p2, p3).length == 1);
    CHECK(lcs2(p1, p2).length == 4);

    // pairwise values agree with the agreement count
    for (std::size_t i = 0 ; i < 8 ; ++i)
        for (std::size_t j = i + 1 ; j < 8 ; ++j) {
            SignVector fam[] = { u[i], u[j] };
            CHECK(lcs2(build_permutation(u[i], 2), build_permutation(u[j], 2)).length
                    == std::size_t(1) << agreement_set(fam).size());
        }
}

TEST_CASE("triple statements are skipped beyond the budget")
{
    auto report = verify_permutation_properties(2, 1000);
    CHECK(report.skipped == std::vector<std::string>{ "c", "d", "e" });
    CHECK(report.all_hold());
}

TEST_CASE("lemma sweep over every small family")
{
    auto sweep = sweep_lemma_intermediate(2, 2, 4);
    CHECK(sweep.families == 15);
    CHECK(sweep.failures == 0);
    sweep = sweep_lemma_intermediate(2, 3, 2);
    CHECK(sweep.families == 8 + 28);
    CHECK(sweep.failures == 0);
    CHECK_THROWS_AS(sweep_lemma_intermediate(2, 0, 1), ContractError);
}
