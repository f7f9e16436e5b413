#include <subseq/errors.hpp>
#include <subseq/occurrence.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace subseq;

namespace
{
    auto W(std::string_view s, unsigned k = 2) -> Word { return Word::from_letters(s, k); }
}

TEST_CASE("counting occurrences")
{
    CHECK(count_occurrences(W("abra", 26), W("abracadabra", 26)) == 9);
    CHECK(count_occurrences(Word(2), W("abab")) == 1);
    CHECK(count_occurrences(Word(2), Word(2)) == 1);
    CHECK(count_occurrences(W("ab"), W("abab")) == oracle::count(W("ab"), W("abab")));
    CHECK(count_occurrences(W("ab"), W("abab")) == 3);
    CHECK(count_occurrences(W("ba"), W("ab")) == 0);
    CHECK_THROWS_AS(count_occurrences(W("ab", 2), W("ab", 3)), ContractError);
}

TEST_CASE("counts beyond 64 bits stay exact")
{
    Word a70(1, std::vector<Symbol>(70, 0)), a35(1, std::vector<Symbol>(35, 0));
    CHECK(count_occurrences(a35, a70) == binomial(70, 35));
    CHECK(binomial(70, 35) > CountValue(UINT64_MAX));

    auto best = max_occurrences(a70);
    CHECK(best.count == binomial(70, 35));
    CHECK(best.witness == a35);
}

TEST_CASE("embedding enumeration")
{
    auto maps = enumerate_embeddings(W("ab"), W("abab"), 10);
    REQUIRE(maps.size() == 3);
    CHECK(maps[0].positions == std::vector<std::size_t>{ 0, 1 });
    CHECK(maps[1].positions == std::vector<std::size_t>{ 0, 3 });
    CHECK(maps[2].positions == std::vector<std::size_t>{ 2, 3 });

    CHECK(enumerate_embeddings(W("a"), W("a"), 10).size() == 1);
    CHECK(enumerate_embeddings(W("ba"), W("ab"), 10).empty());
    CHECK(enumerate_embeddings(W("ab"), W("abab"), 2).size() == 2);
    CHECK(enumerate_embeddings(W("ab"), W("abab"), 0).empty());
    CHECK(enumerate_embeddings(Word(2), W("ab"), 5).size() == 1);

    auto tail = enumerate_embeddings_from_end(W("ab"), W("abab"), 2);
    REQUIRE(tail.size() == 2);
    CHECK(tail[0].positions == std::vector<std::size_t>{ 2, 3 });
    CHECK(tail[1].positions == std::vector<std::size_t>{ 0, 3 });
}

TEST_CASE("dynamic programme agrees with full enumeration")
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<unsigned> k_dist(1, 3);
    std::uniform_int_distribution<std::size_t> n_dist(0, 12);
    for (int trial = 0 ; trial < 1000 ; ++trial) {
        unsigned k = k_dist(rng);
        auto w = oracle::random_word(rng, k, n_dist(rng));
        auto v = oracle::random_word(rng, k, std::uniform_int_distribution<std::size_t>(0, w.size())(rng));
        auto maps = enumerate_embeddings(v, w, SIZE_MAX);
        CHECK(count_occurrences(v, w) == maps.size());
        CHECK(count_occurrences(v, w) == oracle::count(v, w));
        CHECK(std::is_sorted(maps.begin(), maps.end()));
        for (auto & f : maps)
            CHECK(is_embedding(v, w, f));
    }
}

TEST_CASE("maximising over a fixed length")
{
    auto one = max_occurrences_of_length(W("abab"), 1);
    CHECK(one.count == 2);
    CHECK(one.witness == W("a"));

    auto two = max_occurrences_of_length(W("abab"), 2);
    CHECK(two.count == 3);
    CHECK(two.witness == W("ab"));

    auto zero = max_occurrences_of_length(W("abab"), 0);
    CHECK(zero.count == 1);
    CHECK(zero.witness.empty());

    auto too_long = max_occurrences_of_length(W("ab"), 3);
    CHECK(too_long.count == 0);
    CHECK(too_long.witness == W("aaa"));
}

TEST_CASE("most common subsequence")
{
    auto abab = max_occurrences(W("abab"));
    CHECK(abab.count == 3);
    CHECK(abab.witness == W("ab"));

    auto aaaa = max_occurrences(W("aaaa"));
    CHECK(aaaa.count == 6);
    CHECK(aaaa.witness == W("aa"));

    auto ab = max_occurrences(W("ab"));
    CHECK(ab.count == 1);
    CHECK(ab.witness == W("a"));

    auto empty = max_occurrences(Word(2));
    CHECK(empty.count == 1);
    CHECK(empty.witness.empty());
}

TEST_CASE("sum over lengths")
{
    // M(abab | l) for l = 0..4 is 1, 2, 3, 1, 1 by the subset oracle
    CHECK(oracle::profile(W("abab")) == std::vector<std::uint64_t>{ 1, 2, 3, 1, 1 });
    CHECK(sum_over_lengths(W("abab")) == 8);
    CHECK(sum_over_lengths(W("aa")) == 4);
    CHECK(sum_over_lengths(Word(2)) == 1);
}

TEST_CASE("branch and bound matches the subset oracle")
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<unsigned> k_dist(2, 4);
    std::uniform_int_distribution<std::size_t> n_dist(0, 14);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto w = oracle::random_word(rng, k_dist(rng), n_dist(rng));
        auto expected = oracle::profile(w);
        auto tally = oracle::subsequence_tally(w);

        auto best = max_occurrences(w);
        CHECK(best.count == oracle::most_common(w));
        CHECK(count_occurrences(best.witness, w) == best.count);
        // lexicographically smallest nonempty maximiser
        for (auto & [v, c] : tally)
            if (! v.empty() && c == best.count) {
                CHECK(Word(w.alphabet_size(), v) == best.witness);
                break;
            }

        auto profile = occurrence_profile(w);
        REQUIRE(profile.size() == expected.size());
        for (std::size_t l = 0 ; l < profile.size() ; ++l) {
            CHECK(profile[l].count == expected[l]);
            CHECK(profile[l].witness.size() == l);
            CHECK(count_occurrences(profile[l].witness, w) == profile[l].count);
        }

        CHECK(reaches_occurrences(w, best.count));
        CHECK_FALSE(reaches_occurrences(w, best.count + 1));
    }
}

TEST_CASE("concatenation is supermultiplicative")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> n_dist(0, 8);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        unsigned k = 2 + trial % 2;
        auto w1 = oracle::random_word(rng, k, n_dist(rng));
        auto w2 = oracle::random_word(rng, k, n_dist(rng));
        CHECK(max_occurrences(concat(w1, w2)).count >= max_occurrences(w1).count * max_occurrences(w2).count);
    }
}

TEST_CASE("a word occurs in its square at least |w| + 1 times")
{
    for (std::size_t n = 0 ; n <= 8 ; ++n)
        for (auto & w : oracle::all_words(2, n))
            CHECK(count_occurrences(w, concat(w, w)) >= n + 1);
}

TEST_CASE("reversal preserves occurrence counts")
{
    std::mt19937_64 rng(4);
    for (int trial = 0 ; trial < 500 ; ++trial) {
        auto w = oracle::random_word(rng, 3, 1 + trial % 15);
        auto v = oracle::random_word(rng, 3, trial % 5);
        CHECK(count_occurrences(v, w) == count_occurrences(reverse(v), reverse(w)));
    }
}

TEST_CASE("prefix-count states are monotone under dominance")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Symbol> sym(0, 2);
    int compared = 0;
    for (int trial = 0 ; trial < 400 ; ++trial) {
        auto w = oracle::random_word(rng, 3, 10);
        PrefixCountState a(w), b(w);
        for (int i = 0 ; i < 2 ; ++i) {
            a = a.extend(sym(rng));
            b = b.extend(sym(rng));
        }
        if (! a.dominates(b))
            std::swap(a, b);
        if (! a.dominates(b))
            continue;
        ++compared;
        for (int i = 0 ; i < 4 ; ++i) {
            auto s = sym(rng);
            a = a.extend(s);
            b = b.extend(s);
            CHECK(a.total() >= b.total());
            CHECK(a.dominates(b));
        }
    }
    CHECK(compared > 50);

    auto w = W("abab");
    PrefixCountState empty(w);
    CHECK(empty.total() == 1);
    CHECK(empty.extend(0).extend(1).total() == 3);
}

TEST_CASE("the most frequent letter meets the pigeonhole floor")
{
    std::mt19937_64 rng(6);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        unsigned k = 2 + trial % 3;
        std::size_t n = 1 + trial % 20;
        auto w = oracle::random_word(rng, k, n);
        CHECK(max_occurrences_of_length(w, 1).count >= (n + k - 1) / k);
    }
}
