#include <subseq/errors.hpp>
#include <subseq/occurrence.hpp>
#include <subseq/word.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace subseq;

namespace
{
    auto W(std::string_view s, unsigned k = 2) -> Word { return Word::from_letters(s, k); }
}

TEST_CASE("symbols must lie in the alphabet")
{
    CHECK_THROWS_AS(Word(2, { 0, 2 }), ContractError);
    CHECK_THROWS_AS(Word::from_letters("abc", 2), ContractError);
    CHECK_NOTHROW(Word(3, { 0, 2 }));
    CHECK(Word(2).empty());
}

TEST_CASE("subword extraction")
{
    CHECK(subword(W("abracadabra", 26), { 0, 3 }) == W("abra", 26));
    CHECK(subword(W("abc", 3), { 1, 2 }) == W("bc", 3));
    CHECK(subword(W("abc", 3), { 2, 1 }).empty());
    CHECK(subword(W("abc", 3), { 3, 2 }).empty());
    CHECK_THROWS_AS(subword(W("abc", 3), { 1, 3 }), RangeError);
    CHECK_THROWS_AS(subword(W("abc", 3), { -1, 1 }), RangeError);
    CHECK_THROWS_AS(subword(W("abc", 3), { 2, 0 }), RangeError);

    auto w = W("abbabaab");
    for (std::ptrdiff_t a = 0 ; a < 8 ; ++a)
        for (std::ptrdiff_t b = a ; b < 8 ; ++b)
            CHECK(subword(w, { a, b }).size() == static_cast<std::size_t>(b - a + 1));
}

TEST_CASE("concatenation and powers")
{
    CHECK(concat(W("ab"), W("ba")) == W("abba"));
    CHECK(concat(Word(2), W("ab")) == W("ab"));
    CHECK(power(W("ab"), 3) == W("ababab"));
    CHECK(power(W("ab"), 0).empty());
    CHECK_THROWS_AS(concat(W("ab", 2), W("ab", 3)), ContractError);
}

TEST_CASE("canonical keys identify relabelling and reversal")
{
    CHECK(canonical_key(W("abab")) == canonical_key(W("baba")));
    CHECK(canonical_key(W("aab")) == canonical_key(W("bba")));
    CHECK(canonical_key(W("aab")) == canonical_key(W("baa")));
    CHECK(canonical_key(W("baa")).reversed);
    CHECK_FALSE(canonical_key(W("aab")) == canonical_key(W("aba")));

    auto key = canonical_key(W("cbca", 3));
    CHECK(key.normalized == W("abac", 3));
}

TEST_CASE("canonical orbits partition all binary words")
{
    for (std::size_t n = 1 ; n <= 10 ; ++n) {
        std::map<std::vector<Symbol>, std::size_t> orbit_size;
        for (auto & w : oracle::all_words(2, n)) {
            auto key = canonical_key(w);
            // first occurrences are increasing in the normal form
            Symbol seen = 0;
            for (auto s : key.normalized) {
                CHECK(s <= seen);
                if (s == seen)
                    ++seen;
            }
            ++orbit_size[{ key.normalized.begin(), key.normalized.end() }];
        }
        std::size_t total = 0;
        for (auto & [key, size] : orbit_size) {
            CHECK(4 % size == 0);
            total += size;
        }
        CHECK(total == (std::size_t(1) << n));
    }
}

TEST_CASE("most common subsequence frequency is constant on canonical orbits")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<unsigned> k_dist(2, 3), n_dist(0, 11);
    for (int trial = 0 ; trial < 1000 ; ++trial) {
        unsigned k = k_dist(rng);
        auto w = oracle::random_word(rng, k, n_dist(rng));
        std::vector<Symbol> relabel(k);
        for (unsigned i = 0 ; i < k ; ++i)
            relabel[i] = i;
        std::shuffle(relabel.begin(), relabel.end(), rng);
        std::vector<Symbol> image;
        for (auto s : w)
            image.push_back(relabel[s]);
        Word other(k, image);
        if (trial % 2)
            other = reverse(other);
        REQUIRE(canonical_key(w) == canonical_key(other));
        CHECK(max_occurrences(w).count == max_occurrences(other).count);
    }
}

TEST_CASE("text encoding")
{
    CHECK(to_text(W("abc", 3)) == "abc");
    CHECK(to_text(Word(2)) == "-");
    CHECK(to_text(Word(30, { 0, 29, 5 })) == "0,29,5");
    CHECK(parse_word("0,29,5", 30) == Word(30, { 0, 29, 5 }));
    CHECK(parse_word("abc", 3) == W("abc", 3));
    CHECK(parse_word("-", 3).empty());
    CHECK_THROWS_AS(parse_word("1,x", 30), ContractError);
}

TEST_CASE("word files")
{
    std::istringstream in("alphabet k=3\nabc\n\n-\ncab\n");
    auto file = read_word_file(in);
    CHECK(file.alphabet_size == 3);
    REQUIRE(file.words.size() == 3);
    CHECK(file.words[1].empty());
    CHECK(file.words[2] == W("cab", 3));

    std::ostringstream out;
    write_word_file(out, file);
    CHECK(out.str() == "alphabet k=3\nabc\n-\ncab\n");

    std::istringstream big("alphabet k=100\n99,0,42\n");
    CHECK(read_word_file(big).words.at(0) == Word(100, { 99, 0, 42 }));

    std::istringstream bad("abc\n");
    CHECK_THROWS_AS(read_word_file(bad), ContractError);
}
