#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spherecover/words.hpp"

using namespace spherecover;

static Word random_word(std::mt19937& rng, int ngen, int len) {
    std::uniform_int_distribution<int> g(0, ngen - 1), e(0, 1);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back({g(rng), e(rng) ? 1 : -1});
    return w;
}

TEST_CASE("free reduction cancels adjacent inverse pairs") {
    Word w = {{0, 1}, {1, 1}, {1, -1}, {0, -1}, {2, 1}};
    REQUIRE(free_reduce(w) == Word{{2, 1}});
    REQUIRE(free_reduce(Word{}).empty());
    REQUIRE(free_reduce(Word{{0, 1}, {0, 1}}) == Word{{0, 1}, {0, 1}});
}

TEST_CASE("inverse word reverses and flips exponents") {
    Word w = {{0, 1}, {1, -1}};
    REQUIRE(inverse_word(w) == Word{{1, 1}, {0, -1}});
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        Word u = random_word(rng, 3, 9);
        REQUIRE(free_reduce(inverse_word(inverse_word(u))) == free_reduce(u));
        Word cat = u;
        Word inv = inverse_word(u);
        cat.insert(cat.end(), inv.begin(), inv.end());
        REQUIRE(free_reduce(cat).empty());
    }
}

TEST_CASE("cyclic reduction trims conjugating prefixes") {
    // a b a^-1  →  b up to cyclic reduction
    Word w = {{0, 1}, {1, 1}, {0, -1}};
    REQUIRE(cyclic_reduce(w) == Word{{1, 1}});
    Word deep = {{2, -1}, {0, 1}, {1, 1}, {0, -1}, {2, 1}};
    REQUIRE(cyclic_reduce(deep) == Word{{1, 1}});
}

TEST_CASE("relator class is invariant under rotation, inversion, conjugation") {
    std::mt19937 rng(99);
    for (int t = 0; t < 60; ++t) {
        Word w = random_word(rng, 3, 7);
        Word canon = relator_class(w);
        // rotations
        Word r = cyclic_reduce(w);
        for (std::size_t i = 0; i < r.size(); ++i) {
            Word rot(r.begin() + i, r.end());
            rot.insert(rot.end(), r.begin(), r.begin() + i);
            REQUIRE(relator_class(rot) == canon);
        }
        REQUIRE(relator_class(inverse_word(w)) == canon);
        // conjugation by a random word
        Word c = random_word(rng, 3, 3);
        Word conj = c;
        conj.insert(conj.end(), w.begin(), w.end());
        Word ci = inverse_word(c);
        conj.insert(conj.end(), ci.begin(), ci.end());
        REQUIRE(relator_class(conj) == canon);
    }
}

TEST_CASE("distinct relators stay distinct") {
    Word a = {{0, 1}, {0, 1}, {1, -1}};
    Word b = {{0, 1}, {1, 1}, {1, 1}};
    REQUIRE(relator_class(a) != relator_class(b));
}
