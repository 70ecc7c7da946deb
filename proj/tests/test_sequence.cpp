#include <doctest.h>

#include <random>

#include "cantordyn/sequence.hpp"

using namespace cantordyn;

TEST_CASE("sequences normalize trailing defaults") {
    Sequence s(0);
    CHECK(s.blank());
    s.set(3, 0);
    CHECK(s.blank());
    s.set(3, 5);
    CHECK(s.stored_max() == 4);
    s.set(3, 0);
    CHECK(s.blank());
    s.set(-2, 7);
    CHECK(s.stored_min() == -2);
    s.set(-2, 0);
    CHECK(s.blank());
}

TEST_CASE("equality is equality of the induced bi-infinite words") {
    Sequence a(0), b(0);
    a.set(0, 1);
    a.set(5, 2);
    a.set(5, 0);  // back to default
    b.set(0, 1);
    CHECK(a == b);
    b.set(-1, 1);
    CHECK(a != b);
}

TEST_CASE("shift relabels positions: new s_n = old s_{n+k}") {
    Sequence s(0);
    s.set(0, 9);
    Sequence t = s;
    t.shift(1);
    CHECK(t.at(-1) == 9);
    CHECK(t.at(0) == 0);
    t.shift(-1);
    CHECK(t == s);
}

TEST_CASE("shift round-trips on random sequences") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> sym(0, 3);
    std::uniform_int_distribution<int> pos(-6, 6);
    std::uniform_int_distribution<int> amt(-5, 5);
    for (int iter = 0; iter < 200; ++iter) {
        Sequence s(0);
        for (int k = 0; k < 8; ++k) s.set(pos(rng), sym(rng));
        int n = amt(rng);
        Sequence t = s;
        t.shift(n);
        for (int p = -10; p <= 10; ++p) CHECK(t.at(p) == s.at(p + n));
        t.shift(-n);
        CHECK(t == s);
    }
}

TEST_CASE("from_window places symbols at the given offsets") {
    std::vector<SymbolId> syms = {1, 0, 2};
    Sequence s = Sequence::from_window(0, -1, syms);
    CHECK(s.at(-1) == 1);
    CHECK(s.at(0) == 0);
    CHECK(s.at(1) == 2);
    CHECK(s.stored_min() == -1);
    CHECK(s.stored_max() == 2);
}
