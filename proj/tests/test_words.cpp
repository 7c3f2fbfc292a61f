#include <catch2/catch_amalgamated.hpp>

#include "wordshift/word.hpp"

using namespace wordshift;

TEST_CASE("parse and serialize round trip") {
    Word w = Word::parse("100010", 2);
    REQUIRE(w.size() == 6);
    REQUIRE(w.str() == "100010");
    Word m = Word::parse("10,3,0,11", 12);
    REQUIRE(m.q == 12);
    REQUIRE(m.str() == "10,3,0,11");
    REQUIRE(Word::parse(m.str(), 12) == m);
    REQUIRE_THROWS_AS(Word::parse("102", 2), std::invalid_argument);
    REQUIRE_THROWS_AS(Word::parse("", 2), std::invalid_argument);
}

TEST_CASE("self-overlap sets") {
    REQUIRE(self_overlap(Word::parse("100010", 2)) == std::set<int>{2, 6});
    REQUIRE(self_overlap(Word::parse("11", 2)) == std::set<int>{1, 2});
    REQUIRE(self_overlap(Word::parse("10", 2)) == std::set<int>{2});
    REQUIRE(self_overlap(Word::parse("000", 2)) == std::set<int>{1, 2, 3});
    REQUIRE(self_overlap(Word::parse("0110", 2)) == std::set<int>{1, 4});
    // k always belongs; 1 belongs iff first and last symbols agree
    for (int bits = 0; bits < 32; ++bits) {
        std::vector<int> syms(5);
        for (int i = 0; i < 5; ++i) syms[static_cast<std::size_t>(i)] = bits >> i & 1;
        Word w{2, syms};
        auto ov = self_overlap(w);
        REQUIRE(ov.count(5) == 1);
        REQUIRE(ov.count(1) == static_cast<std::size_t>(syms.front() == syms.back()));
    }
}

TEST_CASE("cross-overlap is asymmetric and bounded") {
    Word u = Word::parse("110", 2), v = Word::parse("011", 2);
    // prefix of v of length i equals suffix of u of length i
    REQUIRE(cross_overlap(u, v) == std::set<int>{1});
    REQUIRE(cross_overlap(v, u) == std::set<int>{1, 2});
    REQUIRE(cross_overlap(u, u) == self_overlap(u));
    Word a = Word::parse("100", 2), b = Word::parse("001", 2);
    REQUIRE(cross_overlap(a, b) == std::set<int>{1, 2});
    REQUIRE(cross_overlap(b, a) == std::set<int>{1});
}

TEST_CASE("correlation polynomial and evaluation") {
    Word w = Word::parse("100010", 2);
    IntPoly phi = correlation_poly(w);
    REQUIRE(phi.to_string() == "t^5+t");
    REQUIRE(phi_at(w, 2) == 34);
    REQUIRE(phi_at(Word::parse("11", 2), 2) == 3);
    REQUIRE(phi_at(Word::parse("10", 2), 2) == 2);
    // reading phi at t=q spells the overlap set in base q
    for (int bits = 0; bits < 64; ++bits) {
        std::vector<int> syms(6);
        for (int i = 0; i < 6; ++i) syms[static_cast<std::size_t>(i)] = bits >> i & 1;
        Word x{2, syms};
        mpz_class expect = 0;
        for (int i : self_overlap(x)) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(i - 1));
            expect += p;
        }
        REQUIRE(phi_at(x, 2) == expect);
    }
}

TEST_CASE("one-word characteristic polynomial") {
    REQUIRE(char_poly(Word::parse("11", 2)).to_string() == "t^2-t-1");
    // trivial-overlap binary word: (t-2)t^{k-1}+1
    Word w = Word::parse("1100", 2);
    REQUIRE(self_overlap(w) == std::set<int>{4});
    IntPoly expect = IntPoly::monomial(1, 4) - IntPoly::monomial(2, 3) + IntPoly::constant(1);
    REQUIRE(char_poly(w) == expect);
}

TEST_CASE("symbol transforms") {
    Word w = Word::parse("100010", 2);
    REQUIRE(flip_bits(w).str() == "011101");
    REQUIRE(reversed(w).str() == "010001");
    Word t = Word::parse("120", 3);
    auto p = find_symbol_perm(t, Word::parse("210", 3));
    REQUIRE(p.has_value());
    REQUIRE(apply_symbol_perm(t, *p) == Word::parse("210", 3));
    REQUIRE_FALSE(find_symbol_perm(Word::parse("00", 2), Word::parse("01", 2)));
}
