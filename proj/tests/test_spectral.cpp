#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wordshift/spectral.hpp"

using namespace wordshift;

namespace {

std::vector<Word> all_words_of(int q, int k) {
    std::vector<Word> out;
    std::vector<int> syms(static_cast<std::size_t>(k), 0);
    while (true) {
        out.emplace_back(q, syms);
        int i = 0;
        while (i < k && syms[static_cast<std::size_t>(i)] == q - 1)
            syms[static_cast<std::size_t>(i++)] = 0;
        if (i == k) break;
        ++syms[static_cast<std::size_t>(i)];
    }
    return out;
}

Word random_word(std::mt19937_64& rng, int q, int k) {
    std::vector<int> syms(static_cast<std::size_t>(k));
    for (int& s : syms) s = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    return Word{q, syms};
}

}  // namespace

TEST_CASE("characteristic polynomial equals matrix route up to a t-power") {
    for (int q : {2, 3})
        for (int k = 2; k <= (q == 2 ? 6 : 5); ++k)
            for (const Word& w : all_words_of(q, k)) {
                IntPoly chi = char_poly(w);
                IntPoly mat = berkowitz_char_poly(adjacency_matrix(build_L(w)));
                // divide out the maximal power of t
                std::size_t shift = 0;
                while (mat.coeff(static_cast<int>(shift)) == 0) ++shift;
                std::vector<mpz_class> c;
                for (int i = static_cast<int>(shift); i <= mat.degree(); ++i)
                    c.push_back(mat.coeff(i));
                REQUIRE(IntPoly(c) == chi);
            }
}

TEST_CASE("Perron eigenvalue fixtures") {
    PerronValue p = perron_eigenvalue(Word::parse("11", 2));
    REQUIRE(std::abs(p.lambda - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-9);
    REQUIRE(std::abs(p.entropy - std::log(p.lambda)) < 1e-12);
    // lambda < q always; constant word maximizes lambda at fixed length
    for (int k = 2; k <= 7; ++k) {
        double best = perron_eigenvalue(Word{2, std::vector<int>(static_cast<std::size_t>(k), 0)})
                          .lambda;
        for (const Word& w : all_words_of(2, k)) {
            double l = perron_eigenvalue(w).lambda;
            REQUIRE(l < 2.0);
            REQUIRE(l <= best + 1e-9);
        }
    }
}

TEST_CASE("Perron vector inequalities on random words") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 50; ++trial) {
        int q = 2 + static_cast<int>(rng() % 2);
        int k = 3 + static_cast<int>(rng() % 8);
        Word w = random_word(rng, q, k);
        LabeledGraph g = build_L(w);
        PerronVectors pv = perron_vectors(g, 1e-12);
        REQUIRE(pv.converged);
        double lam = pv.lambda;
        REQUIRE(lam - q + 1 > 0.0);
        REQUIRE(lam - q + 1 < 1.0);
        double r_star = pv.right[static_cast<std::size_t>(g.star_index(w.at(1) == 0 ? 1 : 0))];
        double r1 = pv.right[static_cast<std::size_t>(g.state_index(1))];
        REQUIRE(std::abs(r1 - (lam - q + 1) * r_star) < 1e-9);
        DTable t = d_table(w);
        for (int i = 1; i <= k - 2; ++i) {
            double ri = pv.right[static_cast<std::size_t>(g.state_index(i))];
            double rnext = pv.right[static_cast<std::size_t>(g.state_index(i + 1))];
            REQUIRE(rnext <= (lam - q + 1) * ri + 1e-9);
            // refined ratio bound
            double bound = lam;
            for (int a = 0; a < q; ++a) {
                if (a == w.at(i + 1)) continue;
                int d = t.at(i, a);
                bound -= std::pow(lam - q + 1, static_cast<double>(-i + d));
            }
            REQUIRE(rnext <= bound * ri + 1e-9);
        }
    }
}

TEST_CASE("condition D fixtures") {
    REQUIRE(condition_D(Word::parse("01010", 2), Word::parse("01000", 2)).has_value());
    auto c = condition_D(Word::parse("01010", 2), Word::parse("01000", 2));
    REQUIRE(c->strict_witness.has_value());
    REQUIRE_FALSE(condition_D(Word::parse("1001", 2), Word::parse("1100", 2)));
    REQUIRE_FALSE(condition_D(Word::parse("1100", 2), Word::parse("1001", 2)));
    // constant word in first position dominates everything
    for (int k = 2; k <= 7; ++k) {
        Word c0{2, std::vector<int>(static_cast<std::size_t>(k), 0)};
        Word c1{2, std::vector<int>(static_cast<std::size_t>(k), 1)};
        for (const Word& w : all_words_of(2, k)) {
            REQUIRE(condition_D(c0, w).has_value());
            REQUIRE(condition_D(c1, w).has_value());
        }
    }
}

TEST_CASE("condition D implies the entropy order") {
    for (const Word& u : all_words_of(2, 5))
        for (const Word& v : all_words_of(2, 5))
            if (condition_D(u, v))
                REQUIRE(perron_eigenvalue(u).lambda >= perron_eigenvalue(v).lambda - 1e-9);
}

TEST_CASE("comparison verdict trichotomy") {
    ComparisonVerdict cv = compare_shifts(Word::parse("11", 2), Word::parse("10", 2));
    REQUIRE(cv.phi_u_q == 3);
    REQUIRE(cv.phi_v_q == 2);
    REQUIRE(cv.phi_order == 1);
    REQUIRE(cv.lambda_u.lambda > cv.lambda_v.lambda);
    // equal overlap classes report full equality
    ComparisonVerdict eq = compare_shifts(Word::parse("1100", 2), Word::parse("0011", 2));
    REQUIRE(eq.equal_overlaps);
    REQUIRE(eq.phi_order == 0);
    // phi order matches numeric lambda order for a strict pair
    ComparisonVerdict st = compare_shifts(Word::parse("01010", 2), Word::parse("01000", 2));
    REQUIRE(st.d_uv.has_value());
    REQUIRE(st.d_uv->strict_witness.has_value());
    REQUIRE(st.lambda_u.lambda > st.lambda_v.lambda + 1e-10);
}

TEST_CASE("phi order tracks the eigenvalue order exhaustively") {
    for (const Word& u : all_words_of(2, 5))
        for (const Word& v : all_words_of(2, 5)) {
            ComparisonVerdict cv = compare_shifts(u, v);
            double gap = cv.lambda_u.lambda - cv.lambda_v.lambda;
            if (std::abs(gap) > 1e-11)
                REQUIRE(cv.phi_order == (gap > 0 ? 1 : -1));
            if (cv.equal_overlaps) REQUIRE(cv.phi_order == 0);
        }
}

TEST_CASE("memory-one ambient characteristic polynomial") {
    // all-ones transition matrix reduces to the full shift
    MemoryOne full = MemoryOne::full_shift(2);
    for (const char* s : {"010", "0110", "0100"}) {
        Word w = Word::parse(s, 2);
        IntPoly chi = ambient_char_poly(full, w);
        double lam = largest_real_root(chi, 0.0, 2.0, 1e-12).value();
        REQUIRE(std::abs(lam - perron_eigenvalue(w).lambda) < 1e-9);
    }
    // golden-mean transition matrix: root must match the restricted graph
    MemoryOne gm = MemoryOne::golden_mean();
    Word w = Word::parse("010", 2);
    IntPoly chi = ambient_char_poly(gm, w);
    LabeledGraph g = build_L_restricted(w, golden_mean_pairs());
    PerronVectors pv = perron_vectors(g, 1e-12);
    double lam = largest_real_root(chi, 0.0, 2.0, 1e-12).value();
    REQUIRE(std::abs(lam - pv.lambda) < 1e-9);
    // two-block representation has length k-1
    Word blocks = two_block_word(Word::parse("100010", 2));
    REQUIRE(blocks.size() == 5);
    REQUIRE(blocks.q == 4);
}

TEST_CASE("ambient comparison conditions") {
    MemoryOne gm = MemoryOne::golden_mean();
    AmbientConditionsReport r =
        ambient_comparison_conditions(gm, Word::parse("010", 2), Word::parse("000", 2));
    REQUIRE_FALSE(r.any_holds);  // lambda_T below 2
    REQUIRE(r.lambda_T < 2.0);

    MemoryOne full3 = MemoryOne::full_shift(3);
    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 50) {
        Word u = random_word(rng, 3, 5), v = random_word(rng, 3, 5);
        if (u.at(1) != v.at(1) || u.at(5) != v.at(5) || u == v) continue;
        AmbientConditionsReport rr = ambient_comparison_conditions(full3, u, v);
        REQUIRE(rr.any_holds);
        mpz_class pu = correlation_poly(u).eval(mpz_class(3));
        mpz_class pv_ = correlation_poly(v).eval(mpz_class(3));
        double lu = perron_eigenvalue(u).lambda, lv = perron_eigenvalue(v).lambda;
        if (pu != pv_) {
            // the condition transfers the phi order at lambda_T=3 to entropy
            REQUIRE(((pu > pv_) == (lu > lv - 1e-12)));
        }
        ++checked;
    }
}
