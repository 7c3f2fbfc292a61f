// Acceptance gate: twelve end-to-end checks, one pass/fail line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "wordshift/conjugacy.hpp"
#include "wordshift/counting.hpp"
#include "wordshift/hitting.hpp"
#include "wordshift/multidim.hpp"
#include "wordshift/recover.hpp"
#include "wordshift/spectral.hpp"

using namespace wordshift;

namespace {

int failures = 0;

void criterion(int n, const char* what, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("Criterion %2d: %s - %s (%.1fs)%s%s\n", n, ok ? "PASS" : "FAIL", what, secs,
                err.empty() ? "" : " exception: ", err.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

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

// Single pass over all q^n sequences: for each word length k, tally how many
// sequences contain each k-gram at least once.
std::map<int, std::vector<long long>> contained_counts(int q, int n, int kmax) {
    std::map<int, std::vector<long long>> counts;
    long long total_grams = 1;
    std::vector<long long> pw(static_cast<std::size_t>(kmax + 1), 1);
    for (int k = 1; k <= kmax; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * q;
    for (int k = 2; k <= kmax; ++k)
        counts[k].assign(static_cast<std::size_t>(pw[static_cast<std::size_t>(k)]), 0);
    (void)total_grams;
    std::vector<int> seq(static_cast<std::size_t>(n), 0);
    std::vector<long long> seen;
    while (true) {
        for (int k = 2; k <= std::min(kmax, n); ++k) {
            seen.clear();
            long long code = 0;
            for (int i = 0; i < n; ++i) {
                code = code * q + seq[static_cast<std::size_t>(i)];
                if (i >= k) code -= seq[static_cast<std::size_t>(i - k)] * pw[static_cast<std::size_t>(k)];
                if (i >= k - 1) seen.push_back(code);
            }
            std::sort(seen.begin(), seen.end());
            seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
            for (long long g : seen) ++counts[k][static_cast<std::size_t>(g)];
        }
        int i = 0;
        while (i < n && seq[static_cast<std::size_t>(i)] == q - 1) seq[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
        ++seq[static_cast<std::size_t>(i)];
    }
    return counts;
}

long long word_code(const Word& w) {
    long long code = 0;
    for (int i = 1; i <= w.size(); ++i) code = code * w.q + w.at(i);
    return code;
}

bool crit1() {
    for (int q : {2, 3})
        for (int n = 0; n <= 12; ++n) {
            int kmax = std::min(5, std::max(n, 2));
            auto counts = contained_counts(q, n, kmax);
            mpz_class qn;
            mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q),
                          static_cast<unsigned long>(n));
            for (int k = 2; k <= 5; ++k)
                for (const Word& w : all_words_of(q, k)) {
                    mpz_class expect =
                        (k > n) ? qn
                                : qn - mpz_class(static_cast<long>(counts[k][static_cast<std::size_t>(word_code(w))]));
                    if (count_avoiding(w, n) != expect) return false;
                }
        }
    return true;
}

bool crit2() {
    for (int k = 2; k <= 8; ++k) {
        std::map<std::set<int>, std::vector<Word>> classes;
        for (const Word& w : all_words_of(2, k)) classes[self_overlap(w)].push_back(w);
        for (auto& [ov, ws] : classes) {
            const Word& rep = ws.front();
            std::vector<mpz_class> bn;
            for (int n = 0; n <= 2 * k; ++n) bn.push_back(count_avoiding(rep, n));
            mpz_class etau = expected_hitting(rep);
            IntPoly zden = zeta_denominator(rep);
            std::vector<mpz_class> pn;
            for (int n = 1; n <= 10; ++n) pn.push_back(periodic_count(rep, n));
            double lam = perron_eigenvalue(rep).lambda;
            for (std::size_t i = 1; i < ws.size(); ++i) {
                const Word& w = ws[i];
                for (int n = 0; n <= 2 * k; ++n)
                    if (count_avoiding(w, n) != bn[static_cast<std::size_t>(n)]) return false;
                if (expected_hitting(w) != etau) return false;
                if (zeta_denominator(w) != zden) return false;
                for (int n = 1; n <= 10; ++n)
                    if (periodic_count(w, n) != pn[static_cast<std::size_t>(n - 1)]) return false;
                if (std::abs(perron_eigenvalue(w).lambda - lam) > 1e-9) return false;
            }
        }
    }
    return true;
}

bool crit3() {
    std::mt19937_64 rng(6021023);
    int checked = 0;
    while (checked < 200) {
        int q = 2 + static_cast<int>(rng() % 2);
        int k = 2 + static_cast<int>(rng() % 6);
        auto rand_word = [&] {
            std::vector<int> s(static_cast<std::size_t>(k));
            for (int& x : s) x = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
            return Word{q, s};
        };
        Word u = rand_word(), v = rand_word();
        mpz_class pu = phi_at(u, q), pv = phi_at(v, q);
        if (pu == pv) continue;
        if (pu < pv) std::swap(u, v);
        for (int n = 0; n <= 40; ++n)
            if (count_avoiding(u, n) < count_avoiding(v, n)) return false;
        if (count_avoiding(u, 40) <= count_avoiding(v, 40)) return false;
        if (perron_eigenvalue(u).lambda <= perron_eigenvalue(v).lambda + 1e-10) return false;
        ++checked;
    }
    return true;
}

bool crit4() {
    for (int q : {2, 3})
        for (int k = 2; k <= 6; ++k)
            for (const Word& w : all_words_of(q, k)) {
                IntPoly mat = berkowitz_char_poly(adjacency_matrix(build_L(w)));
                std::size_t shift = 0;
                while (mat.coeff(static_cast<int>(shift)) == 0) ++shift;
                std::vector<mpz_class> c;
                for (int i = static_cast<int>(shift); i <= mat.degree(); ++i)
                    c.push_back(mat.coeff(i));
                if (IntPoly(c) != char_poly(w)) return false;
            }
    return true;
}

bool crit5() {
    for (int q : {2, 3})
        for (int k = 2; k <= 7; ++k)
            for (const Word& w : all_words_of(q, k)) {
                LabeledGraph g = build_L(w);
                // right-resolving + incoming-label constancy + degrees
                std::map<int, std::set<int>> in_labels;
                std::map<int, std::set<int>> out_labels;
                for (const auto& e : g.edges) {
                    if (!out_labels[e.src].insert(e.label).second) return false;
                    in_labels[e.dst].insert(e.label);
                }
                for (auto& [v, ls] : in_labels)
                    if (ls.size() != 1) return false;
                for (int v = 0; v < g.n(); ++v) {
                    int want = (v == g.state_index(k - 1)) ? q - 1 : q;
                    if (static_cast<int>(out_labels[v].size()) != want) return false;
                }
                // d-table difference collisions happen only in forced entries
                DTable t = d_table(w);
                std::map<int, std::vector<std::pair<int, int>>> by_diff;
                for (int i = 1; i <= k - 1; ++i)
                    for (int a = 0; a < q; ++a)
                        if (t.at(i, a) >= 1) by_diff[i - t.at(i, a)].push_back({i, a});
                for (auto& [diff, entries] : by_diff)
                    if (entries.size() > 1)
                        for (auto& [i, a] : entries)
                            if (a != w.at(i + 1)) return false;
                // prefix heredity
                for (int r = 2; r < k; ++r) {
                    Word pre{q, std::vector<int>(w.syms.begin(), w.syms.begin() + r)};
                    LabeledGraph h = build_L(pre);
                    std::set<LabeledEdge> induced;
                    for (const auto& e : g.edges) {
                        const LVertex &s = g.vertices[static_cast<std::size_t>(e.src)],
                                      &d = g.vertices[static_cast<std::size_t>(e.dst)];
                        if ((s.is_star || s.value <= r - 1) && (d.is_star || d.value <= r - 1))
                            induced.insert({h.index_of(s), h.index_of(d), e.label});
                    }
                    if (induced != std::set<LabeledEdge>(h.edges.begin(), h.edges.end()))
                        return false;
                }
                if (is_irreducible(strip_labels(g)) != !is_binary_reducible(w)) return false;
            }
    return true;
}

bool crit6() {
    for (int q : {2, 3})
        for (int k = 2; k <= 6; ++k)
            for (const Word& w : all_words_of(q, k)) {
                RecoverReport r = recover_word(strip_labels(build_L(w)), q);
                if (!r.ok || !find_symbol_perm(r.word, w)) return false;
            }
    for (int k = 7; k <= 10; ++k)
        for (const Word& w : all_words_of(2, k)) {
            RecoverReport r = recover_word(strip_labels(build_L(w)), 2);
            if (!r.ok || !find_symbol_perm(r.word, w)) return false;
        }
    for (int k = 3; k <= 10; ++k)
        for (const Word& w : all_words_of(2, k)) {
            if (!avoids_pairs(w, golden_mean_pairs())) continue;
            RecoverReport r =
                recover_word_gm(strip_labels(build_L_restricted(w, golden_mean_pairs())));
            if (!r.ok || r.word != w) return false;
        }
    return true;
}

bool crit7() {
    auto d = [](const char* a, const char* b) {
        return condition_D(Word::parse(a, 2), Word::parse(b, 2));
    };
    auto strict = d("01010", "01000");
    if (!strict || !strict->strict_witness) return false;
    if (d("1001", "1100") || d("1100", "1001")) return false;
    for (int k = 2; k <= 7; ++k) {
        Word c0{2, std::vector<int>(static_cast<std::size_t>(k), 0)};
        Word c1{2, std::vector<int>(static_cast<std::size_t>(k), 1)};
        for (const Word& w : all_words_of(2, k))
            if (!condition_D(c0, w) || !condition_D(c1, w)) return false;
    }
    for (int k = 2; k <= 6; ++k)
        for (const Word& u : all_words_of(2, k))
            for (const Word& v : all_words_of(2, k)) {
                if (!condition_D(u, v)) continue;
                for (int n = 0; n <= 60; ++n)
                    if (count_avoiding(v, n) > count_avoiding(u, n)) return false;
                if (perron_eigenvalue(u).lambda < perron_eigenvalue(v).lambda - 1e-9)
                    return false;
            }
    return true;
}

bool crit8() {
    std::mt19937_64 rng(424243);
    for (int trial = 0; trial < 50; ++trial) {
        int q = 2 + static_cast<int>(rng() % 2);
        int k = 3 + static_cast<int>(rng() % 8);
        std::vector<int> syms(static_cast<std::size_t>(k));
        for (int& s : syms) s = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
        Word w{q, syms};
        LabeledGraph g = build_L(w);
        PerronVectors pv = perron_vectors(g, 1e-12);
        if (!pv.converged) return false;
        double lam = pv.lambda;
        int star_sym = w.at(1) == 0 ? 1 : 0;
        double r_star = pv.right[static_cast<std::size_t>(g.star_index(star_sym))];
        double r1 = pv.right[static_cast<std::size_t>(g.state_index(1))];
        if (std::abs(r1 - (lam - q + 1) * r_star) > 1e-9) return false;
        DTable t = d_table(w);
        for (int i = 1; i <= k - 2; ++i) {
            double ri = pv.right[static_cast<std::size_t>(g.state_index(i))];
            double rn = pv.right[static_cast<std::size_t>(g.state_index(i + 1))];
            if (rn > (lam - q + 1) * ri + 1e-9) return false;
            double bound = lam;
            for (int a = 0; a < q; ++a) {
                if (a == w.at(i + 1)) continue;
                bound -= std::pow(lam - q + 1, static_cast<double>(-i + t.at(i, a)));
            }
            if (rn > bound * ri + 1e-9) return false;
        }
    }
    return true;
}

bool crit9() {
    for (int k = 2; k <= 6; ++k)
        for (const Word& w : all_words_of(2, k))
            if (mpq_class(expected_hitting(w)) != expected_hitting_chain(w)) return false;
    if (expected_hitting(Word::parse("11", 2)) != 6) return false;
    if (expected_hitting(Word::parse("10", 2)) != 4) return false;
    Word u = Word::parse("000", 2), v = Word::parse("010", 2);
    CouplingSummary s = simulate_coupling(u, v, 90210, 100000);  // throws on violations
    if (s.dominance_count != 100000) return false;
    if (std::abs(s.mean_tau - 14.0) > 4.0 * s.se_tau) return false;
    if (std::abs(s.mean_tau_prime - 10.0) > 4.0 * s.se_tau_prime) return false;
    return true;
}

bool crit10() {
    for (int k = 2; k <= 8; ++k) {
        std::vector<Word> cls;
        for (const Word& w : all_words_of(2, k))
            if (has_trivial_overlap(w) && !is_binary_reducible(w)) cls.push_back(w);
        for (const Word& a : cls)
            for (const Word& b : cls) {
                ConjugacyChain ch = conjugacy_chain(a, b, Ambient::FullShift);
                if (ch.outcome != ChainOutcome::Found) return false;
                if (ch.words.size() > 7) return false;
                if (!validate_chain(ch, Ambient::FullShift).ok) return false;
            }
    }
    for (int k = 2; k <= 5; ++k) {
        std::vector<Word> cls;
        for (const Word& w : all_words_of(3, k))
            if (has_trivial_overlap(w)) cls.push_back(w);
        for (const Word& a : cls)
            for (const Word& b : cls) {
                ConjugacyChain ch = conjugacy_chain(a, b, Ambient::FullShift);
                if (ch.outcome != ChainOutcome::Found) return false;
                if (ch.words.size() > 12) return false;
                if (!validate_chain(ch, Ambient::FullShift).ok) return false;
            }
    }
    for (int k = 7; k <= 9; ++k) {
        std::vector<Word> g1;
        for (const Word& w : all_words_of(2, k))
            if (avoids_pairs(w, golden_mean_pairs()) && has_trivial_overlap(w) &&
                !is_gm_reducible(w) && w.at(1) == 1)
                g1.push_back(w);
        for (const Word& a : g1)
            for (const Word& b : g1) {
                ConjugacyChain ch = conjugacy_chain(a, b, Ambient::GoldenMean);
                if (ch.outcome != ChainOutcome::Found) return false;
                if (ch.words.size() > 6) return false;
                if (!validate_chain(ch, Ambient::GoldenMean).ok) return false;
            }
    }
    ConjugacyChain open =
        conjugacy_chain(Word::parse("110110", 2), Word::parse("011011", 2), Ambient::FullShift);
    if (open.outcome != ChainOutcome::Unknown) return false;
    // swap-code involution on periodic configurations
    for (int k = 2; k <= 5; ++k)
        for (const Word& a : all_words_of(2, k))
            for (const Word& b : all_words_of(2, k)) {
                if (a == b) continue;
                SwapKind kind = swap_applicable(a, b);
                if (kind != SwapKind::TrivialSwap && kind != SwapKind::GeneralSwap) continue;
                for (int period = k; period <= 3 * k; ++period) {
                    int span = std::min(period, 14);
                    for (int bits = 0; bits < (1 << span); bits += 5) {
                        std::vector<int> p(static_cast<std::size_t>(period));
                        for (int i = 0; i < period; ++i)
                            p[static_cast<std::size_t>(i)] = bits >> (i % span) & 1;
                        SwapCodeResult s1 = apply_swap_code(a, b, p, true);
                        SwapCodeResult s2 = apply_swap_code(a, b, s1.symbols, true);
                        if (s2.symbols != p) return false;
                    }
                }
            }
    return true;
}

bool crit11() {
    PatternD p11 = PatternD::from_word({1, 1}, 2);
    for (int n : {5, 6})
        if (inclusion_exclusion_count(Shape::interval(n), p11, {}) !=
            count_avoiding_patterns(Shape::interval(n), p11, {}))
            return false;
    PatternD zeros = PatternD::constant(2, Shape::rect(2, 2), 0);
    for (int n : {3, 4})
        if (inclusion_exclusion_count(Shape::rect(n, n), zeros, {}) !=
            count_avoiding_patterns(Shape::rect(n, n), zeros, {}))
            return false;
    // equal-agree pairs on the 2x3 box: grid and periodic counts agree
    Shape box = Shape::rect(2, 3);
    std::vector<PatternD> pats;
    for (int bits = 0; bits < 64; ++bits) {
        std::vector<int> vals(6);
        for (int i = 0; i < 6; ++i) vals[static_cast<std::size_t>(i)] = bits >> i & 1;
        pats.emplace_back(2, box, vals);
    }
    std::vector<std::vector<Vec>> agrees;
    agrees.reserve(pats.size());
    for (const PatternD& p : pats) agrees.push_back(agree_set(p));
    LatticeSubgroup lat{2, {{3, 0}, {0, 3}}};
    Shape grid = Shape::rect(4, 5);
    int pairs = 0;
    for (std::size_t i = 0; i < pats.size(); ++i)
        for (std::size_t j = i + 1; j < pats.size(); ++j) {
            if (agrees[i] != agrees[j]) continue;
            ++pairs;
            if (count_avoiding_patterns(grid, pats[i], {}) !=
                count_avoiding_patterns(grid, pats[j], {}))
                return false;
            if (periodic_count_multidim(lat, pats[i], {}) !=
                periodic_count_multidim(lat, pats[j], {}))
                return false;
        }
    if (pairs == 0) return false;
    // one-dimensional periodic counts against matrix traces
    Word w11 = Word::parse("11", 2);
    PatternD p = PatternD::from_word(w11.syms, 2);
    for (int n = 2; n <= 8; ++n) {
        LatticeSubgroup line{1, {{n}}};
        if (periodic_count_multidim(line, p, {}) != periodic_count(w11, n)) return false;
    }
    return true;
}

bool crit12() {
    PatternD single1(2, Shape::rect(2, 2), {1, 0, 0, 0});
    PatternD zeros = PatternD::constant(2, Shape::rect(2, 2), 0);
    Shape grid = Shape::rect(4, 4);
    mpz_class avoid_single = count_avoiding_patterns(grid, single1, {});
    mpz_class avoid_zero = count_avoiding_patterns(grid, zeros, {});
    if (!(avoid_single < avoid_zero)) return false;
    if (avoid_single != 34561 || avoid_zero != 42176) return false;
    // sweep all 2^16 grids; the map is defined on those avoiding the single-1
    // block, and replay plus an image set certify injectivity on that domain
    std::set<std::vector<int>> images;
    mpz_class domain = 0;
    for (int bits = 0; bits < (1 << 16); ++bits) {
        std::vector<int> vals(16);
        for (int i = 0; i < 16; ++i) vals[static_cast<std::size_t>(i)] = bits >> i & 1;
        PatternD g(2, grid, vals);
        bool in_domain = true;
        for (int x = 0; x < 3 && in_domain; ++x)
            for (int y = 0; y < 3 && in_domain; ++y)
                in_domain = !(g.at({x, y}) == 1 && g.at({x, y + 1}) == 0 &&
                              g.at({x + 1, y}) == 0 && g.at({x + 1, y + 1}) == 0);
        if (!in_domain) continue;
        ++domain;
        LexInjectionResult r = lex_replacement_injection(zeros, single1, g);
        if (!r.inverse_ok) return false;
        if (!images.insert(r.result.values).second) return false;  // collision
    }
    // the domain is exactly the grids avoiding the single-1 block, and every
    // image avoids the all-zero block, so the strict count gap is witnessed
    if (domain != avoid_single) return false;
    for (const auto& img : images) {
        PatternD p(2, grid, img);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                if (p.at({x, y}) == 0 && p.at({x, y + 1}) == 0 && p.at({x + 1, y}) == 0 &&
                    p.at({x + 1, y + 1}) == 0)
                    return false;
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "avoidance counts equal naive enumeration (q<=3, k<=5, n<=12)", crit1);
    criterion(2, "equal overlap classes share every invariant (binary, k<=8)", crit2);
    criterion(3, "correlation order implies count and entropy order (200 random pairs)", crit3);
    criterion(4, "one-word char poly equals the matrix char poly up to t-powers", crit4);
    criterion(5, "structural properties and irreducibility of follower graphs", crit5);
    criterion(6, "word recovery round trips (full shift and golden mean)", crit6);
    criterion(7, "domination condition fixtures and exact survival dominance", crit7);
    criterion(8, "Perron vector equalities and ratio bounds (50 random words)", crit8);
    criterion(9, "hitting expectations exact; coupling invariants over 1e5 trials", crit9);
    criterion(10, "swap-conjugacy chains within bounds; open pair stays open", crit10);
    criterion(11, "multidimensional counts: inclusion-exclusion, replaceability, traces", crit11);
    criterion(12, "strict two-pattern gap and injective lexicographic replacement", crit12);
    if (failures == 0)
        std::printf("ALL 12 CRITERIA PASSED\n");
    else
        std::printf("%d CRITERIA FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
