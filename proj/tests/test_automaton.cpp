#include <catch2/catch_amalgamated.hpp>

#include "wordshift/automaton.hpp"
#include "wordshift/counting.hpp"
#include "wordshift/io.hpp"

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

// d_i(a) from first principles: largest j with w_1..w_j a suffix of w_1..w_i a
int d_brute(const Word& w, int i, int a) {
    std::vector<int> ext(w.syms.begin(), w.syms.begin() + i);
    ext.push_back(a);
    for (int j = i + 1; j >= 1; --j) {
        bool ok = true;
        for (int p = 1; p <= j && ok; ++p)
            ok = (w.at(p) == ext[static_cast<std::size_t>(i + 1 - j + p - 1)]);
        if (ok) return j;
    }
    return 0;
}

}  // namespace

TEST_CASE("d-table matches first-principles definition") {
    for (int q : {2, 3})
        for (int k = 2; k <= 6; ++k)
            for (const Word& w : all_words_of(q, k)) {
                DTable t = d_table(w);
                for (int i = 1; i <= k - 1; ++i)
                    for (int a = 0; a < q; ++a) REQUIRE(t.at(i, a) == d_brute(w, i, a));
            }
}

TEST_CASE("follower graph shape and vertex order") {
    Word w = Word::parse("21201", 3);
    LabeledGraph g = build_L(w);
    REQUIRE(g.n() == 6);  // q-1 stars + k-1 states
    REQUIRE(g.vertices[0].name() == "*0");
    REQUIRE(g.vertices[1].name() == "*1");
    REQUIRE(g.vertices[2].name() == "1");
    REQUIRE(g.vertices[5].name() == "4");
    // total edges: n*q minus the one missing completion
    REQUIRE(g.edges.size() == static_cast<std::size_t>(g.n() * 3 - 1));
}

TEST_CASE("structural properties of every follower graph") {
    for (int q : {2, 3})
        for (int k = 2; k <= (q == 2 ? 7 : 5); ++k)
            for (const Word& w : all_words_of(q, k)) {
                LabeledGraph g = build_L(w);
                DTable t = d_table(w);
                // right-resolving: out-labels distinct per vertex
                for (int v = 0; v < g.n(); ++v) {
                    std::set<int> labels;
                    for (const auto& e : g.edges)
                        if (e.src == v) REQUIRE(labels.insert(e.label).second);
                }
                // incoming-label constancy per vertex
                std::map<int, std::set<int>> in_labels;
                for (const auto& e : g.edges) in_labels[e.dst].insert(e.label);
                for (auto& [v, ls] : in_labels) REQUIRE(ls.size() == 1);
                // out-degree schedule: every vertex has q, except State(k-1) has q-1
                for (int v = 0; v < g.n(); ++v) {
                    int deg = 0;
                    for (const auto& e : g.edges) deg += (e.src == v);
                    REQUIRE(deg == ((v == g.state_index(k - 1)) ? q - 1 : q));
                }
                // positive-entry differences i - d_i(a) collide only between
                // forced entries (a = w_{i+1}, where d jumps to i+1)
                for (int i = 1; i <= k - 1; ++i)
                    for (int a = 0; a < q; ++a) {
                        if (t.at(i, a) < 1) continue;
                        for (int i2 = i; i2 <= k - 1; ++i2)
                            for (int b = 0; b < q; ++b) {
                                if (i2 == i && b <= a) continue;
                                if (t.at(i2, b) < 1) continue;
                                if (i - t.at(i, a) == i2 - t.at(i2, b))
                                    REQUIRE((a == w.at(i + 1) && b == w.at(i2 + 1)));
                            }
                    }
                // prefix heredity: induced subgraph on stars + states < r
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
                    std::set<LabeledEdge> expect(h.edges.begin(), h.edges.end());
                    REQUIRE(induced == expect);
                }
            }
}

TEST_CASE("label paths of the follower graph count avoiding words") {
    // paths of length n leaving the start configuration of the automaton
    // derived from the d-table must agree with the avoidance count
    for (int q : {2, 3})
        for (int k = 2; k <= 5; ++k)
            for (const Word& w : all_words_of(q, k))
                for (int n = 0; n <= 8; n += 2)
                    REQUIRE(count_avoiding(w, n) == count_avoiding_naive(w, n));
}

TEST_CASE("irreducibility matches the closed-form exceptional list") {
    for (int q : {2, 3})
        for (int k = 2; k <= 7; ++k)
            for (const Word& w : all_words_of(q, k)) {
                bool irr = is_irreducible(strip_labels(build_L(w)));
                REQUIRE(irr == !is_binary_reducible(w));
            }
}

TEST_CASE("golden-mean restricted graph and its exceptional words") {
    for (int k = 2; k <= 9; ++k)
        for (const Word& w : all_words_of(2, k)) {
            // the closed exceptional list characterizes reducibility only for
            // words whose sole self-overlap is the full length
            if (!avoids_pairs(w, golden_mean_pairs()) || !has_trivial_overlap(w)) continue;
            bool irr = is_irreducible(strip_labels(build_L_restricted(w, golden_mean_pairs())));
            REQUIRE(irr == !is_gm_reducible(w));
        }
}

TEST_CASE("graph serialization round trip") {
    Word w = Word::parse("21201", 3);
    LabeledGraph g = build_L(w);
    std::string dot = to_dot(g);
    REQUIRE(dot.find("\"*0\"") != std::string::npos);
    REQUIRE(dot.find("label=") != std::string::npos);
    json j = graph_to_json(g);
    REQUIRE(j["vertices"].size() == 6);
    Digraph d = digraph_from_json(j);  // labels present but ignored
    REQUIRE(d == strip_labels(g));
    json ju = graph_to_json(strip_labels(g));  // labels omitted entirely
    REQUIRE(digraph_from_json(ju) == strip_labels(g));
}
