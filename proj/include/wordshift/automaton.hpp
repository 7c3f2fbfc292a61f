#ifndef WORDSHIFT_AUTOMATON_HPP
#define WORDSHIFT_AUTOMATON_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordshift/linalg.hpp"
#include "wordshift/word.hpp"

namespace wordshift {

/// Transition table of the follower construction for a forbidden word w of
/// length k.  d(i, a) is the longest prefix of w that is a suffix of
/// w_1..w_i a; encoded as the state index 1..i+1, or 0 when no prefix
/// matches (a "star" move).  d(k-1, w_k) is stored as k (the completed word)
/// even though that transition is absent from the graph.
struct DTable {
    Word w;
    // d[i][a] for i = 1..k-1 (row 0 unused)
    std::vector<std::vector<int>> d;

    int k() const { return w.size(); }
    int q() const { return w.q; }
    int at(int i, int a) const { return d.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(a)); }
};

inline DTable d_table(const Word& w) {
    const int k = w.size(), q = w.q;
    if (k < 2) throw std::invalid_argument("forbidden word must have length at least 2");
    DTable t;
    t.w = w;
    t.d.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(q), 0));
    for (int i = 1; i <= k - 1; ++i) {
        for (int a = 0; a < q; ++a) {
            int best = 0;
            for (int j = i + 1; j >= 1; --j) {
                // does w_1..w_j equal w_{i-j+2}..w_i a ?
                if (w.at(j) != a) continue;
                bool ok = true;
                for (int m = 1; m < j && ok; ++m) ok = (w.at(m) == w.at(i - j + 1 + m));
                if (ok) {
                    best = j;
                    break;
                }
            }
            t.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = best;
        }
    }
    return t;
}

/// Vertex of the follower graph: either the star for symbol a (a != w_1) or
/// the proper-prefix state i in 1..k-1.
struct LVertex {
    bool is_star = false;
    int value = 0;  // star: the symbol a; state: the prefix length i

    friend bool operator==(const LVertex& a, const LVertex& b) {
        return a.is_star == b.is_star && a.value == b.value;
    }
    friend bool operator<(const LVertex& a, const LVertex& b) {
        if (a.is_star != b.is_star) return a.is_star;  // stars sort first
        return a.value < b.value;
    }
    std::string name() const {
        return is_star ? "*" + std::to_string(value) : std::to_string(value);
    }
};

struct LabeledEdge {
    int src = 0, dst = 0, label = 0;
    friend bool operator<(const LabeledEdge& a, const LabeledEdge& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.dst != b.dst) return a.dst < b.dst;
        return a.label < b.label;
    }
    friend bool operator==(const LabeledEdge& a, const LabeledEdge& b) {
        return a.src == b.src && a.dst == b.dst && a.label == b.label;
    }
};

struct LabeledGraph {
    int q = 2;
    std::vector<LVertex> vertices;
    std::vector<LabeledEdge> edges;  // kept sorted

    int n() const { return static_cast<int>(vertices.size()); }

    int index_of(const LVertex& v) const {
        for (int i = 0; i < n(); ++i)
            if (vertices[static_cast<std::size_t>(i)] == v) return i;
        throw std::invalid_argument("vertex not present: " + v.name());
    }
    int star_index(int a) const { return index_of(LVertex{true, a}); }
    int state_index(int i) const { return index_of(LVertex{false, i}); }
};

/// Follower graph for the shift forbidding w.  Stars are listed first in
/// ascending symbol order, then states 1..k-1.
inline LabeledGraph build_L(const Word& w) {
    const int k = w.size(), q = w.q;
    DTable t = d_table(w);
    LabeledGraph g;
    g.q = q;
    for (int a = 0; a < q; ++a)
        if (a != w.at(1)) g.vertices.push_back(LVertex{true, a});
    for (int i = 1; i <= k - 1; ++i) g.vertices.push_back(LVertex{false, i});

    auto target = [&](int dv, int a) -> int {
        return dv == 0 ? g.star_index(a) : g.state_index(dv);
    };
    for (int a = 0; a < q; ++a) {
        if (a == w.at(1)) continue;
        int s = g.star_index(a);
        for (int b = 0; b < q; ++b) {
            if (b == w.at(1))
                g.edges.push_back({s, g.state_index(1), b});
            else
                g.edges.push_back({s, g.star_index(b), b});
        }
    }
    for (int i = 1; i <= k - 1; ++i) {
        int s = g.state_index(i);
        for (int a = 0; a < q; ++a) {
            if (i == k - 1 && a == w.at(k)) continue;  // completing edge is absent
            g.edges.push_back({s, target(t.at(i, a), a), a});
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

/// Incoming edge label of each vertex of L_w (constant per vertex: stars
/// receive their own symbol, state i receives w_i).
inline int incoming_label(const LabeledGraph&, const LVertex& v, const Word& w) {
    return v.is_star ? v.value : w.at(v.value);
}

/// Follower graph restricted to an ambient shift that additionally forbids
/// the length-2 words in F: an edge is removed when it would extend some
/// incoming edge into a forbidden pair.
inline LabeledGraph build_L_restricted(const Word& w, const std::set<std::pair<int, int>>& f) {
    LabeledGraph g = build_L(w);
    std::vector<LabeledEdge> kept;
    for (const auto& e : g.edges) {
        int in = incoming_label(g, g.vertices[static_cast<std::size_t>(e.src)], w);
        if (f.count({in, e.label})) continue;
        kept.push_back(e);
    }
    g.edges = std::move(kept);
    return g;
}

inline std::set<std::pair<int, int>> golden_mean_pairs() { return {{1, 1}}; }

inline ZMatrix adjacency_matrix(const LabeledGraph& g) {
    ZMatrix a = zmatrix(static_cast<std::size_t>(g.n()));
    for (const auto& e : g.edges) a[static_cast<std::size_t>(e.src)][static_cast<std::size_t>(e.dst)] += 1;
    return a;
}

/// Unlabeled simple digraph, the input type for structure recovery.
struct Digraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;

    std::vector<int> succs(int v) const {
        std::vector<int> out;
        for (auto& [s, t] : edges)
            if (s == v) out.push_back(t);
        return out;
    }
    std::vector<int> preds(int v) const {
        std::vector<int> out;
        for (auto& [s, t] : edges)
            if (t == v) out.push_back(s);
        return out;
    }
    int outdeg(int v) const { return static_cast<int>(succs(v).size()); }
    int indeg(int v) const { return static_cast<int>(preds(v).size()); }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n == b.n && a.edges == b.edges;
    }
};

inline Digraph strip_labels(const LabeledGraph& g) {
    Digraph d;
    d.n = g.n();
    for (const auto& e : g.edges) d.edges.insert({e.src, e.dst});
    return d;
}

inline bool strongly_connected(const Digraph& g) {
    if (g.n == 0) return false;
    auto reach = [&](bool fwd) {
        std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto& [s, t] : g.edges) {
                int from = fwd ? s : t, to = fwd ? t : s;
                if (from == v && !seen[static_cast<std::size_t>(to)]) {
                    seen[static_cast<std::size_t>(to)] = 1;
                    stack.push_back(to);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    return reach(true) && reach(false);
}

inline bool is_irreducible(const Digraph& g) { return strongly_connected(g); }
inline bool is_irreducible(const LabeledGraph& g) { return strongly_connected(strip_labels(g)); }

/// The four binary words whose follower graph fails to be irreducible.
inline bool is_binary_reducible(const Word& w) {
    if (w.q != 2) return false;
    const int k = w.size();
    auto run = [&](int first, int fill) {
        std::vector<int> s(static_cast<std::size_t>(k), fill);
        s[0] = first;
        return Word(2, s);
    };
    auto run_end = [&](int fill, int last) {
        std::vector<int> s(static_cast<std::size_t>(k), fill);
        s[static_cast<std::size_t>(k - 1)] = last;
        return Word(2, s);
    };
    return w == run(1, 0) || w == run_end(1, 0) || w == run(0, 1) || w == run_end(0, 1);
}

/// The binary words whose golden-mean-restricted follower graph fails to be
/// irreducible: 10^(k-1), 0^(k-1)1, and for odd k the alternating words
/// (10)^((k-1)/2) 0 and 0 (01)^((k-1)/2).
inline bool is_gm_reducible(const Word& w) {
    if (w.q != 2) throw std::invalid_argument("golden mean ambient requires a binary word");
    const int k = w.size();
    std::vector<int> a(static_cast<std::size_t>(k), 0), b(static_cast<std::size_t>(k), 0);
    a[0] = 1;                                  // 1 0^{k-1}
    b[static_cast<std::size_t>(k - 1)] = 1;    // 0^{k-1} 1
    if (w.syms == a || w.syms == b) return true;
    if (k % 2 == 1) {
        std::vector<int> c, d;
        // (10)^{(k-1)/2} 0 and 0 (01)^{(k-1)/2}
        for (int i = 0; i < k - 1; ++i) c.push_back(i % 2 == 0 ? 1 : 0);
        c.push_back(0);
        d.push_back(0);
        for (int i = 0; i < k - 1; ++i) d.push_back(i % 2 == 0 ? 0 : 1);
        if (w.syms == c || w.syms == d) return true;
    }
    return false;
}

inline bool avoids_pairs(const Word& w, const std::set<std::pair<int, int>>& f) {
    for (int i = 1; i < w.size(); ++i)
        if (f.count({w.at(i), w.at(i + 1)})) return false;
    return true;
}

/// Deterministic prefix automaton on states 0..k, where state s is "the last
/// s symbols read are the length-s prefix of w" and k is completion.
/// delta[s][a] for s in 0..k-1.
inline std::vector<std::vector<int>> prefix_automaton(const Word& w) {
    const int k = w.size(), q = w.q;
    std::vector<std::vector<int>> delta(static_cast<std::size_t>(k),
                                        std::vector<int>(static_cast<std::size_t>(q), 0));
    // failure links via the classic prefix function
    std::vector<int> fail(static_cast<std::size_t>(k + 1), 0);
    for (int i = 2; i <= k; ++i) {
        int j = fail[static_cast<std::size_t>(i - 1)];
        while (j > 0 && w.at(j + 1) != w.at(i)) j = fail[static_cast<std::size_t>(j)];
        fail[static_cast<std::size_t>(i)] = (w.at(j + 1) == w.at(i)) ? j + 1 : 0;
    }
    for (int s = 0; s < k; ++s)
        for (int a = 0; a < q; ++a) {
            int j = s;
            while (j > 0 && w.at(j + 1) != a) j = fail[static_cast<std::size_t>(j)];
            delta[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] =
                (w.at(j + 1) == a) ? j + 1 : 0;
        }
    return delta;
}

}  // namespace wordshift

#endif
