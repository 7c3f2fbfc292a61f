#ifndef WORDSHIFT_MULTIDIM_HPP
#define WORDSHIFT_MULTIDIM_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordshift/linalg.hpp"

namespace wordshift {

using Vec = std::vector<int>;

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec vec_neg(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

/// Finite subset of the d-dimensional integer lattice, points sorted.
struct Shape {
    int d = 1;
    std::vector<Vec> points;

    Shape() = default;
    Shape(int d_, std::vector<Vec> pts) : d(d_), points(std::move(pts)) {
        if (points.empty()) throw std::invalid_argument("shape must be nonempty");
        for (const Vec& p : points)
            if (static_cast<int>(p.size()) != d)
                throw std::invalid_argument("point dimension mismatch");
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
    }

    int size() const { return static_cast<int>(points.size()); }
    int index_of(const Vec& p) const {
        auto it = std::lower_bound(points.begin(), points.end(), p);
        if (it == points.end() || *it != p) return -1;
        return static_cast<int>(it - points.begin());
    }
    bool contains(const Vec& p) const { return index_of(p) >= 0; }

    static Shape rect(int rows, int cols) {  // 2-D box [0,rows) x [0,cols)
        std::vector<Vec> pts;
        for (int x = 0; x < rows; ++x)
            for (int y = 0; y < cols; ++y) pts.push_back({x, y});
        return Shape(2, std::move(pts));
    }
    static Shape interval(int n) {  // 1-D box [0,n)
        std::vector<Vec> pts;
        for (int x = 0; x < n; ++x) pts.push_back({x});
        return Shape(1, std::move(pts));
    }

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.d == b.d && a.points == b.points;
    }
};

/// Pattern: a symbol from [q] on every point of its shape.
struct PatternD {
    int q = 2;
    Shape shape;
    std::vector<int> values;  // aligned with shape.points

    PatternD() = default;
    PatternD(int q_, Shape s, std::vector<int> vals)
        : q(q_), shape(std::move(s)), values(std::move(vals)) {
        if (values.size() != shape.points.size())
            throw std::invalid_argument("pattern values must cover the shape exactly");
        for (int v : values)
            if (v < 0 || v >= q) throw std::invalid_argument("pattern symbol out of range");
    }

    int at(const Vec& p) const {
        int i = shape.index_of(p);
        if (i < 0) throw std::invalid_argument("point outside pattern support");
        return values[static_cast<std::size_t>(i)];
    }

    static PatternD from_word(const std::vector<int>& syms, int q) {
        return PatternD(q, Shape::interval(static_cast<int>(syms.size())), syms);
    }
    static PatternD constant(int q, const Shape& s, int sym) {
        return PatternD(q, s, std::vector<int>(s.points.size(), sym));
    }
};

/// Differences i in S-S (plus anything with empty intersection) such that
/// the pattern agrees with its own i-translate where supports intersect.
inline std::vector<Vec> agree_set(const PatternD& u) {
    const Shape& s = u.shape;
    std::set<Vec> diffs;
    for (const Vec& a : s.points)
        for (const Vec& b : s.points) diffs.insert(vec_sub(a, b));
    std::vector<Vec> out;
    for (const Vec& i : diffs) {
        bool ok = true;
        for (const Vec& j : s.points) {
            Vec shifted = vec_sub(j, i);
            if (!s.contains(shifted)) continue;  // j outside S ∩ (S+i)
            if (u.at(j) != u.at(shifted)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool mutually_replaceable_fullshift(const PatternD& u, const PatternD& v) {
    if (!(u.shape == v.shape) || u.q != v.q)
        throw std::invalid_argument("replaceability requires equal shapes and alphabets");
    return agree_set(u) == agree_set(v);
}

/// Replaces the occurrence of u at every i in sites by v; requires
/// agree(u) ⊆ agree(v) so overlapping replacements cannot clash.
inline PatternD replace_occurrences(const PatternD& w, const PatternD& u, const PatternD& v,
                                    const std::vector<Vec>& sites) {
    if (!(u.shape == v.shape) || u.q != v.q || w.q != u.q)
        throw std::invalid_argument("patterns must share shape and alphabet");
    auto au = agree_set(u), av = agree_set(v);
    if (!std::includes(av.begin(), av.end(), au.begin(), au.end()))
        throw std::invalid_argument("agreement containment fails: replacement may clash");
    for (const Vec& i : sites)
        for (const Vec& s : u.shape.points) {
            Vec t = vec_add(i, s);
            if (!w.shape.contains(t))
                throw std::invalid_argument("occurrence not inside the host pattern");
            if (w.at(t) != u.at(s))
                throw std::invalid_argument("host does not carry u at a claimed occurrence");
        }
    PatternD out = w;
    for (const Vec& i : sites)
        for (const Vec& s : u.shape.points) {
            Vec t = vec_add(i, s);
            int idx = out.shape.index_of(t);
            int newval = v.at(s);
            int cur = out.values[static_cast<std::size_t>(idx)];
            if (cur != w.at(t) && cur != newval)
                throw std::logic_error("overlapping replacements clashed despite containment");
            out.values[static_cast<std::size_t>(idx)] = newval;
        }
    return out;
}

namespace detail {

/// All translates i with i + support(u) inside t.
inline std::vector<Vec> placements(const Shape& t, const Shape& s) {
    std::set<Vec> cand;
    for (const Vec& tp : t.points)
        for (const Vec& sp : s.points) cand.insert(vec_sub(tp, sp));
    std::vector<Vec> out;
    for (const Vec& i : cand) {
        bool inside = true;
        for (const Vec& sp : s.points)
            if (!t.contains(vec_add(i, sp))) {
                inside = false;
                break;
            }
        if (inside) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct CompiledPattern {
    std::vector<std::pair<int, int>> cells;  // (cell index in T, required symbol)
};

inline std::vector<CompiledPattern> compile_placements(const Shape& t, const PatternD& u) {
    std::vector<CompiledPattern> out;
    for (const Vec& i : placements(t, u.shape)) {
        CompiledPattern c;
        for (std::size_t s = 0; s < u.shape.points.size(); ++s)
            c.cells.emplace_back(t.index_of(vec_add(i, u.shape.points[s])),
                                 u.values[s]);
        out.push_back(std::move(c));
    }
    return out;
}

inline bool assignment_hits(const std::vector<int>& vals, const CompiledPattern& c) {
    for (auto& [idx, sym] : c.cells)
        if (vals[static_cast<std::size_t>(idx)] != sym) return false;
    return true;
}

}  // namespace detail

/// Exact count of symbol assignments on T that contain no fully-supported
/// translate of u nor of any member of f.  Optional cell order: enumeration
/// runs over the cells in that order (results are order-independent; the
/// parameter exists so tests can assert that).
inline mpz_class count_avoiding_patterns(const Shape& t, const PatternD& u,
                                         const std::vector<PatternD>& f,
                                         double budget_bits = 24.0,
                                         const std::vector<int>& order = {}) {
    const int q = u.q;
    if (t.size() * std::log2(static_cast<double>(q)) > budget_bits)
        throw BudgetExceeded("state space exceeds the enumeration budget");
    std::vector<detail::CompiledPattern> pats = detail::compile_placements(t, u);
    for (const PatternD& g : f) {
        if (g.q != q) throw std::invalid_argument("alphabet mismatch in forbidden list");
        auto more = detail::compile_placements(t, g);
        pats.insert(pats.end(), more.begin(), more.end());
    }
    std::vector<int> cells(static_cast<std::size_t>(t.size()));
    if (order.empty()) {
        for (int i = 0; i < t.size(); ++i) cells[static_cast<std::size_t>(i)] = i;
    } else {
        if (static_cast<int>(order.size()) != t.size())
            throw std::invalid_argument("cell order must be a permutation of the shape");
        cells = order;
    }
    std::vector<int> vals(static_cast<std::size_t>(t.size()), 0);
    mpz_class count = 0;
    while (true) {
        bool hit = false;
        for (const auto& c : pats)
            if (detail::assignment_hits(vals, c)) {
                hit = true;
                break;
            }
        if (!hit) ++count;
        std::size_t pos = 0;
        while (pos < cells.size() &&
               vals[static_cast<std::size_t>(cells[pos])] == q - 1)
            vals[static_cast<std::size_t>(cells[pos++])] = 0;
        if (pos == cells.size()) break;
        ++vals[static_cast<std::size_t>(cells[pos])];
    }
    return count;
}

/// Inclusion-exclusion over subsets of u-placements: each term pins u on the
/// chosen placements and counts f-avoiding completions, signed by parity.
inline mpz_class inclusion_exclusion_count(const Shape& t, const PatternD& u,
                                           const std::vector<PatternD>& f,
                                           double budget_bits = 24.0) {
    const int q = u.q;
    if (t.size() * std::log2(static_cast<double>(q)) > budget_bits)
        throw BudgetExceeded("state space exceeds the enumeration budget");
    auto upl = detail::compile_placements(t, u);
    if (upl.size() > 22) throw BudgetExceeded("too many placements for inclusion-exclusion");
    std::vector<detail::CompiledPattern> fpl;
    for (const PatternD& g : f) {
        auto more = detail::compile_placements(t, g);
        fpl.insert(fpl.end(), more.begin(), more.end());
    }
    mpz_class total = 0;
    const std::size_t n_cells = static_cast<std::size_t>(t.size());
    for (std::uint64_t mask = 0; mask < (1ull << upl.size()); ++mask) {
        std::vector<int> pinned(n_cells, -1);
        bool conflict = false;
        int bits = 0;
        for (std::size_t p = 0; p < upl.size() && !conflict; ++p) {
            if (!(mask >> p & 1)) continue;
            ++bits;
            for (auto& [idx, sym] : upl[p].cells) {
                int& cur = pinned[static_cast<std::size_t>(idx)];
                if (cur == -1)
                    cur = sym;
                else if (cur != sym)
                    conflict = true;
            }
        }
        if (conflict) continue;
        std::vector<int> free_cells;
        for (std::size_t i = 0; i < n_cells; ++i)
            if (pinned[i] == -1) free_cells.push_back(static_cast<int>(i));
        mpz_class term = 0;
        if (fpl.empty()) {
            mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(q), free_cells.size());
        } else {
            std::vector<int> vals(n_cells, 0);
            for (std::size_t i = 0; i < n_cells; ++i)
                if (pinned[i] != -1) vals[i] = pinned[i];
            while (true) {
                bool hit = false;
                for (const auto& c : fpl)
                    if (detail::assignment_hits(vals, c)) {
                        hit = true;
                        break;
                    }
                if (!hit) ++term;
                std::size_t pos = 0;
                while (pos < free_cells.size() &&
                       vals[static_cast<std::size_t>(free_cells[pos])] == q - 1)
                    vals[static_cast<std::size_t>(free_cells[pos++])] = 0;
                if (pos == free_cells.size()) break;
                ++vals[static_cast<std::size_t>(free_cells[pos])];
            }
        }
        if (bits % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

/// Finite-index subgroup of Z^d given by an integer basis (rows).
struct LatticeSubgroup {
    int d = 1;
    std::vector<Vec> basis;  // basis[i] = i-th basis vector

    mpz_class index() const {
        ZMatrix m = zmatrix(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        mpz_class det = bareiss_det(std::move(m));
        if (det == 0) throw std::invalid_argument("lattice basis is singular");
        return abs(det);
    }

    /// Membership: z in the lattice iff the basis solves z with integers.
    bool contains(const Vec& z) const {
        std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(d),
                                              std::vector<mpq_class>(static_cast<std::size_t>(d)));
        std::vector<mpq_class> b(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            b[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
            for (int j = 0; j < d; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        for (const mpq_class& x : solve_rational(std::move(a), std::move(b)))
            if (x.get_den() != 1) return false;
        return true;
    }

    /// Coset representatives found by breadth-first enumeration from the
    /// origin (expanding by unit steps, smallest representatives first).
    std::vector<Vec> fundamental_domain(double budget = 1 << 20) const {
        mpz_class idx = index();
        if (idx > static_cast<long>(budget))
            throw BudgetExceeded("lattice index exceeds the budget");
        const std::size_t want = static_cast<std::size_t>(idx.get_ui());
        std::vector<Vec> reps;
        std::set<Vec> visited;
        std::vector<Vec> frontier = {Vec(static_cast<std::size_t>(d), 0)};
        visited.insert(frontier.front());
        while (!frontier.empty() && reps.size() < want) {
            std::sort(frontier.begin(), frontier.end());
            std::vector<Vec> next;
            for (const Vec& p : frontier) {
                bool fresh = true;
                for (const Vec& r : reps)
                    if (contains(vec_sub(p, r))) {
                        fresh = false;
                        break;
                    }
                if (fresh) reps.push_back(p);
                for (int i = 0; i < d; ++i)
                    for (int s : {-1, 1}) {
                        Vec n = p;
                        n[static_cast<std::size_t>(i)] += s;
                        if (visited.insert(n).second) next.push_back(n);
                    }
            }
            frontier = std::move(next);
        }
        if (reps.size() != want) throw std::logic_error("fundamental domain enumeration failed");
        std::sort(reps.begin(), reps.end());
        return reps;
    }
};

/// Counts lattice-periodic configurations (assignments on a fundamental
/// domain, read cyclically modulo the lattice) avoiding u and all of f.
inline mpz_class periodic_count_multidim(const LatticeSubgroup& lat, const PatternD& u,
                                         const std::vector<PatternD>& f,
                                         double budget_bits = 24.0) {
    const int q = u.q;
    std::vector<Vec> domain = lat.fundamental_domain();
    if (domain.size() * std::log2(static_cast<double>(q)) > budget_bits)
        throw BudgetExceeded("state space exceeds the enumeration budget");

    std::map<Vec, int> rep_cache;
    auto rep_index = [&](const Vec& z) {
        auto it = rep_cache.find(z);
        if (it != rep_cache.end()) return it->second;
        for (std::size_t r = 0; r < domain.size(); ++r)
            if (lat.contains(vec_sub(z, domain[r]))) {
                rep_cache[z] = static_cast<int>(r);
                return static_cast<int>(r);
            }
        throw std::logic_error("point has no coset representative");
    };

    // compile wrapped occurrence tests at every coset representative
    std::vector<std::vector<std::pair<int, int>>> tests;
    auto add_tests = [&](const PatternD& g) {
        for (const Vec& i : domain) {
            std::vector<std::pair<int, int>> cells;
            for (std::size_t s = 0; s < g.shape.points.size(); ++s)
                cells.emplace_back(rep_index(vec_add(i, g.shape.points[s])), g.values[s]);
            tests.push_back(std::move(cells));
        }
    };
    add_tests(u);
    for (const PatternD& g : f) add_tests(g);

    std::vector<int> vals(domain.size(), 0);
    mpz_class count = 0;
    while (true) {
        bool hit = false;
        for (const auto& cells : tests) {
            bool all = true;
            for (auto& [idx, sym] : cells)
                if (vals[static_cast<std::size_t>(idx)] != sym) {
                    all = false;
                    break;
                }
            if (all) {
                hit = true;
                break;
            }
        }
        if (!hit) ++count;
        std::size_t pos = 0;
        while (pos < vals.size() && vals[pos] == q - 1) vals[pos++] = 0;
        if (pos == vals.size()) break;
        ++vals[pos];
    }
    return count;
}

// ----------------------------------------------- lexicographic injection --

struct LexInjectionResult {
    PatternD result;
    std::vector<Vec> sites;  // replacement sites in application order
    bool inverse_ok = false;  // reverse replay recovered the input exactly
};

/// One-by-one replacement of the all-zero n x n block by the single-1 block,
/// in lexicographic order (last coordinate first), until none remains.  The
/// certificate replays the inverse in reverse-lexicographic order.
inline LexInjectionResult lex_replacement_injection(const PatternD& p_from, const PatternD& p_to,
                                                    const PatternD& grid) {
    if (!(p_from.shape == p_to.shape) || p_from.q != 2 || p_to.q != 2 || grid.q != 2)
        throw std::invalid_argument("expected binary patterns on a common square shape");
    for (int v : p_from.values)
        if (v != 0) throw std::invalid_argument("source block must be all zero");
    int ones = 0;
    for (int v : p_to.values) ones += v;
    if (ones != 1) throw std::invalid_argument("target block must contain exactly one 1");

    auto lex_less = [](const Vec& a, const Vec& b) {
        // order by last coordinate, then earlier ones
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    };
    auto occurrences = [&](const PatternD& host, const PatternD& pat) {
        std::vector<Vec> out;
        for (const Vec& i : detail::placements(host.shape, pat.shape)) {
            bool all = true;
            for (std::size_t s = 0; s < pat.shape.points.size() && all; ++s)
                all = host.at(vec_add(i, pat.shape.points[s])) == pat.values[s];
            if (all) out.push_back(i);
        }
        std::sort(out.begin(), out.end(), lex_less);
        return out;
    };
    auto paste = [](PatternD& host, const PatternD& pat, const Vec& i) {
        for (std::size_t s = 0; s < pat.shape.points.size(); ++s) {
            int idx = host.shape.index_of(vec_add(i, pat.shape.points[s]));
            host.values[static_cast<std::size_t>(idx)] = pat.values[s];
        }
    };

    LexInjectionResult res;
    res.result = grid;
    // the map is defined (and injective) on grids avoiding the single-1 block
    if (!occurrences(grid, p_to).empty())
        throw std::invalid_argument("grid already contains the single-1 block");
    while (true) {
        auto occ = occurrences(res.result, p_from);
        if (occ.empty()) break;
        paste(res.result, p_to, occ.front());
        res.sites.push_back(occ.front());
    }
    // inverse replay: undo the same number of steps, each time replacing the
    // reverse-lexicographically largest occurrence of the single-1 block
    PatternD replay = res.result;
    for (std::size_t step = res.sites.size(); step-- > 0;) {
        auto occ = occurrences(replay, p_to);
        if (occ.empty()) {
            res.inverse_ok = false;
            return res;
        }
        paste(replay, p_from, occ.back());
    }
    res.inverse_ok = replay.values == grid.values;
    return res;
}

}  // namespace wordshift

#endif
