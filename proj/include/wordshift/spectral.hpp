#ifndef WORDSHIFT_SPECTRAL_HPP
#define WORDSHIFT_SPECTRAL_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wordshift/automaton.hpp"
#include "wordshift/linalg.hpp"
#include "wordshift/word.hpp"

namespace wordshift {

// ---------------------------------------------------------------- roots ----

/// Largest real root of p in [lo, hi], located by a descending sign-change
/// scan followed by bisection to bracketing width <= tol.
inline std::optional<double> largest_real_root(const IntPoly& p, double lo, double hi,
                                               double tol, int samples = 1 << 13) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial");
    const double h = (hi - lo) / samples;
    double x_prev = hi, v_prev = p.eval(hi);
    if (v_prev == 0.0) return hi;
    for (int j = 1; j <= samples; ++j) {
        double x = hi - j * h;
        double v = p.eval(x);
        if (v == 0.0) return x;
        if ((v < 0) != (v_prev < 0)) {
            double a = x, b = x_prev;
            double va = v;
            while (b - a > tol) {
                double m = 0.5 * (a + b);
                double vm = p.eval(m);
                if (vm == 0.0) return m;
                if ((vm < 0) == (va < 0)) {
                    a = m;
                    va = vm;
                } else {
                    b = m;
                }
            }
            return 0.5 * (a + b);
        }
        x_prev = x;
        v_prev = v;
    }
    return std::nullopt;
}

/// All sign-change real roots of p in [lo, hi], descending.  Roots of even
/// multiplicity (no sign change) are not detected unless they land exactly on
/// a grid point.
inline std::vector<double> real_roots(const IntPoly& p, double lo, double hi, double tol,
                                      int samples = 1 << 13) {
    std::vector<double> out;
    const double h = (hi - lo) / samples;
    double x_prev = hi, v_prev = p.eval(hi);
    if (v_prev == 0.0) out.push_back(hi);
    for (int j = 1; j <= samples; ++j) {
        double x = hi - j * h;
        double v = p.eval(x);
        if (v == 0.0) {
            out.push_back(x);
        } else if ((v < 0) != (v_prev < 0) && v_prev != 0.0) {
            double a = x, b = x_prev, va = v;
            while (b - a > tol) {
                double m = 0.5 * (a + b), vm = p.eval(m);
                if (vm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((vm < 0) == (va < 0)) {
                    a = m;
                    va = vm;
                } else {
                    b = m;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        x_prev = x;
        v_prev = v;
    }
    return out;
}

// ------------------------------------------------------- Perron quantities -

struct PerronValue {
    double lambda = 0.0;
    double entropy = 0.0;
    double tol = 0.0;
};

/// Largest real root of the follower characteristic polynomial of w, by
/// sign-change bisection on (0, q].  Handles the degenerate double root at 1
/// exhibited by the reducible length-2 words.
inline PerronValue perron_eigenvalue(const Word& w, double tol = 1e-12) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    IntPoly chi = char_poly(w);
    auto root = largest_real_root(chi, 0.0, static_cast<double>(w.q), tol);
    if (!root) {
        if (chi.eval(mpz_class(1)) == 0) root = 1.0;  // (t-1)^2 and friends
        else throw std::invalid_argument("no sign change: degenerate characteristic polynomial");
    }
    return PerronValue{*root, std::log(*root), tol};
}

struct PerronVectors {
    double lambda = 0.0;
    std::vector<double> right, left;  // sup-norm normalized
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Power iteration on the adjacency matrix of g (and its transpose) with a
/// fixed iteration budget.
inline PerronVectors perron_vectors(const LabeledGraph& g, double tol = 1e-10,
                                    int budget = 200000) {
    const std::size_t n = static_cast<std::size_t>(g.n());
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (const auto& e : g.edges)
        a[static_cast<std::size_t>(e.src)][static_cast<std::size_t>(e.dst)] += 1.0;

    auto iterate = [&](bool transpose, int& iters, double& resid, double& lam) {
        std::vector<double> x(n, 1.0), y(n);
        for (iters = 0; iters < budget; ++iters) {
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    acc += (transpose ? a[j][i] : a[i][j]) * x[j];
                y[i] = acc;
                norm = std::max(norm, acc);
            }
            if (norm == 0.0) break;
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                num += y[i] * x[i];
                den += x[i] * x[i];
            }
            lam = num / den;  // Rayleigh quotient
            resid = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                resid = std::max(resid, std::abs(y[i] - lam * x[i]));
            for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
            if (resid <= tol * std::max(1.0, lam)) break;
        }
        return x;
    };

    PerronVectors out;
    int it_r = 0, it_l = 0;
    double res_r = 0.0, res_l = 0.0, lam_r = 0.0, lam_l = 0.0;
    out.right = iterate(false, it_r, res_r, lam_r);
    out.left = iterate(true, it_l, res_l, lam_l);
    out.lambda = lam_r;
    out.iterations = std::max(it_r, it_l);
    out.residual = std::max(res_r, res_l);
    out.converged = out.residual <= tol * std::max(1.0, lam_r);
    return out;
}

// ------------------------------------------------------------ condition D -

/// Certificate for the per-state domination condition between two forbidden
/// words: for every state i there is a symbol permutation pi_i with
/// d^u_i(a) <= d^v_i(pi_i(a)), stars counting below all states.
struct DCertificate {
    bool holds = false;
    // pi[i][a] for i = 0..k-1; row 0 is the canonical extension used by the
    // coupling, row k-1 includes the completion extension u_k -> v_k.
    std::vector<std::vector<int>> pi;
    std::optional<std::pair<int, int>> strict_witness;  // (i, a)
};

inline std::optional<DCertificate> condition_D(const Word& u, const Word& v) {
    if (u.q != v.q || u.size() != v.size())
        throw std::invalid_argument("condition D requires equal length and alphabet");
    const int k = u.size(), q = u.q;
    DTable du = d_table(u), dv = d_table(v);
    DCertificate cert;
    cert.pi.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(q), -1));

    // row 0: map u_1 -> v_1, remaining symbols in order
    {
        std::vector<int>& pi0 = cert.pi[0];
        pi0[static_cast<std::size_t>(u.at(1))] = v.at(1);
        int b = 0;
        for (int a = 0; a < q; ++a) {
            if (a == u.at(1)) continue;
            while (b == v.at(1)) ++b;
            pi0[static_cast<std::size_t>(a)] = b++;
        }
    }

    for (int i = 1; i <= k - 1; ++i) {
        std::vector<std::pair<int, int>> ru, rv;  // (d-value, symbol), star = 0
        for (int a = 0; a < q; ++a) {
            if (i == k - 1 && a == u.at(k)) continue;
            ru.emplace_back(du.at(i, a), a);
        }
        for (int b = 0; b < q; ++b) {
            if (i == k - 1 && b == v.at(k)) continue;
            rv.emplace_back(dv.at(i, b), b);
        }
        auto desc = [](const std::pair<int, int>& x, const std::pair<int, int>& y) {
            return x.first > y.first || (x.first == y.first && x.second < y.second);
        };
        std::sort(ru.begin(), ru.end(), desc);
        std::sort(rv.begin(), rv.end(), desc);
        bool ok = true;
        for (std::size_t t = 0; t < ru.size(); ++t) {
            if (ru[t].first > rv[t].first) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            // full bipartite matching fallback (Kuhn's augmenting paths)
            std::vector<int> match(rv.size(), -1);
            std::vector<std::vector<int>> adm(ru.size());
            for (std::size_t x = 0; x < ru.size(); ++x)
                for (std::size_t y = 0; y < rv.size(); ++y)
                    if (ru[x].first <= rv[y].first) adm[x].push_back(static_cast<int>(y));
            std::size_t matched = 0;
            for (std::size_t x = 0; x < ru.size(); ++x) {
                std::vector<char> used(rv.size(), 0);
                std::vector<int> path;
                std::function<bool(std::size_t)> tryk = [&](std::size_t xx) -> bool {
                    for (int y : adm[xx]) {
                        if (used[static_cast<std::size_t>(y)]) continue;
                        used[static_cast<std::size_t>(y)] = 1;
                        if (match[static_cast<std::size_t>(y)] == -1 ||
                            tryk(static_cast<std::size_t>(match[static_cast<std::size_t>(y)]))) {
                            match[static_cast<std::size_t>(y)] = static_cast<int>(xx);
                            return true;
                        }
                    }
                    return false;
                };
                if (tryk(x)) ++matched;
            }
            if (matched < ru.size()) return std::nullopt;
            std::vector<std::pair<int, int>> rv2(rv.size());
            for (std::size_t y = 0; y < rv.size(); ++y)
                rv2[static_cast<std::size_t>(match[y])] = rv[y];
            rv = std::move(rv2);
        }
        for (std::size_t t = 0; t < ru.size(); ++t) {
            cert.pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(ru[t].second)] =
                rv[t].second;
            if (!cert.strict_witness && ru[t].first < rv[t].first)
                cert.strict_witness = std::make_pair(i, ru[t].second);
        }
        if (i == k - 1)
            cert.pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(u.at(k))] = v.at(k);
    }
    cert.holds = true;
    return cert;
}

// --------------------------------------------------------- comparison -----

struct ComparisonVerdict {
    mpz_class phi_u_q, phi_v_q;
    int phi_order = 0;  // sign(phi_u(q) - phi_v(q)); 0 iff all invariants equal
    bool equal_overlaps = false;
    std::optional<DCertificate> d_uv, d_vu;
    PerronValue lambda_u, lambda_v;
};

inline ComparisonVerdict compare_shifts(const Word& u, const Word& v, double tol = 1e-12) {
    if (u.q != v.q || u.size() != v.size())
        throw std::invalid_argument("comparison requires equal length and alphabet");
    ComparisonVerdict out;
    out.phi_u_q = phi_at(u, u.q);
    out.phi_v_q = phi_at(v, v.q);
    out.phi_order = cmp(out.phi_u_q, out.phi_v_q);
    out.equal_overlaps = self_overlap(u) == self_overlap(v);
    out.d_uv = condition_D(u, v);
    out.d_vu = condition_D(v, u);
    out.lambda_u = perron_eigenvalue(u, tol);
    out.lambda_v = perron_eigenvalue(v, tol);
    return out;
}

// ------------------------------------------------- memory-one ambient -----

/// 0/1 transition matrix of a memory-one SFT: entry (a,b) = 1 iff ab allowed.
struct MemoryOne {
    int q = 2;
    std::vector<std::vector<int>> m;

    int at(int a, int b) const {
        return m.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b));
    }
    bool allows(const Word& w) const {
        if (w.q != q) return false;
        for (int i = 1; i < w.size(); ++i)
            if (!at(w.at(i), w.at(i + 1))) return false;
        return true;
    }
    std::set<std::pair<int, int>> forbidden_pairs() const {
        std::set<std::pair<int, int>> f;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                if (!at(a, b)) f.insert({a, b});
        return f;
    }
    bool irreducible() const {
        Digraph g;
        g.n = q;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                if (at(a, b)) g.edges.insert({a, b});
        return strongly_connected(g);
    }
    ZMatrix z() const {
        ZMatrix out = zmatrix(static_cast<std::size_t>(q));
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = at(a, b);
        return out;
    }
    static MemoryOne full_shift(int q) {
        return MemoryOne{q, std::vector<std::vector<int>>(static_cast<std::size_t>(q),
                                                          std::vector<int>(static_cast<std::size_t>(q), 1))};
    }
    static MemoryOne golden_mean() { return MemoryOne{2, {{1, 1}, {1, 0}}}; }
};

/// 2-block recoding of w: the length-(k-1) word of consecutive pairs over
/// the alphabet of size q^2.
inline Word two_block_word(const Word& w) {
    if (w.size() < 2) throw std::invalid_argument("2-block recoding needs length >= 2");
    std::vector<int> s;
    for (int i = 1; i < w.size(); ++i) s.push_back(w.at(i) * w.q + w.at(i + 1));
    return Word(w.q * w.q, std::move(s));
}

/// Signed cofactor of tI - T at row i, column j, as a polynomial in t
/// (computed exactly by evaluation and interpolation).
inline IntPoly cofactor_poly(const MemoryOne& t, int i, int j) {
    const int q = t.q;
    std::vector<std::pair<mpz_class, mpz_class>> pts;
    for (int s = 0; s <= q; ++s) {
        ZMatrix minor = zmatrix(static_cast<std::size_t>(q - 1));
        int ri = 0;
        for (int r = 0; r < q; ++r) {
            if (r == i) continue;
            int ci = 0;
            for (int c = 0; c < q; ++c) {
                if (c == j) continue;
                mpz_class val = -t.at(r, c);
                if (r == c) val += s;
                minor[static_cast<std::size_t>(ri)][static_cast<std::size_t>(ci)] = val;
                ++ci;
            }
            ++ri;
        }
        mpz_class d = bareiss_det(std::move(minor));
        if ((i + j) % 2 == 1) d = -d;
        pts.emplace_back(s, d);
    }
    return lagrange_interpolate(pts);
}

/// Characteristic polynomial of the presentation of the ambient SFT with w
/// forbidden: chi_T(t) * phi_{w^[2]}(t) + cof_{w_1 w_k}(tI - T).
inline IntPoly ambient_char_poly(const MemoryOne& t, const Word& w) {
    if (!t.irreducible()) throw std::invalid_argument("ambient transition matrix must be irreducible");
    if (!t.allows(w)) throw std::invalid_argument("word not allowed in the ambient shift");
    IntPoly chi_t = berkowitz_char_poly(t.z());
    IntPoly phi2 = correlation_poly(two_block_word(w));
    return chi_t * phi2 + cofactor_poly(t, w.at(1), w.at(w.size()));
}

struct AmbientConditionsReport {
    double lambda_T = 0.0;
    std::optional<double> eta_T;  // second-largest real root of chi_T
    double cof_at_eta = 0.0;
    mpz_class cof_at_2, chi_T_at_2;
    double k_threshold = 0.0;  // condition (c): k >= log2(-cof(2I-T)/chi_T(2)) + 1
    bool cond_a = false, cond_b = false, cond_c = false;
    bool any_holds = false;
};

/// Evaluates the sufficient conditions under which the correlation-value
/// order at lambda_T decides the entropy order of the one-word-forbidden
/// subshifts (same extender set assumed: equal first and last symbols).
inline AmbientConditionsReport ambient_comparison_conditions(const MemoryOne& t, const Word& u,
                                                             const Word& v,
                                                             double tol = 1e-12) {
    if (!t.allows(u) || !t.allows(v))
        throw std::invalid_argument("words must be allowed in the ambient shift");
    if (u.size() != v.size() || u.at(1) != v.at(1) || u.size() == 0 ||
        u.at(u.size()) != v.at(v.size()))
        throw std::invalid_argument("words must share length and extender symbols");
    IntPoly chi_t = berkowitz_char_poly(t.z());
    AmbientConditionsReport r;
    double hi = static_cast<double>(t.q) + 1.0;
    auto roots = real_roots(chi_t, -hi, hi, tol);
    if (roots.empty()) throw std::logic_error("transition matrix without real spectral radius");
    r.lambda_T = roots.front();
    for (double x : roots)
        if (x < r.lambda_T - 1e-9) {
            r.eta_T = x;
            break;
        }
    IntPoly cof = cofactor_poly(t, u.at(1), u.at(u.size()));
    r.cof_at_2 = cof.eval(mpz_class(2));
    r.chi_T_at_2 = chi_t.eval(mpz_class(2));
    if (r.eta_T) r.cof_at_eta = cof.eval(*r.eta_T);
    const int k = u.size();
    const double eta = r.eta_T.value_or(-std::numeric_limits<double>::infinity());
    r.cond_a = r.lambda_T >= 2.0 && r.eta_T && eta >= 2.0 && r.cof_at_eta < 0.0;
    r.cond_b = (r.lambda_T > 2.0 && eta <= 2.0 && r.cof_at_2 < 0) ||
               (r.lambda_T > 2.0 && eta < 2.0 && r.cof_at_2 <= 0);
    if (r.lambda_T > 2.0 && eta < 2.0 && r.cof_at_2 > 0 && r.chi_T_at_2 != 0) {
        double ratio = -mpq_class(r.cof_at_2).get_d() / mpq_class(r.chi_T_at_2).get_d();
        if (ratio > 0) {
            r.k_threshold = std::log2(ratio) + 1.0;
            r.cond_c = k >= r.k_threshold;
        }
    }
    r.any_holds = r.cond_a || r.cond_b || r.cond_c;
    return r;
}

}  // namespace wordshift

#endif
