#ifndef WORDSHIFT_COUNTING_HPP
#define WORDSHIFT_COUNTING_HPP

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordshift/automaton.hpp"
#include "wordshift/linalg.hpp"
#include "wordshift/word.hpp"

namespace wordshift {

/// Number of length-n words over [q] that avoid w, via the prefix automaton
/// (completion state is absorbing and excluded).  n = 0 gives 1.
inline mpz_class count_avoiding(const Word& w, int n) {
    if (n < 0) throw std::invalid_argument("length must be nonnegative");
    const int k = w.size(), q = w.q;
    auto delta = prefix_automaton(w);
    std::vector<mpz_class> mass(static_cast<std::size_t>(k), 0);
    mass[0] = 1;
    for (int step = 0; step < n; ++step) {
        std::vector<mpz_class> next(static_cast<std::size_t>(k), 0);
        for (int s = 0; s < k; ++s) {
            if (mass[static_cast<std::size_t>(s)] == 0) continue;
            for (int a = 0; a < q; ++a) {
                int t = delta[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
                if (t == k) continue;
                next[static_cast<std::size_t>(t)] += mass[static_cast<std::size_t>(s)];
            }
        }
        mass = std::move(next);
    }
    mpz_class total = 0;
    for (const auto& m : mass) total += m;
    return total;
}

inline std::vector<mpz_class> count_avoiding_series(const Word& w, int n_max) {
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(count_avoiding(w, n));
    return out;
}

/// Brute-force oracle: enumerate all q^n words and keep those without w.
/// Only for small instances (q^n must fit a modest budget).
inline mpz_class count_avoiding_naive(const Word& w, int n) {
    const int q = w.q;
    double bits = n * std::log2(static_cast<double>(q));
    if (bits > 26) throw BudgetExceeded("naive enumeration budget exceeded");
    std::vector<int> text(static_cast<std::size_t>(n), 0);
    mpz_class count = 0;
    while (true) {
        if (!contains_factor(text, w)) ++count;
        int pos = n - 1;
        while (pos >= 0 && text[static_cast<std::size_t>(pos)] == q - 1)
            text[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++text[static_cast<std::size_t>(pos)];
    }
    return count;
}

/// Rational generating function N(t)/D(t), reduced, D(0) = 1.
struct RationalGF {
    IntPoly num, den;

    std::string str(const std::string& var = "t") const {
        return "(" + num.to_string(var) + ")/(" + den.to_string(var) + ")";
    }

    /// Series coefficients t^0..t^n of num/den; requires den(0) != 0.
    std::vector<mpq_class> series(int n) const {
        if (den.coeff(0) == 0) throw std::invalid_argument("denominator vanishes at 0");
        std::vector<mpq_class> out(static_cast<std::size_t>(n) + 1, mpq_class(0));
        mpq_class d0 = mpq_class(den.coeff(0));
        for (int i = 0; i <= n; ++i) {
            mpq_class acc = mpq_class(num.coeff(static_cast<std::size_t>(i)));
            for (int j = 1; j <= i && j <= den.degree(); ++j)
                acc -= mpq_class(den.coeff(static_cast<std::size_t>(j))) *
                       out[static_cast<std::size_t>(i - j)];
            out[static_cast<std::size_t>(i)] = acc / d0;
            out[static_cast<std::size_t>(i)].canonicalize();
        }
        return out;
    }
};

/// Transfer matrix of the prefix automaton on live states 0..k-1
/// (completion excluded): M[s][t] = number of symbols moving s -> t.
inline ZMatrix count_matrix(const Word& w) {
    const int k = w.size(), q = w.q;
    auto delta = prefix_automaton(w);
    ZMatrix m = zmatrix(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s)
        for (int a = 0; a < q; ++a) {
            int t = delta[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
            if (t < k) m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] += 1;
        }
    return m;
}

/// Generating function of the avoidance counts, sum_n B_n t^n, derived from
/// the transfer-matrix recurrence and reduced to lowest terms.  The result
/// is verified against the direct counts up to 2*deg(D)+2 before returning.
inline RationalGF generating_function(const Word& w) {
    const int k = w.size();
    ZMatrix m = count_matrix(w);
    IntPoly d = berkowitz_char_poly(m).reversed();  // det(I - tM)
    // numerator coefficients: n_i = sum_j d_j B_{i-j}, nonzero only for i < k
    long verify_to = 2 * std::max<long>(d.degree(), 1) + 2;
    std::vector<mpz_class> b = count_avoiding_series(w, static_cast<int>(verify_to));
    std::vector<mpz_class> ncoef(static_cast<std::size_t>(k), 0);
    for (long i = 0; i <= verify_to; ++i) {
        mpz_class acc = 0;
        for (long j = 0; j <= i && j <= d.degree(); ++j)
            acc += d.coeff(static_cast<std::size_t>(j)) * b[static_cast<std::size_t>(i - j)];
        if (i < k)
            ncoef[static_cast<std::size_t>(i)] = acc;
        else if (acc != 0)
            throw std::logic_error("generating function recurrence check failed");
    }
    IntPoly n(std::move(ncoef));
    IntPoly g = IntPoly::gcd(n, d);
    n = n.divide_exact(g);
    d = d.divide_exact(g);
    if (d.coeff(0) < 0) {
        n = -n;
        d = -d;
    }
    if (d.coeff(0) != 1) throw std::logic_error("generating function denominator not normalized");
    return RationalGF{n, d};
}

/// Closed form built from the correlation polynomial:
///   c(t) = t^{k-1} phi(1/t),   G(t) = c(t) / (t^k + (1 - q t) c(t)).
/// Kept separate from generating_function so the two routes cross-check.
inline RationalGF generating_function_closed_form(const Word& w) {
    const int k = w.size();
    IntPoly phi = correlation_poly(w);
    std::vector<mpz_class> cc(static_cast<std::size_t>(k), 0);
    for (long i = 0; i <= phi.degree(); ++i)
        cc[static_cast<std::size_t>(k - 1 - i)] = phi.coeff(static_cast<std::size_t>(i));
    IntPoly c(std::move(cc));
    IntPoly den = IntPoly::monomial(1, static_cast<std::size_t>(k)) +
                  IntPoly({mpz_class(1), mpz_class(-w.q)}) * c;
    IntPoly g = IntPoly::gcd(c, den);
    IntPoly n = c.divide_exact(g);
    IntPoly d = den.divide_exact(g);
    if (d.coeff(0) < 0) {
        n = -n;
        d = -d;
    }
    return RationalGF{n, d};
}

/// Denominator det(I - tA) of the zeta function of the follower graph,
/// computed by evaluation/interpolation (independent of the Berkowitz route).
inline IntPoly zeta_denominator(const Word& w) {
    return det_identity_minus_t(adjacency_matrix(build_L(w)));
}

/// Number of points of period n (closed walks of length n in the follower
/// graph): trace(A^n).
inline mpz_class periodic_count(const Word& w, int n) {
    return zmat_trace_pow(adjacency_matrix(build_L(w)), n);
}

}  // namespace wordshift

#endif
