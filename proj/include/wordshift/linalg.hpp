#ifndef WORDSHIFT_LINALG_HPP
#define WORDSHIFT_LINALG_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "wordshift/intpoly.hpp"

namespace wordshift {

using ZMatrix = std::vector<std::vector<mpz_class>>;

inline ZMatrix zmatrix(std::size_t n) {
    return ZMatrix(n, std::vector<mpz_class>(n, 0));
}

/// Characteristic polynomial det(tI - A) by the Berkowitz method
/// (division-free, exact over the integers).
inline IntPoly berkowitz_char_poly(const ZMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return IntPoly::constant(1);
    // Column vector of polynomial coefficients, highest degree first;
    // starts as char poly of the trailing 1x1 block and grows.
    std::vector<mpz_class> poly = {1, -a[n - 1][n - 1]};
    for (std::size_t m = n - 1; m-- > 0;) {
        const std::size_t sub = n - m - 1;  // current block size already processed
        // R = row a[m][m+1..], C = column a[m+1..][m], M = trailing block
        std::vector<mpz_class> toep(sub + 2);
        toep[0] = 1;
        toep[1] = -a[m][m];
        std::vector<mpz_class> v(sub);
        for (std::size_t i = 0; i < sub; ++i) v[i] = a[m + 1 + i][m];
        for (std::size_t p = 0; p < sub; ++p) {
            // toep[p+2] = - R * M^p * C
            mpz_class dot = 0;
            for (std::size_t i = 0; i < sub; ++i) dot += a[m][m + 1 + i] * v[i];
            toep[p + 2] = -dot;
            if (p + 1 < sub) {
                std::vector<mpz_class> nv(sub, 0);
                for (std::size_t i = 0; i < sub; ++i)
                    for (std::size_t j = 0; j < sub; ++j) nv[i] += a[m + 1 + i][m + 1 + j] * v[j];
                v = std::move(nv);
            }
        }
        // multiply: new_poly = lower-triangular Toeplitz(toep) * poly
        std::vector<mpz_class> np(poly.size() + 1, 0);
        for (std::size_t i = 0; i < np.size(); ++i)
            for (std::size_t j = 0; j <= i && j < toep.size(); ++j)
                if (i - j < poly.size()) np[i] += toep[j] * poly[i - j];
        poly = std::move(np);
    }
    std::vector<mpz_class> ascending(poly.rbegin(), poly.rend());
    return IntPoly(std::move(ascending));
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
inline mpz_class bareiss_det(ZMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class sign = 1, prev = 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (a[p][p] == 0) {
            std::size_t swap_row = p + 1;
            while (swap_row < n && a[swap_row][p] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[p], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = p + 1; i < n; ++i)
            for (std::size_t j = p + 1; j < n; ++j) {
                mpz_class num = a[i][j] * a[p][p] - a[i][p] * a[p][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[p][p];
    }
    return sign * a[n - 1][n - 1];
}

/// Interpolating integer polynomial of degree <= points.size()-1 through the
/// given (x, y) samples.  Throws if the result is not integral.
inline IntPoly lagrange_interpolate(const std::vector<std::pair<mpz_class, mpz_class>>& pts) {
    const std::size_t n = pts.size();
    // Newton's divided differences over the rationals, then expand.
    std::vector<mpq_class> coef(n);
    std::vector<mpq_class> table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = mpq_class(pts[i].second);
    coef[0] = table[0];
    for (std::size_t lvl = 1; lvl < n; ++lvl) {
        for (std::size_t i = 0; i + lvl < n; ++i) {
            mpq_class denom = mpq_class(pts[i + lvl].first - pts[i].first);
            table[i] = (table[i + 1] - table[i]) / denom;
        }
        coef[lvl] = table[0];
    }
    // expand Newton form
    std::vector<mpq_class> poly = {coef[n - 1]};
    for (std::size_t lvl = n - 1; lvl-- > 0;) {
        std::vector<mpq_class> np(poly.size() + 1, mpq_class(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            np[i + 1] += poly[i];
            np[i] -= poly[i] * mpq_class(pts[lvl].first);
        }
        np[0] += coef[lvl];
        poly = std::move(np);
    }
    std::vector<mpz_class> out;
    out.reserve(poly.size());
    for (auto& c : poly) {
        c.canonicalize();
        if (c.get_den() != 1) throw std::logic_error("interpolation produced non-integer coefficient");
        out.push_back(c.get_num());
    }
    return IntPoly(std::move(out));
}

/// det(I - t*A) computed by evaluating the determinant at n+1 integer points
/// and interpolating.  Deliberately avoids the Berkowitz route so the two can
/// cross-check each other.
inline IntPoly det_identity_minus_t(const ZMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::pair<mpz_class, mpz_class>> pts;
    for (std::size_t s = 0; s <= n; ++s) {
        mpz_class t = static_cast<long>(s);
        ZMatrix m = zmatrix(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? 1 : 0) - t * a[i][j];
        pts.emplace_back(t, bareiss_det(std::move(m)));
    }
    return lagrange_interpolate(pts);
}

inline ZMatrix zmat_mul(const ZMatrix& a, const ZMatrix& b) {
    const std::size_t n = a.size();
    ZMatrix c = zmatrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline mpz_class zmat_trace_pow(const ZMatrix& a, int n) {
    if (n < 1) throw std::invalid_argument("power must be positive");
    ZMatrix acc = a;
    for (int i = 1; i < n; ++i) acc = zmat_mul(acc, a);
    mpz_class tr = 0;
    for (std::size_t i = 0; i < acc.size(); ++i) tr += acc[i][i];
    return tr;
}

/// Solve A x = b exactly over the rationals by Gaussian elimination.
inline std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> a,
                                             std::vector<mpq_class> b) {
    const std::size_t n = a.size();
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t piv = p;
        while (piv < n && a[piv][p] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("singular system");
        std::swap(a[p], a[piv]);
        std::swap(b[p], b[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == p || a[i][p] == 0) continue;
            mpq_class f = a[i][p] / a[p][p];
            for (std::size_t j = p; j < n; ++j) a[i][j] -= f * a[p][j];
            b[i] -= f * b[p];
        }
    }
    std::vector<mpq_class> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = b[i] / a[i][i];
        x[i].canonicalize();
    }
    return x;
}

}  // namespace wordshift

#endif
