#ifndef WORDSHIFT_INTPOLY_HPP
#define WORDSHIFT_INTPOLY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wordshift {

/// Thrown when a requested exhaustive computation exceeds its size budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact integer-coefficient polynomial, coefficients stored in ascending
/// degree order.  Canonical form: the highest stored coefficient is nonzero
/// unless the polynomial is zero (empty coefficient vector).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }
    static IntPoly zero() { return IntPoly{}; }
    static IntPoly constant(const mpz_class& c) { return IntPoly({c}); }
    static IntPoly monomial(const mpz_class& c, std::size_t deg) {
        std::vector<mpz_class> v(deg + 1, 0);
        v[deg] = c;
        return IntPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is reported as -1
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    mpz_class coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : mpz_class(0);
    }
    mpz_class leading() const {
        return coeffs_.empty() ? mpz_class(0) : coeffs_.back();
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a) { return IntPoly::zero() - a; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly{};
        std::vector<mpz_class> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const mpz_class& c, const IntPoly& a) {
        std::vector<mpz_class> r = a.coeffs_;
        for (auto& x : r) x *= c;
        return IntPoly(std::move(r));
    }

    mpz_class eval(const mpz_class& t) const {
        mpz_class acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
    mpq_class eval(const mpq_class& t) const {
        mpq_class acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
    double eval(double t) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * t + it->get_d();
        return acc;
    }

    /// Reversal t^n p(1/t) where n = degree(); maps det(tI-A) to det(I-tA).
    IntPoly reversed() const {
        std::vector<mpz_class> r(coeffs_.rbegin(), coeffs_.rend());
        return IntPoly(std::move(r));
    }

    /// Exact division; throws if the remainder is nonzero.
    IntPoly divide_exact(const IntPoly& d) const;

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    static IntPoly gcd(IntPoly a, IntPoly b);

    /// Human form in descending powers, e.g. "t^5+t" or "t^2-t-1".
    std::string to_string(const std::string& var = "t") const;

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        return g;
    }

    // pseudo-remainder: lc(d)^(deg a - deg d + 1) * a mod d
    static IntPoly pseudo_rem(IntPoly a, const IntPoly& d);

    std::vector<mpz_class> coeffs_;
};

inline IntPoly IntPoly::pseudo_rem(IntPoly a, const IntPoly& d) {
    const long dd = d.degree();
    while (!a.is_zero() && a.degree() >= dd) {
        const long shift = a.degree() - dd;
        const mpz_class lead = a.leading();
        a = d.leading() * a - lead * (d * IntPoly::monomial(1, shift));
    }
    return a;
}

inline IntPoly IntPoly::gcd(IntPoly a, IntPoly b) {
    auto primitive = [](IntPoly p) {
        if (p.is_zero()) return p;
        mpz_class c = p.content();
        if (p.leading() < 0) c = -c;
        return p.divide_exact(IntPoly::constant(c));
    };
    mpz_class ca = a.content(), cb = b.content();
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = primitive(a);
    b = primitive(b);
    while (!b.is_zero()) {
        IntPoly r = primitive(pseudo_rem(a, b));
        a = b;
        b = r;
    }
    if (a.is_zero()) return IntPoly::constant(cg);
    return IntPoly::constant(cg) * a;
}

inline IntPoly IntPoly::divide_exact(const IntPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("IntPoly: division by zero");
    IntPoly rem = *this;
    std::vector<mpz_class> q(coeffs_.size(), 0);
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        const long shift = rem.degree() - d.degree();
        mpz_class c, r;
        mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), rem.leading().get_mpz_t(),
                    d.leading().get_mpz_t());
        if (r != 0) throw std::invalid_argument("IntPoly: inexact division");
        q[shift] = c;
        rem = rem - IntPoly::monomial(c, shift) * d;
    }
    if (!rem.is_zero()) throw std::invalid_argument("IntPoly: inexact division");
    return IntPoly(std::move(q));
}

inline std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? "-" : "+";
        }
        if (a != 1 || i == 0) out += a.get_str();
        if (i > 0) {
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace wordshift

#endif
