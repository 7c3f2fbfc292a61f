#ifndef WORDSHIFT_WORD_HPP
#define WORDSHIFT_WORD_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordshift/intpoly.hpp"

namespace wordshift {

/// A finite word over the alphabet {0,...,q-1}.  Symbols are 0-based;
/// positional accessors below are 1-based to match the usual combinatorial
/// conventions (w.at(1) is the first symbol).
struct Word {
    int q = 2;
    std::vector<int> syms;

    Word() = default;
    Word(int q_, std::vector<int> s) : q(q_), syms(std::move(s)) { validate(); }

    int size() const { return static_cast<int>(syms.size()); }
    int at(int pos1) const { return syms.at(static_cast<std::size_t>(pos1 - 1)); }

    void validate() const {
        if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
        if (syms.empty()) throw std::invalid_argument("word must be nonempty");
        for (int s : syms)
            if (s < 0 || s >= q) throw std::invalid_argument("symbol out of alphabet range");
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.q == b.q && a.syms == b.syms;
    }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    friend bool operator<(const Word& a, const Word& b) { return a.syms < b.syms; }

    std::string str() const {
        std::string s;
        bool wide = q > 10;
        for (std::size_t i = 0; i < syms.size(); ++i) {
            if (wide && i) s += ",";
            s += std::to_string(syms[i]);
        }
        return s;
    }

    /// Parses "100010" for q <= 10, or comma-separated "10,3,7" for larger q.
    static Word parse(const std::string& text, int q) {
        std::vector<int> s;
        if (q <= 10 && text.find(',') == std::string::npos) {
            for (char c : text) {
                if (c < '0' || c > '9') throw std::invalid_argument("bad word literal: " + text);
                s.push_back(c - '0');
            }
        } else {
            std::size_t pos = 0;
            while (pos <= text.size()) {
                std::size_t sep = text.find(',', pos);
                if (sep == std::string::npos) sep = text.size();
                if (sep == pos) throw std::invalid_argument("bad word literal: " + text);
                s.push_back(std::stoi(text.substr(pos, sep - pos)));
                pos = sep + 1;
            }
        }
        return Word(q, std::move(s));
    }
};

/// Positions i in [1,k] where the length-i prefix of u continues v, i.e. the
/// length-i prefix of v equals the length-i suffix of u.  With u == v this is
/// the self-overlap set, which always contains k.
inline std::set<int> cross_overlap(const Word& u, const Word& v) {
    if (u.q != v.q || u.size() != v.size())
        throw std::invalid_argument("overlap requires words of equal length and alphabet");
    const int k = u.size();
    std::set<int> out;
    for (int i = 1; i <= k; ++i) {
        bool ok = true;
        for (int j = 1; j <= i && ok; ++j) ok = (v.at(j) == u.at(k - i + j));
        if (ok) out.insert(i);
    }
    return out;
}

inline std::set<int> self_overlap(const Word& w) { return cross_overlap(w, w); }

/// A word is self-overlap-free when its only self-overlap is the full length.
inline bool has_trivial_overlap(const Word& w) {
    return self_overlap(w).size() == 1;
}

/// Correlation polynomial: sum of t^{i-1} over the overlap positions.
inline IntPoly correlation_poly(const std::set<int>& overlap) {
    std::vector<mpz_class> c;
    for (int i : overlap) {
        if (static_cast<std::size_t>(i) > c.size()) c.resize(static_cast<std::size_t>(i), 0);
        c[static_cast<std::size_t>(i - 1)] = 1;
    }
    return IntPoly(std::move(c));
}

inline IntPoly correlation_poly(const Word& w) { return correlation_poly(self_overlap(w)); }

inline mpz_class phi_at(const Word& w, const mpz_class& t) {
    return correlation_poly(w).eval(t);
}

/// Characteristic polynomial of the follower construction for the shift that
/// forbids w: (t - q) * phi_w(t) + 1.
inline IntPoly char_poly(const Word& w) {
    IntPoly phi = correlation_poly(w);
    IntPoly lin({mpz_class(-w.q), mpz_class(1)});  // t - q
    return lin * phi + IntPoly::constant(1);
}

inline Word flip_bits(const Word& w) {
    if (w.q != 2) throw std::invalid_argument("flip_bits requires a binary word");
    std::vector<int> s = w.syms;
    for (int& x : s) x = 1 - x;
    return Word(2, std::move(s));
}

inline Word reversed(const Word& w) {
    std::vector<int> s(w.syms.rbegin(), w.syms.rend());
    return Word(w.q, std::move(s));
}

inline Word apply_symbol_perm(const Word& w, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != w.q)
        throw std::invalid_argument("permutation size must equal alphabet size");
    std::vector<int> seen(perm.size(), 0);
    for (int p : perm) {
        if (p < 0 || p >= w.q || seen[static_cast<std::size_t>(p)]++)
            throw std::invalid_argument("not a permutation of the alphabet");
    }
    std::vector<int> s = w.syms;
    for (int& x : s) x = perm[static_cast<std::size_t>(x)];
    return Word(w.q, std::move(s));
}

/// Least symbol-wise bijection mapping u onto v, if one exists; returned as
/// a full alphabet permutation.
inline bool find_symbol_perm(const Word& u, const Word& v, std::vector<int>& perm_out) {
    if (u.q != v.q || u.size() != v.size()) return false;
    std::vector<int> fwd(static_cast<std::size_t>(u.q), -1), bwd(static_cast<std::size_t>(u.q), -1);
    for (int i = 1; i <= u.size(); ++i) {
        int a = u.at(i), b = v.at(i);
        if (fwd[a] == -1 && bwd[b] == -1) {
            fwd[a] = b;
            bwd[b] = a;
        } else if (fwd[a] != b) {
            return false;
        }
    }
    // complete to a permutation: unmatched sources take unmatched targets in order
    std::size_t t = 0;
    for (std::size_t a = 0; a < fwd.size(); ++a) {
        if (fwd[a] != -1) continue;
        while (bwd[t] != -1) ++t;
        fwd[a] = static_cast<int>(t);
        bwd[t] = static_cast<int>(a);
    }
    perm_out = fwd;
    return true;
}

inline std::optional<std::vector<int>> find_symbol_perm(const Word& u, const Word& v) {
    std::vector<int> perm;
    if (!find_symbol_perm(u, v, perm)) return std::nullopt;
    return perm;
}

/// Does w contain u as a factor?
inline bool contains_factor(const std::vector<int>& text, const Word& u) {
    const int n = static_cast<int>(text.size()), k = u.size();
    for (int s = 0; s + k <= n; ++s) {
        bool hit = true;
        for (int j = 0; j < k && hit; ++j) hit = (text[s + j] == u.syms[j]);
        if (hit) return true;
    }
    return false;
}

}  // namespace wordshift

#endif
