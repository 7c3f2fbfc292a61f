#ifndef WORDSHIFT_CONJUGACY_HPP
#define WORDSHIFT_CONJUGACY_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordshift/automaton.hpp"
#include "wordshift/word.hpp"

namespace wordshift {

enum class Ambient { FullShift, GoldenMean };

enum class SwapKind { TrivialSwap, GeneralSwap, Permutation, NotApplicable };

/// TrivialSwap: both self-overlaps are {k} and both cross-overlaps empty.
/// GeneralSwap: equal self-overlaps and both cross-overlaps equal the common
/// self-overlap minus {k}.  Permutation: an alphabet bijection maps u to v.
inline SwapKind swap_applicable(const Word& u, const Word& v) {
    if (u.q != v.q || u.size() != v.size())
        throw std::invalid_argument("swap test requires equal length and alphabet");
    const int k = u.size();
    auto ou = self_overlap(u), ov = self_overlap(v);
    auto uv = cross_overlap(u, v), vu = cross_overlap(v, u);
    if (ou == std::set<int>{k} && ov == std::set<int>{k} && uv.empty() && vu.empty())
        return SwapKind::TrivialSwap;
    if (ou == ov) {
        std::set<int> want = ou;
        want.erase(k);
        if (uv == want && vu == want) return SwapKind::GeneralSwap;
    }
    std::vector<int> perm;
    if (find_symbol_perm(u, v, perm)) return SwapKind::Permutation;
    return SwapKind::NotApplicable;
}

enum class MoveType { AlphabetPermutation, FlipAllBits, SwapPair };

struct SwapMove {
    MoveType type = MoveType::SwapPair;
    std::vector<int> perm;  // AlphabetPermutation only
    // overlap evidence recorded for SwapPair moves
    std::set<int> overlap_uu, overlap_vv, overlap_uv, overlap_vu;
};

enum class ChainOutcome { Found, Unknown, PreconditionFailed };

struct ConjugacyChain {
    ChainOutcome outcome = ChainOutcome::PreconditionFailed;
    std::string message;
    std::vector<Word> words;
    std::vector<SwapMove> moves;  // moves[i] links words[i] -> words[i+1]
    int bound = 0;
};

// --------------------------------------------------------- swap code ------

struct SwapCodeResult {
    std::vector<int> symbols;
    bool periodic = false;
    // finite inputs: 0-based inclusive interior where the sliding window is
    // defined; boundary positions outside it are copied verbatim
    int interior_lo = 0, interior_hi = -1;
};

/// Sliding-block involution exchanging u and v: position p takes the symbol
/// of the other word whenever some occurrence of u or v covers p.
inline SwapCodeResult apply_swap_code(const Word& u, const Word& v, const std::vector<int>& x,
                                      bool periodic) {
    SwapKind kind = swap_applicable(u, v);
    if (kind != SwapKind::TrivialSwap && kind != SwapKind::GeneralSwap)
        throw std::invalid_argument("swap code undefined: overlap hypotheses fail");
    const int k = u.size(), n = static_cast<int>(x.size());
    for (int s : x)
        if (s < 0 || s >= u.q) throw std::invalid_argument("input symbol out of range");
    if (periodic && n < 1) throw std::invalid_argument("empty periodic word");

    auto window_is = [&](int start, const Word& w) {
        for (int j = 0; j < k; ++j) {
            int idx = start + j;
            if (periodic)
                idx = ((idx % n) + n) % n;
            else if (idx < 0 || idx >= n)
                return false;
            if (x[static_cast<std::size_t>(idx)] != w.syms[static_cast<std::size_t>(j)])
                return false;
        }
        return true;
    };

    SwapCodeResult out;
    out.periodic = periodic;
    out.symbols = x;
    if (!periodic) {
        out.interior_lo = k - 1;
        out.interior_hi = n - k;
    }
    for (int p = 0; p < n; ++p) {
        if (!periodic && (p < out.interior_lo || p > out.interior_hi)) continue;
        std::optional<int> val;
        for (int start = p - k + 1; start <= p; ++start) {
            const Word* other = nullptr;
            if (window_is(start, u))
                other = &v;
            else if (window_is(start, v))
                other = &u;
            else
                continue;
            int sym = other->syms[static_cast<std::size_t>(p - start)];
            if (val && *val != sym)
                throw std::logic_error("swap code ill-defined: conflicting windows");
            val = sym;
        }
        if (val) out.symbols[static_cast<std::size_t>(p)] = *val;
    }
    return out;
}

// ------------------------------------------------- chain validation -------

struct StepReport {
    bool ok = false;
    std::string reason;
};

struct ChainValidation {
    bool ok = true;
    std::vector<StepReport> steps;
};

inline ChainValidation validate_chain(const ConjugacyChain& chain, Ambient ambient) {
    ChainValidation out;
    if (chain.moves.size() + 1 != chain.words.size() && !chain.words.empty()) {
        out.ok = false;
        out.steps.push_back({false, "move count does not match word count"});
        return out;
    }
    for (std::size_t i = 0; i < chain.moves.size(); ++i) {
        const Word& a = chain.words[i];
        const Word& b = chain.words[i + 1];
        const SwapMove& mv = chain.moves[i];
        StepReport rep;
        rep.ok = true;
        if (a.q != b.q || a.size() != b.size()) {
            rep = {false, "length or alphabet mismatch"};
        } else if (ambient == Ambient::GoldenMean) {
            if (mv.type != MoveType::SwapPair)
                rep = {false, "only swap moves are valid in the golden-mean ambient"};
            else if (!avoids_pairs(a, golden_mean_pairs()) || !avoids_pairs(b, golden_mean_pairs()))
                rep = {false, "word not allowed in the golden-mean shift"};
            else if (a.at(1) != b.at(1) || a.at(a.size()) != b.at(b.size()))
                rep = {false, "extender symbols differ"};
            else if (swap_applicable(a, b) != SwapKind::TrivialSwap)
                rep = {false, "overlap hypotheses fail"};
        } else {
            switch (mv.type) {
                case MoveType::AlphabetPermutation: {
                    try {
                        if (apply_symbol_perm(a, mv.perm) != b)
                            rep = {false, "permutation does not map the words"};
                    } catch (const std::invalid_argument& e) {
                        rep = {false, e.what()};
                    }
                    break;
                }
                case MoveType::FlipAllBits:
                    if (a.q != 2)
                        rep = {false, "bit flip requires a binary alphabet"};
                    else if (flip_bits(a) != b)
                        rep = {false, "words are not bit complements"};
                    break;
                case MoveType::SwapPair: {
                    SwapKind kind = swap_applicable(a, b);
                    if (kind != SwapKind::TrivialSwap && kind != SwapKind::GeneralSwap)
                        rep = {false, "overlap hypotheses fail"};
                    break;
                }
            }
        }
        out.ok = out.ok && rep.ok;
        out.steps.push_back(rep);
    }
    return out;
}

// --------------------------------------------------- chain construction ---

namespace detail {

inline Word run_word(int q, int first_sym, int first_len, int second_sym, int k) {
    std::vector<int> s;
    for (int i = 0; i < first_len; ++i) s.push_back(first_sym);
    while (static_cast<int>(s.size()) < k) s.push_back(second_sym);
    return Word(q, std::move(s));
}

// z = 1 0 1 0^{k-3}
inline Word z_binary(int q, int k) {
    std::vector<int> s(static_cast<std::size_t>(k), 0);
    s[0] = 1;
    s[2] = 1;
    return Word(q, std::move(s));
}

// p(j) = 1^j 0^{k-j}
inline Word p_binary(int q, int k, int j) { return run_word(q, 1, j, 0, k); }

// z = 1 0 0 1 0^{k-4}
inline Word z_gm(int k) {
    std::vector<int> s(static_cast<std::size_t>(k), 0);
    s[0] = 1;
    s[3] = 1;
    return Word(2, std::move(s));
}

// p(j) = (10)^j 0^{k-2j}
inline Word p_gm(int k, int j) {
    std::vector<int> s(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < j; ++i) s[static_cast<std::size_t>(2 * i)] = 1;
    return Word(2, std::move(s));
}

inline bool has_prefix(const Word& w, const std::vector<int>& pre) {
    if (pre.size() > w.syms.size()) return false;
    return std::equal(pre.begin(), pre.end(), w.syms.begin());
}

inline bool has_suffix(const Word& w, const std::vector<int>& suf) {
    if (suf.size() > w.syms.size()) return false;
    return std::equal(suf.rbegin(), suf.rend(), w.syms.rbegin());
}

/// Route from a trivial-overlap word with u_1=1, u_k=0 (binary symbols) to
/// the test word z = 1010^{k-3}, k > 4, through at most two hops.
inline std::vector<Word> route_to_z_binary(const Word& u) {
    const int q = u.q, k = u.size();
    Word z = z_binary(q, k);
    if (u == z) return {u};
    for (int j = 2; j <= k - 2; ++j)
        if (u == p_binary(q, k, j)) return {u, z};
    const int half_up = (k + 1) / 2, half_down = k / 2;
    for (int j = 2; j <= half_down; ++j) {
        std::vector<int> pre;
        for (int i = 0; i < j; ++i) pre.push_back(1);
        for (int i = 0; i < half_up; ++i) pre.push_back(0);
        if (has_prefix(u, pre)) return {u, p_binary(q, k, j), z};
    }
    for (int l = 2; l <= half_up; ++l) {
        std::vector<int> suf;
        for (int i = 0; i < half_down; ++i) suf.push_back(1);
        for (int i = 0; i < l; ++i) suf.push_back(0);
        if (has_suffix(u, suf)) return {u, z};
    }
    return {u, p_binary(q, k, half_down), z};
}

/// Golden-mean analogue: route within G_1(k) to z = 10010^{k-4}, k >= 7.
inline std::vector<Word> route_to_z_gm(const Word& u) {
    const int k = u.size();
    Word z = z_gm(k);
    if (u == z) return {u};
    for (int j = 2; 2 * j <= k - 2; ++j)
        if (u == p_gm(k, j)) return {u, z};
    const int m = (k + 3) / 4;  // ceil(k/4)
    for (int j = 2; j <= m; ++j) {
        std::vector<int> pre;
        for (int i = 0; i < j; ++i) {
            pre.push_back(1);
            pre.push_back(0);
        }
        for (int i = 0; i < k - 2 * m; ++i) pre.push_back(0);
        if (has_prefix(u, pre)) return {u, p_gm(k, j), z};
    }
    for (int l = 2; l <= k - 2 * m; ++l) {
        std::vector<int> suf;
        for (int i = 0; i < m; ++i) {
            suf.push_back(1);
            suf.push_back(0);
        }
        for (int i = 0; i < l; ++i) suf.push_back(0);
        if (has_suffix(u, suf)) return {u, z};
    }
    return {u, p_gm(k, m), z};
}

/// Removes loops: whenever a word repeats, the stretch in between is cut.
inline void splice_repeats(std::vector<Word>& words) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < words.size() && !changed; ++i)
            for (std::size_t j = words.size(); j-- > i + 1 && !changed;)
                if (words[i] == words[j]) {
                    words.erase(words.begin() + static_cast<long>(i) + 1,
                                words.begin() + static_cast<long>(j) + 1);
                    changed = true;
                }
    }
}

inline SwapMove classify_move(const Word& a, const Word& b, Ambient ambient) {
    SwapMove mv;
    SwapKind kind = swap_applicable(a, b);
    if (kind == SwapKind::TrivialSwap || kind == SwapKind::GeneralSwap) {
        mv.type = MoveType::SwapPair;
        mv.overlap_uu = self_overlap(a);
        mv.overlap_vv = self_overlap(b);
        mv.overlap_uv = cross_overlap(a, b);
        mv.overlap_vu = cross_overlap(b, a);
        return mv;
    }
    if (ambient == Ambient::FullShift && a.q == 2 && flip_bits(a) == b) {
        mv.type = MoveType::FlipAllBits;
        return mv;
    }
    std::vector<int> perm;
    if (ambient == Ambient::FullShift && find_symbol_perm(a, b, perm)) {
        mv.type = MoveType::AlphabetPermutation;
        mv.perm = perm;
        return mv;
    }
    throw std::logic_error("no move connects adjacent chain words");
}

inline ConjugacyChain assemble(std::vector<Word> words, Ambient ambient, int bound) {
    splice_repeats(words);
    ConjugacyChain chain;
    chain.outcome = ChainOutcome::Found;
    chain.bound = bound;
    chain.words = std::move(words);
    for (std::size_t i = 0; i + 1 < chain.words.size(); ++i)
        chain.moves.push_back(classify_move(chain.words[i], chain.words[i + 1], ambient));
    return chain;
}

/// Breadth-first fallback over an explicit word universe; edges are moves
/// accepted by validate_chain for the ambient.
inline std::optional<std::vector<Word>> bfs_chain(const Word& u, const Word& v,
                                                  const std::vector<Word>& universe,
                                                  Ambient ambient) {
    auto connected = [&](const Word& a, const Word& b) {
        if (ambient == Ambient::GoldenMean)
            return a.at(1) == b.at(1) && a.at(a.size()) == b.at(b.size()) &&
                   swap_applicable(a, b) == SwapKind::TrivialSwap;
        SwapKind kind = swap_applicable(a, b);
        if (kind == SwapKind::TrivialSwap || kind == SwapKind::GeneralSwap ||
            kind == SwapKind::Permutation)
            return true;
        return a.q == 2 && flip_bits(a) == b;
    };
    std::map<Word, int> index;
    for (std::size_t i = 0; i < universe.size(); ++i) index[universe[i]] = static_cast<int>(i);
    if (!index.count(u) || !index.count(v)) return std::nullopt;
    std::vector<int> prev(universe.size(), -2);
    std::deque<int> queue = {index[u]};
    prev[static_cast<std::size_t>(index[u])] = -1;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (universe[static_cast<std::size_t>(cur)] == v) break;
        for (std::size_t nxt = 0; nxt < universe.size(); ++nxt) {
            if (prev[nxt] != -2 || static_cast<int>(nxt) == cur) continue;
            if (connected(universe[static_cast<std::size_t>(cur)], universe[nxt])) {
                prev[nxt] = cur;
                queue.push_back(static_cast<int>(nxt));
            }
        }
    }
    int at = index[v];
    if (prev[static_cast<std::size_t>(at)] == -2) return std::nullopt;
    std::vector<Word> path;
    while (at != -1) {
        path.push_back(universe[static_cast<std::size_t>(at)]);
        at = prev[static_cast<std::size_t>(at)];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

inline std::vector<Word> all_words(int q, int k) {
    std::vector<Word> out;
    std::vector<int> syms(static_cast<std::size_t>(k), 0);
    while (true) {
        out.emplace_back(q, syms);
        int pos = k - 1;
        while (pos >= 0 && syms[static_cast<std::size_t>(pos)] == q - 1)
            syms[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++syms[static_cast<std::size_t>(pos)];
    }
    return out;
}

}  // namespace detail

/// Constructive conjugacy chain between the subshifts forbidding u and v.
/// Full shift: binary bound 6 (normalize into the class with w_1=1, w_k=0
/// via bit flips, route through z and the p(j) test words); q > 2 bound 11
/// (normalize by alphabet permutation, special-case the run words, reduce
/// non-binary words to 1^{l+1}0^{k-l-1}).  Golden mean: bound 5 within
/// G_1(k) or G_2(k).  Every produced chain is validated; if the construction
/// fails validation a breadth-first search over the swap graph is used.
inline ConjugacyChain conjugacy_chain(const Word& u, const Word& v, Ambient ambient) {
    ConjugacyChain chain;
    auto precondition = [&](const std::string& why) {
        chain.outcome = ChainOutcome::PreconditionFailed;
        chain.message = why;
        return chain;
    };
    auto unknown = [&](const std::string& why) {
        chain.outcome = ChainOutcome::Unknown;
        chain.message = why;
        return chain;
    };
    if (u.q != v.q || u.size() != v.size())
        return precondition("words must share length and alphabet");
    const int q = u.q, k = u.size();

    if (!has_trivial_overlap(u) || !has_trivial_overlap(v)) {
        if (self_overlap(u) == self_overlap(v))
            return unknown("equal nontrivial self-overlap sets: conjugacy status open");
        return precondition("self-overlap sets differ");
    }

    auto finalize = [&](std::vector<Word> words, int bound,
                        const std::vector<Word>& universe) -> ConjugacyChain {
        ConjugacyChain built = detail::assemble(std::move(words), ambient, bound);
        if (validate_chain(built, ambient).ok) return built;
        if (auto path = detail::bfs_chain(u, v, universe, ambient)) {
            built = detail::assemble(std::move(*path), ambient, bound);
            if (validate_chain(built, ambient).ok) return built;
        }
        return unknown("constructed chain failed validation and no fallback chain was found");
    };

    if (ambient == Ambient::GoldenMean) {
        if (q != 2) return precondition("golden-mean ambient requires a binary alphabet");
        if (!avoids_pairs(u, golden_mean_pairs()) || !avoids_pairs(v, golden_mean_pairs()))
            return precondition("word not allowed in the golden-mean shift");
        if (is_gm_reducible(u) || is_gm_reducible(v))
            return precondition("word gives a reducible subshift of the golden-mean shift");
        bool u_in_g1 = u.at(1) == 1 && u.at(k) == 0;
        bool v_in_g1 = v.at(1) == 1 && v.at(k) == 0;
        if (u.at(1) == u.at(k) || v.at(1) == v.at(k))
            return precondition("trivial-overlap word must have distinct end symbols");
        if (u_in_g1 != v_in_g1)
            return precondition("words lie in different extender classes of the golden-mean shift");

        std::vector<Word> universe;
        if (static_cast<double>(k) <= 24)
            for (const Word& w : detail::all_words(2, k))
                if (avoids_pairs(w, golden_mean_pairs()) && has_trivial_overlap(w) &&
                    !is_gm_reducible(w) && (w.at(1) == 1) == u_in_g1 && w.at(1) != w.at(k))
                    universe.push_back(w);

        if (u == v) {
            chain.outcome = ChainOutcome::Found;
            chain.words = {u};
            chain.bound = 5;
            return chain;
        }
        if (k < 7) return finalize({u, v}, 5, universe);

        auto route = [&](const Word& w) {
            if (u_in_g1) return detail::route_to_z_gm(w);
            // G_2 words map to G_1 by reversal; reversal preserves the
            // overlap hypotheses, so build there and reverse the chain back.
            std::vector<Word> r = detail::route_to_z_gm(reversed(w));
            for (Word& x : r) x = reversed(x);
            return r;
        };
        std::vector<Word> words = route(u);
        std::vector<Word> back = route(v);
        words.insert(words.end(), back.rbegin(), back.rend());
        return finalize(std::move(words), 5, universe);
    }

    // full-shift ambient
    if (q == 2) {
        if (is_binary_reducible(u) || is_binary_reducible(v))
            return precondition("reducible subshift: no conjugacy to an irreducible one");
        std::vector<Word> universe;
        for (const Word& w : detail::all_words(2, k))
            if (has_trivial_overlap(w) && !is_binary_reducible(w)) universe.push_back(w);
        if (u == v) {
            chain.outcome = ChainOutcome::Found;
            chain.words = {u};
            chain.bound = 6;
            return chain;
        }
        if (k <= 4) return finalize({u, v}, 6, universe);
        auto in_c1 = [](const Word& w) { return w.at(1) == 1; };
        auto route = [&](const Word& w) {
            if (in_c1(w)) return detail::route_to_z_binary(w);
            std::vector<Word> r = detail::route_to_z_binary(flip_bits(w));
            for (Word& x : r) x = flip_bits(x);
            return r;
        };
        if (in_c1(u) == in_c1(v)) {
            std::vector<Word> words = route(u);
            std::vector<Word> back = route(v);
            words.insert(words.end(), back.rbegin(), back.rend());
            return finalize(std::move(words), 6, universe);
        }
        // mixed classes: route u to the test word of its class, flip it,
        // then descend to v inside the other class
        std::vector<Word> words = route(u);
        std::vector<Word> back = route(v);
        words.push_back(flip_bits(words.back()));
        words.insert(words.end(), back.rbegin(), back.rend());
        return finalize(std::move(words), 6, universe);
    }

    // q > 2
    std::vector<Word> universe;
    double size = std::pow(static_cast<double>(q), k);
    if (size <= 300000)
        for (const Word& w : detail::all_words(q, k))
            if (has_trivial_overlap(w)) universe.push_back(w);
    if (u == v) {
        chain.outcome = ChainOutcome::Found;
        chain.words = {u};
        chain.bound = 11;
        return chain;
    }
    if (k <= 4) {
        if (universe.empty()) return unknown("alphabet too large for the small-length search");
        if (auto path = detail::bfs_chain(u, v, universe, ambient)) {
            ConjugacyChain built = detail::assemble(std::move(*path), ambient, 11);
            if (validate_chain(built, ambient).ok) return built;
        }
        return unknown("no chain found by search at this length");
    }

    auto normalize = [&](const Word& w) -> std::vector<Word> {
        // into C_10: first symbol 1, last symbol 0 (trivial overlap forces
        // distinct end symbols, so a permutation always exists)
        std::vector<Word> steps = {w};
        if (w.at(1) != 1 || w.at(k) != 0) {
            std::vector<int> perm(static_cast<std::size_t>(q), -1);
            std::vector<char> taken(static_cast<std::size_t>(q), 0);
            perm[static_cast<std::size_t>(w.at(1))] = 1;
            perm[static_cast<std::size_t>(w.at(k))] = 0;
            taken[1] = taken[0] = 1;
            int next = 0;
            for (int a = 0; a < q; ++a) {
                if (perm[static_cast<std::size_t>(a)] != -1) continue;
                while (taken[static_cast<std::size_t>(next)]) ++next;
                taken[static_cast<std::size_t>(next)] = 1;
                perm[static_cast<std::size_t>(a)] = next;
            }
            steps.push_back(apply_symbol_perm(w, perm));
        }
        return steps;
    };
    std::function<std::vector<Word>(const Word&)> route_c10 =
        [&](const Word& w) -> std::vector<Word> {
        bool binary = true;
        int longest_run = 0, run = 0;
        for (int s : w.syms) {
            if (s > 1) binary = false;
            run = (s == 1) ? run + 1 : 0;
            longest_run = std::max(longest_run, run);
        }
        if (binary) {
            Word run_head = detail::run_word(q, 1, 1, 0, k);   // 1 0^{k-1}
            Word run_tail = detail::run_word(q, 1, k - 1, 0, k);  // 1^{k-1} 0
            if (w == run_head) {
                // 10^{k-1} -> aa0^{k-2} -> 110^{k-2} = p(2) -> z
                Word aa = detail::run_word(q, 2, 2, 0, k);
                return {w, aa, detail::p_binary(q, k, 2), detail::z_binary(q, k)};
            }
            if (w == run_tail) {
                // 1^{k-1}0 -> a^{k-1}0 -> z, with a outside {0,1}
                Word run_a = detail::run_word(q, 2, k - 1, 0, k);
                return {w, run_a, detail::z_binary(q, k)};
            }
            return detail::route_to_z_binary(w);
        }
        Word x = detail::p_binary(q, k, longest_run + 1);  // 1^{l+1} 0^{k-l-1}
        std::vector<Word> rest = route_c10(x);
        rest.insert(rest.begin(), w);
        return rest;
    };

    std::vector<Word> words = normalize(u);
    {
        std::vector<Word> r = route_c10(words.back());
        words.insert(words.end(), r.begin() + 1, r.end());
    }
    std::vector<Word> back = normalize(v);
    {
        std::vector<Word> r = route_c10(back.back());
        back.insert(back.end(), r.begin() + 1, r.end());
    }
    words.insert(words.end(), back.rbegin(), back.rend());
    return finalize(std::move(words), 11, universe);
}

/// Reducibility of the golden-mean restricted follower graph; must coincide
/// with membership in the closed list of exceptional words.
inline bool gm_reducibility(const Word& w) {
    if (!avoids_pairs(w, golden_mean_pairs()))
        throw std::invalid_argument("word not allowed in the golden-mean shift");
    return !is_irreducible(build_L_restricted(w, golden_mean_pairs()));
}

}  // namespace wordshift

#endif
