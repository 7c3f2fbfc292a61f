#ifndef WORDSHIFT_HITTING_HPP
#define WORDSHIFT_HITTING_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wordshift/counting.hpp"
#include "wordshift/spectral.hpp"
#include "wordshift/word.hpp"

namespace wordshift {

/// Expected waiting time of w under i.i.d. uniform symbols: q * phi_w(q).
inline mpz_class expected_hitting(const Word& w) {
    return mpz_class(w.q) * phi_at(w, w.q);
}

/// The same expectation obtained by solving the absorbing-chain linear
/// system on the prefix automaton in exact rational arithmetic.  Kept as an
/// independent route for cross-checking.
inline mpq_class expected_hitting_chain(const Word& w) {
    const int k = w.size(), q = w.q;
    auto delta = prefix_automaton(w);
    // E_s = 1 + (1/q) sum_a E_{delta(s,a)}, E_k = 0
    std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(k),
                                          std::vector<mpq_class>(static_cast<std::size_t>(k), 0));
    std::vector<mpq_class> b(static_cast<std::size_t>(k), 1);
    for (int s = 0; s < k; ++s) {
        a[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] += 1;
        for (int sym = 0; sym < q; ++sym) {
            int t = delta[static_cast<std::size_t>(s)][static_cast<std::size_t>(sym)];
            if (t < k)
                a[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] -= mpq_class(1, q);
        }
    }
    return solve_rational(std::move(a), std::move(b))[0];
}

struct HittingProfile {
    Word word;
    mpz_class expectation;                // q * phi(q)
    std::vector<mpq_class> survival;      // P(tau > n), n = 0..horizon
    mpq_class partial_sum;                // sum of survival values
    mpq_class remainder;                  // expectation - partial_sum (exact)
    double tail_ratio = 0.0;              // lambda / q, the geometric tail rate
};

inline HittingProfile hitting_survival(const Word& w, int horizon) {
    if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
    HittingProfile p;
    p.word = w;
    p.expectation = expected_hitting(w);
    mpz_class qn = 1;
    p.partial_sum = 0;
    for (int n = 0; n <= horizon; ++n) {
        mpq_class s(count_avoiding(w, n), qn);
        s.canonicalize();
        p.survival.push_back(s);
        p.partial_sum += s;
        qn *= w.q;
    }
    p.remainder = mpq_class(p.expectation) - p.partial_sum;
    p.tail_ratio = perron_eigenvalue(w).lambda / w.q;
    return p;
}

enum class DominanceTier { Certified, CertifiedEqual, Empirical };

struct DominanceVerdict {
    DominanceTier tier = DominanceTier::Empirical;
    // +1: tau_v stochastically below tau_u; -1: the reverse; 0: equal/unresolved
    int direction = 0;
    bool strict = false;             // strict witness (Certified tier only)
    bool holds_up_to_horizon = false;  // Empirical tier
    int horizon = 0;
    std::optional<DCertificate> certificate;
    int lambda_order = 0;  // sign(lambda_u - lambda_v), numeric tail evidence
};

/// Three-tier comparison of hitting-time distributions: certified by the
/// d-table domination condition, certified-equal by identical overlap sets,
/// or an empirical exact-survival comparison up to the horizon.
inline DominanceVerdict stochastic_dominance(const Word& u, const Word& v, int horizon) {
    DominanceVerdict out;
    out.horizon = horizon;
    if (self_overlap(u) == self_overlap(v)) {
        out.tier = DominanceTier::CertifiedEqual;
        out.direction = 0;
        return out;
    }
    if (auto c = condition_D(u, v)) {
        out.tier = DominanceTier::Certified;
        out.direction = +1;
        out.strict = c->strict_witness.has_value();
        out.certificate = std::move(c);
        return out;
    }
    if (auto c = condition_D(v, u)) {
        out.tier = DominanceTier::Certified;
        out.direction = -1;
        out.strict = c->strict_witness.has_value();
        out.certificate = std::move(c);
        return out;
    }
    out.tier = DominanceTier::Empirical;
    bool v_below = true, u_below = true;
    mpz_class bu, bv;
    for (int n = 0; n <= horizon; ++n) {
        bu = count_avoiding(u, n);
        bv = count_avoiding(v, n);
        if (bv > bu) v_below = false;
        if (bu > bv) u_below = false;
    }
    double lu = perron_eigenvalue(u).lambda, lv = perron_eigenvalue(v).lambda;
    out.lambda_order = lu > lv + 1e-9 ? 1 : (lv > lu + 1e-9 ? -1 : 0);
    if (v_below && !u_below) {
        out.direction = +1;
        out.holds_up_to_horizon = true;
    } else if (u_below && !v_below) {
        out.direction = -1;
        out.holds_up_to_horizon = true;
    } else if (v_below && u_below) {
        out.direction = 0;
        out.holds_up_to_horizon = true;
    }
    return out;
}

struct CouplingStep {
    int x = 0, x_prime = 0;
    long long sigma = 0;
};

struct CouplingSummary {
    std::uint64_t seed = 0;
    int trials = 0;
    double mean_tau = 0.0, mean_tau_prime = 0.0;
    double se_tau = 0.0, se_tau_prime = 0.0;
    long long dominance_count = 0;  // trials with tau >= tau'
    mpz_class exact_expectation_u, exact_expectation_v;
    std::vector<CouplingStep> sample_trace;  // first trial
};

/// Runs the two-walk coupling certified by condition_D(u, v): the slower
/// walk X targets u, the dominated walk X' targets v and is frozen whenever
/// it is strictly ahead.  Pathwise invariants are asserted on every step.
inline CouplingSummary simulate_coupling(const Word& u, const Word& v, std::uint64_t seed,
                                         int trials) {
    if (trials <= 0) throw std::invalid_argument("trials must be positive");
    auto cert = condition_D(u, v);
    if (!cert) throw std::invalid_argument("coupling undefined: domination condition fails");
    const int k = u.size(), q = u.q;
    auto du = prefix_automaton(u), dv = prefix_automaton(v);

    CouplingSummary out;
    out.seed = seed;
    out.trials = trials;
    out.exact_expectation_u = expected_hitting(u);
    out.exact_expectation_v = expected_hitting(v);

    double sum_t = 0, sum_t2 = 0, sum_p = 0, sum_p2 = 0;
    for (int trial = 0; trial < trials; ++trial) {
        std::seed_seq sq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(trial)};
        std::mt19937_64 rng(sq);
        std::uniform_int_distribution<int> pick(0, q - 1);

        int x = 0, xp = 0;
        long long s = 0, sigma = 0;
        long long tau = -1, tau_prime = -1;
        while (tau < 0) {
            int a = pick(rng);
            if (xp > x) {
                // X' is strictly ahead: it freezes, X moves alone
                x = du[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
            } else {
                if (xp != x) throw std::logic_error("coupling invariant broken: x' < x");
                int b = cert->pi[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
                x = du[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
                xp = dv[static_cast<std::size_t>(xp)][static_cast<std::size_t>(b)];
                ++sigma;
                if (xp == k && tau_prime < 0) tau_prime = sigma;
            }
            ++s;
            if (x == k) tau = s;
            if (sigma > s) throw std::logic_error("coupling invariant broken: sigma > s");
            // X' has made exactly sigma moves, so X(s) <= X'(sigma(s)) is x <= xp
            if (x > xp) throw std::logic_error("coupling invariant broken: X above X'");
            if (trial == 0 && s <= 4096)
                out.sample_trace.push_back({x == k ? k : x, xp == k ? k : xp, sigma});
            if (x == k) break;
        }
        if (tau_prime < 0) tau_prime = sigma;  // X' absorbed together with X
        if (tau < tau_prime) throw std::logic_error("coupling invariant broken: tau < tau'");
        ++out.dominance_count;
        sum_t += static_cast<double>(tau);
        sum_t2 += static_cast<double>(tau) * static_cast<double>(tau);
        sum_p += static_cast<double>(tau_prime);
        sum_p2 += static_cast<double>(tau_prime) * static_cast<double>(tau_prime);
    }
    out.mean_tau = sum_t / trials;
    out.mean_tau_prime = sum_p / trials;
    if (trials > 1) {
        out.se_tau = std::sqrt((sum_t2 / trials - out.mean_tau * out.mean_tau) / (trials - 1));
        out.se_tau_prime =
            std::sqrt((sum_p2 / trials - out.mean_tau_prime * out.mean_tau_prime) / (trials - 1));
    }
    return out;
}

}  // namespace wordshift

#endif
