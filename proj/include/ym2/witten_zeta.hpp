#pragma once

#include <optional>
#include <vector>

#include "prec.hpp"
#include "weights.hpp"

namespace ym2 {

// Partitions of n with at most maxlen parts, lexicographically descending.
inline std::vector<Partition> partitions_bounded(int n, int maxlen) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == maxlen) return;
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rest - k, k);
            cur.pop_back();
        }
    };
    if (n >= 0) rec(rec, n, n);
    return out;
}

/**
 * Canonical representatives of Z^{downN}/Z classes of size <= k: pairs
 * (lambda, mu) with l(lambda) <= floor((N-1)/2) and l(mu) <= ceil((N-1)/2),
 * mapped through [lambda,mu]_N. Each class appears exactly once and the
 * representative is c(alpha)-centered.
 */
inline std::vector<HighestWeight> enumerate_su_classes(int N, int k) {
    std::vector<HighestWeight> out;
    int lmax = (N - 1) / 2, mmax = N - 1 - lmax;
    for (int j = 0; j <= k; ++j)
        for (int a = 0; a <= j; ++a)
            for (const auto& lambda : partitions_bounded(a, lmax))
                for (const auto& mu : partitions_bounded(j - a, mmax))
                    out.push_back(make_weight(lambda, mu, N));
    return out;
}

// v_l = sum_{i <= l < j} 1/(j-i), l = 1..N-1; symmetric under l <-> N-l.
inline std::vector<Rat> v_coefficients(int N) {
    if (N < 2) throw std::domain_error("v_coefficients: N < 2");
    std::vector<Rat> v;
    for (int l = 1; l <= N - 1; ++l) {
        Rat s(0);
        for (int i = 1; i <= l; ++i)
            for (int j = l + 1; j <= N; ++j) s += rat(1, j - i);
        v.push_back(s);
    }
    return v;
}

// Upper bound on the Riemann zeta value zeta(a), a > 1.
inline Real riemann_zeta_upper(const Real& a) {
    if (a <= 1) throw std::domain_error("riemann_zeta_upper: a <= 1");
    Real s(0);
    const int M = 200;
    for (int y = 1; y <= M; ++y) s += pow(Real(y), -a);
    s += pow(Real(M), 1 - a) / (a - 1);
    return s;
}

/**
 * Certified bound on the SU size tail sum_{|alpha|>k} d_alpha^{-s} (hence
 * also on its q-deformation for q <= 1). Uses d_alpha >= prod_l
 * (1+omega_l)^{v_l} in gap coordinates together with a union bound over
 * which coordinate is forced large by |alpha| = sum_l min(l,N-l) omega_l > k.
 * Requires s*v_l > 1 for every l.
 */
inline Real su_size_tail_bound(int N, const Rat& s, int k) {
    if (N == 1) return Real(0);
    auto v = v_coefficients(N);
    Real sr = to_real(s);
    std::vector<Real> zv(v.size());
    for (size_t l = 0; l < v.size(); ++l) {
        Real a = sr * to_real(v[l]);
        if (a <= 1) throw std::domain_error("su_size_tail_bound: no finite certificate (s too small)");
        zv[l] = riemann_zeta_upper(a);
    }
    Real tail(0);
    for (int l = 1; l <= N - 1; ++l) {
        int ml = std::min(l, N - l);
        long x = k / (static_cast<long>(N - 1) * ml);  // omega_l >= x+1 forced
        Real a = sr * to_real(v[static_cast<size_t>(l - 1)]);
        // sum_{omega >= x+1} (1+omega)^{-a}: summed head, integral remainder
        Real term(0);
        long y = x + 2;
        for (; y < x + 202; ++y) term += pow(Real(y), -a);
        term += pow(Real(y - 1), 1 - a) / (a - 1);
        for (int lp = 1; lp <= N - 1; ++lp)
            if (lp != l) term *= zv[static_cast<size_t>(lp - 1)];
        tail += term;
    }
    return tail;
}

/**
 * Fallback tail bound for q < 1 and arbitrary rational s: classes of size j
 * number at most (j+1)^{N-1}, d_alpha^{-s} <= N^{max(-s,0) j}, and the
 * Casimir deformation contributes at most q^{j^2/N^2}. Summed until the
 * term ratio drops below 1/2, then closed geometrically.
 */
inline Real q_damped_tail_bound(int N, const Rat& s, const Real& q, int k) {
    if (!(q < 1)) throw std::domain_error("q_damped_tail_bound: requires q < 1");
    Real growth = s < 0 ? pow(Real(N), to_real(-s)) : Real(1);
    auto term = [&](long j) {
        return pow(Real(j + 1), N - 1) * pow(growth, Real(j)) *
               pow(q, Real(j) * Real(j) / (Real(N) * Real(N)));
    };
    Real tail(0);
    for (long j = k + 1;; ++j) {
        Real t = term(j);
        Real r = term(j + 1) / t;
        if (r < Real(1) / 2) {
            tail += t / (1 - r);
            return tail;
        }
        tail += t;
        if (j > k + 100000) throw std::runtime_error("q_damped_tail_bound: no contraction reached");
    }
}

// theta(q, x) = sum_{c in Z} q^{c^2 + 2xc}, converged to working precision.
inline Real theta_charged(const Real& q, const Real& x) {
    if (!(q > 0 && q < 1)) throw std::domain_error("theta_charged: q out of (0,1)");
    Real s(0);
    const Real eps = pow(Real(10), -36);
    for (int dir : {+1, -1}) {
        for (long c = (dir > 0 ? 0 : -1);; c += dir) {
            Real t = pow(q, Real(c) * Real(c) + 2 * x * Real(c));
            s += t;
            if (Real(2) * (Real(c) * Real(dir)) + 2 * x * Real(dir) + 1 > 0 && t < eps) break;
        }
    }
    return s;
}

// theta(q) = sup_{u in [0,1]} sum_n q^{(n+u)^2}; sup taken over a fine grid
// plus the candidates u in {0, 1/2} (unimodality not assumed).
inline Real theta(const Real& q) {
    if (!(q > 0 && q < 1)) throw std::domain_error("theta: q out of (0,1)");
    auto at = [&](const Real& u) {
        Real s(0);
        const Real eps = pow(Real(10), -36);
        for (int dir : {+1, -1}) {
            for (long n = (dir > 0 ? 0 : -1);; n += dir) {
                Real t = pow(q, (Real(n) + u) * (Real(n) + u));
                s += t;
                if ((Real(n) + u) * Real(dir) > 0 && t < eps) break;
            }
        }
        return s;
    };
    Real best = at(Real(0));
    Real half = at(Real(1) / 2);
    if (half > best) best = half;
    for (int i = 1; i < 100; ++i) {
        Real v = at(Real(i) / 100);
        if (v > best) best = v;
    }
    return best;
}

enum class Group { U, SU };

struct ZetaQuery {
    Group group = Group::SU;
    Rat s = Rat(2);
    std::optional<Real> q;       // Casimir deformation base, in (0,1]
    int N = 2;
    int size_cutoff = 0;         // k
    std::optional<int> charge_cutoff;  // U group only
};

struct ZetaResult {
    Real partial_sum;
    Real tail_bound;
    long terms_used = 0;
};

namespace detail {

// sum_{c in Z} q^{(c+x)^2} truncated at |c| <= cutoff (or adaptively);
// adds the geometric remainder of the truncation to `rem`.
inline Real charge_series(const Real& q, const Real& x, std::optional<int> cutoff, Real& rem) {
    Real s(0);
    const Real eps = pow(Real(10), -36);
    for (int dir : {+1, -1}) {
        long c = (dir > 0) ? 0 : -1;
        Real t(0);
        for (;; c += dir) {
            if (cutoff && std::abs(c) > *cutoff) break;
            t = pow(q, (Real(c) + x) * (Real(c) + x));
            s += t;
            if (!cutoff && (Real(c) + x) * Real(dir) > 0 && t < eps) {
                c += dir;
                break;
            }
        }
        // remainder from |c| onward: ratio q^{2(c+x)dir + 1} once positive slope
        Real slope = 2 * (Real(c) + x) * Real(dir) + 1;
        while (slope <= 0) {  // walk until the series is decreasing, adding terms to the remainder crudely
            rem += pow(q, (Real(c) + x) * (Real(c) + x));
            c += dir;
            slope = 2 * (Real(c) + x) * Real(dir) + 1;
        }
        Real first = pow(q, (Real(c) + x) * (Real(c) + x));
        Real r = pow(q, slope);
        rem += first / (1 - r);
    }
    return s;
}

}  // namespace detail

/**
 * Partial sum of the (possibly q-deformed, size/charge-truncated) Witten
 * zeta function with a certified tail bound. SU sums use the translation
 * invariant Casimir c*, U sums the full c over all integer charges.
 */
inline ZetaResult zeta(const ZetaQuery& query) {
    int N = query.N, k = query.size_cutoff;
    if (N < 1 || k < 0) throw std::domain_error("zeta: bad query");
    if (query.group == Group::U && (!query.q || !(*query.q < 1)))
        throw std::domain_error("zeta: U-group sum diverges without q < 1");
    if (query.q && !(*query.q > 0 && *query.q <= 1))
        throw std::domain_error("zeta: q out of (0,1]");

    ZetaResult res{Real(0), Real(0), 0};
    Real charge_rem(0);
    for (const auto& alpha : enumerate_su_classes(N, k)) {
        Rat d = weyl_dimension(alpha);
        Real term = pow(to_real(d), to_real(-query.s));
        if (query.q) term *= pow(*query.q, to_real(casimir(alpha, true)));
        if (query.group == Group::U) {
            auto dec = size_and_decomposition(alpha);
            Real x = Real(psize(dec.lambda) - psize(dec.mu)) / N;
            Real rem(0);
            Real cs = detail::charge_series(*query.q, x, query.charge_cutoff, rem);
            charge_rem += pow(to_real(d), to_real(-query.s)) *
                          pow(*query.q, to_real(casimir(alpha, true))) * rem;
            term *= cs;
        }
        res.partial_sum += term;
        ++res.terms_used;
    }

    // Size tail: the q <= 1 deformation only shrinks terms, so the undeformed
    // certificate applies whenever it exists; otherwise fall back to the
    // q-damped count bound.
    Real size_tail;
    if (N == 1) {
        size_tail = 0;
    } else {
        try {
            size_tail = su_size_tail_bound(N, query.s, k);
        } catch (const std::domain_error&) {
            if (!query.q || !(*query.q < 1)) throw;
            size_tail = q_damped_tail_bound(N, query.s, *query.q, k);
        }
        if (query.group == Group::U) size_tail *= theta(*query.q);
    }
    res.tail_bound = size_tail + charge_rem;
    return res;
}

}  // namespace ym2
