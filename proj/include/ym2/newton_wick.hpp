#pragma once

#include <complex>
#include <vector>

#include "characters.hpp"
#include "walled_brauer.hpp"
#include "weights.hpp"

namespace ym2 {

// Monomial coeff * p_lambda * conj(p_mu) in the power sums of U and U^{-1}.
struct PowerSumMonomial {
    Partition lambda, mu;
    Rat coeff;
};

// Exact Haar moment of p_lambda(U) conj(p_mu(U)): the character route
// sum_{nu |- n, l(nu) <= N} chi^nu(lambda) chi^nu(mu), which collapses to
// delta_{lambda,mu} z_lambda when |lambda| <= N.
inline ExactScalar haar_moment(const Partition& lambda, const Partition& mu, int N) {
    if (psize(lambda) != psize(mu)) return ExactScalar(0);
    int n = psize(lambda);
    mpz_class acc = 0;
    const CharacterTable& t = character_table(n);
    for (const auto& nu : t.parts) {
        if (plen(nu) > N) continue;
        acc += character_value(nu, lambda) * character_value(nu, mu);
    }
    return ExactScalar(Rat(acc));
}

// p_{[lambda,mu]} expanded into plain monomials:
//   sum over common sub-multisets nu of (-1)^{l(nu)} C_nu p_{lambda\nu} conj(p_{mu\nu})
// with C_nu the closed multiplicity product.
inline std::vector<PowerSumMonomial> wick_newton(const Partition& lambda, const Partition& mu) {
    int maxpart = 0;
    for (int v : lambda) maxpart = std::max(maxpart, v);
    for (int v : mu) maxpart = std::max(maxpart, v);
    std::vector<PowerSumMonomial> out;
    std::vector<int> vmult(static_cast<size_t>(maxpart + 1), 0);
    auto rec = [&](auto&& self, int part) -> void {
        if (part > maxpart) {
            Partition nu, lrest, mrest;
            Rat c(1);
            int lnu = 0;
            for (int i = 1; i <= maxpart; ++i) {
                int v = vmult[static_cast<size_t>(i)];
                int ml = pmult(lambda, i), mm = pmult(mu, i);
                lnu += v;
                for (int t = 0; t < v; ++t) nu.push_back(i);
                for (int t = 0; t < ml - v; ++t) lrest.push_back(i);
                for (int t = 0; t < mm - v; ++t) mrest.push_back(i);
                // i^v * C(ml,v) * C(mm,v) * v!
                mpz_class f(1);
                for (int t = 0; t < v; ++t) f *= i;
                mpz_class bin1(1), bin2(1);
                for (int t = 0; t < v; ++t) {
                    bin1 *= ml - t;
                    bin2 *= mm - t;
                }
                f *= bin1 * bin2;
                for (int t = 2; t <= v; ++t) f /= t;  // one v! of C(ml,v)C(mm,v)v!
                c *= Rat(f);
            }
            std::sort(lrest.rbegin(), lrest.rend());
            std::sort(mrest.rbegin(), mrest.rend());
            out.push_back({lrest, mrest, (lnu % 2 == 0) ? c : -c});
            return;
        }
        int top = std::min(pmult(lambda, part), pmult(mu, part));
        for (int v = 0; v <= top; ++v) {
            vmult[static_cast<size_t>(part)] = v;
            self(self, part + 1);
        }
        vmult[static_cast<size_t>(part)] = 0;
    };
    rec(rec, 1);
    return out;
}

// p_i^{(a,b)} = sum_k (-1)^k k! i^k C(a,k) C(b,k) p_i^{a-k} conj(p_i)^{b-k}.
inline std::vector<PowerSumMonomial> wick_single(int i, int a, int b) {
    std::vector<PowerSumMonomial> out;
    for (int k = 0; k <= std::min(a, b); ++k) {
        mpz_class f(1);
        for (int t = 0; t < k; ++t) f *= mpz_class(i) * (a - t) * (b - t);
        for (int t = 2; t <= k; ++t) f /= t;
        Partition l(static_cast<size_t>(a - k), i), m(static_cast<size_t>(b - k), i);
        out.push_back({l, m, (k % 2 == 0) ? Rat(f) : Rat(-f)});
    }
    return out;
}

using Cx = std::complex<double>;

inline Cx power_sum(const std::vector<Cx>& z, int k) {
    Cx s(0);
    for (const Cx& v : z) s += std::pow(v, k);
    return s;
}

inline Cx evaluate_monomials(const std::vector<PowerSumMonomial>& mons,
                             const std::vector<Cx>& z) {
    Cx total(0);
    for (const auto& mon : mons) {
        Cx term(mon.coeff.get_d());
        for (int part : mon.lambda) term *= power_sum(z, part);
        for (int part : mon.mu) term *= std::conj(power_sum(z, part));
        total += term;
    }
    return total;
}

/**
 * chi_{[lambda,mu]_N}(U) for U with the given unit-modulus spectrum:
 *   (1/n!m!) sum_{classes} |C_alpha||C_beta| chi^lambda(alpha) chi^mu(beta) p_{[alpha,beta]}(U).
 */
inline Cx generalized_frobenius(const Partition& lambda, const Partition& mu,
                                const std::vector<Cx>& z) {
    int n = psize(lambda), m = psize(mu);
    if (static_cast<int>(z.size()) < n + m)
        throw std::domain_error("generalized_frobenius: spectrum shorter than |lambda|+|mu|");
    const CharacterTable& tn = character_table(n);
    const CharacterTable& tm = character_table(m);
    Cx acc(0);
    for (size_t a = 0; a < tn.parts.size(); ++a)
        for (size_t b = 0; b < tm.parts.size(); ++b) {
            mpz_class chi = tn.value(lambda, tn.parts[a]) * tm.value(mu, tm.parts[b]);
            if (chi == 0) continue;
            mpz_class weight = chi * tn.class_size[a] * tm.class_size[b];
            Cx p = evaluate_monomials(wick_newton(tn.parts[a], tm.parts[b]), z);
            acc += Cx(mpq_class(weight).get_d()) * p;
        }
    return acc / Cx(mpq_class(factorial(n) * factorial(m)).get_d());
}

namespace detail {

inline Cx complex_det(std::vector<std::vector<Cx>> a) {
    size_t k = a.size();
    Cx det(1);
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return Cx(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t r = col + 1; r < k; ++r) {
            Cx f = a[r][col] / a[col][col];
            for (size_t j = col; j < k; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

}  // namespace detail

/**
 * Independent oracle: the Weyl character of [lambda,mu]_N as a ratio of
 * alternants det(z_i^{w_j+N-j}) / det(z_i^{N-j}). Requires a spectrum with
 * distinct entries; callers jitter coincident spectra.
 */
inline Cx weyl_character(const Partition& lambda, const Partition& mu, int N,
                         const std::vector<Cx>& z) {
    if (static_cast<int>(z.size()) != N) throw std::domain_error("weyl_character: |z| != N");
    HighestWeight w = make_weight(lambda, mu, N);
    std::vector<std::vector<Cx>> num(static_cast<size_t>(N), std::vector<Cx>(static_cast<size_t>(N)));
    std::vector<std::vector<Cx>> den = num;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            num[i][j] = std::pow(z[static_cast<size_t>(i)],
                                 Cx(static_cast<double>(w.e[static_cast<size_t>(j)] + N - 1 - j)));
            den[i][j] = std::pow(z[static_cast<size_t>(i)], Cx(static_cast<double>(N - 1 - j)));
        }
    return detail::complex_det(num) / detail::complex_det(den);
}

/**
 * Omega_{n,m} from the Gaussian moment rule: the coefficient of alpha x beta
 * factorizes over cycle lengths k as
 *   sum_a C(m_k(alpha),a) C(m_k(beta),a) a! k^a (-1)^a N^{m_k(alpha)+m_k(beta)-2a}.
 */
inline BrauerElement omega_gaussian(int n, int m) {
    BrauerElement r(n, m);
    for (const auto& alpha : all_perms(n))
        for (const auto& beta : all_perms(m)) {
            Partition ta = cycle_type(alpha), tb = cycle_type(beta);
            Poly coeff(Rat(1));
            for (int k = 1; k <= std::max(n, m); ++k) {
                int ma = pmult(ta, k), mb = pmult(tb, k);
                if (ma == 0 && mb == 0) continue;
                Poly factor;
                for (int a = 0; a <= std::min(ma, mb); ++a) {
                    mpz_class f(1);
                    for (int t = 0; t < a; ++t) f *= mpz_class(k) * (ma - t) * (mb - t);
                    for (int t = 2; t <= a; ++t) f /= t;
                    if (a % 2 == 1) f = -f;
                    std::vector<Rat> mono(static_cast<size_t>(ma + mb - 2 * a), Rat(0));
                    mono.push_back(Rat(f));
                    factor = factor + Poly(std::move(mono));
                }
                coeff = coeff * factor;
            }
            r.add(permutation_diagram(n, m, alpha, beta), ExactScalar(coeff, Poly(Rat(1))));
        }
    return r;
}

/**
 * Brute-force Haar moment of p_lambda(U) conj(p_mu(U)) at fixed N by the
 * Weingarten formula expanded over matrix indices; oracle for haar_moment.
 */
inline Rat brute_haar_moment(const Partition& lambda, const Partition& mu, int N) {
    if (psize(lambda) != psize(mu)) return Rat(0);
    int d = psize(lambda);
    if (d == 0) return Rat(1);
    auto cyc = [&](const Partition& p) {
        // a permutation of cycle type p: consecutive blocks cycled
        std::vector<int> c(static_cast<size_t>(psize(p)));
        int pos = 0;
        for (int part : p) {
            for (int t = 0; t < part; ++t)
                c[static_cast<size_t>(pos + t)] = pos + (t + 1) % part;
            pos += part;
        }
        return c;
    };
    std::vector<int> cl = cyc(lambda), cm = cyc(mu);
    auto perms = all_perms(d);
    // precompute Weingarten values by cycle type of sigma tau^{-1}
    std::map<Partition, Rat> wg;
    for (const auto& p : perms) {
        Partition t = cycle_type(p);
        if (!wg.count(t)) wg[t] = classical_weingarten(t).specialize(Rat(N));
    }
    Rat total(0);
    std::vector<int> j(static_cast<size_t>(d), 0), k(static_cast<size_t>(d), 0);
    auto loop = [&](std::vector<int>& idx, auto&& body) {
        while (true) {
            body();
            int t = 0;
            while (t < d && ++idx[static_cast<size_t>(t)] == N) idx[static_cast<size_t>(t++)] = 0;
            if (t == d) break;
        }
    };
    loop(j, [&] {
        loop(k, [&] {
            // E[prod_t U_{j_t, j_{cl(t)}} prod_t conj(U)_{k_t, k_{cm(t)}}]
            for (const auto& sigma : perms) {
                bool ok = true;
                for (int t = 0; t < d && ok; ++t)
                    if (j[static_cast<size_t>(t)] !=
                        k[static_cast<size_t>(sigma[static_cast<size_t>(t)])])
                        ok = false;
                if (!ok) continue;
                for (const auto& tau : perms) {
                    bool ok2 = true;
                    for (int t = 0; t < d && ok2; ++t)
                        if (j[static_cast<size_t>(cl[static_cast<size_t>(t)])] !=
                            k[static_cast<size_t>(cm[static_cast<size_t>(
                                tau[static_cast<size_t>(t)])])])
                            ok2 = false;
                    if (!ok2) continue;
                    // weight Wg(sigma tau^{-1})
                    std::vector<int> st(static_cast<size_t>(d));
                    auto tinv = inverse_perm(tau);
                    for (int t = 0; t < d; ++t)
                        st[static_cast<size_t>(t)] =
                            tinv[static_cast<size_t>(sigma[static_cast<size_t>(t)])];
                    total += wg.at(cycle_type(st));
                }
            }
        });
    });
    return total;
}

}  // namespace ym2
