#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "characters.hpp"
#include "exact.hpp"
#include "weights.hpp"

namespace ym2 {

/**
 * Walled Brauer diagram on n+m columns (0..n-1 left of the wall, n..n+m-1
 * right). Points are col + s*row with s = n+m, row 0 on top. The pairing is
 * a fixed-point-free involution; vertical strands stay on one side of the
 * wall and horizontal strands cross it.
 */
struct WalledDiagram {
    int n, m;
    std::vector<int> p;

    int s() const { return n + m; }

    bool valid() const {
        int sz = 2 * s();
        if (static_cast<int>(p.size()) != sz) return false;
        for (int v = 0; v < sz; ++v) {
            int w = p[v];
            if (w < 0 || w >= sz || w == v || p[w] != v) return false;
            bool same_row = (v / s()) == (w / s());
            bool same_side = (v % s() < n) == (w % s() < n);
            if (same_row == same_side) return false;
        }
        return true;
    }

    friend bool operator<(const WalledDiagram& a, const WalledDiagram& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.m != b.m) return a.m < b.m;
        return a.p < b.p;
    }
    friend bool operator==(const WalledDiagram& a, const WalledDiagram& b) {
        return a.n == b.n && a.m == b.m && a.p == b.p;
    }
};

inline WalledDiagram identity_diagram(int n, int m) {
    int s = n + m;
    WalledDiagram d{n, m, std::vector<int>(2 * s)};
    for (int i = 0; i < s; ++i) {
        d.p[i] = i + s;
        d.p[i + s] = i;
    }
    return d;
}

// Diagram of (alpha, beta) in S_n x S_m: top column i joins bottom column
// alpha(i) on the left, and symmetrically on the right.
inline WalledDiagram permutation_diagram(int n, int m, const std::vector<int>& alpha,
                                         const std::vector<int>& beta) {
    int s = n + m;
    WalledDiagram d{n, m, std::vector<int>(2 * s)};
    for (int i = 0; i < n; ++i) {
        d.p[i] = alpha[i] + s;
        d.p[alpha[i] + s] = i;
    }
    for (int j = 0; j < m; ++j) {
        d.p[n + j] = n + beta[j] + s;
        d.p[n + beta[j] + s] = n + j;
    }
    return d;
}

// Weyl contraction <i, n+j> (1-based i <= n, j <= m): horizontal strands
// joining columns i-1 and n+j-1 in both rows, identity elsewhere.
inline WalledDiagram contraction_diagram(int n, int m, int i, int j) {
    WalledDiagram d = identity_diagram(n, m);
    int s = n + m, a = i - 1, b = n + j - 1;
    d.p[a] = b;
    d.p[b] = a;
    d.p[a + s] = b + s;
    d.p[b + s] = a + s;
    return d;
}

// Number of horizontal strands in the top row.
inline int horizontal_count(const WalledDiagram& d) {
    int h = 0, s = d.s();
    for (int v = 0; v < s; ++v)
        if (d.p[v] < s && d.p[v] > v) ++h;
    return h;
}

// Cycle count of the closure of d by the identity matching.
inline int cycle_count(const WalledDiagram& d) {
    int s = d.s(), cycles = 0;
    std::vector<char> seen(2 * s, 0);
    for (int start = 0; start < 2 * s; ++start) {
        if (seen[start]) continue;
        ++cycles;
        int v = start;
        while (!seen[v]) {
            seen[v] = 1;
            int w = d.p[v];
            seen[w] = 1;
            v = (w < s) ? w + s : w - s;  // closure edge
        }
    }
    return cycles;
}

// Stack a above b: glue a's bottom row to b's top row. Returns the number
// of closed middle loops and the concatenated diagram.
inline std::pair<int, WalledDiagram> diagram_product(const WalledDiagram& a,
                                                     const WalledDiagram& b) {
    if (a.n != b.n || a.m != b.m) throw std::domain_error("diagram_product: shape mismatch");
    int s = a.s();
    WalledDiagram r{a.n, a.m, std::vector<int>(2 * s, -1)};
    std::vector<char> seen(s, 0);
    auto trace = [&](bool in_a, int point) {
        while (true) {
            int partner = in_a ? a.p[point] : b.p[point];
            if (in_a) {
                if (partner < s) return partner;  // external: a's top
                seen[partner - s] = 1;
                in_a = false;
                point = partner - s;  // continue from b's top
            } else {
                if (partner >= s) return partner;  // external: b's bottom
                seen[partner] = 1;
                in_a = true;
                point = partner + s;  // continue from a's bottom
            }
        }
    };
    for (int v = 0; v < s; ++v)
        if (r.p[v] < 0) {
            int e = trace(true, v);
            r.p[v] = e;
            r.p[e] = v;
        }
    for (int v = s; v < 2 * s; ++v)
        if (r.p[v] < 0) {
            int e = trace(false, v);
            r.p[v] = e;
            r.p[e] = v;
        }
    int loops = 0;
    for (int x = 0; x < s; ++x) {
        if (seen[x]) continue;
        ++loops;
        seen[x] = 1;
        bool in_a = true;
        int point = x + s;
        while (true) {
            int partner = in_a ? a.p[point] : b.p[point];
            if (in_a) {
                seen[partner - s] = 1;
                in_a = false;
                point = partner - s;
            } else {
                seen[partner] = 1;
                in_a = true;
                point = partner + s;
            }
            if (in_a && point == x + s) break;
        }
    }
    return {loops, r};
}

/**
 * Element of the walled Brauer algebra B_{n,m}(N) with ratfun coefficients;
 * the product folds each closed loop into a factor of the indeterminate N.
 */
struct BrauerElement {
    int n, m;
    std::map<WalledDiagram, ExactScalar> terms;

    BrauerElement(int n_, int m_) : n(n_), m(m_) {}

    void add(const WalledDiagram& d, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(d);
        if (it == terms.end()) {
            terms.emplace(d, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    friend BrauerElement operator+(const BrauerElement& a, const BrauerElement& b) {
        BrauerElement r = a;
        for (const auto& [d, c] : b.terms) r.add(d, c);
        return r;
    }
    friend BrauerElement operator-(const BrauerElement& a, const BrauerElement& b) {
        BrauerElement r = a;
        for (const auto& [d, c] : b.terms) r.add(d, -c);
        return r;
    }
    friend BrauerElement operator*(const ExactScalar& c, const BrauerElement& a) {
        BrauerElement r(a.n, a.m);
        for (const auto& [d, k] : a.terms) r.add(d, c * k);
        return r;
    }
    friend BrauerElement operator*(const BrauerElement& a, const BrauerElement& b) {
        BrauerElement r(a.n, a.m);
        ExactScalar nn = ExactScalar::N();
        for (const auto& [da, ca] : a.terms)
            for (const auto& [db, cb] : b.terms) {
                auto [loops, d] = diagram_product(da, db);
                ExactScalar c = ca * cb;
                for (int l = 0; l < loops; ++l) c *= nn;
                r.add(d, c);
            }
        return r;
    }
    friend bool operator==(const BrauerElement& a, const BrauerElement& b) {
        return a.n == b.n && a.m == b.m && a.terms == b.terms;
    }
};

inline BrauerElement brauer_identity(int n, int m) {
    BrauerElement e(n, m);
    e.add(identity_diagram(n, m), ExactScalar(1));
    return e;
}

inline std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

inline std::vector<int> inverse_perm(const std::vector<int>& a) {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[static_cast<size_t>(a[i])] = static_cast<int>(i);
    return r;
}

inline Partition cycle_type(const std::vector<int>& a) {
    Partition t;
    std::vector<char> seen(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<size_t>(a[j]);
            ++len;
        }
        t.push_back(len);
    }
    std::sort(t.rbegin(), t.rend());
    return t;
}

enum class JMKind { X, Y, Xbar, Ybar };

// Jucys-Murphy elements of B_{n,m}(N), with X_1 = Xbar_1 = 0 (indices 1-based).
inline BrauerElement jucys_murphy(JMKind kind, int index, int n, int m) {
    BrauerElement r(n, m);
    ExactScalar one(1);
    auto left_transposition = [&](int k, int i) {  // (k i), 1-based, within S_n
        std::vector<int> alpha(static_cast<size_t>(n)), beta(static_cast<size_t>(m));
        for (int t = 0; t < n; ++t) alpha[static_cast<size_t>(t)] = t;
        for (int t = 0; t < m; ++t) beta[static_cast<size_t>(t)] = t;
        std::swap(alpha[static_cast<size_t>(k - 1)], alpha[static_cast<size_t>(i - 1)]);
        return permutation_diagram(n, m, alpha, beta);
    };
    auto right_transposition = [&](int k, int j) {  // (n+k n+j), within S_m
        std::vector<int> alpha(static_cast<size_t>(n)), beta(static_cast<size_t>(m));
        for (int t = 0; t < n; ++t) alpha[static_cast<size_t>(t)] = t;
        for (int t = 0; t < m; ++t) beta[static_cast<size_t>(t)] = t;
        std::swap(beta[static_cast<size_t>(k - 1)], beta[static_cast<size_t>(j - 1)]);
        return permutation_diagram(n, m, alpha, beta);
    };
    switch (kind) {
        case JMKind::X: {
            if (index < 1 || index > n) throw std::domain_error("jucys_murphy: X index");
            for (int k = 1; k < index; ++k) r.add(left_transposition(k, index), one);
            break;
        }
        case JMKind::Xbar: {
            if (index < 1 || index > m) throw std::domain_error("jucys_murphy: Xbar index");
            for (int k = 1; k < index; ++k) r.add(right_transposition(k, index), one);
            break;
        }
        case JMKind::Y: {
            if (index < 1 || index > m) throw std::domain_error("jucys_murphy: Y index");
            r.add(identity_diagram(n, m), ExactScalar::N());
            for (int i = 1; i <= n; ++i) r.add(contraction_diagram(n, m, i, index), -one);
            for (int k = 1; k < index; ++k) r.add(right_transposition(k, index), one);
            break;
        }
        case JMKind::Ybar: {
            if (index < 1 || index > n) throw std::domain_error("jucys_murphy: Ybar index");
            r.add(identity_diagram(n, m), ExactScalar::N());
            for (int j = 1; j <= m; ++j) r.add(contraction_diagram(n, m, index, j), -one);
            for (int k = 1; k < index; ++k) r.add(left_transposition(k, index), one);
            break;
        }
    }
    return r;
}

namespace detail {

// Gaussian-elimination solve A x = b over ExactScalar; A square, invertible.
inline std::vector<ExactScalar> solve_linear(std::vector<std::vector<ExactScalar>> A,
                                             std::vector<ExactScalar> b) {
    size_t k = A.size();
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        while (piv < k && A[piv][col].is_zero()) ++piv;
        if (piv == k) throw std::domain_error("solve_linear: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        ExactScalar inv = A[col][col].inverse();
        for (size_t j = col; j < k; ++j) A[col][j] *= inv;
        b[col] *= inv;
        for (size_t row = 0; row < k; ++row) {
            if (row == col || A[row][col].is_zero()) continue;
            ExactScalar f = A[row][col];
            for (size_t j = col; j < k; ++j) A[row][j] -= f * A[col][j];
            b[row] -= f * b[col];
        }
    }
    return b;
}

}  // namespace detail

/**
 * Inverse of an element supported on permutation diagrams, solved in the
 * regular representation of S_n x S_m over the ratfun field. Exact and valid
 * for indeterminate N, unlike a truncated geometric series.
 */
inline BrauerElement invert_permutation_supported(const BrauerElement& a) {
    int n = a.n, m = a.m;
    std::vector<WalledDiagram> basis;
    for (const auto& alpha : all_perms(n))
        for (const auto& beta : all_perms(m))
            basis.push_back(permutation_diagram(n, m, alpha, beta));
    std::sort(basis.begin(), basis.end());
    std::map<WalledDiagram, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    size_t k = basis.size();

    std::vector<std::vector<ExactScalar>> M(k, std::vector<ExactScalar>(k, ExactScalar(0)));
    for (const auto& [d, c] : a.terms) {
        if (horizontal_count(d) > 0)
            throw std::domain_error("invert_permutation_supported: not permutation-supported");
        for (size_t h = 0; h < k; ++h) {
            auto [loops, prod] = diagram_product(d, basis[h]);
            (void)loops;  // permutation products close no loops
            M[index.at(prod)][h] += c;
        }
    }
    std::vector<ExactScalar> rhs(k, ExactScalar(0));
    rhs[index.at(identity_diagram(n, m))] = ExactScalar(1);
    auto z = detail::solve_linear(std::move(M), std::move(rhs));
    BrauerElement r(n, m);
    for (size_t h = 0; h < k; ++h) r.add(basis[h], z[h]);
    return r;
}

/**
 * The traceless projector q_{n,m} with ratfun coefficients,
 *   q = prod_{i,j} (N + X_i + Xbar_j)^{-1} prod_{i,j} (X_i + Y_j)   (m <= n)
 * and the mirrored product for n < m; q_{n,0} and q_{0,m} are the identity.
 */
inline const BrauerElement& traceless_projector(int n, int m) {
    static std::map<std::pair<int, int>, BrauerElement> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    BrauerElement q = brauer_identity(n, m);
    if (n >= 1 && m >= 1) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= m; ++j) {
                BrauerElement lin =
                    ExactScalar::N() * brauer_identity(n, m) + jucys_murphy(JMKind::X, i, n, m) +
                    jucys_murphy(JMKind::Xbar, j, n, m);
                q = q * invert_permutation_supported(lin);
            }
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= m; ++j) {
                BrauerElement lin = (m <= n)
                                        ? jucys_murphy(JMKind::X, i, n, m) +
                                              jucys_murphy(JMKind::Y, j, n, m)
                                        : jucys_murphy(JMKind::Xbar, j, n, m) +
                                              jucys_murphy(JMKind::Ybar, i, n, m);
                q = q * lin;
            }
    }
    return cache.emplace(key, std::move(q)).first->second;
}

// Lagrange interpolation of N -> d_{[nu,mu]_N}, a polynomial of degree |nu|+|mu|.
inline Poly dimension_poly(const Partition& nu, const Partition& mu) {
    int deg = psize(nu) + psize(mu);
    long base = std::max(plen(nu) + plen(mu), 1);
    std::vector<Rat> xs, ys;
    for (int t = 0; t <= deg; ++t) {
        long x = base + t;
        xs.push_back(Rat(x));
        ys.push_back(weyl_dimension(make_weight(nu, mu, static_cast<int>(x))));
    }
    Poly acc;
    for (size_t t = 0; t < xs.size(); ++t) {
        Poly basis(Rat(1));
        Rat denom(1);
        for (size_t u = 0; u < xs.size(); ++u) {
            if (u == t) continue;
            basis = basis * Poly(std::vector<Rat>{-xs[u], Rat(1)});
            denom *= xs[t] - xs[u];
        }
        Poly scaled = basis * Poly(ys[t] / denom);
        acc = acc + scaled;
    }
    return acc;
}

/**
 * Omega_{n,m} as an element of the S_{n,m} group algebra over ratfuns,
 * via the central expansion Omega = sum_{nu,mu} d_{[nu,mu]_N} chi^{[nu,mu]}.
 */
inline const BrauerElement& omega_mixed(int n, int m) {
    static std::map<std::pair<int, int>, BrauerElement> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Partition> nus = enumerate_partitions(n), mus = enumerate_partitions(m);
    std::vector<std::vector<Poly>> dpoly(nus.size(), std::vector<Poly>(mus.size()));
    for (size_t a = 0; a < nus.size(); ++a)
        for (size_t b = 0; b < mus.size(); ++b) dpoly[a][b] = dimension_poly(nus[a], mus[b]);

    BrauerElement r(n, m);
    for (const auto& alpha : all_perms(n))
        for (const auto& beta : all_perms(m)) {
            Partition ta = cycle_type(alpha), tb = cycle_type(beta);
            Poly coeff;
            for (size_t a = 0; a < nus.size(); ++a)
                for (size_t b = 0; b < mus.size(); ++b) {
                    mpz_class chi = character_value(nus[a], ta) * character_value(mus[b], tb);
                    if (chi == 0) continue;
                    coeff = coeff + dpoly[a][b] * Poly(Rat(chi));
                }
            r.add(permutation_diagram(n, m, alpha, beta), ExactScalar(coeff, Poly(Rat(1))));
        }
    return cache.emplace(key, std::move(r)).first->second;
}

// Independent route: Omega(sigma) = Tr rho(sigma^{-1} q_{n,m}) evaluated
// symbolically as sum_tau kappa(tau) N^{#cycles(tau)} over diagrams.
inline BrauerElement omega_from_projector(int n, int m) {
    const BrauerElement& q = traceless_projector(n, m);
    BrauerElement r(n, m);
    ExactScalar nn = ExactScalar::N();
    for (const auto& alpha : all_perms(n))
        for (const auto& beta : all_perms(m)) {
            BrauerElement sigma_inv(n, m);
            sigma_inv.add(permutation_diagram(n, m, inverse_perm(alpha), inverse_perm(beta)),
                          ExactScalar(1));
            BrauerElement prod = sigma_inv * q;
            ExactScalar tr(0);
            for (const auto& [d, c] : prod.terms) {
                ExactScalar f = c;
                for (int l = 0; l < cycle_count(d); ++l) f *= nn;
                tr += f;
            }
            r.add(permutation_diagram(n, m, alpha, beta), tr);
        }
    return r;
}

// Classical Weingarten function of S_{n+m} at a cycle type, as a ratfun:
//   Wg(sigma) = (1/(n+m)!^2) sum_lambda d_lambda^2 chi^lambda(sigma)/s_lambda(1^N)
// with s_lambda(1^N) = E_lambda(N)/H_lambda.
inline ExactScalar classical_weingarten(const Partition& type) {
    int k = psize(type);
    ExactScalar acc(0);
    for (const auto& lam : enumerate_partitions(k)) {
        mpz_class d = hook_dimension(lam);
        mpz_class chi = character_value(lam, type);
        if (chi == 0) continue;
        mpz_class hooks(1);
        for (int h : hook_lengths(lam)) hooks *= h;
        acc += ExactScalar(Poly(Rat(d * d * chi * hooks)), content_poly(lam));
    }
    mpz_class kf = factorial(k);
    return acc / ExactScalar(Rat(kf * kf));
}

/**
 * Wg_{n,m} = Omega_{n,m}^{-1}, from the reciprocal central eigenvalues:
 *   Wg(sigma) = sum_{nu,mu} (d^nu d^mu)^2 chi^{[nu,mu]}(sigma) / ((n!m!)^2 d_{[nu,mu]_N}).
 */
inline const BrauerElement& weingarten_mixed(int n, int m) {
    static std::map<std::pair<int, int>, BrauerElement> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Partition> nus = enumerate_partitions(n), mus = enumerate_partitions(m);
    mpz_class nf = factorial(n) * factorial(m);
    BrauerElement r(n, m);
    for (const auto& alpha : all_perms(n))
        for (const auto& beta : all_perms(m)) {
            Partition ta = cycle_type(alpha), tb = cycle_type(beta);
            ExactScalar coeff(0);
            for (size_t a = 0; a < nus.size(); ++a)
                for (size_t b = 0; b < mus.size(); ++b) {
                    mpz_class chi = character_value(nus[a], ta) * character_value(mus[b], tb);
                    if (chi == 0) continue;
                    mpz_class dd = hook_dimension(nus[a]) * hook_dimension(mus[b]);
                    Rat w(dd * dd * chi, nf * nf);
                    w.canonicalize();
                    coeff += ExactScalar(Poly(w), dimension_poly(nus[a], mus[b]));
                }
            r.add(permutation_diagram(n, m, alpha, beta), coeff);
        }
    return cache.emplace(key, std::move(r)).first->second;
}

// d_{[lambda,mu]_N} recovered from the projector-route Omega as
// chi^{[lambda,mu]}(Omega)/(n!m!), independent of the Weyl formula.
inline ExactScalar dim_from_omega(const Partition& lambda, const Partition& mu, int N) {
    int n = psize(lambda), m = psize(mu);
    if (plen(lambda) + plen(mu) > N) throw std::domain_error("dim_from_omega: length overflow");
    static std::map<std::pair<int, int>, BrauerElement> cache;
    static std::mutex mtx;
    BrauerElement* om;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(n, m);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, omega_from_projector(n, m)).first;
        om = &it->second;
    }
    ExactScalar acc(0);
    for (const auto& [d, c] : om->terms) {
        std::vector<int> alpha(static_cast<size_t>(n)), beta(static_cast<size_t>(m));
        for (int i = 0; i < n; ++i) alpha[static_cast<size_t>(i)] = d.p[i] - d.s();
        for (int j = 0; j < m; ++j) beta[static_cast<size_t>(j)] = d.p[n + j] - d.s() - n;
        mpz_class chi = character_value(lambda, cycle_type(alpha)) *
                        character_value(mu, cycle_type(beta));
        acc += c * ExactScalar(Rat(chi));
    }
    acc /= ExactScalar(Rat(factorial(n) * factorial(m)));
    return ExactScalar(acc.specialize(Rat(N)));
}

struct OmegaExpansion {
    int num_cycles;                // #sigma, the top exponent
    std::vector<mpz_class> h;      // h[g-1] = h_g, coefficient of X^{#sigma-2g}
};

/**
 * 1/N expansion of Omega_{n,m}(sigma): asserts the polynomial shape
 * X^{#sigma} + sum_g h_g X^{#sigma-2g} with integer h_g.
 */
inline OmegaExpansion omega_expansion(int n, int m, const std::vector<int>& alpha,
                                      const std::vector<int>& beta, int g_max) {
    const BrauerElement& om = omega_mixed(n, m);
    WalledDiagram d = permutation_diagram(n, m, alpha, beta);
    auto it = om.terms.find(d);
    if (it == om.terms.end()) throw std::domain_error("omega_expansion: zero coefficient");
    const ExactScalar& c = it->second;
    if (c.den().degree() != 0) throw std::logic_error("omega_expansion: not a polynomial");
    Poly poly = c.num();
    int top = static_cast<int>(plen(cycle_type(alpha)) + plen(cycle_type(beta)));
    if (poly.degree() != top || poly.lead() != 1)
        throw std::logic_error("omega_expansion: leading term mismatch");
    OmegaExpansion res{top, {}};
    for (int e = top - 1; e >= 0; --e) {
        Rat coeff = poly.coeff(static_cast<size_t>(e));
        if ((top - e) % 2 == 1) {
            if (coeff != 0) throw std::logic_error("omega_expansion: odd exponent present");
            continue;
        }
        int g = (top - e) / 2;
        if (g > g_max) break;
        if (coeff.get_den() != 1) throw std::logic_error("omega_expansion: non-integer h_g");
        res.h.push_back(coeff.get_num());
    }
    return res;
}

/**
 * h_g^{n,m}(gamma) by constellation enumeration: tuples of L non-identity
 * permutations of S_{n+m} multiplying to gamma with total reduced length
 * |gamma|+2g, weighted by (-1)^{L+l} over the compositions lambda of L (l
 * blocks) whose consecutive blocks each multiply into S_{n,m}.
 */
inline mpz_class constellation_h(int n, int m, const std::vector<int>& gamma, int g) {
    int s = n + m;
    auto perms = all_perms(s);
    auto reduced_length = [&](const std::vector<int>& p) {
        return s - plen(cycle_type(p));
    };
    auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<size_t>(a[i])];
        return r;
    };
    auto in_snm = [&](const std::vector<int>& p) {
        for (int i = 0; i < s; ++i)
            if ((p[static_cast<size_t>(i)] < n) != (i < n)) return false;
        return true;
    };
    std::vector<std::vector<int>> nonid;
    for (const auto& p : perms)
        if (reduced_length(p) > 0) nonid.push_back(p);

    int target = reduced_length(gamma) + 2 * g;
    mpz_class total = 0;
    std::vector<const std::vector<int>*> tuple;
    // composition weight of a tuple: sum over compositions of L into l blocks
    // with each block product in S_{n,m}, weighted (-1)^l
    auto block_weight = [&](const std::vector<const std::vector<int>*>& t) {
        size_t L = t.size();
        // prefix[i] = product of first i factors
        std::vector<std::vector<int>> prefix(L + 1);
        prefix[0].resize(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i) prefix[0][static_cast<size_t>(i)] = i;
        for (size_t i = 0; i < L; ++i) prefix[i + 1] = compose(prefix[i], *t[i]);
        // w[i] = signed count of valid block splittings of the first i factors
        std::vector<mpz_class> w(L + 1, 0);
        w[0] = 1;
        for (size_t i = 1; i <= L; ++i)
            for (size_t j = 0; j < i; ++j) {
                // block j..i-1 has product prefix[j]^{-1} prefix[i] and
                // contributes the sign (-1)^{(i-j)+1}
                auto blk = compose(inverse_perm(prefix[j]), prefix[i]);
                if (!in_snm(blk)) continue;
                if ((i - j) % 2 == 0)
                    w[i] -= w[j];
                else
                    w[i] += w[j];
            }
        return w[L];
    };
    auto rec = [&](auto&& self, const std::vector<int>& acc, int used) -> void {
        if (used == target) {
            if (acc == gamma && !tuple.empty()) total += block_weight(tuple);
            return;
        }
        for (const auto& p : nonid) {
            int len = reduced_length(p);
            if (used + len > target) continue;
            tuple.push_back(&p);
            self(self, compose(acc, p), used + len);
            tuple.pop_back();
        }
    };
    std::vector<int> id(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) id[static_cast<size_t>(i)] = i;
    rec(rec, id, 0);
    return total;
}

// Minimal generator word length |pi| over transpositions of S_{n,m} and Weyl
// contractions, by breadth-first search over the diagram monoid.
inline std::map<WalledDiagram, int> brauer_word_lengths(int n, int m) {
    std::vector<BrauerElement> gens;
    for (int a = 0; a < n + m; ++a)
        for (int b = a + 1; b < n + m; ++b) {
            bool left = a < n, right = b >= n;
            if (left && right) {
                gens.push_back(BrauerElement(n, m));
                gens.back().add(contraction_diagram(n, m, a + 1, b - n + 1), ExactScalar(1));
            } else {
                std::vector<int> alpha(static_cast<size_t>(n)), beta(static_cast<size_t>(m));
                for (int t = 0; t < n; ++t) alpha[static_cast<size_t>(t)] = t;
                for (int t = 0; t < m; ++t) beta[static_cast<size_t>(t)] = t;
                if (left)
                    std::swap(alpha[static_cast<size_t>(a)], alpha[static_cast<size_t>(b)]);
                else
                    std::swap(beta[static_cast<size_t>(a - n)], beta[static_cast<size_t>(b - n)]);
                gens.push_back(BrauerElement(n, m));
                gens.back().add(permutation_diagram(n, m, alpha, beta), ExactScalar(1));
            }
        }
    std::map<WalledDiagram, int> dist;
    std::vector<WalledDiagram> frontier{identity_diagram(n, m)};
    dist[frontier[0]] = 0;
    int depth = 0;
    while (!frontier.empty()) {
        ++depth;
        std::vector<WalledDiagram> next;
        for (const auto& d : frontier)
            for (const auto& g : gens) {
                const WalledDiagram& gd = g.terms.begin()->first;
                auto [loops, prod] = diagram_product(d, gd);
                (void)loops;
                if (dist.emplace(prod, depth).second) next.push_back(prod);
            }
        frontier = std::move(next);
    }
    return dist;
}

/**
 * Dense representation rho_N of an algebra element at fixed N, as an
 * N^{n+m} square matrix of exact rationals acting on mixed tensors.
 */
inline std::vector<std::vector<Rat>> rho_matrix(const BrauerElement& x, int N) {
    int s = x.n + x.m;
    long dim = 1;
    for (int i = 0; i < s; ++i) {
        dim *= N;
        if (dim > 10000) throw std::domain_error("rho_matrix: dense limit exceeded");
    }
    std::vector<std::vector<Rat>> M(static_cast<size_t>(dim),
                                    std::vector<Rat>(static_cast<size_t>(dim), Rat(0)));
    std::vector<int> digits(static_cast<size_t>(2 * s));
    for (const auto& [d, c] : x.terms) {
        Rat cv = c.specialize(Rat(N));
        if (cv == 0) continue;
        for (long r = 0; r < dim; ++r) {
            long rr = r;
            for (int i = 0; i < s; ++i) {
                digits[static_cast<size_t>(i)] = static_cast<int>(rr % N);
                rr /= N;
            }
            for (long col = 0; col < dim; ++col) {
                long cc = col;
                for (int i = 0; i < s; ++i) {
                    digits[static_cast<size_t>(s + i)] = static_cast<int>(cc % N);
                    cc /= N;
                }
                bool ok = true;
                for (int v = 0; v < 2 * s && ok; ++v)
                    if (digits[static_cast<size_t>(v)] != digits[static_cast<size_t>(d.p[v])])
                        ok = false;
                if (ok) M[static_cast<size_t>(r)][static_cast<size_t>(col)] += cv;
            }
        }
    }
    return M;
}

}  // namespace ym2
