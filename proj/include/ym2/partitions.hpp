#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "exact.hpp"

namespace ym2 {

// Integer partition: strictly positive, non-increasing parts.
using Partition = std::vector<int>;

inline int psize(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }
inline int plen(const Partition& p) { return static_cast<int>(p.size()); }

// Multiplicity of part i.
inline int pmult(const Partition& p, int i) {
    return static_cast<int>(std::count(p.begin(), p.end(), i));
}

// All partitions of n, lexicographically descending: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> enumerate_partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rest - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Centralizer order z_lambda = prod_i i^{m_i} m_i!.
inline mpz_class z_lambda(const Partition& p) {
    mpz_class z(1);
    int n = psize(p);
    for (int i = 1; i <= n; ++i) {
        int m = pmult(p, i);
        for (int j = 0; j < m; ++j) z *= i;
        for (int j = 2; j <= m; ++j) z *= j;
    }
    return z;
}

inline mpz_class factorial(int n) {
    mpz_class f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Conjugate partition.
inline Partition conjugate(const Partition& p) {
    Partition q;
    if (p.empty()) return q;
    for (int row = 1; row <= p[0]; ++row) {
        int cnt = 0;
        for (int part : p)
            if (part >= row) ++cnt;
        q.push_back(cnt);
    }
    return q;
}

// Hook lengths of all cells, row-major.
inline std::vector<int> hook_lengths(const Partition& p) {
    Partition pc = conjugate(p);
    std::vector<int> h;
    for (int i = 0; i < plen(p); ++i)
        for (int j = 0; j < p[i]; ++j) h.push_back(p[i] - j + pc[j] - i - 1);
    return h;
}

// Sum of cell contents j-i.
inline long content_sum(const Partition& p) {
    long s = 0;
    for (int i = 0; i < plen(p); ++i)
        for (int j = 0; j < p[i]; ++j) s += j - i;
    return s;
}

// Contents of all cells, row-major.
inline std::vector<int> contents(const Partition& p) {
    std::vector<int> cs;
    for (int i = 0; i < plen(p); ++i)
        for (int j = 0; j < p[i]; ++j) cs.push_back(j - i);
    return cs;
}

// Irrep dimension by hook length formula.
inline mpz_class hook_dimension(const Partition& p) {
    mpz_class num = factorial(psize(p));
    for (int h : hook_lengths(p)) num /= h;
    return num;
}

// E_lambda(X) = prod over cells (X + content); the polynomial with s_lambda(1^N)=E_lambda(N)/H_lambda.
inline Poly content_poly(const Partition& p) {
    Poly e(Rat(1));
    for (int c : contents(p)) e = e * Poly(std::vector<Rat>{Rat(c), Rat(1)});
    return e;
}

}  // namespace ym2
