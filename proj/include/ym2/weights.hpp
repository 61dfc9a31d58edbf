#pragma once

#include <vector>

#include "exact.hpp"
#include "partitions.hpp"

namespace ym2 {

/**
 * Highest weights of U(N): non-increasing integer vectors of length N.
 * SU(N) weights are translation classes modulo the constant vector; the
 * canonical representative has its entry at position floor((N-1)/2)+1
 * equal to zero.
 */
struct HighestWeight {
    std::vector<long> e;  // non-increasing

    int N() const { return static_cast<int>(e.size()); }

    bool valid() const {
        for (size_t i = 0; i + 1 < e.size(); ++i)
            if (e[i] < e[i + 1]) return false;
        return true;
    }

    friend bool operator==(const HighestWeight& a, const HighestWeight& b) { return a.e == b.e; }
    friend bool operator<(const HighestWeight& a, const HighestWeight& b) { return a.e < b.e; }
};

inline HighestWeight zero_weight(int N) { return {std::vector<long>(static_cast<size_t>(N), 0)}; }

// rho_i = (N+1-2i)/2, stored as exact half-integers on demand.
inline Rat rho_entry(int N, int i /*1-based*/) { return rat(N + 1 - 2 * i, 2); }

// d_alpha = V(alpha+rho)/V(rho), invariant under adding 1_N.
inline Rat weyl_dimension(const HighestWeight& a) {
    int N = a.N();
    Rat d(1);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            d *= rat(a.e[i] - a.e[j] + j - i, j - i);
        }
    return d;
}

// c_alpha (star=false) or the translation-invariant c*_alpha (star=true):
//   N c_alpha  = |alpha+rho|^2 - |rho|^2,
//   N c*_alpha = |centered(alpha+rho)|^2 - |rho|^2.
inline Rat casimir(const HighestWeight& a, bool star) {
    int N = a.N();
    std::vector<Rat> v(static_cast<size_t>(N));
    Rat sum(0);
    for (int i = 0; i < N; ++i) {
        v[i] = Rat(a.e[i]) + rho_entry(N, i + 1);
        sum += v[i];
    }
    Rat c(0);
    if (star) {
        Rat mean = sum / N;
        for (auto& x : v) c += (x - mean) * (x - mean);
    } else {
        for (auto& x : v) c += x * x;
    }
    for (int i = 1; i <= N; ++i) c -= rho_entry(N, i) * rho_entry(N, i);
    return c / N;
}

// The centering value c(alpha) = alpha at position floor((N-1)/2)+1.
inline long centering(const HighestWeight& a) { return a.e[static_cast<size_t>((a.N() - 1) / 2)]; }

struct WeightDecomposition {
    int size;
    Partition lambda, mu;
    long c;
};

// alpha = [lambda(alpha), mu(alpha)]_N + c(alpha) 1_N with |alpha| = |lambda|+|mu|.
inline WeightDecomposition size_and_decomposition(const HighestWeight& a) {
    int N = a.N();
    long c = centering(a);
    int p = (N - 1) / 2;  // lambda read off the first p entries
    Partition lambda, mu;
    for (int i = 0; i < p; ++i)
        if (a.e[i] - c > 0) lambda.push_back(static_cast<int>(a.e[i] - c));
    for (int i = N - 1; i >= p + 1; --i)
        if (c - a.e[i] > 0) mu.push_back(static_cast<int>(c - a.e[i]));
    std::sort(lambda.rbegin(), lambda.rend());
    std::sort(mu.rbegin(), mu.rend());
    return {psize(lambda) + psize(mu), lambda, mu, c};
}

// [lambda,mu]_N: lambda at the top, -mu reversed at the bottom, zeros between.
inline HighestWeight make_weight(const Partition& lambda, const Partition& mu, int N) {
    if (plen(lambda) + plen(mu) > N)
        throw std::domain_error("make_weight: l(lambda)+l(mu) > N");
    HighestWeight a = zero_weight(N);
    for (int i = 0; i < plen(lambda); ++i) a.e[i] = lambda[i];
    for (int i = 0; i < plen(mu); ++i) a.e[static_cast<size_t>(N - 1 - i)] = -mu[i];
    return a;
}

inline int weight_size(const HighestWeight& a) { return size_and_decomposition(a).size; }

// All alpha +/- omega_i that stay non-increasing.
inline std::vector<HighestWeight> pieri_neighbors(const HighestWeight& a, bool up) {
    std::vector<HighestWeight> out;
    for (int i = 0; i < a.N(); ++i) {
        HighestWeight b = a;
        b.e[i] += up ? 1 : -1;
        if (b.valid()) out.push_back(b);
    }
    return out;
}

// Gap coordinates omega_l = alpha_l - alpha_{l+1}, l = 1..N-1.
inline std::vector<long> gaps(const HighestWeight& a) {
    std::vector<long> w;
    for (int i = 0; i + 1 < a.N(); ++i) w.push_back(a.e[i] - a.e[i + 1]);
    return w;
}

}  // namespace ym2
