#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "partitions.hpp"

namespace ym2 {

/**
 * Symmetric-group character tables by Murnaghan-Nakayama recursion,
 * memoized per degree n and immutable after construction.
 *
 * Row/column order follows enumerate_partitions (lexicographically
 * descending), so the first row is the trivial representation.
 */
class CharacterTable {
public:
    int n;
    std::vector<Partition> parts;           // both irrep and class labels
    std::vector<std::vector<mpz_class>> chi;  // chi[irrep][class]
    std::vector<mpz_class> class_size;

    explicit CharacterTable(int degree) : n(degree) {
        parts = enumerate_partitions(n);
        size_t k = parts.size();
        chi.assign(k, std::vector<mpz_class>(k, 0));
        class_size.resize(k);
        mpz_class nf = factorial(n);
        for (size_t j = 0; j < k; ++j) class_size[j] = nf / z_lambda(parts[j]);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) chi[i][j] = mn(parts[i], parts[j], 0);
    }

    int index_of(const Partition& p) const {
        for (size_t i = 0; i < parts.size(); ++i)
            if (parts[i] == p) return static_cast<int>(i);
        throw std::domain_error("CharacterTable: unknown partition");
    }

    const mpz_class& value(const Partition& irrep, const Partition& cls) const {
        return chi[index_of(irrep)][index_of(cls)];
    }

    mpz_class dimension(const Partition& irrep) const {
        Partition ones(static_cast<size_t>(n), 1);
        return value(irrep, ones);
    }

private:
    // chi^lambda on a class whose remaining cycle lengths are mu[from..].
    // Border strips removed through the beta-set encoding: replace b by b-k,
    // sign (-1)^{#elements strictly between}.
    static mpz_class mn(const Partition& lambda, const Partition& mu, size_t from) {
        if (from == mu.size()) return lambda.empty() ? 1 : 0;
        if (lambda.empty()) return 0;
        int k = mu[from];
        int L = plen(lambda);
        std::vector<int> beta(L);
        for (int i = 0; i < L; ++i) beta[i] = lambda[i] + (L - 1 - i);
        mpz_class total = 0;
        for (int i = 0; i < L; ++i) {
            int nb = beta[i] - k;
            if (nb < 0) continue;
            if (std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
            int between = 0;
            for (int j = 0; j < L; ++j)
                if (beta[j] > nb && beta[j] < beta[i]) ++between;
            std::vector<int> nbeta = beta;
            nbeta[i] = nb;
            std::sort(nbeta.rbegin(), nbeta.rend());
            Partition next;
            for (int t = 0; t < L; ++t) {
                int part = nbeta[t] - (L - 1 - t);
                if (part > 0) next.push_back(part);
            }
            mpz_class sub = mn(next, mu, from + 1);
            total += (between % 2 == 0) ? sub : -sub;
        }
        return total;
    }
};

// Process-wide memoized tables.
inline const CharacterTable& character_table(int n) {
    static std::map<int, CharacterTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, CharacterTable(n)).first;
    return it->second;
}

inline mpz_class character_value(const Partition& lambda, const Partition& mu) {
    if (psize(lambda) != psize(mu))
        throw std::domain_error("character_value: |lambda| != |mu|");
    return character_table(psize(lambda)).value(lambda, mu);
}

// Littlewood-Richardson coefficient as the branching inner product
//   c^lambda_{mu nu} = < chi^lambda |_{S_{|mu|} x S_{|nu|}}, chi^mu chi^nu >.
inline mpz_class littlewood_richardson(const Partition& lambda, const Partition& mu,
                                       const Partition& nu) {
    int a = psize(mu), b = psize(nu);
    if (psize(lambda) != a + b)
        throw std::domain_error("littlewood_richardson: |lambda| != |mu|+|nu|");
    const CharacterTable& ta = character_table(a);
    const CharacterTable& tb = character_table(b);
    const CharacterTable& tl = character_table(a + b);
    mpq_class acc(0);
    for (size_t i = 0; i < ta.parts.size(); ++i) {
        for (size_t j = 0; j < tb.parts.size(); ++j) {
            // Union cycle type of (class i of S_a, class j of S_b).
            Partition joint = ta.parts[i];
            joint.insert(joint.end(), tb.parts[j].begin(), tb.parts[j].end());
            std::sort(joint.rbegin(), joint.rend());
            mpq_class term(ta.class_size[i] * tb.class_size[j]);
            term *= tl.value(lambda, joint) * ta.chi[ta.index_of(mu)][i] *
                    tb.chi[tb.index_of(nu)][j];
            acc += term;
        }
    }
    acc /= mpq_class(factorial(a) * factorial(b));
    if (acc.get_den() != 1) throw std::logic_error("littlewood_richardson: non-integer");
    return acc.get_num();
}

}  // namespace ym2
