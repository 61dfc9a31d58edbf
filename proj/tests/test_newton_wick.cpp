#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "ym2/newton_wick.hpp"

using namespace ym2;

namespace {

using MonKey = std::pair<Partition, Partition>;
using MonMap = std::map<MonKey, Rat>;

MonMap to_map(const std::vector<PowerSumMonomial>& mons) {
    MonMap out;
    for (const auto& mon : mons) {
        out[{mon.lambda, mon.mu}] += mon.coeff;
        if (out[{mon.lambda, mon.mu}] == 0) out.erase({mon.lambda, mon.mu});
    }
    return out;
}

Partition join(Partition a, const Partition& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.rbegin(), a.rend());
    return a;
}

MonMap mon_mul(const MonMap& a, const MonMap& b) {
    MonMap out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            MonKey k{join(ka.first, kb.first), join(ka.second, kb.second)};
            out[k] += ca * cb;
            if (out[k] == 0) out.erase(k);
        }
    return out;
}

std::vector<std::pair<Partition, Partition>> pair_range(int max_total) {
    std::vector<std::pair<Partition, Partition>> out;
    for (int a = 0; a <= max_total; ++a)
        for (const auto& lam : enumerate_partitions(a))
            for (int b = 0; b + a <= max_total; ++b)
                for (const auto& mu : enumerate_partitions(b)) out.push_back({lam, mu});
    return out;
}

// <f, g> = integral of f * conj(g) over the Haar measure, via haar_moment
Rat inner_product(const MonMap& f, const MonMap& g, int N) {
    Rat acc(0);
    for (const auto& [kf, cf] : f)
        for (const auto& [kg, cg] : g) {
            Rat h = haar_moment(join(kf.first, kg.second), join(kf.second, kg.first), N)
                        .to_rat();
            if (h != 0) acc += cf * cg * h;
        }
    return acc;
}

std::vector<Cx> random_spectrum(int N, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(0.0, 2 * M_PI);
    std::vector<Cx> z;
    for (int i = 0; i < N; ++i) z.push_back(std::polar(1.0, d(rng)));
    return z;
}

}  // namespace

TEST_CASE("haar moments") {
    for (int N = 1; N <= 4; ++N) CHECK(haar_moment({1}, {1}, N) == ExactScalar(1));
    CHECK(haar_moment({2}, {1, 1}, 5) == ExactScalar(0));
    CHECK(haar_moment({2}, {2}, 5) == ExactScalar(2));
    CHECK(haar_moment({2}, {1}, 5) == ExactScalar(0));
    // delta z_lambda in the stable range
    for (int d = 0; d <= 4; ++d)
        for (const auto& lam : enumerate_partitions(d))
            for (const auto& mu : enumerate_partitions(d)) {
                Rat expect = (lam == mu) ? Rat(z_lambda(lam)) : Rat(0);
                CHECK(haar_moment(lam, mu, 5).to_rat() == expect);
            }
    // below the stable range the character route deviates from delta z
    CHECK(haar_moment({1, 1, 1}, {1, 1, 1}, 2).to_rat() == 5);
}

TEST_CASE("haar moment matches brute-force Weingarten integration at N=3") {
    for (int d = 1; d <= 3; ++d)
        for (const auto& lam : enumerate_partitions(d))
            for (const auto& mu : enumerate_partitions(d))
                CHECK(haar_moment(lam, mu, 3).to_rat() == brute_haar_moment(lam, mu, 3));
}

TEST_CASE("wick expansion examples") {
    auto e = to_map(wick_newton({1}, {1}));
    REQUIRE(e.size() == 2);
    CHECK(e.at({{1}, {1}}) == 1);
    CHECK(e.at({{}, {}}) == -1);

    for (int d = 0; d <= 4; ++d)
        for (const auto& lam : enumerate_partitions(d)) {
            auto f = to_map(wick_newton(lam, {}));
            REQUIRE(f.size() == 1);
            CHECK(f.at({lam, {}}) == 1);
        }
}

TEST_CASE("wick expansion factorizes over part sizes") {
    for (const auto& [lam, mu] : pair_range(6)) {
        if (psize(lam) > 3 || psize(mu) > 3) continue;
        MonMap prod{{{{}, {}}, Rat(1)}};
        int top = 0;
        for (int v : lam) top = std::max(top, v);
        for (int v : mu) top = std::max(top, v);
        for (int i = 1; i <= top; ++i)
            prod = mon_mul(prod, to_map(wick_single(i, pmult(lam, i), pmult(mu, i))));
        CHECK(prod == to_map(wick_newton(lam, mu)));
    }
}

TEST_CASE("hierarchy: lower-order terms drop total degree by at least two") {
    for (const auto& [lam, mu] : pair_range(6)) {
        int total = psize(lam) + psize(mu);
        for (const auto& mon : to_map(wick_newton(lam, mu))) {
            int deg = psize(mon.first.first) + psize(mon.first.second);
            if (mon.first.first == lam && mon.first.second == mu) {
                CHECK(mon.second == 1);
            } else {
                CHECK(deg <= total - 2);
            }
            CHECK((total - deg) % 2 == 0);
        }
    }
}

TEST_CASE("orthogonality of the p_{[lambda,mu]} family at N=5") {
    auto pairs = pair_range(4);
    std::vector<MonMap> expansions;
    for (const auto& [lam, mu] : pairs) expansions.push_back(to_map(wick_newton(lam, mu)));
    for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = a; b < pairs.size(); ++b) {
            Rat got = inner_product(expansions[a], expansions[b], 5);
            Rat expect(0);
            if (pairs[a] == pairs[b])
                expect = Rat(z_lambda(pairs[a].first)) * Rat(z_lambda(pairs[a].second));
            CHECK(got == expect);
        }
}

TEST_CASE("generalized Frobenius basics") {
    std::mt19937 rng(11);
    auto z = random_spectrum(5, rng);
    Cx p1(0);
    for (const auto& v : z) p1 += v;
    CHECK(std::abs(generalized_frobenius({1}, {}, z) - p1) < 1e-12);

    std::vector<Cx> ones(4, Cx(1.0));
    CHECK(std::abs(generalized_frobenius({1}, {1}, ones) - Cx(15.0)) < 1e-10);
}

TEST_CASE("generalized Frobenius equals dimension at the identity spectrum") {
    for (int N = 4; N <= 5; ++N) {
        std::vector<Cx> ones(static_cast<size_t>(N), Cx(1.0));
        for (const auto& [lam, mu] : pair_range(4)) {
            double dim = weyl_dimension(make_weight(lam, mu, N)).get_d();
            CHECK(std::abs(generalized_frobenius(lam, mu, ones) - Cx(dim)) <
                  1e-8 * std::max(1.0, dim));
        }
    }
}

TEST_CASE("generalized Frobenius matches the Weyl alternant ratio") {
    std::mt19937 rng(23);
    auto z = random_spectrum(4, rng);
    CHECK(std::abs(generalized_frobenius({2}, {1}, z) - weyl_character({2}, {1}, 4, z)) <
          1e-10);
    for (int it = 0; it < 5; ++it) {
        auto w = random_spectrum(4, rng);
        for (const auto& [lam, mu] : pair_range(4))
            CHECK(std::abs(generalized_frobenius(lam, mu, w) -
                           weyl_character(lam, mu, 4, w)) < 1e-9);
    }
}

TEST_CASE("coincident spectra handled by documented jitter") {
    std::vector<Cx> z{Cx(1.0), std::polar(1.0, 1.1), std::polar(1.0, 1.1),
                      std::polar(1.0, 2.7)};
    std::vector<Cx> jit = z;
    for (size_t i = 0; i < jit.size(); ++i)
        jit[i] *= std::polar(1.0, 1e-6 * static_cast<double>(i));
    for (const auto& [lam, mu] : pair_range(3))
        CHECK(std::abs(generalized_frobenius(lam, mu, z) -
                       weyl_character(lam, mu, 4, jit)) < 1e-4);
}

TEST_CASE("spectrum shorter than the tensor degree is rejected") {
    std::vector<Cx> z{Cx(1.0), Cx(-1.0)};
    CHECK_THROWS_AS(generalized_frobenius({2}, {1}, z), std::domain_error);
}

TEST_CASE("Gaussian formula for Omega") {
    BrauerElement expect(1, 0);
    expect.add(identity_diagram(1, 0), ExactScalar::N());
    CHECK(omega_gaussian(1, 0) == expect);

    auto w = omega_gaussian(1, 1);
    auto id11 = identity_diagram(1, 1);
    CHECK(w.terms.at(id11) == ExactScalar::N() * ExactScalar::N() - ExactScalar(1));

    for (int n = 0; n <= 4; ++n)
        for (int m = 0; n + m <= 4; ++m) {
            if (n + m == 0) continue;
            CHECK(omega_gaussian(n, m) == omega_mixed(n, m));
        }
}

TEST_CASE("trace character identity on traceless tensors at N=3") {
    const int N = 3;
    std::vector<std::pair<Partition, Partition>> cases{
        {{1}, {1}}, {{2}, {1}}, {{1, 1}, {1}}, {{2}, {}}, {{3}, {}}, {{2, 1}, {}}};
    std::mt19937 rng(5);
    for (const auto& [lam, mu] : cases) {
        int n = psize(lam), m = psize(mu);
        BrauerElement chi_elem(n, m);
        for (const auto& alpha : all_perms(n))
            for (const auto& beta : all_perms(m)) {
                mpz_class chi =
                    character_value(lam, cycle_type(alpha)) * character_value(mu, cycle_type(beta));
                if (chi != 0)
                    chi_elem.add(permutation_diagram(n, m, alpha, beta), ExactScalar(Rat(chi)));
            }
        auto M = rho_matrix(traceless_projector(n, m) * chi_elem, N);
        auto z = random_spectrum(N, rng);
        Cx tr(0);
        long dim = 1;
        for (int t = 0; t < n + m; ++t) dim *= N;
        for (long i = 0; i < dim; ++i) {
            if (M[static_cast<size_t>(i)][static_cast<size_t>(i)] == 0) continue;
            Cx diag(1.0);
            long rr = i;
            for (int t = 0; t < n + m; ++t) {
                Cx zt = z[static_cast<size_t>(rr % N)];
                diag *= (t < n) ? zt : std::conj(zt);
                rr /= N;
            }
            tr += M[static_cast<size_t>(i)][static_cast<size_t>(i)].get_d() * diag;
        }
        Cx expect = Cx(mpq_class(factorial(n) * factorial(m)).get_d()) *
                    generalized_frobenius(lam, mu, z);
        CHECK(std::abs(tr - expect) < 1e-8);
    }
}
