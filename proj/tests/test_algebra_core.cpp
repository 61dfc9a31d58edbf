#include <doctest.h>

#include <random>

#include "ym2/characters.hpp"
#include "ym2/exact.hpp"
#include "ym2/partitions.hpp"

using namespace ym2;

TEST_CASE("partition enumeration") {
    CHECK(enumerate_partitions(0).size() == 1);
    CHECK(enumerate_partitions(0)[0].empty());
    CHECK(enumerate_partitions(4).size() == 5);
    CHECK(enumerate_partitions(10).size() == 42);
    // lexicographically descending, each exactly once
    auto ps = enumerate_partitions(7);
    for (size_t i = 0; i + 1 < ps.size(); ++i) CHECK(ps[i] > ps[i + 1]);
    for (const auto& p : ps) {
        CHECK(psize(p) == 7);
        for (size_t i = 0; i + 1 < p.size(); ++i) CHECK(p[i] >= p[i + 1]);
    }
}

TEST_CASE("z_lambda") {
    CHECK(z_lambda(Partition{1, 1, 1, 1}) == 24);
    CHECK(z_lambda(Partition{5}) == 5);
    CHECK(z_lambda(Partition{2, 2, 1}) == 8);
}

TEST_CASE("character values") {
    // trivial and sign representations
    for (int n = 1; n <= 6; ++n) {
        const auto& t = character_table(n);
        Partition triv{n};
        Partition sign(static_cast<size_t>(n), 1);
        for (const auto& mu : t.parts) {
            CHECK(character_value(triv, mu) == 1);
            int expect = ((n - plen(mu)) % 2 == 0) ? 1 : -1;
            CHECK(character_value(sign, mu) == expect);
        }
    }
    CHECK(character_value(Partition{2, 1}, Partition{3}) == -1);
    CHECK(character_value(Partition{2, 1}, Partition{1, 1, 1}) == 2);
    CHECK(character_value(Partition{2, 1}, Partition{2, 1}) == 0);
}

TEST_CASE("character orthogonality and hook dimensions") {
    for (int n = 1; n <= 7; ++n) {
        const auto& t = character_table(n);
        mpz_class nf = factorial(n);
        for (size_t a = 0; a < t.parts.size(); ++a) {
            for (size_t b = a; b < t.parts.size(); ++b) {
                mpz_class s = 0;
                for (size_t j = 0; j < t.parts.size(); ++j)
                    s += t.chi[a][j] * t.chi[b][j] * t.class_size[j];
                CHECK(s == (a == b ? nf : mpz_class(0)));
            }
            CHECK(t.dimension(t.parts[a]) == hook_dimension(t.parts[a]));
        }
    }
}

TEST_CASE("littlewood-richardson") {
    CHECK(littlewood_richardson(Partition{2, 1}, Partition{2, 1}, Partition{}) == 1);
    CHECK(littlewood_richardson(Partition{2, 1}, Partition{2}, Partition{1}) == 1);
    CHECK(littlewood_richardson(Partition{3}, Partition{1, 1}, Partition{1}) == 0);
    // symmetry c^lambda_{mu nu} = c^lambda_{nu mu} across |lambda| = 5
    for (const auto& lam : enumerate_partitions(5))
        for (int a = 0; a <= 5; ++a)
            for (const auto& mu : enumerate_partitions(a))
                for (const auto& nu : enumerate_partitions(5 - a))
                    CHECK(littlewood_richardson(lam, mu, nu) ==
                          littlewood_richardson(lam, nu, mu));
}

TEST_CASE("exact scalar field laws") {
    std::mt19937 rng(12345);
    auto rnd = [&]() {
        // random small ratfun in N
        std::uniform_int_distribution<int> d(-4, 4);
        Poly num(std::vector<Rat>{rat(d(rng)), rat(d(rng)), rat(d(rng))});
        Poly den(std::vector<Rat>{rat(d(rng)), rat(d(rng)), Rat(1)});
        return ExactScalar(num, den);
    };
    for (int it = 0; it < 50; ++it) {
        ExactScalar a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == ExactScalar(1));
        // specialize is a ring morphism where defined
        Rat n0(7);
        try {
            Rat lhs = (a * b + c).specialize(n0);
            Rat rhs = a.specialize(n0) * b.specialize(n0) + c.specialize(n0);
            CHECK(lhs == rhs);
        } catch (const std::domain_error&) {
            // denominator vanished at 7; the error is the contract
        }
    }
    ExactScalar nn = ExactScalar::N();
    CHECK((nn - nn) == ExactScalar(0));
    CHECK(((nn * nn - ExactScalar(1)) / (nn - ExactScalar(1))).num().degree() == 1);
    CHECK_THROWS_AS(ExactScalar(Poly(Rat(1)), Poly(std::vector<Rat>{Rat(-2), Rat(1)}))
                        .specialize(Rat(2)),
                    std::domain_error);
}
