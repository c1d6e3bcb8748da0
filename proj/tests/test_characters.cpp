#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "divvar/characters.hpp"

using namespace divvar;

namespace {

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

// Value tables of all characters mod an odd prime p, built from a primitive
// root found by brute force.
std::vector<std::vector<cplx>> prime_tables(u64 p) {
    u64 g = 2;
    for (;; ++g) {
        bool ok = true;
        u64 x = 1;
        for (u64 i = 1; i < p - 1; ++i) {
            x = x * g % p;
            if (x == 1) ok = false;
        }
        if (ok) break;
    }
    std::vector<u64> dlog(p, 0);
    for (u64 m = 0; m < p - 1; ++m) dlog[powmod(g, m, p)] = m;
    std::vector<std::vector<cplx>> out;
    for (u64 j = 0; j < p - 1; ++j) {
        std::vector<cplx> t(p, 0.0);
        for (u64 a = 1; a < p; ++a) {
            t[a] = std::polar(1.0, 2.0 * std::numbers::pi * double(j * dlog[a] % (p - 1)) / double(p - 1));
        }
        out.push_back(t);
    }
    return out;
}

bool same_table(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("group structure") {
    CHECK_THROWS_AS(character_group(0), std::invalid_argument);
    CHECK_THROWS(character_group(kMaxCharacterModulus + 1));
    for (u64 d = 1; d <= 300; ++d) {
        const auto g = character_group(d);
        u64 prod = 1;
        for (const auto& c : g->components()) prod *= c.order;
        CHECK(prod == euler_phi(d));
        CHECK(g->size() == euler_phi(d));
        CHECK(enumerate_characters(d).size() == euler_phi(d));
    }
    const auto g8 = character_group(8);
    CHECK(g8->components().size() == 2);
    const auto g16 = character_group(16);
    CHECK(g16->exponent() == 4);
}

TEST_CASE("characters mod a prime match a brute-force construction") {
    for (u64 p : {3, 5, 7, 11, 13, 101}) {
        const auto want = prime_tables(p);
        const auto got = enumerate_characters(p);
        REQUIRE(got.size() == want.size());
        for (const auto& chi : got) {
            const auto t = chi.value_table();
            CHECK(std::any_of(want.begin(), want.end(), [&](const auto& w) { return same_table(t, w); }));
        }
    }
}

TEST_CASE("character values") {
    for (u64 d : {1, 2, 4, 8, 9, 12, 16, 24, 45, 64, 105}) {
        for (const auto& chi : enumerate_characters(d)) {
            CHECK(std::abs(chi(1) - 1.0) < 1e-12);
            for (u64 n = 0; n < 2 * d; ++n) {
                CHECK((std::abs(chi(static_cast<i64>(n))) < 1e-12) == (gcd(n, d) != 1));
                CHECK(std::abs(chi(static_cast<i64>(n)) - chi(static_cast<i64>(n + d))) < 1e-12);
            }
            for (u64 m = 1; m < d; ++m) {
                for (u64 n = 1; n < d; ++n) {
                    const cplx lhs = chi(static_cast<i64>(m * n));
                    CHECK(std::abs(lhs - chi(static_cast<i64>(m)) * chi(static_cast<i64>(n))) < 1e-12);
                }
            }
            CHECK(std::abs(chi(-1) - (chi.parity() ? -1.0 : 1.0)) < 1e-12);
        }
    }
}

TEST_CASE("conductors") {
    auto conductors = [](u64 d) {
        std::vector<u64> c;
        for (const auto& chi : enumerate_characters(d)) c.push_back(chi.conductor());
        std::sort(c.begin(), c.end());
        return c;
    };
    CHECK(conductors(8) == std::vector<u64>{1, 4, 8, 8});
    CHECK(conductors(12) == std::vector<u64>{1, 3, 4, 12});
    CHECK(conductors(9) == std::vector<u64>{1, 3, 9, 9, 9, 9});
    CHECK(enumerate_primitive(12).size() == 1);
    CHECK(enumerate_primitive(2).empty());
    CHECK(enumerate_primitive(1).size() == 1);
    for (u64 q = 1; q <= 200; ++q) CHECK(enumerate_primitive(q).size() == phi_star(q));
}

TEST_CASE("induction") {
    const auto chi = enumerate_primitive(4).front();
    const auto up = induce(chi, 12);
    CHECK(up.modulus() == 12);
    CHECK(up.conductor() == 4);
    for (i64 n = 0; n < 12; ++n) {
        const cplx want = gcd(static_cast<u64>(n), 12) == 1 ? chi(n) : cplx(0.0);
        CHECK(std::abs(up(n) - want) < 1e-12);
    }
    CHECK_THROWS_AS(induce(chi, 10), std::invalid_argument);

    for (u64 d : {30, 36, 40, 63, 200}) {
        std::vector<DirichletCharacter> seen;
        for (u64 q : divisors(d)) {
            if (q == 1) continue;
            for (const auto& c1 : enumerate_primitive(q)) {
                const auto c = induce(c1, d);
                CHECK_FALSE(c.is_principal());
                CHECK(std::find(seen.begin(), seen.end(), c) == seen.end());
                seen.push_back(c);
            }
        }
        CHECK(seen.size() == euler_phi(d) - 1);
    }
}

TEST_CASE("full orthogonality") {
    for (u64 d : {5, 8, 12, 15, 16, 60}) {
        const auto chars = enumerate_characters(d);
        for (u64 m = 1; m < d; ++m) {
            for (u64 n = 1; n < d; ++n) {
                if (gcd(m, d) != 1 || gcd(n, d) != 1) continue;
                cplx s = 0.0;
                for (const auto& chi : chars) s += chi(static_cast<i64>(m)) * std::conj(chi(static_cast<i64>(n)));
                CHECK(std::abs(s - (m == n ? double(euler_phi(d)) : 0.0)) < 1e-9);
            }
        }
    }
}

TEST_CASE("primitive orthogonality") {
    CHECK(primitive_orthogonality_sum(7, 1, 1) == doctest::Approx(5.0));
    CHECK_THROWS(primitive_orthogonality_sum(6, 2, 1));
    std::mt19937_64 rng(9);
    for (u64 q = 2; q <= 100; ++q) {
        for (int i = 0; i < 20; ++i) {
            i64 m, n;
            do m = static_cast<i64>(rng() % q); while (gcd(static_cast<u64>(m), q) != 1);
            do n = static_cast<i64>(rng() % q); while (gcd(static_cast<u64>(n), q) != 1);
            CHECK(std::abs(primitive_orthogonality_brute(q, m, n) - primitive_orthogonality_sum(q, m, n)) < 1e-9);
        }
    }
}

TEST_CASE("gauss sums") {
    for (u64 q = 1; q <= 50; ++q) {
        for (const auto& chi : enumerate_primitive(q)) CHECK(std::norm(gauss_sum(chi)) == doctest::Approx(double(q)).epsilon(1e-12));
    }
    // Principal character mod p: sum of primitive p-th roots of unity = -1.
    CHECK(std::abs(gauss_sum(character_group(5)->principal()) - cplx(-1.0)) < 1e-12);
    // Quadratic character mod 5: tau = sqrt(5).
    for (const auto& chi : enumerate_characters(5)) {
        if (chi.order() == 2) CHECK(std::abs(gauss_sum(chi) - cplx(std::sqrt(5.0))) < 1e-12);
    }
}

TEST_CASE("discrete logs round-trip") {
    for (u64 d : {2, 4, 8, 32, 27, 50, 97, 360, 1000}) {
        const auto g = character_group(d);
        std::vector<u64> logs(g->components().size());
        for (u64 a = 0; a < d; ++a) {
            const bool unit = g->logs(static_cast<i64>(a), logs);
            CHECK(unit == (gcd(a, d) == 1));
            if (!unit) continue;
            u64 back = 1 % d;
            for (std::size_t i = 0; i < logs.size(); ++i) back = back * powmod(g->components()[i].generator, logs[i], d) % d;
            CHECK(back == a);
        }
    }
}
