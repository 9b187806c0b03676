#include <doctest.h>

#include <cmath>

#include "betaexp/algebra.hpp"
#include "betaexp/errors.hpp"
#include "oracles.hpp"

using namespace betaexp;

TEST_CASE("multinacci values")
{
    CHECK(multinacci_value(1) == doctest::Approx(oracle::kGolden).epsilon(1e-15));
    CHECK(multinacci_value(2) == doctest::Approx(oracle::kTribonacci).epsilon(1e-15));
    CHECK(std::abs(IntegerPolynomial::multinacci(2).evaluate(multinacci_value(2))) < 1e-12);
    CHECK(2.0 - multinacci_value(30) < 1e-6);
    double prev = 1.0;
    for (int k = 1; k <= 30; ++k) {
        const double v = multinacci_value(k);
        CHECK(v > prev);
        CHECK(v < 2.0);
        prev = v;
    }
    const auto base = multinacci_base(3);
    REQUIRE(base.provenance().has_value());
    CHECK(base.provenance()->polynomial == IntegerPolynomial::multinacci(3));
    CHECK_THROWS_AS(multinacci_value(0), DomainError);
}

TEST_CASE("classification table")
{
    const auto sqrt2 = classify(IntegerPolynomial::parse("1,0,-2"));
    CHECK(sqrt2.garsia == Verdict::yes);
    REQUIRE(sqrt2.root_in_unit_band.has_value());
    CHECK(*sqrt2.root_in_unit_band == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(sqrt2.conjugate_moduli.size() == 1);
    CHECK(sqrt2.conjugate_moduli[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sqrt2.pisot == Verdict::no);

    const auto phi = classify(IntegerPolynomial::parse("1,-1,-1"));
    CHECK(phi.multinacci_order == 1);
    CHECK(phi.pisot == Verdict::yes);
    CHECK(phi.garsia == Verdict::no);

    const auto trib = classify(IntegerPolynomial::parse("1,-1,-1,-1"));
    CHECK(trib.multinacci_order == 2);
    CHECK(trib.pisot == Verdict::yes);

    const auto cbrt2 = classify(IntegerPolynomial::parse("1,0,0,-2"));
    CHECK(cbrt2.garsia == Verdict::yes);
    CHECK(*cbrt2.root_in_unit_band == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
    for (double m : cbrt2.conjugate_moduli) CHECK(m == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("reducible and non-Garsia polynomials")
{
    // (x^2 - 2)(x - 3): has a root in (1,2) and norm 6.
    CHECK(classify(IntegerPolynomial({1, -3, -2, 6})).garsia == Verdict::no);
    // (x^2 - x - 1)(x + 2): norm 2 but a conjugate inside the unit disk.
    const auto mixed = classify(IntegerPolynomial({1, 1, -3, -2}));
    CHECK(mixed.garsia == Verdict::no);
    CHECK(mixed.irreducible == Irreducibility::no);
    // x^2 - 3 has no root in (1,2).
    CHECK(classify(IntegerPolynomial({1, 0, -3})).garsia == Verdict::no);
    CHECK_THROWS_AS(classify(IntegerPolynomial({2, 0, -1})), DomainError);
}

TEST_CASE("every multinacci polynomial is Pisot and irreducible")
{
    for (int k = 1; k <= 12; ++k) {
        const auto c = classify(IntegerPolynomial::multinacci(k));
        CHECK(c.pisot == Verdict::yes);
        CHECK(c.multinacci_order == k);
        CHECK(c.irreducible == Irreducibility::yes);
        REQUIRE(c.reference_root.has_value());
        CHECK(*c.reference_root == doctest::Approx(multinacci_value(k)).epsilon(1e-12));
    }
}

TEST_CASE("root moduli multiply to the constant term")
{
    for (const char* text : {"1,0,-2", "1,-1,-1", "1,0,0,-2", "1,-1,-1,-1,-1", "1,2,-3,5,-7", "1,0,0,0,0,-2"}) {
        const auto p = IntegerPolynomial::parse(text);
        const auto c = classify(p);
        double product = 1.0;
        for (const auto& r : c.roots) product *= std::abs(r);
        CHECK(product == doctest::Approx(std::abs(static_cast<double>(p.constant_term()))).epsilon(1e-8));
    }
}

TEST_CASE("classification is deterministic")
{
    const auto p = IntegerPolynomial::parse("1,-1,0,-1,-2");
    const auto a = classify(p);
    const auto b = classify(p);
    CHECK(a.roots == b.roots);
    CHECK(a.garsia == b.garsia);
    CHECK(a.pisot == b.pisot);
    CHECK(a.conjugate_moduli == b.conjugate_moduli);
}

TEST_CASE("irreducibility modulo primes")
{
    CHECK(irreducible_mod_prime(IntegerPolynomial({1, 1, 1}), 2));
    CHECK_FALSE(irreducible_mod_prime(IntegerPolynomial({1, 0, 1}), 2));
    CHECK(irreducible_mod_prime(IntegerPolynomial({1, 0, 1}), 3));
    CHECK_FALSE(irreducible_mod_prime(IntegerPolynomial({1, 0, -2}), 2));
    CHECK_THROWS_AS(irreducible_mod_prime(IntegerPolynomial({2, 0, 1}), 2), DomainError);
}

TEST_CASE("exact division")
{
    const IntegerPolynomial phi({1, -1, -1});
    CHECK(divides(phi, IntegerPolynomial({1, 1, -3, -2})));
    CHECK_FALSE(divides(phi, IntegerPolynomial({1, 0, -2})));
    CHECK(divides(IntegerPolynomial({1, -1}), IntegerPolynomial({1, 0, 0, -1})));
}

TEST_CASE("Thue-Morse and the Komornik-Loreti constant")
{
    const int expected[] = {1, 1, 0, 1, 0, 0, 1, 1};
    for (int n = 1; n <= 8; ++n) CHECK(thue_morse(static_cast<unsigned long long>(n)) == expected[n - 1]);
    const auto t = oracle::thue_morse_prefix(4096);
    for (std::size_t n = 1; n <= 4096; ++n) CHECK(thue_morse(n) == t[n - 1]);

    const double kl8 = komornik_loreti(1e-8);
    CHECK(std::abs(kl8 - 1.78723) < 5e-6);
    const double kl = komornik_loreti();
    CHECK(std::abs(kl - oracle::kKomornikLoreti) < 1e-9);
    CHECK(kl > multinacci_value(1));
    CHECK(kl < 2.0);
    CHECK_THROWS_AS(komornik_loreti(1e-13), DomainError);

    double prev = komornik_loreti_residual(1.01, 1e-16);
    for (double b = 1.02; b < 2.0; b += 0.01) {
        const double f = komornik_loreti_residual(b, 1e-16);
        CHECK(f < prev);
        prev = f;
    }
}
