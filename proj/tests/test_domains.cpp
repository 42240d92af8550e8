#include "test_util.hpp"

using namespace smlorbit;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
    Rationals Q;
    auto a = Q.from_rational(mpq_class(2, 4));
    CHECK(a.get_num() == 1);
    CHECK(a.get_den() == 2);
    auto b = Q.inv(Q.from_int(-3));
    CHECK(b.get_den() == 3);
    CHECK(b.get_num() == -1);
}

TEST_CASE("prime field inverses and rational reduction") {
    PrimeField F7{7};
    for (std::int64_t a = 1; a < 7; ++a) CHECK(F7.mul(a, F7.inv(a)) == 1);
    PrimeField F5{5};
    CHECK(F5.from_rational(mpq_class(1, 2)) == 3); // 2*3 = 6 = 1
    CHECK_THROWS_AS(F5.from_rational(mpq_class(1, 5)), BadPrime);
    CHECK_THROWS_AS(PrimeField{6}, ValidationError);
}

TEST_CASE("residue ring valuations are exact and capped") {
    PadicRing R(5, 6);
    CHECK(R.valuation_floor(R.from_int(50)) == 2);
    CHECK(R.valuation_floor(R.from_int(0)) == 6);
    CHECK(R.valuation_floor(R.from_int(3)) == 0);
    CHECK(R.exact_div_pow(R.from_int(250), 3) == 2);
    CHECK_THROWS_AS(R.exact_div_pow(R.from_int(251), 3), InternalDefect);
    CHECK_THROWS_AS(R.from_rational(mpq_class(1, 10)), BadPrime);
}

TEST_CASE("valuation floor of a product is at least the sum of floors") {
    PadicRing R(5, 8);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; ++i) {
        auto a = R.reduce_z(mpz_class(static_cast<long>(rng() % 1000000)));
        auto b = R.reduce_z(mpz_class(static_cast<long>(rng() % 1000000)));
        int va = R.valuation_floor(a), vb = R.valuation_floor(b);
        int vab = R.valuation_floor(R.mul(a, b));
        CHECK(vab >= std::min(va + vb, 8));
    }
}

TEST_CASE("rational function field over F2 behaves like a field") {
    RationalFunctionField K(2);
    auto t = *K.symbol("t");
    auto one = K.one();
    CHECK(K.is_zero(K.add(one, one))); // characteristic 2
    CHECK(K.eq(K.mul(t, K.inv(t)), one));
    // in char 2, (t^2 + 1)/(t + 1) = t + 1
    auto t2p1 = K.add(K.mul(t, t), one);
    auto tp1 = K.add(t, one);
    auto q = K.mul(t2p1, K.inv(tp1));
    CHECK(K.eq(q, tp1));
}

TEST_CASE("rational function coefficients round-trip through the printer") {
    RationalFunctionField K5(5);
    auto R = make_ring<RationalFunctionField>(K5, {"x"});
    for (const char* s : {"t*x", "(t + 1)*x + 2", "x/t", "(t^2 + 4*t)/(t + 3)*x^2 + t"}) {
        auto p = parse_poly<RationalFunctionField>(s, R);
        auto q = parse_poly<RationalFunctionField>(p.str(), R);
        CHECK(p.equals(q));
    }
}

TEST_CASE("integers refuse non-integral coefficients") {
    Integers Z;
    CHECK_THROWS_AS(Z.from_rational(mpq_class(1, 2)), ValidationError);
    CHECK(Z.from_rational(mpq_class(8, 4)) == 2);
}
