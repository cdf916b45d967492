#include <catch2/catch_amalgamated.hpp>

#include "ramc/integers.hpp"

using namespace ramc;

TEST_CASE("pow_mod and inv_mod") {
    CHECK(pow_mod(3L, 4L, 81L) == 0);
    CHECK(pow_mod(2L, 10L, 1000L) == 24);
    CHECK(inv_mod(Int(2), Int(9)) == 5);
    CHECK_THROWS(inv_mod(Int(3), Int(9)));
}

TEST_CASE("primes and factorization") {
    auto ps = primes_up_to(30);
    CHECK(ps == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    auto f = factorize(Int(72));
    CHECK(f[Int(2)] == 3);
    CHECK(f[Int(3)] == 2);
    CHECK(is_prime(19));
    CHECK_FALSE(is_prime(91));
    CHECK(valuation(Int(48), Int(2)) == 4);
}

TEST_CASE("euler phi and orders") {
    CHECK(euler_phi(72) == 24);
    CHECK(euler_phi(1) == 1);
    CHECK(mult_order(3L, 5L) == 4);   // ord_5(3) = 4
    CHECK(mult_order(19L, 18L) == 1);
    CHECK(mult_order(2L, 9L) == 6);
}

TEST_CASE("primitive roots") {
    CHECK(primitive_root(9) == 2);
    CHECK(primitive_root(7) == 3);
    CHECK(mult_order(primitive_root(25), 25) == 20);
}

TEST_CASE("crt") {
    Int x = crt(Int(2), Int(3), Int(3), Int(5));
    CHECK(x % 3 == 2);
    CHECK(x % 5 == 3);
}

TEST_CASE("divisors") {
    CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
}
