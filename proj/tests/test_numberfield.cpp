#include <catch2/catch_amalgamated.hpp>

#include "ramc/numberfield.hpp"
#include "ramc/testfields.hpp"

using namespace ramc;

TEST_CASE("Q(sqrt5): maximal order and discriminant") {
    auto K = NumberField::create(quad_field(5));
    CHECK(K->degree() == 2);
    CHECK(K->discriminant() == 5);  // basis reaches (1+sqrt5)/2
    // norm/trace of a few elements agree with embeddings
    FieldElement x = K->basis_element(1);
    Int nx = K->norm(x);
    Real e0 = K->embed(x, 0, 128), e1 = K->embed(x, 1, 128);
    CHECK((e0 * e1 - Real(nx, 128)).to_double() == Catch::Approx(0.0).margin(1e-20));
}

TEST_CASE("Q(mu9)+: discriminant 81") {
    auto K = NumberField::create(build_field_spec(9, {{2, 2}}));
    CHECK(K->degree() == 3);
    CHECK(K->discriminant() == 81);
}

TEST_CASE("conductor-72 sextic: conductor-discriminant product") {
    auto K = NumberField::create(sextic72());
    CHECK(K->degree() == 6);
    // product of conductors: 1 * 8 * 9 * 9 * 72 * 72
    CHECK(K->discriminant() == Int(8) * 9 * 9 * 72 * 72);
}

TEST_CASE("norm and trace: exact vs embeddings on random elements") {
    auto K = NumberField::create(quad_field(8));
    detail::SplitRng rng(99);
    for (int t = 0; t < 50; ++t) {
        FieldElement x = K->zero();
        for (long i = 0; i < K->degree(); ++i) x.v[i] = (long)(rng.next() % 9) - 4;
        if (K->is_zero(x)) continue;
        Int nm = K->norm(x);
        Real prod(256);
        prod = Real(1, 256);
        for (long i = 0; i < K->degree(); ++i) prod *= K->embed(x, i, 256);
        CHECK((prod - Real(nm, 256)).to_double() == Catch::Approx(0.0).margin(1e-30));
        // trace
        Real s(256);
        for (long i = 0; i < K->degree(); ++i) s += K->embed(x, i, 256);
        CHECK((s - Real(K->trace(x), 256)).to_double() == Catch::Approx(0.0).margin(1e-30));
    }
}

TEST_CASE("galois action fixes norms") {
    auto K = NumberField::create(build_field_spec(9, {{2, 2}}));
    FieldElement x = K->add(K->basis_element(1), K->from_int(2));
    FieldElement y = K->galois_apply(2, x);  // sigma_2
    CHECK(K->norm(x) == K->norm(y));
    CHECK(K->trace(x) == K->trace(y));
    // order-3 action
    FieldElement z = K->galois_apply(2, K->galois_apply(2, y));
    CHECK(z == x);
}

TEST_CASE("prime splitting matches characters") {
    auto K = NumberField::create(quad_field(8));
    // 19 = 3 mod 8 inert
    auto& P19 = K->primes_above(19);
    REQUIRE(P19.size() == 1);
    CHECK(P19[0].g == 2);
    CHECK(P19[0].e == 1);
    // 7 = -1 mod 8 split
    auto& P7 = K->primes_above(7);
    REQUIRE(P7.size() == 2);
    CHECK(P7[0].g == 1);
    // 2 ramified
    auto& P2 = K->primes_above(2);
    REQUIRE(P2.size() == 1);
    CHECK(P2[0].e == 2);

    // Q(sqrt5), q=5 ramified
    auto K5 = NumberField::create(quad_field(5));
    auto& P5 = K5->primes_above(5);
    REQUIRE(P5.size() == 1);
    CHECK(P5[0].e == 2);
    CHECK(P5[0].g == 1);

    // product of primes above q reconstructs qO
    auto K72 = NumberField::create(sextic72());
    for (long q : {19L, 5L, 7L, 2L, 3L}) {
        auto& Ps = K72->primes_above(q);
        NumberField::Ideal prod = K72->full_ideal();
        for (auto& P : Ps)
            for (long i = 0; i < P.e; ++i) prod = K72->ideal_mul(prod, P.I);
        CHECK(K72->ideal_equal(prod, K72->ideal_from_generators(Int(q), {})));
    }
    auto& P19s = K72->primes_above(19);
    CHECK(P19s.size() == 3);
    CHECK(P19s[0].g == 2);
}

TEST_CASE("valuations and ideal arithmetic") {
    auto K = NumberField::create(quad_field(5));
    auto& P5 = K->primes_above(5);
    // basis element 1 is (-1-sqrt5)/2 here; 2*b1 + 1 = -sqrt5
    FieldElement sqrt5 = K->add(K->mul_int(K->basis_element(1), Int(2)), K->one());
    CHECK(K->norm(sqrt5) == -5);
    CHECK(K->val(P5[0], sqrt5) == 1);
    auto& P11 = K->primes_above(11);  // 11 = +-1 mod 5: split
    REQUIRE(P11.size() == 2);
    FieldElement x = K->from_int(11);
    CHECK(K->val(P11[0], x) == 1);
    CHECK(K->val(P11[1], x) == 1);
}

TEST_CASE("enumeration finds elements of small norm") {
    auto K = NumberField::create(quad_field(5));
    // All elements with Tr(x^2) <= 20; must include 1, (1+sqrt5)/2 (norm -1),
    // 2, sqrt5 ...
    std::vector<Int> norms;
    K->enumerate_t2(Int(20), [&](const FieldElement& x, const Int&) {
        norms.push_back(K->norm(x));
        return true;
    });
    bool has1 = false, has4 = false, has5 = false, hasm1 = false;
    for (auto& nm : norms) {
        if (nm == 1) has1 = true;
        if (nm == 4) has4 = true;
        if (nm == 5 || nm == -5) has5 = true;
        if (nm == -1) hasm1 = true;
    }
    CHECK(has1);
    CHECK(has4);
    CHECK(has5);
    CHECK(hasm1);
}

TEST_CASE("subfield embedding: Q(sqrt2) in conductor-72 sextic") {
    auto K = NumberField::create(sextic72());
    auto k = NumberField::create(quad_field(8));
    FieldElement s2k = k->basis_element(1);  // some generator of O_k
    FieldElement lift = K->from_subfield(*k, s2k);
    Int nk = k->norm(s2k);
    CHECK(K->norm(lift) == nk * nk * nk);  // [K : k] = 3
    auto back = K->to_subfield(*k, lift);
    REQUIRE(back.has_value());
    CHECK(*back == s2k);
    // norm down
    FieldElement nm = K->norm_to(*k, lift);
    FieldElement expect = k->pow(s2k, Int(3));
    CHECK(nm == expect);
}

TEST_CASE("ideal inverse and round trip") {
    auto K = NumberField::create(quad_field(8));
    auto& P7 = K->primes_above(7);
    auto [lat, den] = K->ideal_inverse(P7[0].I);
    // P * P^{-1} = O: multiply P rows by lat rows, divide by den, HNF = identity
    ZMat rows(K->degree() * lat.m, K->degree());
    long r = 0;
    for (long i = 0; i < K->degree(); ++i)
        for (long j = 0; j < lat.m; ++j) {
            FieldElement prod = K->mul(FieldElement{P7[0].I.hnf.row(i)}, FieldElement{lat.row(j)});
            std::vector<Int> v = prod.v;
            for (auto& c : v) {
                REQUIRE(c % den == 0);
                c /= den;
            }
            rows.set_row(r++, v);
        }
    auto H = hnf_of(rows);
    CHECK(H == ZMat::identity(K->degree()));
}
