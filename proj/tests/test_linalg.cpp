#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ramc/linalg.hpp"

using namespace ramc;

static ZMat make(long m, long n, std::initializer_list<long> vals) {
    ZMat A(m, n);
    auto it = vals.begin();
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < n; ++j) A.at(i, j) = *it++;
    return A;
}

TEST_CASE("hnf basic") {
    ZMat A = make(2, 2, {2, 0, 0, 3});
    ZMat H = hnf_of(A);
    CHECK(H.m == 2);
    CHECK(H.at(0, 0) == 2);
    CHECK(H.at(1, 1) == 3);

    // rows spanning all of Z^2
    ZMat B = make(2, 2, {1, 2, 3, 4});
    auto HB = hnf_of(B);
    CHECK(HB.at(0, 0) == 1);
    CHECK(HB.at(0, 1) == 0);
    CHECK(HB.at(1, 1) == 2);
}

TEST_CASE("hnf transform consistency") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        long m = 3 + rng() % 3, n = 2 + rng() % 4;
        ZMat A(m, n);
        for (auto& x : A.a) x = (long)(rng() % 21) - 10;
        ZMat H = A;
        ZMat U = ZMat::identity(m);
        hnf_rows(H, &U);
        CHECK(mul(U, A) == H);
    }
}

TEST_CASE("kernel_right") {
    ZMat A = make(1, 3, {2, 4, 6});
    ZMat K = kernel_right(A);
    CHECK(K.m == 2);
    for (long i = 0; i < K.m; ++i) {
        auto v = mul_vec(A, K.row(i));
        CHECK(v[0] == 0);
    }
}

TEST_CASE("determinant") {
    ZMat A = make(3, 3, {2, 0, 1, 1, 1, 0, 0, 3, 1});
    // det = 2*(1*1-0*3) - 0 + 1*(1*3-0) = 2 + 3 = 5
    CHECK(det_bareiss(A) == 5);
    ZMat S = make(2, 2, {1, 2, 2, 4});
    CHECK(det_bareiss(S) == 0);
}

TEST_CASE("snf") {
    ZMat A = make(2, 2, {2, 4, 6, 8});
    ZMat U, V;
    ZMat D = snf(A, &U, &V);
    CHECK(D.at(0, 0) == 2);
    CHECK(D.at(1, 1) == 4);  // det 16-24=-8, d1=gcd=2, d1*d2=8
    CHECK(mul(mul(U, A), V) == D);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        long m = 2 + rng() % 3, n = 2 + rng() % 3;
        ZMat B(m, n);
        for (auto& x : B.a) x = (long)(rng() % 13) - 6;
        ZMat D2 = snf(B, &U, &V);
        CHECK(mul(mul(U, B), V) == D2);
        // divisibility chain
        for (long i = 0; i + 1 < std::min(D2.m, D2.n); ++i)
            if (D2.at(i + 1, i + 1) != 0 && D2.at(i, i) != 0)
                CHECK(D2.at(i + 1, i + 1) % D2.at(i, i) == 0);
    }
}

TEST_CASE("rational solve and inverse") {
    QMat A = QMat::from(make(2, 2, {1, 2, 3, 5}));
    QMat I = qmul(A, qinverse(A));
    CHECK(I.at(0, 0) == 1);
    CHECK(I.at(0, 1) == 0);
    CHECK(I.at(1, 1) == 1);
}

TEST_CASE("coords and lattice index") {
    ZMat A = make(2, 2, {1, 0, 0, 1});
    ZMat B = make(2, 2, {2, 0, 0, 3});
    CHECK(lattice_index(A, B) == 6);
    auto c = coords_in_rowlattice(B, {4, 3});
    CHECK(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 1);
    CHECK_FALSE(coords_in_rowlattice(B, {1, 0}).has_value());
}

TEST_CASE("lattice intersection and sum") {
    ZMat A = make(1, 2, {2, 0});
    ZMat B = make(1, 2, {3, 0});
    ZMat I = lattice_intersection(A, B);
    REQUIRE(I.m == 1);
    CHECK(I.at(0, 0) == 6);
    ZMat S = lattice_sum(A, B);
    REQUIRE(S.m == 1);
    CHECK(S.at(0, 0) == 1);
}
