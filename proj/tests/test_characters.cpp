#include <catch2/catch_amalgamated.hpp>

#include "ramc/characters.hpp"
#include "ramc/testfields.hpp"

using namespace ramc;

TEST_CASE("residue group canonical generators") {
    ResidueGroup G72(72);
    // 72 = 8 * 9: generators -1, 5 (mod 8) and 2 (mod 9)
    REQUIRE(G72.gens().size() == 3);
    long prod = 1;
    for (auto& g : G72.gens()) prod *= g.order;
    CHECK(prod == euler_phi(72));
    // dlog round-trip
    for (long x = 1; x < 72; ++x) {
        if (std::gcd(x, 72L) != 1) continue;
        auto e = G72.dlog(x);
        Int y = 1;
        for (size_t j = 0; j < e.size(); ++j)
            y = y * pow_mod(Int(G72.gens()[j].residue), Int(e[j]), Int(72)) % 72;
        CHECK(to_long(y) == x);
    }
}

TEST_CASE("quadratic character mod 5: Q(sqrt 5)") {
    FieldSpec K = build_field_spec(5, {{primitive_root(5), 2}});
    CHECK(K.degree() == 2);
    CHECK(K.conductor() == 5);
    CHECK(K.is_cyclic());
}

TEST_CASE("cubic field of conductor 9") {
    // (Z/9)* = <2>, order 6; the even cubic character has exponent 2.
    FieldSpec K = build_field_spec(9, {{2, 2}});
    CHECK(K.degree() == 3);
    CHECK(K.conductor() == 9);
}

TEST_CASE("odd character rejected") {
    // chi with chi(2) = zeta_6 mod 9 is odd (it is the full order-6 character).
    CHECK_THROWS_AS(build_field_spec(9, {{2, 1}}), OddCharacter);
}

TEST_CASE("conductor-72 sextic: subfield lattice") {
    // quadratic mod 8 (sqrt 2 character: -1 -> 1, 5 -> order 2 exponent)
    // times cubic mod 9.
    ResidueGroup probe(72);
    // generators: (-1 component), (5 component) order 2, (2 mod 9) order 6.
    // sqrt(2) character mod 8: chi(-1)=1, chi(5)=-1. cubic mod 9: exponent 2 on
    // the order-6 generator.
    FieldSpec K = build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
    CHECK(K.degree() == 6);
    CHECK(K.conductor() == 72);
    auto lat = K.subfield_lattice();
    REQUIRE(lat.size() == 4);
    CHECK(lat[1].conductor() == 1);
    CHECK(lat[2].conductor() == 8);   // Q(sqrt 2)
    CHECK(lat[3].conductor() == 9);   // Q(mu_9)^+
    CHECK(lat[6].conductor() == 72);
}

TEST_CASE("decompose character: spec examples") {
    ResidueGroup probe(72);
    FieldSpec K72 = build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
    auto R = decompose_rational(K72.cyclic_generator(), 3);
    CHECK(R.d == 2);
    CHECK(R.pc == 3);
    CHECK(R.chi0.order() == 2);
    CHECK(R.chi_p.order() == 3);
    auto F = padic_family(K72.cyclic_generator(), 3);
    REQUIRE(F.constituents.size() == 1);
    CHECK(F.constituents[0].d_phi0 == 1);

    // degree-10 field with d = 5, p = 3: d_phi0 = ord_5(3) = 4
    // use the quintic of conductor 11 times sqrt(5)... here any cyclic chi of
    // order 10 with p=3 gives d=10? No: take order 5 character mod 11 itself
    // (d = 5 entirely prime to 3).
    FieldSpec C11 = build_field_spec(11, {{primitive_root(11), 2}});
    CHECK(C11.degree() == 5);
    auto F5 = padic_family(C11.cyclic_generator(), 3);
    REQUIRE(F5.constituents.size() == 1);
    CHECK(F5.constituents[0].d_phi0 == 4);

    // trivial character
    FieldSpec Q;
    auto FQ = padic_family(Q.characters()[0], 5);
    CHECK(FQ.constituents.empty());
}

TEST_CASE("padic orbits partition the faithful exponents") {
    ResidueGroup probe(72);
    FieldSpec K = build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
    for (long p : {3L, 5L, 7L}) {
        auto F = padic_family(K.cyclic_generator(), p);
        long total = 0;
        for (auto& c : F.constituents) total += (long)c.orbit_exponents.size();
        CHECK(total == euler_phi(K.degree()));
    }
}

TEST_CASE("cyclotomic intersection and case tags") {
    ResidueGroup probe(72);
    FieldSpec K72 = build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
    auto tag = cyclotomic_intersection(K72, 3);
    CHECK(tag.kind == CaseKind::NONSPECIAL);
    CHECK(tag.C.conductor() == 9);
    CHECK(tag.C0.degree() == 1);
    CHECK(tag.r == 3);
    CHECK(tag.C_over_C0 == 3);

    // K = Q(sqrt5) * quintic(11), p = 5 -> SPECIAL with C = C0 = Q(sqrt5)
    FieldSpec K55 = compositum(quad_field(5), build_field_spec(11, {{primitive_root(11), 2}}), true);
    CHECK(K55.degree() == 10);
    CHECK(K55.conductor() == 55);
    auto tag5 = cyclotomic_intersection(K55, 5);
    CHECK(tag5.kind == CaseKind::SPECIAL);
    CHECK(tag5.C.degree() == 2);
    CHECK(tag5.C.conductor() == 5);
    CHECK(tag5.C0.degree() == 2);

    // conductor 35 sextic, p = 3 -> INERT_AVAILABLE
    FieldSpec K35 = compositum(quad_field(5), build_field_spec(7, {{3, 2}}), true);
    CHECK(K35.conductor() == 35);
    CHECK(K35.degree() == 6);
    CHECK(cyclotomic_intersection(K35, 3).kind == CaseKind::INERT_AVAILABLE);

    // Greenberg: Q(mu_9)^+ at p = 3
    FieldSpec C9 = build_field_spec(9, {{2, 2}});
    CHECK(cyclotomic_intersection(C9, 3).kind == CaseKind::GREENBERG);
}

TEST_CASE("frobenius splitting") {
    // conductor-35 sextic, q = 71 totally split
    FieldSpec K35 = compositum(quad_field(5), build_field_spec(7, {{3, 2}}), true);
    auto S = frobenius_splitting(K35, 71);
    CHECK(S.residue_degree == 1);
    CHECK(S.num_primes == 6);

    // Q(sqrt2), q = 19 inert
    FieldSpec K8 = quad_field(8);
    CHECK(K8.conductor() == 8);
    auto S2 = frobenius_splitting(K8, 19);
    CHECK(S2.residue_degree == 2);

    // conductor-72 sextic, q = 19: g = 2, three primes, decomposition field
    // Q(mu_9)^+
    ResidueGroup probe(72);
    FieldSpec K72 = build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
    auto S3 = frobenius_splitting(K72, 19);
    CHECK(S3.residue_degree == 2);
    CHECK(S3.num_primes == 3);
    CHECK(S3.decomposition_field.conductor() == 9);
    CHECK(S3.decomposition_field.degree() == 3);

    CHECK_THROWS_AS(frobenius_splitting(K72, 3), RamifiedPrime);

    // depends only on q mod conductor
    for (long t = 1; t < 4; ++t)
        if (is_prime(19 + 72 * t))
            CHECK(frobenius_splitting(K72, 19 + 72 * t).residue_degree == 2);
}

TEST_CASE("find auxiliary prime") {
    ResidueGroup probe(72);
    FieldSpec K72 = build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
    CHECK(find_auxiliary_prime(K72, 3, 1, 100) == 19);

    FieldSpec K8 = quad_field(8);
    long l = find_auxiliary_prime(K8, 3, 1, 100);
    CHECK(l == 13);  // smallest prime 1 mod 2p^N = 6 with 13 = 5 mod 8 -> inert
    CHECK((l - 1) % 6 == 0);
    CHECK(frobenius_splitting(K8, l).residue_degree == 2);

    // Greenberg case: no auxiliary prime
    FieldSpec C9 = build_field_spec(9, {{2, 2}});
    CHECK_THROWS_AS(find_auxiliary_prime(C9, 3, 1, 1000), DegenerateTower);

    // bound exhaustion
    CHECK_THROWS_AS(find_auxiliary_prime(K8, 3, 3, 100), NotFound);
}

TEST_CASE("auxiliary tower") {
    FieldSpec K8 = quad_field(8);
    auto T = build_auxiliary_tower(K8, 7, 1, 3);
    CHECK(T.M_ell.degree() == 3);
    CHECK(T.M_ell.conductor() == 7);
    CHECK(T.L.degree() == 6);
    CHECK(T.L.conductor() == 56);
    CHECK(T.Khat.degree() == 1);  // c = 0 degenerate hat
    CHECK(T.Lhat.degree() == 3);
    CHECK_THROWS_AS(build_auxiliary_tower(K8, 11, 2, 3), BadCongruence);

    // conductor-72 K, ell = 19, N = 1: L of degree 18 and conductor 72*19
    ResidueGroup probe(72);
    FieldSpec K72 = build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
    auto T72 = build_auxiliary_tower(K72, 19, 1, 3);
    CHECK(T72.L.degree() == 18);
    CHECK(T72.L.conductor() == 72 * 19);
    CHECK(T72.Khat.degree() == 2);
    CHECK(T72.Khat.conductor() == 8);
    CHECK(T72.Lhat.degree() == 6);
    CHECK(T72.tau_order == 2);
    CHECK(T72.tau_generates);
}

TEST_CASE("case tag sweep: exhaustive over small cyclic fields") {
    // all cyclic real fields of conductor <= 60 and degree <= 6, p in {2,3,5}:
    // exactly one tag, C0 inside C and inside k.
    for (long f = 3; f <= 60; ++f) {
        auto G = std::make_shared<ResidueGroup>(f);
        // enumerate cyclic even character groups via single generators chi
        // (every cyclic group of Dirichlet characters has a generator).
        long ngens = (long)G->gens().size();
        std::vector<long> orders;
        for (auto& g : G->gens()) orders.push_back(g.order);
        std::vector<long> e(ngens, 0);
        // iterate over all exponent vectors (bounded product)
        long total = 1;
        for (auto o : orders) total *= o;
        if (total > 4000) continue;
        for (long code = 1; code < total; ++code) {
            long c = code;
            for (long j = 0; j < ngens; ++j) {
                e[j] = c % orders[j];
                c /= orders[j];
            }
            DirichletCharacter chi(G, std::vector<long>(e));
            if (!chi.is_even()) continue;
            if (chi.conductor() != f) continue;
            if (chi.order() > 6) continue;
            FieldSpec K = FieldSpec::generated_by({chi}, true);
            for (long p : {2L, 3L, 5L}) {
                auto tag = cyclotomic_intersection(K, p);
                // C0 subset of C and of k
                long d = K.degree();
                while (d % p == 0) d /= p;
                CHECK(tag.C0.degree() <= tag.C.degree());
                CHECK(tag.C.degree() % tag.C0.degree() == 0);
                CHECK(d % tag.C0.degree() == 0);
            }
        }
    }
}
