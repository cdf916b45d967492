// Builders for the small fields used across tests and the catalog tool.
#ifndef RAMC_TESTFIELDS_HPP
#define RAMC_TESTFIELDS_HPP

#include "ramc/characters.hpp"

namespace ramc {

// The real quadratic field of conductor f (throws if none exists).
inline FieldSpec quad_field(long f) {
    auto G = std::make_shared<ResidueGroup>(f);
    long ng = (long)G->gens().size();
    for (long mask = 1; mask < (1L << ng); ++mask) {
        std::vector<long> e(ng, 0);
        bool ok = true;
        for (long j = 0; j < ng; ++j)
            if (mask & (1L << j)) {
                if (G->gens()[j].order % 2 != 0) { ok = false; break; }
                e[j] = G->gens()[j].order / 2;
            }
        if (!ok) continue;
        DirichletCharacter chi(G, e);
        if (chi.order() == 2 && chi.is_even() && chi.conductor() == f)
            return FieldSpec::generated_by({chi}, true);
    }
    throw std::runtime_error("no real quadratic field of conductor " + std::to_string(f));
}

// The cyclic sextic field of conductor 72: Q(sqrt2) * Q(mu9)+.
inline FieldSpec sextic72() {
    ResidueGroup probe(72);
    // canonical generators: (-1 mod 8), (5 mod 8), (2 mod 9)
    return build_field_spec(72, {{probe.gens()[1].residue, 1}, {probe.gens()[2].residue, 2}});
}

// Cyclic cubic of conductor 7 (character chi_7^2 of order 3).
inline FieldSpec cubic7() { return build_field_spec(7, {{3, 2}}); }

// Q(mu9)+.
inline FieldSpec cubic9() { return build_field_spec(9, {{2, 2}}); }

// Quintic of conductor 11.
inline FieldSpec quintic11() { return build_field_spec(11, {{primitive_root(11), 2}}); }

}  // namespace ramc

#endif
