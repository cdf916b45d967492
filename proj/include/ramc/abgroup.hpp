// Finite abelian groups with named automorphisms ("Galois modules"), built on
// SNF over Z.  A module is Z^k / diag(d); subgroups are row lattices L with
// diag(d) inside L; everything else is lattice bookkeeping.
#ifndef RAMC_ABGROUP_HPP
#define RAMC_ABGROUP_HPP

#include <map>
#include <string>
#include <vector>

#include "ramc/linalg.hpp"

namespace ramc {

struct NotASubgroup : std::runtime_error {
    NotASubgroup() : std::runtime_error("claimed subgroup is not contained in the group") {}
};

struct FinMod {
    std::vector<Int> d;               // presentation divisors (d_i >= 1)
    std::map<std::string, ZMat> act;  // named automorphisms, k x k integer matrices

    long rank() const { return (long)d.size(); }

    Int order() const {
        Int o = 1;
        for (auto& x : d) o *= x;
        return o;
    }
    bool trivial() const { return order() == 1; }

    // nontrivial invariant factors
    std::vector<Int> invariants() const {
        std::vector<Int> out;
        for (auto& x : d)
            if (x > 1) out.push_back(x);
        return out;
    }

    ZMat relation_matrix() const {
        ZMat D((long)d.size(), (long)d.size());
        for (long i = 0; i < (long)d.size(); ++i) D.at(i, i) = d[i];
        return D;
    }

    std::vector<Int> reduce(std::vector<Int> x) const {
        for (size_t i = 0; i < x.size(); ++i) x[i] = mod_positive(x[i], d[i]);
        return x;
    }

    std::vector<Int> apply(const std::string& name, const std::vector<Int>& x) const {
        const ZMat& A = act.at(name);
        std::vector<Int> y = vec_mul(x, A);
        return reduce(y);
    }
};

// lattice of a subgroup: rows plus the presentation relations, HNF'd
inline ZMat subgroup_lattice(const FinMod& M, const ZMat& gens) {
    long k = M.rank();
    ZMat S(gens.m + k, k);
    for (long i = 0; i < gens.m; ++i)
        for (long j = 0; j < k; ++j) S.at(i, j) = gens.at(i, j);
    for (long i = 0; i < k; ++i) S.at(gens.m + i, i) = M.d[i];
    return hnf_of(S);
}

inline ZMat trivial_subgroup(const FinMod& M) { return M.relation_matrix(); }
inline ZMat full_subgroup(const FinMod& M) { return ZMat::identity(M.rank()); }

inline Int subgroup_order(const FinMod& M, const ZMat& L) {
    // order = det(diag d) / det(L)
    Int dd = M.order();
    Int dl = 1;
    for (long i = 0; i < L.m; ++i) dl *= L.at(i, i);
    if (dl < 0) dl = -dl;
    if (dd % dl != 0) throw std::logic_error("subgroup_order: lattice does not contain relations");
    return dd / dl;
}

inline bool subgroup_contains(const ZMat& L, const std::vector<Int>& x) {
    return coords_in_rowlattice(L, x).has_value();
}

inline ZMat subgroup_sum(const FinMod& M, const ZMat& A, const ZMat& B) {
    (void)M;
    return lattice_sum(A, B);
}

inline ZMat subgroup_intersection(const FinMod& M, const ZMat& A, const ZMat& B) {
    (void)M;
    return lattice_intersection(A, B);
}

// induced action matrix on a quotient Z^k / L given an ambient action A
inline ZMat induced_action(const ZMat& L, const ZMat& A, const std::vector<Int>& divisors_out,
                           const ZMat& gens_out);

// The quotient (span A + rels) / (span B + rels) of a module, presented in SNF
// with all named actions carried over.  Also returns, if requested, the map
// expressing each row of A in the SNF coordinates of the quotient.
struct QuotientResult {
    FinMod mod;
    ZMat a_to_snf;  // (#A rows) x (mod.rank()): image of A-generators
};

inline QuotientResult quotient_by(const FinMod& M, const ZMat& A, const ZMat& B) {
    long k = M.rank();
    ZMat LA = subgroup_lattice(M, A);
    ZMat LB = subgroup_lattice(M, B);
    // require B inside A
    for (long i = 0; i < LB.m; ++i)
        if (!subgroup_contains(LA, LB.row(i))) throw NotASubgroup();
    // generators: rows of LA; relations: coords of LB rows over LA
    ZMat rel(LB.m, LA.m);
    for (long i = 0; i < LB.m; ++i) {
        auto c = coords_in_rowlattice(LA, LB.row(i));
        if (!c) throw NotASubgroup();
        rel.set_row(i, *c);
    }
    ZMat U, V;
    ZMat D = snf(rel, &U, &V);
    // new generators: LA-basis transformed by V: g'_j = sum_i V[i][j] (LA row i)
    long r = LA.m;
    std::vector<Int> divs(r, Int(0));
    for (long i = 0; i < r; ++i) divs[i] = i < D.m ? D.at(i, i) : Int(0);
    // all divisors must be positive (finite quotient) since LB has full rank
    for (auto& x : divs)
        if (x == 0) throw std::logic_error("quotient_by: infinite quotient");
    QuotientResult R;
    R.mod.d = divs;
    // integral inverse of the unimodular V
    ZMat Vinv(r, r);
    {
        QMat VI = qinverse(QMat::from(V));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) {
                if (VI.at(i, j).get_den() != 1) throw std::logic_error("V not unimodular");
                Vinv.at(i, j) = VI.at(i, j).get_num();
            }
    }
    // actions: an element with LA-coords x maps to x * C_sigma (rows of C =
    // coords of sigma(l_i) over LA); in SNF coords y = x V the action matrix
    // is V^{-1} C V.
    for (auto& [name, Aact] : M.act) {
        ZMat LAs = mul(LA, Aact);
        ZMat C(r, r);
        for (long i = 0; i < r; ++i) {
            auto c = coords_in_rowlattice(LA, LAs.row(i));
            if (!c) throw std::logic_error("action does not stabilize subgroup");
            C.set_row(i, *c);
        }
        ZMat out = mul(mul(Vinv, C), V);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) out.at(i, j) = mod_positive(out.at(i, j), R.mod.d[j]);
        R.mod.act[name] = out;
    }
    // images of A rows in SNF coordinates
    R.a_to_snf = ZMat(A.m, r);
    for (long i = 0; i < A.m; ++i) {
        auto c = coords_in_rowlattice(LA, A.row(i));
        if (!c) throw std::logic_error("A row escaped its own lattice");
        std::vector<Int> gp = vec_mul(*c, V);
        for (long s = 0; s < r; ++s) R.a_to_snf.at(i, s) = mod_positive(gp[s], R.mod.d[s]);
    }
    // drop trivial (d = 1) coordinates
    std::vector<long> keep;
    for (long i = 0; i < r; ++i)
        if (R.mod.d[i] > 1) keep.push_back(i);
    FinMod slim;
    for (long i : keep) slim.d.push_back(R.mod.d[i]);
    for (auto& [name, Aact] : R.mod.act) {
        ZMat s((long)keep.size(), (long)keep.size());
        for (size_t a = 0; a < keep.size(); ++a)
            for (size_t b = 0; b < keep.size(); ++b) s.at((long)a, (long)b) = Aact.at(keep[a], keep[b]);
        slim.act[name] = s;
    }
    ZMat slim_map(A.m, (long)keep.size());
    for (long i = 0; i < A.m; ++i)
        for (size_t b = 0; b < keep.size(); ++b) slim_map.at(i, (long)b) = R.a_to_snf.at(i, keep[b]);
    R.mod = std::move(slim);
    R.a_to_snf = std::move(slim_map);
    return R;
}

// The subgroup L (a lattice containing the relations) as a module of its own.
inline QuotientResult subgroup_as_module(const FinMod& M, const ZMat& gens) {
    ZMat L = subgroup_lattice(M, gens);
    // generators: rows of L; relations: {x : x L in diag(d) span}
    FinMod big;
    big.d.assign(M.d.begin(), M.d.end());
    // treat as quotient (L + rels)/(rels)
    return quotient_by(M, L, trivial_subgroup(M));
}

// kernel of the homomorphism M -> M2 given on presentation generators by phi
// (k x k2), as a subgroup lattice of M.
inline ZMat hom_kernel(const FinMod& M, const FinMod& M2, const ZMat& phi) {
    // {x in Z^k : x phi == 0 mod diag(d2)}: transpose to column convention
    std::vector<ZMat> maps{phi.transpose()};
    ZMat target = M2.relation_matrix();
    ZMat K = lattice_preimage(maps, target);
    return subgroup_lattice(M, K);
}

// image lattice of phi inside M2 (as subgroup lattice)
inline ZMat hom_image(const FinMod& M, const FinMod& M2, const ZMat& phi) {
    (void)M;
    return subgroup_lattice(M2, phi);
}

// fixed points of a named automorphism: kernel of (sigma - 1)
inline ZMat fixed_points(const FinMod& M, const std::vector<std::string>& names) {
    ZMat L = full_subgroup(M);
    for (auto& name : names) {
        ZMat A = M.act.at(name);
        ZMat S = A;
        for (long i = 0; i < S.m; ++i) S.at(i, i) -= 1;
        // kernel of x -> x (A - 1) mod d
        ZMat K = lattice_preimage({S.transpose()}, M.relation_matrix());
        L = subgroup_intersection(M, L, subgroup_lattice(M, K));
    }
    return subgroup_lattice(M, L);
}

// p-Sylow part of a module, with actions transported
inline FinMod p_part(const FinMod& M, long p) {
    FinMod out;
    long k = M.rank();
    std::vector<Int> cof(k);  // d_i / p^{v_i}
    std::vector<long> keep;
    for (long i = 0; i < k; ++i) {
        long v = M.d[i] == 0 ? 0 : valuation(M.d[i], Int(p));
        Int pv = ipow(Int(p), v);
        cof[i] = M.d[i] / pv;
        if (pv > 1) keep.push_back(i);
        out.d.push_back(pv);
    }
    // Sylow generators: s_i = cof_i * e_i; sigma(s_i) = sum_j A[i][j] cof_i e_j
    // = sum_j A[i][j] cof_i cof_j^{-1} s_j (inverse mod p^{v_j}).
    for (auto& [name, A] : M.act) {
        ZMat S(k, k);
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) {
                if (out.d[j] == 1) continue;
                Int c = mod_positive(A.at(i, j), out.d[j]);
                if (c == 0) continue;
                Int t = mod_positive(c * cof[i] * inv_mod(mod_positive(cof[j], out.d[j]), out.d[j]), out.d[j]);
                S.at(i, j) = t;
            }
        out.act[name] = S;
    }
    // slim to the kept coordinates
    FinMod slim;
    for (long i : keep) slim.d.push_back(out.d[i]);
    for (auto& [name, A] : out.act) {
        ZMat s((long)keep.size(), (long)keep.size());
        for (size_t a = 0; a < keep.size(); ++a)
            for (size_t b = 0; b < keep.size(); ++b) s.at((long)a, (long)b) = A.at(keep[a], keep[b]);
        slim.act[name] = s;
    }
    return slim;
}

}  // namespace ramc

#endif
