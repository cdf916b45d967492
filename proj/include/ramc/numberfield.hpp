// Rings of integers of real abelian fields.  The integral basis starts from
// the Gaussian-period order of Q(mu_f) intersected with K and is saturated by
// round-2 at every prime whose square divides that order's discriminant; the
// result is checked against the conductor-discriminant product.  All element
// and ideal arithmetic is exact.
#ifndef RAMC_NUMBERFIELD_HPP
#define RAMC_NUMBERFIELD_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ramc/characters.hpp"
#include "ramc/cyclotomic.hpp"
#include "ramc/enumerate.hpp"
#include "ramc/fq_poly.hpp"
#include "ramc/linalg.hpp"
#include "ramc/real.hpp"

namespace ramc {

struct PrecisionExhausted : std::runtime_error {
    PrecisionExhausted() : std::runtime_error("embedding certification failed at requested precision") {}
};

struct FieldElement {
    std::vector<Int> v;  // coordinates over the integral basis
    bool operator==(const FieldElement& o) const { return v == o.v; }
    bool operator<(const FieldElement& o) const { return v < o.v; }
};

namespace detail {
// Ramanujan sum: sum over units u mod f of zeta_f^{cu} = mu(m) phi(f) / phi(m)
// with m = f / gcd(c, f).
inline Int ramanujan_sum(long c, long f) {
    if (f == 1) return 1;
    c %= f;
    if (c < 0) c += f;
    long g = c == 0 ? f : std::gcd(c, f);
    long m = f / g;
    long mu = 1;
    for (auto& [p, e] : factorize(Int(m))) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return Int(mu) * euler_phi(f) / euler_phi(m);
}
}  // namespace detail

class NumberField {
  public:
    static std::shared_ptr<NumberField> create(const FieldSpec& spec_in, mpfr_prec_t prec = 128,
                                               long degree_ceiling = 12);

    const FieldSpec& spec() const { return spec_; }
    long degree() const { return n_; }
    long conductor() const { return f_; }
    const Int& discriminant() const { return disc_; }
    mpfr_prec_t precision() const { return prec_; }

    // ---- elements ----------------------------------------------------------
    FieldElement zero() const { return {std::vector<Int>(n_)}; }
    FieldElement one() const { return one_; }
    FieldElement basis_element(long j) const {
        FieldElement x = zero();
        x.v[j] = 1;
        return x;
    }
    FieldElement from_int(const Int& a) const {
        FieldElement x = one_;
        for (auto& c : x.v) c *= a;
        return x;
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement c = a;
        for (long i = 0; i < n_; ++i) c.v[i] += b.v[i];
        return c;
    }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        FieldElement c = a;
        for (long i = 0; i < n_; ++i) c.v[i] -= b.v[i];
        return c;
    }
    FieldElement neg(const FieldElement& a) const {
        FieldElement c = a;
        for (auto& x : c.v) x = -x;
        return c;
    }
    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        FieldElement c = zero();
        for (long i = 0; i < n_; ++i) {
            if (a.v[i] == 0) continue;
            for (long j = 0; j < n_; ++j) {
                if (b.v[j] == 0) continue;
                Int coef = a.v[i] * b.v[j];
                for (long k = 0; k < n_; ++k) {
                    const Int& m = mult_[i].at(j, k);
                    if (m != 0) c.v[k] += coef * m;
                }
            }
        }
        return c;
    }
    FieldElement mul_int(const FieldElement& a, const Int& t) const {
        FieldElement c = a;
        for (auto& x : c.v) x *= t;
        return c;
    }
    FieldElement pow(FieldElement a, Int e) const {
        FieldElement r = one_;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    bool is_zero(const FieldElement& a) const {
        for (auto& x : a.v)
            if (x != 0) return false;
        return true;
    }

    ZMat regular_matrix(const FieldElement& a) const {
        // column j = coordinates of a * b_j
        ZMat M(n_, n_);
        for (long i = 0; i < n_; ++i) {
            if (a.v[i] == 0) continue;
            for (long j = 0; j < n_; ++j)
                for (long k = 0; k < n_; ++k) {
                    const Int& m = mult_[i].at(j, k);
                    if (m != 0) M.at(k, j) += a.v[i] * m;
                }
        }
        return M;
    }

    Int norm(const FieldElement& a) const { return det_bareiss(regular_matrix(a)); }
    Int trace(const FieldElement& a) const {
        Int t = 0;
        for (long i = 0; i < n_; ++i)
            if (a.v[i] != 0) t += a.v[i] * basis_traces_[i];
        return t;
    }
    bool is_unit(const FieldElement& a) const {
        Int nm = norm(a);
        return nm == 1 || nm == -1;
    }
    Int t2_value(const FieldElement& a) const {  // Tr(a^2), the T2 form
        Int t = 0;
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j)
                if (a.v[i] != 0 && a.v[j] != 0) t += a.v[i] * a.v[j] * gram_.at(i, j);
        return t;
    }

    std::optional<FieldElement> divide_exact(const FieldElement& a, const FieldElement& b) const {
        if (is_zero(b)) return std::nullopt;
        ZMat M = regular_matrix(b);  // M x = a
        QMat rhs(n_, 1);
        for (long i = 0; i < n_; ++i) rhs.at(i, 0) = Rat(a.v[i]);
        QMat sol;
        try {
            sol = qsolve(QMat::from(M), rhs);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
        FieldElement x = zero();
        for (long i = 0; i < n_; ++i) {
            sol.at(i, 0).canonicalize();
            if (sol.at(i, 0).get_den() != 1) return std::nullopt;
            x.v[i] = sol.at(i, 0).get_num();
        }
        return x;
    }

    FieldElement galois_apply(long t, const FieldElement& a) const {
        if (f_ == 1) return a;
        t %= f_;
        if (t < 0) t += f_;
        auto it = galois_cache_.find(t);
        if (it == galois_cache_.end()) it = galois_cache_.emplace(t, galois_matrix(t)).first;
        const ZMat& M = it->second;
        FieldElement out = zero();
        for (long j = 0; j < n_; ++j) {
            if (a.v[j] == 0) continue;
            for (long i = 0; i < n_; ++i) out.v[i] += M.at(i, j) * a.v[j];
        }
        return out;
    }

    const std::vector<long>& embedding_reps() const { return coset_reps_; }

    Real embed(const FieldElement& a, long i, mpfr_prec_t prec) const {
        ensure_embeddings(prec);
        Real s(prec_);
        for (long j = 0; j < n_; ++j) {
            if (a.v[j] == 0) continue;
            s += emb_[i * n_ + j] * Real(a.v[j], prec_);
        }
        return s;
    }

    const ZMat& trace_gram() const { return gram_; }

    void enumerate_t2(const Int& bound,
                      const std::function<bool(const FieldElement&, const Int&)>& cb,
                      long node_budget = -1) const {
        ensure_reduced_basis();
        enumerate_gram(
            reduced_gram_, bound,
            [&](const std::vector<Int>& x, const Int& val) {
                FieldElement e = zero();
                for (long i = 0; i < n_; ++i)
                    if (x[i] != 0)
                        for (long j = 0; j < n_; ++j) e.v[j] += x[i] * reduced_basis_.at(i, j);
                return cb(e, val);
            },
            node_budget);
    }

    // ---- ideals ------------------------------------------------------------
    struct Ideal {
        ZMat hnf;  // n x n HNF, rows = Z-basis over the integral basis
        bool operator==(const Ideal& o) const { return hnf == o.hnf; }
        bool operator<(const Ideal& o) const { return hnf.a < o.hnf.a; }
    };

    Ideal full_ideal() const { return {ZMat::identity(n_)}; }

    Ideal ideal_from_rows(const ZMat& rows) const {
        long rank = 0;
        ZMat H = hnf_of(rows, &rank);
        if (rank != n_) throw std::domain_error("ideal_from_rows: not full rank");
        return {H};
    }

    Ideal principal_ideal(const FieldElement& x) const {
        ZMat rows(n_, n_);
        for (long j = 0; j < n_; ++j) rows.set_row(j, mul(x, basis_element(j)).v);
        return ideal_from_rows(rows);
    }

    Ideal ideal_from_generators(const Int& q, const std::vector<FieldElement>& gens) const {
        ZMat rows((long)(n_ * (gens.size() + 1)), n_);
        for (long j = 0; j < n_; ++j) {
            std::vector<Int> r(n_);
            r[j] = q;
            rows.set_row(j, r);
        }
        for (size_t g = 0; g < gens.size(); ++g)
            for (long j = 0; j < n_; ++j)
                rows.set_row((long)(n_ * (g + 1) + j), mul(gens[g], basis_element(j)).v);
        return ideal_from_rows(rows);
    }

    Ideal ideal_mul(const Ideal& A, const Ideal& B) const {
        ZMat rows(n_ * n_, n_);
        for (long i = 0; i < n_; ++i) {
            FieldElement a{A.hnf.row(i)};
            for (long j = 0; j < n_; ++j) rows.set_row(i * n_ + j, mul(a, FieldElement{B.hnf.row(j)}).v);
        }
        return ideal_from_rows(rows);
    }

    Ideal ideal_pow(const Ideal& A, long e) const {
        Ideal r = full_ideal();
        Ideal base = A;
        while (e > 0) {
            if (e & 1) r = ideal_mul(r, base);
            base = ideal_mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Int ideal_norm(const Ideal& A) const {
        Int d = 1;
        for (long i = 0; i < n_; ++i) d *= A.hnf.at(i, i);
        return d < 0 ? Int(-d) : d;
    }

    bool ideal_contains(const Ideal& A, const FieldElement& x) const {
        return coords_in_rowlattice(A.hnf, x.v).has_value();
    }

    bool ideal_equal(const Ideal& A, const Ideal& B) const { return A.hnf == B.hnf; }

    Ideal galois_apply_ideal(long t, const Ideal& A) const {
        ZMat rows(n_, n_);
        for (long i = 0; i < n_; ++i) rows.set_row(i, galois_apply(t, FieldElement{A.hnf.row(i)}).v);
        return ideal_from_rows(rows);
    }

    // A^{-1} = (row lattice) / den
    std::pair<ZMat, Int> ideal_inverse(const Ideal& A) const {
        Int N = ideal_norm(A);
        std::vector<ZMat> maps;
        for (long g = 0; g < n_; ++g) maps.push_back(regular_matrix(FieldElement{A.hnf.row(g)}));
        ZMat target(n_, n_);
        for (long i = 0; i < n_; ++i) target.at(i, i) = N;
        ZMat lat = lattice_preimage(maps, target);  // y with y/N in A^{-1}
        return {lat, N};
    }

    // ---- primes ------------------------------------------------------------
    struct PrimeIdeal {
        long q = 0;
        long e = 1, g = 1;
        Ideal I;
        FieldElement pi;    // P = (q, pi)
        FieldElement bnum;  // b = bnum / bden in P^{-1} \ O
        Int bden = 1;
    };

    const std::vector<PrimeIdeal>& primes_above(long q) const;

    long val(const PrimeIdeal& P, const FieldElement& x) const {
        if (is_zero(x)) throw std::domain_error("valuation of zero");
        long v = 0;
        std::vector<Int> y = x.v;
        while (true) {
            std::vector<Int> z(n_);
            for (long i = 0; i < n_; ++i) {
                if (y[i] == 0) continue;
                for (long j = 0; j < n_; ++j) {
                    if (P.bnum.v[j] == 0) continue;
                    Int coef = y[i] * P.bnum.v[j];
                    for (long k = 0; k < n_; ++k) {
                        const Int& m = mult_[i].at(j, k);
                        if (m != 0) z[k] += coef * m;
                    }
                }
            }
            bool integral = true;
            for (auto& c : z) {
                if (c % P.bden != 0) {
                    integral = false;
                    break;
                }
            }
            if (!integral) return v;
            for (auto& c : z) c /= P.bden;
            ++v;
            y = std::move(z);
            if (v > 100000) throw std::logic_error("valuation runaway");
        }
    }

    long val_ideal(const PrimeIdeal& P, const Ideal& A) const {
        long v = -1;
        for (long i = 0; i < n_; ++i) {
            long vi = val(P, FieldElement{A.hnf.row(i)});
            if (v < 0 || vi < v) v = vi;
        }
        return v;
    }

    // ---- subfields ---------------------------------------------------------
    FieldElement from_subfield(const NumberField& k, const FieldElement& x) const {
        if (k.degree() == n_ && k.f_ == f_) return x;
        const ZMat& M = subfield_matrix(k);
        FieldElement out = zero();
        for (long i = 0; i < k.degree(); ++i)
            if (x.v[i] != 0)
                for (long j = 0; j < n_; ++j) out.v[j] += x.v[i] * M.at(i, j);
        return out;
    }

    std::optional<FieldElement> to_subfield(const NumberField& k, const FieldElement& x) const {
        if (k.degree() == n_ && k.f_ == f_) return x;
        const ZMat& M = subfield_matrix(k);
        auto c = coords_in_rowlattice(M, x.v);
        if (!c) return std::nullopt;
        return FieldElement{*c};
    }

    // residues t whose sigma_t fixes the subfield cut out by `k` pointwise
    std::vector<long> galois_over(const FieldSpec& k) const {
        std::vector<long> out;
        for (long t : coset_reps_) {
            bool fixes = true;
            for (auto& c : k.characters()) {
                long cond = c.conductor();
                if (cond == 1) continue;
                if (c.primitive_value_exponent(t, cond).first != 0) {
                    fixes = false;
                    break;
                }
            }
            if (fixes) out.push_back(t);
        }
        return out;
    }

    FieldElement norm_to(const NumberField& k, const FieldElement& x) const {
        FieldElement acc = one_;
        for (long t : galois_over(k.spec())) acc = mul(acc, galois_apply(t, x));
        if (k.degree() == n_) return acc;
        auto down = to_subfield(k, acc);
        if (!down) throw std::logic_error("norm_to: norm did not land in subfield");
        return *down;
    }

    // ---- ambient hooks -----------------------------------------------------
    const TensorCyclotomic& ambient() const { return *amb_; }

    std::optional<FieldElement> from_ambient(const TensorCyclotomic::Elt& v) const {
        auto c = element_coords(v);
        if (!c) return std::nullopt;
        FieldElement x = zero();
        for (long i = 0; i < n_; ++i) {
            if ((*c)[i].get_den() != 1) return std::nullopt;
            x.v[i] = (*c)[i].get_num();
        }
        return x;
    }

    TensorCyclotomic::Elt to_ambient(const FieldElement& x) const {
        TensorCyclotomic::Elt out = amb_->zero();
        for (long i = 0; i < n_; ++i) {
            if (x.v[i] == 0) continue;
            for (long j = 0; j < amb_->dim(); ++j) out[j] += x.v[i] * basis_ambient_.at(i, j);
        }
        return out;
    }

    // rational coordinates over the integral basis of an ambient vector
    std::optional<std::vector<Rat>> element_coords(const TensorCyclotomic::Elt& v) const {
        std::vector<Rat> rhs(v.size());
        for (size_t i = 0; i < v.size(); ++i) rhs[i] = Rat(v[i]);
        return solve_left_rational(basis_ambient_, rhs);
    }

  private:
    NumberField() = default;

    FieldSpec spec_;
    long f_ = 1, n_ = 1;
    Int disc_ = 1;
    std::shared_ptr<TensorCyclotomic> amb_;
    ZMat basis_ambient_;  // n x phi(f), integral (O_K inside Z[mu_f])
    std::vector<ZMat> mult_;
    ZMat gram_;
    std::vector<Int> basis_traces_;
    FieldElement one_;
    std::vector<long> coset_reps_;

    mutable std::map<long, ZMat> galois_cache_;
    mutable std::vector<Real> emb_;
    mutable mpfr_prec_t prec_ = 0;
    mutable std::map<long, std::vector<PrimeIdeal>> prime_cache_;
    mutable ZMat reduced_basis_, reduced_gram_;
    mutable bool reduced_ready_ = false;
    mutable std::map<std::string, ZMat> subfield_cache_;

    TensorCyclotomic::Elt basis_row_ambient(long i) const {
        TensorCyclotomic::Elt v = amb_->zero();
        for (long j = 0; j < amb_->dim(); ++j) v[j] = basis_ambient_.at(i, j);
        return v;
    }

    ZMat galois_matrix(long t) const {
        ZMat M(n_, n_);
        for (long j = 0; j < n_; ++j) {
            TensorCyclotomic::Elt img = amb_->galois(basis_row_ambient(j), t);
            auto c = element_coords(img);
            if (!c) throw std::logic_error("galois_matrix: image not in order");
            for (long i = 0; i < n_; ++i) {
                if ((*c)[i].get_den() != 1) throw std::logic_error("galois_matrix: non-integral");
                M.at(i, j) = (*c)[i].get_num();
            }
        }
        return M;
    }

    const ZMat& subfield_matrix(const NumberField& k) const {
        std::string key = k.spec_.key();
        auto it = subfield_cache_.find(key);
        if (it != subfield_cache_.end()) return it->second;
        if (f_ % k.f_ != 0) throw std::domain_error("subfield_matrix: conductor does not divide");
        long scale = f_ / k.f_;
        ZMat M(k.degree(), n_);
        for (long i = 0; i < k.degree(); ++i) {
            TensorCyclotomic::Elt big = amb_->zero();
            for (long idx = 0; idx < k.amb_->dim(); ++idx) {
                const Int& c = k.basis_ambient_.at(i, idx);
                if (c == 0) continue;
                long a = k.amb_->monomial_exponent(idx);
                TensorCyclotomic::Elt rp = amb_->root_power(to_long(Int((Int(a) * scale) % f_)));
                for (long j = 0; j < amb_->dim(); ++j) big[j] += c * rp[j];
            }
            auto co = element_coords(big);
            if (!co) throw std::logic_error("subfield element outside span");
            for (long j = 0; j < n_; ++j) {
                if ((*co)[j].get_den() != 1)
                    throw std::logic_error("subfield basis not integral in the big field");
                M.at(i, j) = (*co)[j].get_num();
            }
        }
        return subfield_cache_.emplace(key, std::move(M)).first->second;
    }

    void ensure_embeddings(mpfr_prec_t prec) const;
    void ensure_reduced_basis() const {
        if (reduced_ready_) return;
        ZMat U = lll_gram(gram_);
        reduced_basis_ = U;
        reduced_gram_ = ramc::mul(ramc::mul(U, gram_), U.transpose());
        reduced_ready_ = true;
    }
};

using NFPtr = std::shared_ptr<NumberField>;

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

inline NFPtr NumberField::create(const FieldSpec& spec_in, mpfr_prec_t prec, long degree_ceiling) {
    if (spec_in.degree() > degree_ceiling)
        throw std::domain_error("NumberField: degree exceeds configured ceiling");
    auto K = std::shared_ptr<NumberField>(new NumberField());
    long f = spec_in.conductor();
    if (f == spec_in.modulus()) {
        K->spec_ = spec_in;
    } else {
        // rebase characters to their joint conductor
        auto Gf = std::make_shared<ResidueGroup>(f);
        std::vector<DirichletCharacter> gens;
        for (auto& c : spec_in.characters()) {
            std::vector<long> e(Gf->gens().size());
            for (size_t j = 0; j < Gf->gens().size(); ++j) {
                long gj = Gf->gens()[j].residue;
                auto [num, den] = c.primitive_value_exponent(gj, c.conductor());
                long oj = Gf->gens()[j].order;
                if (oj % den != 0) throw std::logic_error("rebase: order incompatibility");
                e[j] = to_long(Int((Int(num) * (oj / den)) % oj));
            }
            gens.emplace_back(Gf, e);
        }
        K->spec_ = FieldSpec::generated_by(gens, false);
        if (K->spec_.degree() != spec_in.degree()) throw std::logic_error("rebase changed the field");
    }
    K->f_ = f;
    K->n_ = K->spec_.degree();
    K->amb_ = std::make_shared<TensorCyclotomic>(f);
    const long n = K->n_;

    // orbits of H on Z/f
    std::vector<long> H = K->spec_.kernel_residues();
    long fdim = K->amb_->dim();
    std::vector<long> orbit_of(f, -1);
    std::vector<long> orbit_rep;
    for (long a = 0; a < f; ++a) {
        if (orbit_of[a] >= 0) continue;
        orbit_rep.push_back(a);
        for (long h : H) orbit_of[(a * (h % f)) % f] = (long)orbit_rep.size() - 1;
    }
    long norb = (long)orbit_rep.size();

    ZMat eta(norb, fdim);
    for (long o = 0; o < norb; ++o) {
        TensorCyclotomic::Elt acc = K->amb_->zero();
        for (long h : H) acc = K->amb_->add(acc, K->amb_->root_power(to_long(Int((Int(orbit_rep[o]) * h) % f))));
        eta.set_row(o, acc);
    }

    ZMat stack(norb + 1, fdim);
    stack.set_row(0, K->amb_->one());
    for (long o = 0; o < norb; ++o) stack.set_row(o + 1, eta.row(o));
    long rank = 0;
    ZMat B0 = hnf_of(stack, &rank);
    if (rank != n) throw std::logic_error("period order rank mismatch");

    auto b0_coords = [&](const std::vector<Int>& v) {
        auto c = coords_in_rowlattice(B0, v);
        if (!c) throw std::logic_error("period span error");
        return *c;
    };
    std::vector<std::vector<Int>> eta_c(norb);
    for (long o = 0; o < norb; ++o) eta_c[o] = b0_coords(eta.row(o));
    std::vector<Int> one_c = b0_coords(stack.row(0));

    auto eta_product_coords = [&](long oa, long ob) {
        std::vector<Int> acc(n);
        long a = orbit_rep[oa], b = orbit_rep[ob];
        for (long h : H) {
            long c = (a + to_long(Int((Int(b) * h) % f))) % f;
            const auto& ec = eta_c[orbit_of[c]];
            for (long k = 0; k < n; ++k) acc[k] += ec[k];
        }
        return acc;
    };

    // rows of B0 as combinations of [1, eta_0, ..., eta_{norb-1}]
    ZMat comb(n, norb + 1);
    for (long i = 0; i < n; ++i) {
        auto c = coords_in_rowlattice(stack, B0.row(i));
        if (!c) throw std::logic_error("period basis not in eta span");
        comb.set_row(i, *c);
    }

    // multiplication over B0
    std::vector<ZMat> mult0(n, ZMat(n, n));
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            std::vector<Int> acc(n);
            for (long s = 0; s <= norb; ++s) {
                if (comb.at(i, s) == 0) continue;
                for (long t = 0; t <= norb; ++t) {
                    if (comb.at(j, t) == 0) continue;
                    Int coef = comb.at(i, s) * comb.at(j, t);
                    std::vector<Int> pc;
                    if (s == 0 && t == 0)
                        pc = one_c;
                    else if (s == 0)
                        pc = eta_c[t - 1];
                    else if (t == 0)
                        pc = eta_c[s - 1];
                    else
                        pc = eta_product_coords(s - 1, t - 1);
                    for (long k = 0; k < n; ++k) acc[k] += coef * pc[k];
                }
            }
            for (long k = 0; k < n; ++k) {
                mult0[i].at(j, k) = acc[k];
                mult0[j].at(i, k) = acc[k];
            }
        }

    // traces over B0 (Tr eta_a = ramanujan_sum(a, f), Tr 1 = n)
    std::vector<Int> tr_b0(n);
    for (long i = 0; i < n; ++i) {
        Int t = comb.at(i, 0) * n;
        for (long o = 0; o < norb; ++o) t += comb.at(i, o + 1) * detail::ramanujan_sum(orbit_rep[o], f);
        tr_b0[i] = t;
    }
    ZMat gram0(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Int t = 0;
            for (long k = 0; k < n; ++k) t += mult0[i].at(j, k) * tr_b0[k];
            gram0.at(i, j) = t;
        }
    Int disc0 = det_bareiss(gram0);
    if (disc0 < 0) disc0 = -disc0;

    Int target = 1;
    for (auto& c : K->spec_.characters()) target *= c.conductor();

    // ---- round 2 ---------------------------------------------------------
    ZMat W = ZMat::identity(n);
    Int den = 1;

    // integral multiplication table of the order with basis rows W/den over B0
    auto order_tables = [&](const ZMat& Wb, const Int& d) {
        QMat Wq(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) Wq.at(i, j) = Rat(Wb.at(i, j), d);
        QMat Winv = qinverse(Wq);
        std::vector<ZMat> T(n, ZMat(n, n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                std::vector<Rat> prod(n, Rat(0));
                for (long s = 0; s < n; ++s) {
                    if (Wb.at(i, s) == 0) continue;
                    for (long t = 0; t < n; ++t) {
                        if (Wb.at(j, t) == 0) continue;
                        Rat coef = Rat(Wb.at(i, s) * Wb.at(j, t), d * d);
                        for (long k = 0; k < n; ++k)
                            if (mult0[s].at(t, k) != 0) prod[k] += coef * Rat(mult0[s].at(t, k));
                    }
                }
                for (long k = 0; k < n; ++k) {
                    Rat acc(0);
                    for (long s = 0; s < n; ++s)
                        if (prod[s] != 0) acc += prod[s] * Winv.at(s, k);
                    acc.canonicalize();
                    if (acc.get_den() != 1) throw std::logic_error("order table not integral");
                    T[i].at(j, k) = acc.get_num();
                }
            }
        return T;
    };

    Int idx2 = disc0 / target;
    for (auto& [pz, unused_e] : factorize(idx2)) {
        long p = to_long(pz);
        while (true) {
            auto T = order_tables(W, den);
            auto mul_mod_p = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
                std::vector<Int> c(n);
                for (long i = 0; i < n; ++i) {
                    if (a[i] == 0) continue;
                    for (long j = 0; j < n; ++j) {
                        if (b[j] == 0) continue;
                        Int coef = a[i] * b[j];
                        for (long k = 0; k < n; ++k)
                            if (T[i].at(j, k) != 0) c[k] += coef * T[i].at(j, k);
                    }
                }
                for (auto& x : c) x = mod_positive(x, Int(p));
                return c;
            };
            // coordinates of 1 in the current order basis
            std::vector<Int> one_cur(n);
            {
                QMat Wq(n, n);
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j) Wq.at(i, j) = Rat(W.at(i, j), den);
                // solve x * Wq = one_c (over B0 coords)
                std::vector<Rat> rhs(n);
                for (long i = 0; i < n; ++i) rhs[i] = Rat(one_c[i]);
                ZMat Wz(n, n);
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j) Wz.at(i, j) = W.at(i, j);
                auto x = solve_left_rational(Wz, rhs);
                if (!x) throw std::logic_error("1 not in order span");
                for (long i = 0; i < n; ++i) {
                    Rat v = (*x)[i] * Rat(den);
                    v.canonicalize();
                    if (v.get_den() != 1) throw std::logic_error("1 not in order");
                    one_cur[i] = v.get_num();
                }
            }
            auto pow_p = [&](std::vector<Int> base) {
                std::vector<Int> res = one_cur;
                for (auto& x : res) x = mod_positive(x, Int(p));
                long e2 = p;
                while (e2 > 0) {
                    if (e2 & 1) res = mul_mod_p(res, base);
                    e2 >>= 1;
                    if (e2) base = mul_mod_p(base, base);
                }
                return res;
            };
            // Frobenius-power matrix: x -> x^(p^m), p^m >= n
            ZMat F(n, n);
            for (long j = 0; j < n; ++j) {
                std::vector<Int> x(n);
                x[j] = 1;
                Int pm = 1;
                std::vector<Int> acc = x;
                while (pm < n) {
                    acc = pow_p(acc);
                    pm *= p;
                }
                for (long i = 0; i < n; ++i) F.at(i, j) = acc[i];
            }
            // radical lattice R = {x : F x == 0 mod p}
            ZMat pI(n, n);
            for (long i = 0; i < n; ++i) pI.at(i, i) = p;
            ZMat R = lattice_preimage({F}, pI);
            // multiplier lattice Y = {y : y * r in p R for all radical rows r}
            std::vector<ZMat> maps;
            for (long rr = 0; rr < n; ++rr) {
                // matrix of multiplication by radical row rr in order coords
                ZMat Mr(n, n);
                auto r = R.row(rr);
                for (long i = 0; i < n; ++i)
                    for (long j2 = 0; j2 < n; ++j2) {
                        if (r[j2] == 0) continue;
                        for (long k = 0; k < n; ++k)
                            if (T[i].at(j2, k) != 0) Mr.at(k, i) += r[j2] * T[i].at(j2, k);
                    }
                maps.push_back(Mr);
            }
            ZMat pR(n, n);
            for (long i = 0; i < n; ++i)
                for (long j2 = 0; j2 < n; ++j2) pR.at(i, j2) = R.at(i, j2) * p;
            ZMat Y = lattice_preimage(maps, pR);
            // new order rows over B0 at denominator den * p: Y * W plus p * W
            ZMat newrows(Y.m + n, n);
            for (long i = 0; i < Y.m; ++i) {
                std::vector<Int> overB0(n);
                for (long s = 0; s < n; ++s) {
                    if (Y.at(i, s) == 0) continue;
                    for (long t = 0; t < n; ++t) overB0[t] += Y.at(i, s) * W.at(s, t);
                }
                newrows.set_row(i, overB0);
            }
            for (long i = 0; i < n; ++i) {
                std::vector<Int> r(n);
                for (long t = 0; t < n; ++t) r[t] = W.at(i, t) * p;
                newrows.set_row(Y.m + i, r);
            }
            ZMat WH = hnf_of(newrows);
            Int detWH = 1, detWp = 1;
            for (long i = 0; i < n; ++i) {
                detWH *= WH.at(i, i);
                detWp *= W.at(i, i) * p;
            }
            if (detWH == detWp) break;  // no growth; p-maximal
            W = WH;
            den *= p;
            Int g = den;
            for (auto& x : W.a) {
                g = gcd(g, x);
                if (g == 1) break;
            }
            if (g > 1) {
                for (auto& x : W.a) x /= g;
                den /= g;
            }
        }
    }

    // ---- finalize ----------------------------------------------------------
    {
        auto T = order_tables(W, den);
        K->mult_ = std::move(T);
    }
    // ambient basis: (W * B0) / den must be integral (O_K inside Z[mu_f])
    {
        ZMat WB = ramc::mul(W, B0);
        for (auto& x : WB.a) {
            if (x % den != 0) throw std::logic_error("integral basis escapes Z[mu_f]");
            x /= den;
        }
        K->basis_ambient_ = std::move(WB);
    }
    {
        auto c = K->element_coords(K->amb_->one());
        if (!c) throw std::logic_error("1 not in final order");
        K->one_.v.assign(n, Int(0));
        for (long i = 0; i < n; ++i) {
            if ((*c)[i].get_den() != 1) throw std::logic_error("1 has non-integral coords");
            K->one_.v[i] = (*c)[i].get_num();
        }
    }
    // traces of basis elements: via ambient representation and Ramanujan sums
    K->basis_traces_.assign(n, Int(0));
    for (long i = 0; i < n; ++i) {
        Int t = 0;
        for (long j = 0; j < fdim; ++j) {
            const Int& c = K->basis_ambient_.at(i, j);
            if (c == 0) continue;
            // Tr_{K/Q}(zeta^a) = Tr_{Q(mu_f)/Q}(zeta^a) / [Q(mu_f):K]
            t += c * detail::ramanujan_sum(K->amb_->monomial_exponent(j), f);
        }
        Int idx(euler_phi(f) / n);
        if (t % idx != 0) throw std::logic_error("trace scaling error");
        K->basis_traces_[i] = t / idx;
    }
    K->gram_ = ZMat(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Int t = 0;
            for (long k = 0; k < n; ++k)
                if (K->mult_[i].at(j, k) != 0) t += K->mult_[i].at(j, k) * K->basis_traces_[k];
            K->gram_.at(i, j) = t;
        }
    K->disc_ = det_bareiss(K->gram_);
    if (K->disc_ < 0) K->disc_ = -K->disc_;
    if (K->disc_ != target)
        throw std::logic_error("discriminant " + K->disc_.get_str() +
                               " != conductor-discriminant product " + target.get_str());
    // embeddings indexed by coset reps of H
    {
        std::vector<char> seen(std::max(f, 2L), 0);
        for (long t = 1; t <= f || (long)K->coset_reps_.size() < n; ++t) {
            if (f == 1) {
                K->coset_reps_.push_back(1);
                break;
            }
            if (t > f) break;
            long tm = t % f;
            if (std::gcd(tm == 0 ? f : tm, f) != 1) continue;
            if (seen[tm]) continue;
            K->coset_reps_.push_back(tm);
            for (long h : H) seen[(tm * (h % f)) % f] = 1;
        }
        if ((long)K->coset_reps_.size() != n) throw std::logic_error("coset rep count mismatch");
    }
    K->ensure_embeddings(prec);
    return K;
}

inline void NumberField::ensure_embeddings(mpfr_prec_t prec) const {
    if (prec_ >= prec) return;
    for (mpfr_prec_t attempt = std::max<mpfr_prec_t>(prec, 64);; attempt *= 2) {
        emb_.assign(n_ * n_, Real(attempt));
        bool ok = true;
        Real tol(attempt);
        mpfr_set_ui_2exp(tol.get(), 1, -(long)(attempt / 2), MPFR_RNDN);
        for (long i = 0; i < n_ && ok; ++i) {
            long t = coset_reps_[i];
            for (long j = 0; j < n_ && ok; ++j) {
                Complex z = amb_->embed(basis_row_ambient(j), t, attempt);
                emb_[i * n_ + j] = z.re;
                if (!(abs(z.im) < tol * (Real(1, attempt) + abs(z.re)))) ok = false;
            }
        }
        if (ok) {
            // certify: embedding Gram reproduces the trace form
            Real one(1, attempt);
            for (long j = 0; j < n_ && ok; ++j)
                for (long k = 0; k < n_ && ok; ++k) {
                    Real s(attempt);
                    for (long i = 0; i < n_; ++i) s += emb_[i * n_ + j] * emb_[i * n_ + k];
                    if (!(abs(s - Real(gram_.at(j, k), attempt)) < tol * (one + abs(s)))) ok = false;
                }
        }
        if (ok) {
            prec_ = attempt;
            return;
        }
        if (attempt > (1L << 16)) throw PrecisionExhausted();
    }
}

inline const std::vector<NumberField::PrimeIdeal>& NumberField::primes_above(long q) const {
    auto it = prime_cache_.find(q);
    if (it != prime_cache_.end()) return it->second;

    const Int Q(q);
    auto mulmod = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        FieldElement z = mul(FieldElement{a}, FieldElement{b});
        for (auto& c : z.v) c = mod_positive(c, Q);
        return z.v;
    };

    // F_q row reduction returning pivot structure; solves x * rows = target.
    struct Echelon {
        std::vector<std::vector<Int>> rows;  // reduced rows
        std::vector<long> pivot;             // pivot column per row
        Int q;
        long n;
        void build(const std::vector<std::vector<Int>>& gen, const Int& qq, long nn) {
            q = qq;
            n = nn;
            for (auto g : gen) {
                for (auto& x : g) x = mod_positive(x, q);
                for (size_t r = 0; r < rows.size(); ++r) {
                    if (g[pivot[r]] != 0) {
                        Int f = g[pivot[r]];
                        for (long j = 0; j < n; ++j) g[j] = mod_positive(g[j] - f * rows[r][j], q);
                    }
                }
                long pc = -1;
                for (long j = 0; j < n; ++j)
                    if (g[j] != 0) {
                        pc = j;
                        break;
                    }
                if (pc < 0) continue;
                Int inv = inv_mod(g[pc], q);
                for (long j = 0; j < n; ++j) g[j] = mod_positive(g[j] * inv, q);
                rows.push_back(g);
                pivot.push_back(pc);
            }
        }
        // reduce v; returns remainder (zero iff v in span)
        std::vector<Int> reduce(std::vector<Int> v) const {
            for (auto& x : v) x = mod_positive(x, q);
            for (size_t r = 0; r < rows.size(); ++r) {
                if (v[pivot[r]] != 0) {
                    Int f = v[pivot[r]];
                    for (long j = 0; j < n; ++j) v[j] = mod_positive(v[j] - f * rows[r][j], q);
                }
            }
            return v;
        }
        bool contains(const std::vector<Int>& v) const {
            auto r = reduce(v);
            for (auto& x : r)
                if (x != 0) return false;
            return true;
        }
    };

    struct Sub {
        std::vector<std::vector<Int>> basis;  // F_q basis as elements of O/qO
        std::vector<Int> unit;                // identity of this component
    };
    std::vector<Sub> fields;  // local components paired with residue data
    std::vector<std::pair<Sub, long>> done_with_g;
    std::vector<Sub> work;
    {
        Sub all;
        for (long i = 0; i < n_; ++i) {
            std::vector<Int> e(n_, Int(0));
            e[i] = 1;
            all.basis.push_back(e);
        }
        all.unit = one_.v;
        for (auto& c : all.unit) c = mod_positive(c, Q);
        work.push_back(all);
    }
    detail::SplitRng rng(0x5bd1e995u ^ (uint64_t)q);
    while (!work.empty()) {
        Sub S = std::move(work.back());
        work.pop_back();
        long r = (long)S.basis.size();

        // radical dimension inside S: kernel of x -> x^{q^m} (restricted)
        long rad_dim;
        {
            Echelon es;
            es.build(S.basis, Q, n_);
            std::vector<std::vector<Int>> frob_img;
            for (auto& b : S.basis) {
                std::vector<Int> acc = b;
                Int pm = 1;
                while (pm < n_) {
                    // acc = acc^q via square-and-multiply
                    std::vector<Int> res = S.unit, cur = acc;
                    long e2 = q;
                    bool started = false;
                    while (e2 > 0) {
                        if (e2 & 1) {
                            res = started ? mulmod(res, cur) : cur;
                            started = true;
                        }
                        e2 >>= 1;
                        if (e2) cur = mulmod(cur, cur);
                    }
                    acc = res;
                    pm *= q;
                }
                frob_img.push_back(acc);
            }
            // rank of the map b_i -> frob_img_i as F_q-linear map on S
            Echelon img;
            img.build(frob_img, Q, n_);
            rad_dim = r - (long)img.rows.size();
        }
        long ss_dim = r - rad_dim;

        bool resolved = false;
        for (int attempt = 0; attempt < 400 && !resolved; ++attempt) {
            std::vector<Int> x(n_, Int(0));
            if (attempt < r) {
                x = S.basis[attempt];
            } else {
                for (long i = 0; i < r; ++i) {
                    Int c((unsigned long)(rng.next() % (unsigned long)q));
                    for (long j = 0; j < n_; ++j) x[j] = mod_positive(x[j] + c * S.basis[i][j], Q);
                }
            }
            // minimal polynomial of x in S
            std::vector<std::vector<Int>> pows{S.unit};
            FqPoly minpoly{Q, {}};
            {
                Echelon sp;
                std::vector<Int> cur = S.unit;
                sp.build({S.unit}, Q, n_);
                for (long dgr = 1; dgr <= r; ++dgr) {
                    cur = mulmod(cur, x);
                    pows.push_back(cur);
                    // is cur in span of previous powers? solve via small gauss
                    // using a fresh echelon each degree is fine at this scale.
                    Echelon e2;
                    e2.build(std::vector<std::vector<Int>>(pows.begin(), pows.end() - 1), Q, n_);
                    if (e2.contains(cur)) {
                        // solve coefficients: express cur over pows[0..dgr-1]
                        // via gaussian elimination on the transposed system
                        long nv = dgr;
                        std::vector<std::vector<Int>> M2(n_, std::vector<Int>(nv + 1));
                        for (long k = 0; k < n_; ++k) {
                            for (long i2 = 0; i2 < nv; ++i2) M2[k][i2] = mod_positive(pows[i2][k], Q);
                            M2[k][nv] = mod_positive(cur[k], Q);
                        }
                        long prow = 0;
                        std::vector<long> piv;
                        for (long col = 0; col < nv && prow < n_; ++col) {
                            long pr = -1;
                            for (long rr = prow; rr < n_; ++rr)
                                if (M2[rr][col] != 0) {
                                    pr = rr;
                                    break;
                                }
                            if (pr < 0) continue;
                            std::swap(M2[pr], M2[prow]);
                            Int inv = inv_mod(M2[prow][col], Q);
                            for (auto& v : M2[prow]) v = mod_positive(v * inv, Q);
                            for (long rr = 0; rr < n_; ++rr) {
                                if (rr == prow || M2[rr][col] == 0) continue;
                                Int fct = M2[rr][col];
                                for (long cc = 0; cc <= nv; ++cc)
                                    M2[rr][cc] = mod_positive(M2[rr][cc] - fct * M2[prow][cc], Q);
                            }
                            piv.push_back(col);
                            ++prow;
                        }
                        std::vector<Int> coef(nv, Int(0));
                        for (size_t pi2 = 0; pi2 < piv.size(); ++pi2) coef[piv[pi2]] = M2[pi2][nv];
                        std::vector<Int> mp(dgr + 1);
                        for (long i2 = 0; i2 < dgr; ++i2) mp[i2] = mod_positive(-coef[i2], Q);
                        mp[dgr] = 1;
                        minpoly = FqPoly::from(Q, mp);
                        break;
                    }
                }
            }
            if (minpoly.is_zero()) throw std::logic_error("minimal polynomial not found");
            auto facs = fq_factor(minpoly);
            if (facs.size() == 1) {
                if (facs[0].first.deg() == ss_dim) {
                    // local component confirmed: residue field = F_q[x]/fac
                    done_with_g.push_back({S, ss_dim});
                    resolved = true;
                }
                continue;  // need a better x
            }
            // split by CRT idempotents in F_q[T]/minpoly
            for (auto& [fac, mult] : facs) {
                FqPoly fm = fac;
                for (long t2 = 1; t2 < mult; ++t2) fm = fq_mul(fm, fac);
                FqPoly h = fq_divmod(minpoly, fm).first;
                // u with h*u == 1 mod fm (extended euclid)
                FqPoly a = h, b = fm;
                FqPoly u0 = FqPoly::constant(Q, 1), u1{Q, {}};
                while (!b.is_zero()) {
                    auto [qq, rr] = fq_divmod(a, b);
                    FqPoly u2 = fq_sub(u0, fq_mul(qq, u1));
                    a = b;
                    b = rr;
                    u0 = u1;
                    u1 = u2;
                }
                if (a.deg() != 0) throw std::logic_error("CRT idempotent failure");
                Int ainv = inv_mod(a.c[0], Q);
                for (auto& cc : u0.c) cc = mod_positive(cc * ainv, Q);
                FqPoly epoly = fq_mod(fq_mul(h, u0), minpoly);
                // evaluate epoly at x
                std::vector<Int> e(n_, Int(0));
                std::vector<Int> pw = S.unit;
                for (long dd = 0; dd <= epoly.deg(); ++dd) {
                    if (epoly.c[dd] != 0)
                        for (long j = 0; j < n_; ++j) e[j] = mod_positive(e[j] + epoly.c[dd] * pw[j], Q);
                    if (dd < epoly.deg()) pw = mulmod(pw, x);
                }
                Sub ns;
                ns.unit = e;
                std::vector<std::vector<Int>> gen;
                for (auto& bb : S.basis) gen.push_back(mulmod(e, bb));
                Echelon eg;
                eg.build(gen, Q, n_);
                ns.basis = eg.rows;
                if (!ns.basis.empty()) work.push_back(ns);
            }
            resolved = true;
        }
        if (!resolved) throw std::logic_error("algebra splitting did not converge");
    }

    // primes: P = kernel of O -> S/rad(S)  (x maps to x * unit_S)
    std::vector<PrimeIdeal> result;
    for (auto& [S, g] : done_with_g) {
        // images x_j = e_j * unit_S; the radical of S = kernel of Frobenius^m
        // restricted to S; P = {x : x*unit in rad(S)} + qO.
        // Compute rad(S) basis:
        std::vector<std::vector<Int>> rad_basis;
        {
            std::vector<std::vector<Int>> frob_img;
            for (auto& b : S.basis) {
                std::vector<Int> acc = b;
                Int pm = 1;
                while (pm < n_) {
                    std::vector<Int> res = S.unit, cur = acc;
                    long e2 = q;
                    bool started = false;
                    while (e2 > 0) {
                        if (e2 & 1) {
                            res = started ? mulmod(res, cur) : cur;
                            started = true;
                        }
                        e2 >>= 1;
                        if (e2) cur = mulmod(cur, cur);
                    }
                    acc = res;
                    pm *= q;
                }
                frob_img.push_back(acc);
            }
            // radical = {combos c of basis : sum c_i frob_img_i == 0}
            // solve via gaussian elimination over F_q
            long r = (long)S.basis.size();
            std::vector<std::vector<Int>> M2(n_, std::vector<Int>(r));
            for (long k = 0; k < n_; ++k)
                for (long i = 0; i < r; ++i) M2[k][i] = mod_positive(frob_img[i][k], Q);
            // kernel of M2 (n_ x r) over F_q
            // row reduce, find free columns
            long prow = 0;
            std::vector<long> piv(r, -1);
            for (long col = 0; col < r && prow < n_; ++col) {
                long pr = -1;
                for (long rr = prow; rr < n_; ++rr)
                    if (M2[rr][col] != 0) {
                        pr = rr;
                        break;
                    }
                if (pr < 0) continue;
                std::swap(M2[pr], M2[prow]);
                Int inv = inv_mod(M2[prow][col], Q);
                for (auto& v : M2[prow]) v = mod_positive(v * inv, Q);
                for (long rr = 0; rr < n_; ++rr) {
                    if (rr == prow || M2[rr][col] == 0) continue;
                    Int fct = M2[rr][col];
                    for (long cc = 0; cc < r; ++cc)
                        M2[rr][cc] = mod_positive(M2[rr][cc] - fct * M2[prow][cc], Q);
                }
                piv[col] = prow;
                ++prow;
            }
            for (long col = 0; col < r; ++col) {
                if (piv[col] >= 0) continue;
                std::vector<Int> c(r, Int(0));
                c[col] = 1;
                for (long c2 = 0; c2 < r; ++c2)
                    if (piv[c2] >= 0) c[c2] = mod_positive(-M2[piv[c2]][col], Q);
                std::vector<Int> elt(n_, Int(0));
                for (long i = 0; i < r; ++i)
                    if (c[i] != 0)
                        for (long j = 0; j < n_; ++j) elt[j] = mod_positive(elt[j] + c[i] * S.basis[i][j], Q);
                rad_basis.push_back(elt);
            }
        }
        Echelon target_ok;  // span of rad(S) (the part of S that x*unit may hit)
        target_ok.build(rad_basis, Q, n_);
        // kernel rows: x with x*unit reducing to zero against S-basis modulo rad:
        // equivalently x*unit in rad span.
        ZMat Prow(n_ + n_, n_);
        long cnt = 0;
        {
            // solve linear system: coords of x over e_j; x*unit in rad-span.
            // Build matrix of map x -> x*unit (n x n over F_q), then kernel of
            // composition with quotient by rad-span.
            // quotient test: reduce against echelon of rad-span and require 0.
            std::vector<std::vector<Int>> mapimg(n_);
            for (long j = 0; j < n_; ++j) {
                std::vector<Int> ej(n_, Int(0));
                ej[j] = 1;
                mapimg[j] = mulmod(ej, S.unit);
            }
            // unknown x in F_q^n: sum x_j (mapimg_j reduced mod rad) == 0.
            std::vector<std::vector<Int>> M2(n_, std::vector<Int>(n_));
            for (long j = 0; j < n_; ++j) {
                auto red = target_ok.reduce(mapimg[j]);
                for (long k = 0; k < n_; ++k) M2[k][j] = red[k];
            }
            // kernel of M2 over F_q
            long prow = 0;
            std::vector<long> piv(n_, -1);
            for (long col = 0; col < n_ && prow < n_; ++col) {
                long pr = -1;
                for (long rr = prow; rr < n_; ++rr)
                    if (M2[rr][col] != 0) {
                        pr = rr;
                        break;
                    }
                if (pr < 0) continue;
                std::swap(M2[pr], M2[prow]);
                Int inv = inv_mod(M2[prow][col], Q);
                for (auto& v : M2[prow]) v = mod_positive(v * inv, Q);
                for (long rr = 0; rr < n_; ++rr) {
                    if (rr == prow || M2[rr][col] == 0) continue;
                    Int fct = M2[rr][col];
                    for (long cc = 0; cc < n_; ++cc)
                        M2[rr][cc] = mod_positive(M2[rr][cc] - fct * M2[prow][cc], Q);
                }
                piv[col] = prow;
                ++prow;
            }
            for (long col = 0; col < n_; ++col) {
                if (piv[col] >= 0) continue;
                std::vector<Int> x(n_, Int(0));
                x[col] = 1;
                for (long c2 = 0; c2 < n_; ++c2)
                    if (piv[c2] >= 0) x[c2] = mod_positive(-M2[piv[c2]][col], Q);
                Prow.set_row(cnt++, x);
            }
        }
        ZMat Pr(cnt + n_, n_);
        for (long i = 0; i < cnt; ++i)
            for (long j = 0; j < n_; ++j) Pr.at(i, j) = Prow.at(i, j);
        for (long i = 0; i < n_; ++i) Pr.at(cnt + i, i) = q;
        PrimeIdeal P;
        P.q = q;
        P.g = g;
        P.I = ideal_from_rows(Pr);
        if (ideal_norm(P.I) != ipow(Int(q), g)) throw std::logic_error("prime norm mismatch");
        result.push_back(std::move(P));
    }

    // two-element form, valuation helper, ramification
    for (auto& P : result) {
        bool found = false;
        for (long i = 0; i < n_ && !found; ++i) {
            FieldElement cand{P.I.hnf.row(i)};
            if (ideal_equal(ideal_from_generators(Q, {cand}), P.I)) {
                P.pi = cand;
                found = true;
            }
        }
        detail::SplitRng rng2(0xabcdef12345678ull ^ (uint64_t)q);
        for (long tries = 0; tries < 500 && !found; ++tries) {
            FieldElement cand = zero();
            for (long i = 0; i < n_; ++i) {
                Int c((unsigned long)(rng2.next() % 3));
                if (c == 2) c = -1;
                for (long j = 0; j < n_; ++j) cand.v[j] += c * P.I.hnf.at(i, j);
            }
            if (is_zero(cand)) continue;
            if (ideal_equal(ideal_from_generators(Q, {cand}), P.I)) {
                P.pi = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("two-element representation not found");
        auto [lat, denom] = ideal_inverse(P.I);
        bool got = false;
        for (long i = 0; i < lat.m && !got; ++i) {
            auto row = lat.row(i);
            bool integral = true;
            for (auto& c : row)
                if (c % denom != 0) integral = false;
            if (integral) continue;
            P.bnum = FieldElement{row};
            P.bden = denom;
            got = true;
        }
        if (!got) throw std::logic_error("valuation helper not found");
    }
    for (auto& P : result) P.e = val_ideal(P, ideal_from_generators(Q, {}));

    long sum = 0;
    std::string shape;
    for (auto& P : result) {
        sum += P.e * P.g;
        shape += "(" + std::to_string(P.e) + "," + std::to_string(P.g) + ")";
    }
    if (sum != n_)
        throw std::logic_error("sum e*g != degree at q=" + std::to_string(q) + " shape " + shape);
    // cross-check against the character-side splitting law
    {
        auto S = splitting_with_ramification(spec_, q);
        if ((long)result.size() != S.count) throw std::logic_error("prime count disagrees with characters");
        for (auto& P : result)
            if (P.e != S.e || P.g != S.g) throw std::logic_error("(e,g) disagrees with characters");
    }

    std::sort(result.begin(), result.end(),
              [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.I.hnf.a < b.I.hnf.a; });
    return prime_cache_.emplace(q, std::move(result)).first->second;
}

}  // namespace ramc

#endif
