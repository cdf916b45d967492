// Exact arithmetic in Z[mu_f] on the tensor power basis over the prime-power
// factors of f.  Elements are integer coordinate vectors of length phi(f);
// multiplication reduces per factor through Phi_{p^k}(x) = Phi_p(x^{p^{k-1}}).
#ifndef RAMC_CYCLOTOMIC_HPP
#define RAMC_CYCLOTOMIC_HPP

#include <vector>

#include "ramc/integers.hpp"
#include "ramc/real.hpp"

namespace ramc {

class TensorCyclotomic {
  public:
    explicit TensorCyclotomic(long f) : f_(f) {
        if (f < 1) throw std::domain_error("TensorCyclotomic: bad conductor");
        for (auto& [p, k] : factorize(Int(f))) {
            Factor F;
            F.p = to_long(p);
            F.k = k;
            F.pk = to_long(ipow(p, k));
            F.phi = F.pk / F.p * (F.p - 1);
            factors_.push_back(F);
        }
        dim_ = 1;
        for (auto& F : factors_) {
            strides_.push_back(dim_);
            dim_ *= F.phi;
        }
        // crt exponents: zeta_f = prod_i zeta_{pk_i}^{u_i} with
        // sum_i u_i * (f / pk_i) == 1 (mod f).
        for (auto& F : factors_) {
            long rest = f_ / F.pk;
            crt_u_.push_back(to_long(inv_mod(Int(rest), Int(F.pk))));
        }
        // per-factor reduction of x^m (0 <= m < pk) onto the power basis
        for (auto& F : factors_) {
            std::vector<std::vector<std::pair<long, int>>> red(F.pk);
            long q = F.pk / F.p;  // p^{k-1}
            for (long m = 0; m < F.pk; ++m) {
                if (m < F.phi) {
                    red[m] = {{m, 1}};
                } else {
                    long r = m - F.phi;  // < p^{k-1}
                    for (long j = 0; j + 1 < F.p; ++j) red[m].push_back({r + j * q, -1});
                }
            }
            reduce_.push_back(std::move(red));
        }
    }

    long conductor() const { return f_; }
    long dim() const { return dim_; }

    using Elt = std::vector<Int>;

    Elt zero() const { return Elt(dim_); }
    Elt one() const {
        Elt e(dim_);
        e[0] = 1;
        return e;
    }

    // zeta_f^a as a coordinate vector.
    Elt root_power(long a) const {
        a %= f_;
        if (a < 0) a += f_;
        Elt out(dim_);
        add_monomial(out, Int(1), per_factor_exponents(a));
        return out;
    }

    Elt add(const Elt& x, const Elt& y) const {
        Elt z(dim_);
        for (long i = 0; i < dim_; ++i) z[i] = x[i] + y[i];
        return z;
    }
    Elt sub(const Elt& x, const Elt& y) const {
        Elt z(dim_);
        for (long i = 0; i < dim_; ++i) z[i] = x[i] - y[i];
        return z;
    }

    Elt mul(const Elt& x, const Elt& y) const {
        Elt z(dim_);
        std::vector<long> ex(factors_.size()), ey(factors_.size()), es(factors_.size());
        for (long i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            index_to_exponents(i, ex);
            for (long j = 0; j < dim_; ++j) {
                if (y[j] == 0) continue;
                index_to_exponents(j, ey);
                for (size_t t = 0; t < factors_.size(); ++t) {
                    es[t] = ex[t] + ey[t];
                    if (es[t] >= factors_[t].pk) es[t] -= factors_[t].pk;
                }
                Int c = x[i] * y[j];
                add_monomial(z, c, es);
            }
        }
        return z;
    }

    // Basis monomial idx equals zeta_f^{monomial_exponent(idx)}.
    long monomial_exponent(long idx) const {
        std::vector<long> e(factors_.size());
        index_to_exponents(idx, e);
        Int a = 0;
        for (size_t s = 0; s < factors_.size(); ++s) a += Int(e[s]) * (f_ / factors_[s].pk);
        return to_long(mod_positive(a, Int(f_)));
    }

    // Galois action: sigma_t(zeta^a) = zeta^{ta}, gcd(t, f) = 1.
    Elt galois(const Elt& x, long t) const {
        Elt z(dim_);
        std::vector<long> ex(factors_.size()), es(factors_.size());
        for (long i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            index_to_exponents(i, ex);
            for (size_t s = 0; s < factors_.size(); ++s)
                es[s] = to_long(Int((Int(ex[s]) * t) % factors_[s].pk));
            add_monomial(z, x[i], es);
        }
        return z;
    }

    // Complex embedding zeta_f -> exp(2 pi i t / f).
    Complex embed(const Elt& x, long t, mpfr_prec_t prec) const {
        Complex acc(prec);
        std::vector<long> ex(factors_.size());
        for (long i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            index_to_exponents(i, ex);
            // monomial = prod_s zeta_{pk_s}^{e_s} = zeta_f^{sum_s e_s * f/pk_s}
            Int a = 0;
            for (size_t s = 0; s < factors_.size(); ++s)
                a += Int(ex[s]) * (f_ / factors_[s].pk);
            long ar = to_long(mod_positive(a * t, Int(f_)));
            Complex z = root_of_unity(ar, f_, prec);
            Real c(x[i], prec);
            acc.re += z.re * c;
            acc.im += z.im * c;
        }
        return acc;
    }

  private:
    struct Factor {
        long pk, p, k, phi;
    };
    long f_, dim_ = 1;
    std::vector<Factor> factors_;
    std::vector<long> strides_;
    std::vector<long> crt_u_;
    std::vector<std::vector<std::vector<std::pair<long, int>>>> reduce_;

    // exponent vector of zeta_f^a on the factors: a * u_i mod pk_i
    std::vector<long> per_factor_exponents(long a) const {
        std::vector<long> e(factors_.size());
        for (size_t s = 0; s < factors_.size(); ++s)
            e[s] = to_long(Int((Int(a) * crt_u_[s]) % factors_[s].pk));
        return e;
    }

    void index_to_exponents(long idx, std::vector<long>& e) const {
        for (size_t s = 0; s < factors_.size(); ++s) {
            e[s] = (idx / strides_[s]) % factors_[s].phi;
        }
    }

    // Add c * prod_s x_s^{e_s} (0 <= e_s < pk_s) to out, reducing per factor.
    void add_monomial(Elt& out, const Int& c, const std::vector<long>& es) const {
        // expand the per-factor reductions recursively
        struct Term {
            long index;
            int sign;
        };
        std::vector<Term> terms = {{0, 1}};
        for (size_t s = 0; s < factors_.size(); ++s) {
            const auto& red = reduce_[s][es[s]];
            std::vector<Term> next;
            next.reserve(terms.size() * red.size());
            for (auto& t : terms)
                for (auto& [idx, sg] : red)
                    next.push_back({t.index + idx * strides_[s], t.sign * sg});
            terms = std::move(next);
        }
        for (auto& t : terms) {
            if (t.sign > 0)
                out[t.index] += c;
            else
                out[t.index] -= c;
        }
    }
};

}  // namespace ramc

#endif
