// Univariate polynomial factorization over F_q (q prime), used when splitting
// the algebra O/qO into its local components.  Cantor-Zassenhaus with a
// fixed-seed generator so runs are reproducible.
#ifndef RAMC_FQ_POLY_HPP
#define RAMC_FQ_POLY_HPP

#include <vector>

#include "ramc/integers.hpp"

namespace ramc {

// Polynomials over F_q as coefficient vectors (index = degree), always kept
// with nonzero leading coefficient (or empty = zero polynomial).
struct FqPoly {
    Int q;
    std::vector<Int> c;

    long deg() const { return (long)c.size() - 1; }
    bool is_zero() const { return c.empty(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    static FqPoly from(const Int& q, std::vector<Int> coeffs) {
        FqPoly f{q, std::move(coeffs)};
        for (auto& x : f.c) x = mod_positive(x, q);
        f.trim();
        return f;
    }

    static FqPoly xpoly(const Int& q) { return from(q, {0, 1}); }
    static FqPoly constant(const Int& q, const Int& a) { return from(q, {a}); }
};

inline FqPoly fq_add(const FqPoly& a, const FqPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c.size()) c[i] += a.c[i];
        if (i < b.c.size()) c[i] += b.c[i];
    }
    return FqPoly::from(a.q, std::move(c));
}

inline FqPoly fq_sub(const FqPoly& a, const FqPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c.size()) c[i] += a.c[i];
        if (i < b.c.size()) c[i] -= b.c[i];
    }
    return FqPoly::from(a.q, std::move(c));
}

inline FqPoly fq_mul(const FqPoly& a, const FqPoly& b) {
    if (a.is_zero() || b.is_zero()) return FqPoly{a.q, {}};
    std::vector<Int> c(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return FqPoly::from(a.q, std::move(c));
}

// division with remainder (monic-friendly; divisor need not be monic)
inline std::pair<FqPoly, FqPoly> fq_divmod(const FqPoly& a, const FqPoly& b) {
    if (b.is_zero()) throw std::domain_error("fq_divmod: division by zero");
    FqPoly r = a, qout{a.q, {}};
    qout.c.assign(std::max<long>(0, a.deg() - b.deg() + 1), Int(0));
    Int lead_inv = inv_mod(b.c.back(), a.q);
    while (!r.is_zero() && r.deg() >= b.deg()) {
        long shift = r.deg() - b.deg();
        Int f = mod_positive(r.c.back() * lead_inv, a.q);
        qout.c[shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[shift + i] = mod_positive(r.c[shift + i] - f * b.c[i], a.q);
        r.trim();
    }
    qout.trim();
    return {qout, r};
}

inline FqPoly fq_mod(const FqPoly& a, const FqPoly& b) { return fq_divmod(a, b).second; }

inline FqPoly fq_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = fq_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        Int li = inv_mod(a.c.back(), a.q);
        for (auto& x : a.c) x = mod_positive(x * li, a.q);
    }
    return a;
}

inline FqPoly fq_powmod(FqPoly base, Int e, const FqPoly& m) {
    FqPoly r = FqPoly::constant(base.q, 1);
    base = fq_mod(base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fq_mod(fq_mul(r, base), m);
        base = fq_mod(fq_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

inline FqPoly fq_derivative(const FqPoly& a) {
    std::vector<Int> c;
    for (size_t i = 1; i < a.c.size(); ++i) c.push_back(a.c[i] * (long)i);
    return FqPoly::from(a.q, std::move(c));
}

// all monic irreducible factors with multiplicity (Cantor-Zassenhaus)
inline std::vector<std::pair<FqPoly, long>> fq_factor(const FqPoly& f0) {
    const Int q = f0.q;
    std::vector<std::pair<FqPoly, long>> out;
    if (f0.deg() <= 0) return out;
    // make monic
    FqPoly f = f0;
    Int li = inv_mod(f.c.back(), q);
    for (auto& x : f.c) x = mod_positive(x * li, q);

    // squarefree decomposition by repeated gcd with derivative
    struct Work {
        FqPoly g;
        long mult;
    };
    std::vector<Work> sqfree;
    std::vector<Work> stack{{f, 1}};
    while (!stack.empty()) {
        auto [g, mult] = stack.back();
        stack.pop_back();
        if (g.deg() <= 0) continue;
        FqPoly d = fq_derivative(g);
        if (d.is_zero()) {
            // g = h(x^q); over F_q (q prime) g(x) = h(x)^q with coefficient roots
            long p = to_long(q);
            std::vector<Int> h;
            for (size_t i = 0; i < g.c.size(); i += p) h.push_back(g.c[i]);
            stack.push_back({FqPoly::from(q, std::move(h)), mult * p});
            continue;
        }
        FqPoly s = fq_gcd(g, d);
        if (s.deg() == 0) {
            sqfree.push_back({g, mult});
        } else {
            FqPoly g1 = fq_divmod(g, s).first;
            stack.push_back({g1, mult});
            stack.push_back({s, mult});
        }
    }
    // merge duplicate squarefree parts: factor each part, collect with mult
    detail::SplitRng rng;
    for (auto& [g, mult] : sqfree) {
        // distinct degree
        FqPoly x = FqPoly::xpoly(q);
        FqPoly h = x;
        FqPoly rest = g;
        long d = 0;
        std::vector<std::pair<FqPoly, long>> dd;  // (product of irreducibles of degree d, d)
        while (rest.deg() > 0) {
            ++d;
            if (2 * d > rest.deg()) {
                dd.push_back({rest, rest.deg()});
                break;
            }
            h = fq_powmod(h, q, rest);
            FqPoly gd = fq_gcd(fq_sub(h, x), rest);
            if (gd.deg() > 0) {
                dd.push_back({gd, d});
                rest = fq_divmod(rest, gd).first;
                h = fq_mod(h, rest);
            }
        }
        // equal degree split
        for (auto& [prod, dgr] : dd) {
            std::vector<FqPoly> todo{prod};
            while (!todo.empty()) {
                FqPoly c = todo.back();
                todo.pop_back();
                if (c.deg() == dgr) {
                    bool found = false;
                    for (auto& [fac, m] : out)
                        if (fac.c == c.c) {
                            m += mult;
                            found = true;
                        }
                    if (!found) out.push_back({c, mult});
                    continue;
                }
                // random split
                FqPoly r{q, {}};
                long n = c.deg();
                r.c.resize(n);
                for (long i = 0; i < n; ++i) r.c[i] = Int((unsigned long)(rng.next() % (unsigned long)to_long(q)));
                r.trim();
                if (r.deg() < 1) {
                    todo.push_back(c);  // degenerate sample; retry
                    continue;
                }
                FqPoly gc = fq_gcd(r, c);
                if (gc.deg() > 0 && gc.deg() < c.deg()) {
                    todo.push_back(gc);
                    todo.push_back(fq_divmod(c, gc).first);
                    continue;
                }
                FqPoly e;
                if (q == 2) {
                    // trace map sum r^{2^i}
                    e = r;
                    FqPoly t = r;
                    for (long i = 1; i < dgr; ++i) {
                        t = fq_mod(fq_mul(t, t), c);
                        e = fq_add(e, t);
                    }
                } else {
                    Int expo = (ipow(q, dgr) - 1) / 2;
                    e = fq_sub(fq_powmod(r, expo, c), FqPoly::constant(q, 1));
                }
                FqPoly ge = fq_gcd(e, c);
                if (ge.deg() > 0 && ge.deg() < c.deg()) {
                    todo.push_back(ge);
                    todo.push_back(fq_divmod(c, ge).first);
                } else {
                    todo.push_back(c);  // retry with fresh randomness
                }
            }
        }
    }
    return out;
}

}  // namespace ramc

#endif
