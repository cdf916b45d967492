// Exact integer utilities shared by every module: gcd/order arithmetic in
// (Z/m)^*, prime sieves, trial-division factorization, CRT.
#ifndef RAMC_INTEGERS_HPP
#define RAMC_INTEGERS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramc {

using Int = mpz_class;
using Rat = mpq_class;

inline long to_long(const Int& a) {
    if (!a.fits_slong_p()) throw std::overflow_error("to_long: value does not fit");
    return a.get_si();
}

inline Int ipow(Int base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int pow_mod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long pow_mod(long b, long e, long m) {
    return to_long(pow_mod(Int(b), Int(e), Int(m)));
}

inline Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("inv_mod: not invertible mod " + m.get_str());
    return r;
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}
inline bool is_prime(long n) { return is_prime(Int(n)); }

// Primes in [2, bound] by plain sieve.
inline std::vector<long> primes_up_to(long bound) {
    std::vector<long> ps;
    if (bound < 2) return ps;
    std::vector<bool> comp(bound + 1, false);
    for (long i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        ps.push_back(i);
        for (long j = 2 * i; j <= bound; j += i) comp[j] = true;
    }
    return ps;
}

inline long valuation(Int n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation of 0");
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

// Trial-division factorization; adequate for the conductor/discriminant
// scale this toolkit works at.
inline std::map<Int, long> factorize(Int n) {
    std::map<Int, long> f;
    if (n < 0) n = -n;
    if (n <= 1) return f;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            f[p]++;
            n /= p;
        }
    }
    if (n > 1) f[n]++;
    return f;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(Int(n))) {
        long pl = to_long(p);
        r -= r / pl;
    }
    return r;
}

// Multiplicative order of a modulo m, gcd(a,m)=1.
inline long mult_order(const Int& a, const Int& m) {
    if (m == 1) return 1;
    if (gcd(a, m) != 1) throw std::domain_error("mult_order: gcd != 1");
    long phi = euler_phi(to_long(m));
    long ord = phi;
    for (auto& [p, e] : factorize(Int(phi))) {
        long pl = to_long(p);
        while (ord % pl == 0 && pow_mod(a, Int(ord / pl), m) == 1) ord /= pl;
    }
    return ord;
}
inline long mult_order(long a, long m) { return mult_order(Int(a), Int(m)); }

// Smallest primitive root modulo p^k (p odd prime) or modulo 2, 4.
inline long primitive_root(long pk) {
    if (pk == 1) return 1;
    if (pk == 2) return 1;
    if (pk == 4) return 3;
    auto f = factorize(Int(pk));
    if (f.size() != 1) throw std::domain_error("primitive_root: not a prime power");
    long p = to_long(f.begin()->first);
    if (p == 2) throw std::domain_error("primitive_root: 2^k with k>2 is not cyclic");
    long phi = euler_phi(pk);
    for (long g = 2; g < pk; ++g) {
        if (std::gcd(g, pk) != 1) continue;
        if (mult_order(g, pk) == phi) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

// x = r1 mod m1, x = r2 mod m2 for coprime moduli.
inline Int crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    Int m = m1 * m2;
    Int x = r1 + m1 * ((r2 - r1) * inv_mod(m1, m2) % m2);
    x %= m;
    if (x < 0) x += m;
    return x;
}

namespace detail {
// deterministic xorshift used wherever a reproducible random stream is needed
struct SplitRng {
    uint64_t s;
    explicit SplitRng(uint64_t seed = 0x9e3779b97f4a7c15ull) : s(seed ? seed : 1) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};
}  // namespace detail

inline Int mod_positive(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

}  // namespace ramc

#endif
