// Thin RAII wrapper around MPFR reals plus a small complex pair type.
// Precision is carried per value; binary ops widen to the larger operand.
#ifndef RAMC_REAL_HPP
#define RAMC_REAL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "ramc/integers.hpp"

namespace ramc {

class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(double d, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, d, MPFR_RNDN); }
    Real(long v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
    Real(int v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
    Real(const Int& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN); }
    Real(const Rat& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_q(x_, v.get_mpq_t(), MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }

    // Nearest integer; fails only on NaN/Inf.
    Int round() const {
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_round(t, x_);
        Int r;
        mpfr_get_z(r.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return r;
    }

    std::string str(size_t digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", (int)digits, x_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.x_, a.x_, MPFR_RNDN); return r; }

#define RAMC_REAL_BINOP(op, fn)                                                   \
    friend Real operator op(const Real& a, const Real& b) {                      \
        Real r(std::max(a.prec(), b.prec()));                                     \
        fn(r.x_, a.x_, b.x_, MPFR_RNDN);                                          \
        return r;                                                                 \
    }
    RAMC_REAL_BINOP(+, mpfr_add)
    RAMC_REAL_BINOP(-, mpfr_sub)
    RAMC_REAL_BINOP(*, mpfr_mul)
    RAMC_REAL_BINOP(/, mpfr_div)
#undef RAMC_REAL_BINOP

    Real& operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }

    friend Real abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real cos(const Real& a) { Real r(a.prec()); mpfr_cos(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real sin(const Real& a) { Real r(a.prec()); mpfr_sin(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real pow(const Real& a, long e) { Real r(a.prec()); mpfr_pow_si(r.x_, a.x_, e, MPFR_RNDN); return r; }

    static Real pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.x_, MPFR_RNDN); return r; }

  private:
    mpfr_t x_;
};

// cos(2*pi*k/f), the only transcendental evaluation the toolkit needs.
inline Real cos2pi(long k, long f, mpfr_prec_t prec) {
    Real ang = Real::pi(prec + 16) * Real(2, prec + 16) * Real(Rat(Int(k), Int(f)), prec + 16);
    Real r(prec);
    mpfr_cos(r.get(), ang.get(), MPFR_RNDN);
    return r;
}

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
};

inline Complex root_of_unity(long k, long f, mpfr_prec_t prec) {
    // exp(2*pi*i*k/f)
    k %= f;
    if (k < 0) k += f;
    Real ang = Real::pi(prec + 16) * Real(2, prec + 16) * Real(Rat(Int(k), Int(f)), prec + 16);
    Real c(prec), s(prec);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    return {c, s};
}

}  // namespace ramc

#endif
