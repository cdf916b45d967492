// Exact lattice machinery over the trace form: LLL reduction with rational
// Gram-Schmidt and Fincke-Pohst enumeration with exact integer bounds.
#ifndef RAMC_ENUMERATE_HPP
#define RAMC_ENUMERATE_HPP

#include <functional>
#include <vector>

#include "ramc/linalg.hpp"

namespace ramc {

struct BudgetExceeded : std::runtime_error {
    long nodes_done;
    explicit BudgetExceeded(long done)
        : std::runtime_error("enumeration node budget exceeded"), nodes_done(done) {}
};

// LLL on a positive-definite exact Gram matrix G; returns unimodular U with
// G' = U G U^T reduced (rows of U are the new basis in old coordinates).
inline ZMat lll_gram(const ZMat& G0, long delta_num = 99, long delta_den = 100) {
    long n = G0.m;
    ZMat U = ZMat::identity(n);
    // current Gram as rationals
    QMat G = QMat::from(G0);

    // Gram-Schmidt data recomputed incrementally
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
    std::vector<Rat> B(n);

    auto recompute = [&]() {
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < i; ++j) {
                Rat s = G.at(i, j);
                for (long k = 0; k < j; ++k) s -= mu[i][k] * mu[j][k] * B[k];
                mu[i][j] = B[j] == 0 ? Rat(0) : Rat(s / B[j]);
                mu[i][j].canonicalize();
            }
            Rat b = G.at(i, i);
            for (long k = 0; k < i; ++k) b -= mu[i][k] * mu[i][k] * B[k];
            B[i] = b;
        }
    };

    // Maintain U only; recompute G = U G0 U^T after every change (cheap at
    // the ranks this toolkit sees).
    auto full_gram = [&]() {
        QMat UQ(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) UQ.at(i, j) = Rat(U.at(i, j));
        G = qmul(qmul(UQ, QMat::from(G0)), [&] {
            QMat T(n, n);
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) T.at(i, j) = Rat(U.at(j, i));
            return T;
        }());
    };

    full_gram();
    recompute();
    long k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 100000) throw std::runtime_error("lll_gram: too many iterations");
        // size reduction
        for (long j = k - 1; j >= 0; --j) {
            Rat m = mu[k][j];
            Int q;
            // nearest integer to m
            Int num = m.get_num(), den = m.get_den();
            Int a = 2 * num + den, b = 2 * den;
            mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (q != 0) {
                for (long t = 0; t < n; ++t) U.at(k, t) -= q * U.at(j, t);
                full_gram();
                recompute();
            }
        }
        // Lovasz condition
        Rat lhs = B[k];
        Rat rhs = (Rat(delta_num, delta_den) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        lhs.canonicalize();
        rhs.canonicalize();
        if (lhs >= rhs) {
            ++k;
        } else {
            for (long t = 0; t < n; ++t) std::swap(U.at(k, t), U.at(k - 1, t));
            full_gram();
            recompute();
            k = std::max(1L, k - 1);
        }
    }
    return U;
}

// floor(sqrt(r)) for rational r >= 0
inline Int floor_sqrt(const Rat& r) {
    if (r < 0) throw std::domain_error("floor_sqrt of negative");
    // floor(sqrt(num/den)) = floor(sqrt(num*den)/den)
    Int nd = r.get_num() * r.get_den();
    Int s;
    mpz_sqrt(s.get_mpz_t(), nd.get_mpz_t());
    Int q = s / r.get_den();
    // adjust: want largest q with q^2 <= r
    while (Rat(q + 1) * Rat(q + 1) <= r) ++q;
    while (q > 0 && Rat(q) * Rat(q) > r) --q;
    return q;
}

// Fincke-Pohst: all nonzero x (up to sign: first nonzero coordinate > 0) with
// x G x^T <= bound.  Exact arithmetic throughout.  Callback returns false to
// abort.  node_budget < 0 means unlimited.
inline void enumerate_gram(const ZMat& G, const Int& bound,
                           const std::function<bool(const std::vector<Int>&, const Int&)>& cb,
                           long node_budget = -1) {
    long n = G.m;
    // exact Cholesky: Q(x) = sum_i q_i (x_i + sum_{j>i} m_ij x_j)^2
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    std::vector<Rat> q(n);
    {
        QMat A = QMat::from(G);
        std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) a[i][j] = A.at(i, j);
        for (long i = 0; i < n; ++i) {
            q[i] = a[i][i];
            if (q[i] <= 0) throw std::domain_error("enumerate_gram: not positive definite");
            for (long j = i + 1; j < n; ++j) m[i][j] = a[i][j] / q[i];
            for (long k = i + 1; k < n; ++k)
                for (long l = k; l < n; ++l) {
                    a[k][l] -= q[i] * m[i][k] * m[i][l];
                    a[l][k] = a[k][l];
                }
        }
        for (auto& row : m)
            for (auto& x : row) x.canonicalize();
    }

    std::vector<Int> x(n, Int(0));
    std::vector<Rat> center(n, Rat(0)), remaining(n + 1, Rat(0));
    long nodes = 0;

    // iterative depth-first from coordinate n-1 down to 0
    std::function<bool(long, const Rat&)> descend = [&](long i, const Rat& budget) -> bool {
        if (node_budget >= 0 && ++nodes > node_budget) throw BudgetExceeded(nodes);
        if (i < 0) {
            // x complete; skip zero vector; canonical sign: last nonzero > 0 is
            // not guaranteed by construction, so normalize: first nonzero > 0.
            bool allzero = true;
            for (auto& v : x)
                if (v != 0) { allzero = false; break; }
            if (allzero) return true;
            std::vector<Int> out = x;
            for (long t = 0; t < n; ++t) {
                if (out[t] == 0) continue;
                if (out[t] < 0)
                    for (auto& v : out) v = -v;
                break;
            }
            // exact value
            Int val = 0;
            for (long r = 0; r < n; ++r)
                for (long c = 0; c < n; ++c) val += out[r] * G.at(r, c) * out[c];
            return cb(out, val);
        }
        // center c_i = sum_{j>i} m[i][j] x_j
        Rat c(0);
        for (long j = i + 1; j < n; ++j)
            if (x[j] != 0) c += m[i][j] * Rat(x[j]);
        c.canonicalize();
        Rat lim = budget / q[i];
        lim.canonicalize();
        Int s = floor_sqrt(lim);
        // x_i in [ceil(-c - s'), floor(-c + s')] where s' = sqrt(lim) exactly:
        // use integer shifts around -c with exact checks.
        Rat negc = -c;
        Int lo, hi;
        {
            // hi = floor(-c + sqrt(lim)): try floor(-c) + s + 1 downwards
            Int base;
            mpz_fdiv_q(base.get_mpz_t(), negc.get_num().get_mpz_t(), negc.get_den().get_mpz_t());
            hi = base + s + 2;
            auto ok = [&](const Int& v) {
                Rat d = Rat(v) + c;
                return d * d <= lim;
            };
            while (!ok(hi) && hi >= base - s - 2) --hi;
            lo = base - s - 2;
            while (!ok(lo) && lo <= hi) ++lo;
        }
        for (Int v = lo; v <= hi; ++v) {
            x[i] = v;
            Rat d = Rat(v) + c;
            Rat used = q[i] * d * d;
            Rat rem = budget - used;
            rem.canonicalize();
            if (rem < 0) continue;
            if (!descend(i - 1, rem)) return false;
        }
        x[i] = 0;
        return true;
    };
    descend(n - 1, Rat(bound));
}

}  // namespace ramc

#endif
