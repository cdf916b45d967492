// Dense exact linear algebra over Z and Q (GMP): HNF/SNF with transforms,
// kernels, determinants, rational solving, lattice indices.  Matrices here
// are small (a few hundred rows at most); algorithms favour clarity and
// exactness over asymptotics.
#ifndef RAMC_LINALG_HPP
#define RAMC_LINALG_HPP

#include <cassert>
#include <utility>
#include <optional>
#include <vector>

#include "ramc/integers.hpp"

namespace ramc {

struct ZMat {
    long m = 0, n = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(long rows, long cols) : m(rows), n(cols), a(rows * cols) {}

    Int& at(long i, long j) { return a[i * n + j]; }
    const Int& at(long i, long j) const { return a[i * n + j]; }

    static ZMat identity(long k) {
        ZMat I(k, k);
        for (long i = 0; i < k; ++i) I.at(i, i) = 1;
        return I;
    }

    ZMat transpose() const {
        ZMat T(n, m);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < n; ++j) T.at(j, i) = at(i, j);
        return T;
    }

    std::vector<Int> row(long i) const {
        return std::vector<Int>(a.begin() + i * n, a.begin() + (i + 1) * n);
    }

    void set_row(long i, const std::vector<Int>& v) {
        assert((long)v.size() == n);
        for (long j = 0; j < n; ++j) at(i, j) = v[j];
    }

    bool is_zero_row(long i) const {
        for (long j = 0; j < n; ++j)
            if (at(i, j) != 0) return false;
        return true;
    }

    bool operator==(const ZMat& o) const { return m == o.m && n == o.n && a == o.a; }
};

inline ZMat mul(const ZMat& A, const ZMat& B) {
    assert(A.n == B.m);
    ZMat C(A.m, B.n);
    for (long i = 0; i < A.m; ++i)
        for (long k = 0; k < A.n; ++k) {
            if (A.at(i, k) == 0) continue;
            for (long j = 0; j < B.n; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

inline std::vector<Int> mul_vec(const ZMat& A, const std::vector<Int>& x) {
    assert((long)x.size() == A.n);
    std::vector<Int> y(A.m);
    for (long i = 0; i < A.m; ++i)
        for (long j = 0; j < A.n; ++j)
            if (A.at(i, j) != 0 && x[j] != 0) y[i] += A.at(i, j) * x[j];
    return y;
}

inline std::vector<Int> vec_mul(const std::vector<Int>& x, const ZMat& A) {
    assert((long)x.size() == A.m);
    std::vector<Int> y(A.n);
    for (long i = 0; i < A.m; ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < A.n; ++j) y[j] += x[i] * A.at(i, j);
    }
    return y;
}

// Row-style HNF in place: rows span the same lattice afterwards.  Pivots are
// positive, entries above each pivot reduced into [0, pivot).  Zero rows sink
// to the bottom.  Returns the rank.  If U != nullptr it accumulates the
// unimodular transform (U_new = E * U_old for every elementary op E).
inline long hnf_rows(ZMat& A, ZMat* U = nullptr) {
    long m = A.m, n = A.n;
    long r = 0;  // current pivot row
    for (long c = 0; c < n && r < m; ++c) {
        // Euclid over rows r..m-1 in column c.
        while (true) {
            long piv = -1;
            for (long i = r; i < m; ++i)
                if (A.at(i, c) != 0 && (piv < 0 || mpz_cmpabs(A.at(i, c).get_mpz_t(), A.at(piv, c).get_mpz_t()) < 0))
                    piv = i;
            if (piv < 0) break;
            if (piv != r) {
                for (long j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(r, j));
                if (U)
                    for (long j = 0; j < U->n; ++j) std::swap(U->at(piv, j), U->at(r, j));
            }
            bool again = false;
            for (long i = r + 1; i < m; ++i) {
                if (A.at(i, c) == 0) continue;
                Int q = A.at(i, c) / A.at(r, c);  // truncated division is fine here
                if (q != 0) {
                    for (long j = 0; j < n; ++j) A.at(i, j) -= q * A.at(r, j);
                    if (U)
                        for (long j = 0; j < U->n; ++j) U->at(i, j) -= q * U->at(r, j);
                }
                if (A.at(i, c) != 0) again = true;
            }
            if (!again) break;
        }
        if (A.at(r, c) == 0) continue;
        if (A.at(r, c) < 0) {
            for (long j = 0; j < n; ++j) A.at(r, j) = -A.at(r, j);
            if (U)
                for (long j = 0; j < U->n; ++j) U->at(r, j) = -U->at(r, j);
        }
        // Reduce rows above the pivot.
        for (long i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), A.at(i, c).get_mpz_t(), A.at(r, c).get_mpz_t());
            if (q != 0) {
                for (long j = 0; j < n; ++j) A.at(i, j) -= q * A.at(r, j);
                if (U)
                    for (long j = 0; j < U->n; ++j) U->at(i, j) -= q * U->at(r, j);
            }
        }
        ++r;
    }
    return r;
}

inline ZMat hnf_of(const ZMat& A, long* rank_out = nullptr) {
    ZMat H = A;
    long r = hnf_rows(H);
    if (rank_out) *rank_out = r;
    ZMat R(r, A.n);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < A.n; ++j) R.at(i, j) = H.at(i, j);
    return R;
}

// Basis of { x in Z^n : A x = 0 }.
inline ZMat kernel_right(const ZMat& A) {
    ZMat T = A.transpose();  // n x m
    ZMat U = ZMat::identity(T.m);
    long r = hnf_rows(T, &U);
    ZMat K(T.m - r, A.n);
    for (long i = r; i < T.m; ++i)
        for (long j = 0; j < A.n; ++j) K.at(i - r, j) = U.at(i, j);
    return K;
}

inline Int det_bareiss(ZMat A) {
    assert(A.m == A.n);
    long n = A.m;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (A.at(k, k) == 0) {
            long s = -1;
            for (long i = k + 1; i < n; ++i)
                if (A.at(i, k) != 0) { s = i; break; }
            if (s < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(s, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int t = A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j);
                mpz_divexact(A.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = A.at(k, k);
    }
    return sign > 0 ? A.at(n - 1, n - 1) : -A.at(n - 1, n - 1);
}

// Smith normal form: returns D and fills U, V with D = U * A * V.
inline ZMat snf(const ZMat& A0, ZMat* Uo = nullptr, ZMat* Vo = nullptr) {
    ZMat A = A0;
    long m = A.m, n = A.n;
    ZMat U = ZMat::identity(m), V = ZMat::identity(n);
    long t = 0;
    while (t < std::min(m, n)) {
        // Find a nonzero entry (smallest in absolute value) in the t.. block.
        long pi = -1, pj = -1;
        for (long i = t; i < m; ++i)
            for (long j = t; j < n; ++j)
                if (A.at(i, j) != 0 &&
                    (pi < 0 || mpz_cmpabs(A.at(i, j).get_mpz_t(), A.at(pi, pj).get_mpz_t()) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != t) {
            for (long j = 0; j < n; ++j) std::swap(A.at(pi, j), A.at(t, j));
            for (long j = 0; j < m; ++j) std::swap(U.at(pi, j), U.at(t, j));
        }
        if (pj != t) {
            for (long i = 0; i < m; ++i) std::swap(A.at(i, pj), A.at(i, t));
            for (long i = 0; i < n; ++i) std::swap(V.at(i, pj), V.at(i, t));
        }
        bool clean = true;
        for (long i = t + 1; i < m; ++i) {
            Int q = A.at(i, t) / A.at(t, t);
            if (q != 0) {
                for (long j = 0; j < n; ++j) A.at(i, j) -= q * A.at(t, j);
                for (long j = 0; j < m; ++j) U.at(i, j) -= q * U.at(t, j);
            }
            if (A.at(i, t) != 0) clean = false;
        }
        for (long j = t + 1; j < n; ++j) {
            Int q = A.at(t, j) / A.at(t, t);
            if (q != 0) {
                for (long i = 0; i < m; ++i) A.at(i, j) -= q * A.at(i, t);
                for (long i = 0; i < n; ++i) V.at(i, j) -= q * V.at(i, t);
            }
            if (A.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;
        // Divisibility fix-up: A[t][t] must divide every later entry.
        bool fixed = true;
        for (long i = t + 1; i < m && fixed; ++i)
            for (long j = t + 1; j < n && fixed; ++j)
                if (A.at(i, j) % A.at(t, t) != 0) {
                    // Add row i to row t and restart the elimination at t.
                    for (long jj = 0; jj < n; ++jj) A.at(t, jj) += A.at(i, jj);
                    for (long jj = 0; jj < m; ++jj) U.at(t, jj) += U.at(i, jj);
                    fixed = false;
                }
        if (!fixed) continue;
        if (A.at(t, t) < 0) {
            for (long j = 0; j < n; ++j) A.at(t, j) = -A.at(t, j);
            for (long j = 0; j < m; ++j) U.at(t, j) = -U.at(t, j);
        }
        ++t;
    }
    if (Uo) *Uo = U;
    if (Vo) *Vo = V;
    return A;
}

// --- rational matrices -----------------------------------------------------

struct QMat {
    long m = 0, n = 0;
    std::vector<Rat> a;
    QMat() = default;
    QMat(long rows, long cols) : m(rows), n(cols), a(rows * cols) {}
    Rat& at(long i, long j) { return a[i * n + j]; }
    const Rat& at(long i, long j) const { return a[i * n + j]; }

    static QMat from(const ZMat& A) {
        QMat Q(A.m, A.n);
        for (long i = 0; i < A.m; ++i)
            for (long j = 0; j < A.n; ++j) Q.at(i, j) = Rat(A.at(i, j));
        return Q;
    }
};

inline QMat qmul(const QMat& A, const QMat& B) {
    assert(A.n == B.m);
    QMat C(A.m, B.n);
    for (long i = 0; i < A.m; ++i)
        for (long k = 0; k < A.n; ++k) {
            if (A.at(i, k) == 0) continue;
            for (long j = 0; j < B.n; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    for (auto& x : C.a) x.canonicalize();
    return C;
}

// Solve A X = B over Q for square nonsingular A (Gauss-Jordan).
inline QMat qsolve(QMat A, QMat B) {
    assert(A.m == A.n && A.m == B.m);
    long n = A.m;
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long i = c; i < n; ++i)
            if (A.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) throw std::domain_error("qsolve: singular matrix");
        if (piv != c) {
            for (long j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(c, j));
            for (long j = 0; j < B.n; ++j) std::swap(B.at(piv, j), B.at(c, j));
        }
        Rat d = A.at(c, c);
        for (long j = 0; j < n; ++j) A.at(c, j) /= d;
        for (long j = 0; j < B.n; ++j) B.at(c, j) /= d;
        for (long i = 0; i < n; ++i) {
            if (i == c || A.at(i, c) == 0) continue;
            Rat f = A.at(i, c);
            for (long j = 0; j < n; ++j) A.at(i, j) -= f * A.at(c, j);
            for (long j = 0; j < B.n; ++j) B.at(i, j) -= f * B.at(c, j);
        }
    }
    for (auto& x : B.a) x.canonicalize();
    return B;
}

inline QMat qinverse(const QMat& A) { return qsolve(A, QMat::from(ZMat::identity(A.m))); }

// Express vector b over the rows of full-row-rank A (x A = b) if possible.
inline std::optional<std::vector<Rat>> solve_left_rational(const ZMat& A, const std::vector<Rat>& b) {
    // Solve x * A = b: transpose to A^T x^T = b^T, least structured: do
    // elimination on the augmented (n x (m+1)) system.
    long m = A.m, n = A.n;
    QMat M(n, m + 1);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < m; ++j) M.at(i, j) = Rat(A.at(j, i));
        M.at(i, m) = b[i];
    }
    long r = 0;
    std::vector<long> pivcol;
    for (long c = 0; c < m && r < n; ++c) {
        long piv = -1;
        for (long i = r; i < n; ++i)
            if (M.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (long j = 0; j <= m; ++j) std::swap(M.at(piv, j), M.at(r, j));
        Rat d = M.at(r, c);
        for (long j = 0; j <= m; ++j) M.at(r, j) /= d;
        for (long i = 0; i < n; ++i) {
            if (i == r || M.at(i, c) == 0) continue;
            Rat f = M.at(i, c);
            for (long j = 0; j <= m; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivcol.push_back(c);
        ++r;
    }
    for (long i = r; i < n; ++i)
        if (M.at(i, m) != 0) return std::nullopt;  // inconsistent
    std::vector<Rat> x(m, Rat(0));
    for (long i = 0; i < r; ++i) {
        x[pivcol[i]] = M.at(i, m);
        x[pivcol[i]].canonicalize();
    }
    return x;
}

// Integral coordinates of b in the row lattice of A, if they exist.
inline std::optional<std::vector<Int>> coords_in_rowlattice(const ZMat& A, const std::vector<Int>& b) {
    std::vector<Rat> bq(b.size());
    for (size_t i = 0; i < b.size(); ++i) bq[i] = Rat(b[i]);
    auto x = solve_left_rational(A, bq);
    if (!x) return std::nullopt;
    std::vector<Int> xi(x->size());
    for (size_t i = 0; i < x->size(); ++i) {
        if ((*x)[i].get_den() != 1) return std::nullopt;
        xi[i] = (*x)[i].get_num();
    }
    // A may have linearly dependent rows; verify.
    if (vec_mul(xi, A) != b) return std::nullopt;
    return xi;
}

// Index of the row lattice of B inside the row lattice of A (same Q-span
// required); infinite/undefined situations throw.
inline Int lattice_index(const ZMat& A, const ZMat& B) {
    long ra = 0, rb = 0;
    ZMat HA = hnf_of(A, &ra), HB = hnf_of(B, &rb);
    if (ra != rb) throw std::domain_error("lattice_index: rank mismatch");
    // Coordinates of HB rows in HA basis must be integral.
    ZMat C(rb, ra);
    for (long i = 0; i < rb; ++i) {
        auto c = coords_in_rowlattice(HA, HB.row(i));
        if (!c) throw std::domain_error("lattice_index: B not inside A");
        C.set_row(i, *c);
    }
    ZMat H = hnf_of(C);
    if (H.m != ra) throw std::domain_error("lattice_index: infinite index");
    Int idx = 1;
    for (long i = 0; i < ra; ++i) idx *= H.at(i, i);
    return idx;
}

// Intersection of two row lattices in Z^n.
inline ZMat lattice_intersection(const ZMat& A, const ZMat& B) {
    // x = u A = v B  <=>  (u, v) in kernel of [A; -B]^T stacking.
    ZMat S(A.m + B.m, A.n);
    for (long i = 0; i < A.m; ++i)
        for (long j = 0; j < A.n; ++j) S.at(i, j) = A.at(i, j);
    for (long i = 0; i < B.m; ++i)
        for (long j = 0; j < A.n; ++j) S.at(A.m + i, j) = -B.at(i, j);
    ZMat K = kernel_right(S.transpose());  // rows (u|v) with uA = vB
    ZMat R(K.m, A.n);
    for (long i = 0; i < K.m; ++i) {
        auto full = K.row(i);
        std::vector<Int> u(full.begin(), full.begin() + A.m);
        R.set_row(i, vec_mul(u, A));
    }
    return hnf_of(R);
}

// {y in Z^n : maps[t] * y lies in the row lattice of `target` for every t}.
// maps[t] are m_t x n; target rows live in Z^{m_t} (all m_t equal).
inline ZMat lattice_preimage(const std::vector<ZMat>& maps, const ZMat& target) {
    if (maps.empty()) throw std::domain_error("lattice_preimage: no maps");
    long n = maps[0].n;
    long m = maps[0].m;
    long T = (long)maps.size();
    // unknowns: y (n) and one coefficient vector s_t (target.m) per map;
    // equations: maps[t] y - target^T s_t = 0.
    ZMat A(T * m, n + T * target.m);
    for (long t = 0; t < T; ++t) {
        for (long i = 0; i < m; ++i) {
            for (long j = 0; j < n; ++j) A.at(t * m + i, j) = maps[t].at(i, j);
            for (long c = 0; c < target.m; ++c) A.at(t * m + i, n + t * target.m + c) = -target.at(c, i);
        }
    }
    ZMat K = kernel_right(A);
    ZMat Y(K.m, n);
    for (long i = 0; i < K.m; ++i)
        for (long j = 0; j < n; ++j) Y.at(i, j) = K.at(i, j);
    return hnf_of(Y);
}

// Sum of two row lattices.
inline ZMat lattice_sum(const ZMat& A, const ZMat& B) {
    ZMat S(A.m + B.m, A.n);
    for (long i = 0; i < A.m; ++i)
        for (long j = 0; j < A.n; ++j) S.at(i, j) = A.at(i, j);
    for (long i = 0; i < B.m; ++i)
        for (long j = 0; j < A.n; ++j) S.at(A.m + i, j) = B.at(i, j);
    return hnf_of(S);
}

}  // namespace ramc

#endif
