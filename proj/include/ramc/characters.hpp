// Real abelian fields presented by groups of Dirichlet characters:
// construction from generator exponents, conductors, Galois/Frobenius
// bookkeeping, the C / C0 case split, auxiliary primes and towers.
#ifndef RAMC_CHARACTERS_HPP
#define RAMC_CHARACTERS_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ramc/integers.hpp"

namespace ramc {

struct NonCyclicGroup : std::runtime_error {
    NonCyclicGroup() : std::runtime_error("generated character group is not cyclic") {}
};
struct OddCharacter : std::runtime_error {
    OddCharacter() : std::runtime_error("character has odd parity; only real fields are supported") {}
};
struct RamifiedPrime : std::runtime_error {
    explicit RamifiedPrime(long q) : std::runtime_error("prime " + std::to_string(q) + " divides the conductor") {}
};
struct BadCongruence : std::runtime_error {
    BadCongruence(long l, long m)
        : std::runtime_error("ell = " + std::to_string(l) + " is not 1 mod " + std::to_string(m)) {}
};
struct DegenerateTower : std::runtime_error {
    DegenerateTower() : std::runtime_error("Gal(K/C) is trivial; no auxiliary prime exists") {}
};
struct NotFound : std::runtime_error {
    explicit NotFound(long bound)
        : std::runtime_error("no auxiliary prime up to " + std::to_string(bound)) {}
};

// ---------------------------------------------------------------------------
// (Z/m)^* with the canonical generator convention: one primitive root per odd
// prime power, and {-1, 5} at 2^k (k >= 3), {3} at 4.
// ---------------------------------------------------------------------------
class ResidueGroup {
  public:
    struct Gen {
        long residue;  // mod m, CRT-lifted (== 1 in the other components)
        long order;
        long pk;       // the prime-power component it lives in
    };

    explicit ResidueGroup(long m) : m_(m) {
        if (m_ < 1) throw std::domain_error("ResidueGroup: modulus must be positive");
        if (m_ == 1) return;
        for (auto& [p, e] : factorize(Int(m_))) {
            long pl = to_long(p), pk = to_long(ipow(p, e));
            if (pl == 2) {
                if (e == 1) continue;
                if (e == 2) {
                    add_generator(pk, pk - 1, 2);  // -1 mod 4
                } else {
                    add_generator(pk, pk - 1, 2);           // -1
                    add_generator(pk, 5, pk / 4);           // 5 has order 2^(k-2)
                }
            } else {
                add_generator(pk, primitive_root(pk), euler_phi(pk));
            }
        }
        build_dlog_tables();
    }

    long modulus() const { return m_; }
    long order() const { return m_ == 1 ? 1 : euler_phi(m_); }
    const std::vector<Gen>& gens() const { return gens_; }

    // Exponent vector of x on the canonical generators.
    std::vector<long> dlog(long x) const {
        x %= m_;
        if (x < 0) x += m_;
        if (m_ == 1) return {};
        if (std::gcd(x, m_) != 1) throw std::domain_error("dlog: not a unit mod " + std::to_string(m_));
        std::vector<long> e(gens_.size());
        for (size_t i = 0; i < gens_.size(); ++i) e[i] = tables_[i].at(x % gens_[i].pk);
        return e;
    }

  private:
    long m_;
    std::vector<Gen> gens_;
    // per-generator dlog table inside its own component
    std::vector<std::map<long, long>> tables_;

    void add_generator(long pk, long g_in_pk, long order) {
        // CRT-lift g to be == g_in_pk mod pk and == 1 mod m/pk.
        long rest = m_ / pk;
        long g = to_long(crt(Int(g_in_pk), Int(pk), Int(1), Int(rest)));
        gens_.push_back({g, order, pk});
    }

    void build_dlog_tables() {
        tables_.resize(gens_.size());
        // Group generators by component; handle 2^k's two generators jointly.
        std::map<long, std::vector<size_t>> by_pk;
        for (size_t i = 0; i < gens_.size(); ++i) by_pk[gens_[i].pk].push_back(i);
        for (auto& [pk, idxs] : by_pk) {
            if (idxs.size() == 1) {
                long g = gens_[idxs[0]].residue % pk, ord = gens_[idxs[0]].order;
                long cur = 1;
                for (long k = 0; k < ord; ++k) {
                    tables_[idxs[0]][cur] = k;
                    cur = to_long((Int(cur) * g) % pk);
                }
            } else {
                // 2^k, k >= 3: x = (-1)^a * 5^b
                size_t i_m1 = idxs[0], i_5 = idxs[1];
                long ord5 = gens_[i_5].order;
                long cur = 1;
                std::map<long, long> pow5;
                for (long b = 0; b < ord5; ++b) {
                    pow5[cur] = b;
                    cur = (cur * 5) % pk;
                }
                for (auto& [r, b] : pow5) {
                    tables_[i_5][r] = b;
                    tables_[i_m1][r] = 0;
                    long rm = pk - r;
                    tables_[i_5][rm] = b;
                    tables_[i_m1][rm] = 1;
                }
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Dirichlet character mod m, stored by exponents on the canonical generators:
// chi(g_j) = zeta_{ord(g_j)}^{e_j}.
// ---------------------------------------------------------------------------
class DirichletCharacter {
  public:
    DirichletCharacter() = default;
    DirichletCharacter(std::shared_ptr<const ResidueGroup> G, std::vector<long> exps)
        : G_(std::move(G)), e_(std::move(exps)) {
        normalize();
    }

    long modulus() const { return G_->modulus(); }
    const std::vector<long>& exponents() const { return e_; }
    const ResidueGroup& group() const { return *G_; }
    std::shared_ptr<const ResidueGroup> group_ptr() const { return G_; }

    long order() const {
        long n = 1;
        for (size_t j = 0; j < e_.size(); ++j) {
            long oj = G_->gens()[j].order;
            n = std::lcm(n, oj / std::gcd(e_[j], oj));
        }
        return n;
    }

    bool is_trivial() const {
        for (auto v : e_)
            if (v != 0) return false;
        return true;
    }

    // chi(x) = zeta_den^num with the fraction reduced; requires gcd(x, m)=1.
    std::pair<long, long> value_exponent(long x) const {
        auto d = G_->dlog(x);
        Int num = 0, den = 1;
        for (size_t j = 0; j < e_.size(); ++j) {
            long oj = G_->gens()[j].order;
            // num/den += e_j d_j / o_j
            num = num * oj + Int(e_[j]) * d[j] * den;
            den *= oj;
            Int g = gcd(num, den);
            if (g > 1) { num /= g; den /= g; }
        }
        num = mod_positive(num, den);
        Int g = gcd(num, den);
        return {to_long(num / g), to_long(den / g)};
    }

    bool value_is_one(long x) const { return value_exponent(x).first == 0; }

    bool is_even() const {
        if (modulus() <= 2) return true;
        return value_is_one(modulus() - 1);
    }

    // Smallest modulus the character factors through.
    long conductor() const {
        long m = modulus();
        if (is_trivial()) return 1;
        for (long d : divisors(m)) {
            if (d == 1) continue;  // only the trivial character has conductor 1
            if (factors_through(d)) return d;
        }
        return m;
    }

    bool factors_through(long d) const {
        long m = modulus();
        if (m % d != 0) return false;
        for (long x = 1; x < m; ++x) {
            if (x % d != 1) continue;
            if (std::gcd(x, m) != 1) continue;
            if (!value_is_one(x)) return false;
        }
        return true;
    }

    // Value exponent of the associated primitive character at x (gcd(x, cond)=1):
    // finds x' == x mod cond with gcd(x', m)=1.
    std::pair<long, long> primitive_value_exponent(long x, long cond) const {
        long m = modulus();
        if (cond == 1) return {0, 1};
        long x0 = x % cond;
        if (x0 < 0) x0 += cond;
        if (std::gcd(x0, cond) != 1) throw std::domain_error("primitive_value_exponent: not a unit");
        for (long t = x0; t <= x0 + m; t += cond) {
            long tt = t % m;
            if (tt != 0 && std::gcd(tt, m) == 1) return value_exponent(tt);
        }
        throw std::logic_error("primitive lift not found");
    }

    DirichletCharacter power(long k) const {
        std::vector<long> e(e_.size());
        for (size_t j = 0; j < e_.size(); ++j) {
            long oj = G_->gens()[j].order;
            e[j] = to_long(mod_positive(Int(e_[j]) * k, Int(oj)));
        }
        return DirichletCharacter(G_, e);
    }

    DirichletCharacter operator*(const DirichletCharacter& o) const {
        if (G_ != o.G_ && modulus() != o.modulus())
            throw std::domain_error("character product: modulus mismatch");
        std::vector<long> e(e_.size());
        for (size_t j = 0; j < e_.size(); ++j) e[j] = (e_[j] + o.e_[j]) % G_->gens()[j].order;
        return DirichletCharacter(G_, e);
    }

    bool operator==(const DirichletCharacter& o) const {
        return modulus() == o.modulus() && e_ == o.e_;
    }
    bool operator<(const DirichletCharacter& o) const {
        if (modulus() != o.modulus()) return modulus() < o.modulus();
        return e_ < o.e_;
    }

    // Re-express modulo a multiple M of the modulus.
    DirichletCharacter extend(std::shared_ptr<const ResidueGroup> GM) const {
        long M = GM->modulus();
        if (M % modulus() != 0) throw std::domain_error("extend: not a multiple");
        if (modulus() == 1) return DirichletCharacter(GM, std::vector<long>(GM->gens().size(), 0));
        std::vector<long> e(GM->gens().size());
        for (size_t j = 0; j < GM->gens().size(); ++j) {
            long gj = GM->gens()[j].residue % modulus();
            long oj = GM->gens()[j].order;
            auto [num, den] = value_exponent(gj);
            // chi(g_j) = zeta_den^num = zeta_oj^(num*oj/den); den | oj holds.
            if (oj % den != 0) throw std::logic_error("extend: order incompatibility");
            e[j] = to_long(Int((Int(num) * (oj / den)) % oj));
        }
        return DirichletCharacter(GM, e);
    }

  private:
    std::shared_ptr<const ResidueGroup> G_;
    std::vector<long> e_;

    void normalize() {
        for (size_t j = 0; j < e_.size(); ++j) {
            long oj = G_->gens()[j].order;
            e_[j] %= oj;
            if (e_[j] < 0) e_[j] += oj;
        }
    }
};

// ---------------------------------------------------------------------------
// A real abelian field given by its (finite abelian) group of characters.
// Primary inputs are cyclic; composita occurring inside towers are not.
// ---------------------------------------------------------------------------
class FieldSpec {
  public:
    FieldSpec() {  // the rational field
        G_ = std::make_shared<ResidueGroup>(1);
        chars_ = {DirichletCharacter(G_, {})};
        conductor_ = 1;
        finish();
    }

    // Field generated by the given characters (all on one residue group).
    static FieldSpec generated_by(std::vector<DirichletCharacter> gens, bool require_cyclic) {
        if (gens.empty()) return FieldSpec();
        FieldSpec K;
        K.G_ = gens[0].group_ptr();
        // close under products
        std::set<DirichletCharacter> X;
        X.insert(DirichletCharacter(K.G_, std::vector<long>(K.G_->gens().size(), 0)));
        for (auto& g : gens) {
            if (!g.is_even()) throw OddCharacter();
            std::set<DirichletCharacter> nx = X;
            for (long k = 1; k < g.order(); ++k) {
                auto gk = g.power(k);
                for (auto& x : X) nx.insert(x * gk);
            }
            X = nx;
        }
        K.chars_.assign(X.begin(), X.end());
        long lc = 1;
        for (auto& c : K.chars_) lc = std::lcm(lc, c.conductor());
        K.conductor_ = lc;
        K.finish();
        if (require_cyclic && !K.cyclic_) throw NonCyclicGroup();
        return K;
    }

    long conductor() const { return conductor_; }
    long modulus() const { return G_->modulus(); }
    long degree() const { return (long)chars_.size(); }
    bool is_cyclic() const { return cyclic_; }
    const std::vector<DirichletCharacter>& characters() const { return chars_; }
    const ResidueGroup& group() const { return *G_; }
    std::shared_ptr<const ResidueGroup> group_ptr() const { return G_; }

    // A generator when cyclic.
    const DirichletCharacter& cyclic_generator() const {
        if (!cyclic_) throw NonCyclicGroup();
        return chars_[gen_index_];
    }

    // Common kernel in (Z/m)^*: H = Gal(Q(mu_m)/K) restricted to residues.
    const std::vector<long>& kernel_residues() const { return kernel_; }

    // Order of the Frobenius at q in Gal(K/Q); q must be coprime to the
    // conductor but may share factors with the working modulus.
    long frobenius_order(long q) const {
        if (conductor_ == 1) return 1;
        long g = 1;
        for (auto& c : chars_) {
            long cond = c.conductor();
            if (cond == 1) continue;
            if (q % cond == 0 || std::gcd(q % cond, cond) != 1) throw RamifiedPrime(q);
            auto [num, den] = c.primitive_value_exponent(q, cond);
            (void)num;
            g = std::lcm(g, den);
        }
        return g;
    }

    bool frobenius_is_trivial_at(long q) const { return frobenius_order(q) == 1; }

    // Subfield cut out by a set of characters (must be a subgroup subset).
    FieldSpec subfield(const std::vector<DirichletCharacter>& sub) const {
        return generated_by(sub, false);
    }

    // Subfield lattice of a cyclic field: one subfield per divisor of degree.
    std::map<long, FieldSpec> subfield_lattice() const {
        if (!cyclic_) throw NonCyclicGroup();
        std::map<long, FieldSpec> lat;
        long n = degree();
        const auto& chi = cyclic_generator();
        for (long d : divisors(n)) lat[d] = generated_by({chi.power(n / d)}, true);
        return lat;
    }

    // All subgroups of the character group of a given order.  Enumerates spans
    // of pairs of elements, which is exhaustive for groups with at most two
    // invariant factors (every character group appearing in this toolkit:
    // cyclic primaries and two-factor composita K * M(ell)).
    std::vector<std::vector<DirichletCharacter>> subgroups_of_order(long target) const {
        std::set<std::set<DirichletCharacter>> seen;
        auto span = [&](const DirichletCharacter& a, const DirichletCharacter& b) {
            std::set<DirichletCharacter> S;
            for (long i = 0; i < a.order(); ++i)
                for (long j = 0; j < b.order(); ++j) S.insert(a.power(i) * b.power(j));
            return S;
        };
        for (auto& a : chars_)
            for (auto& b : chars_) {
                if ((long)(a.order() * b.order()) % target != 0) continue;
                auto S = span(a, b);
                if ((long)S.size() == target) seen.insert(S);
            }
        std::vector<std::vector<DirichletCharacter>> out;
        for (auto& s : seen) out.emplace_back(s.begin(), s.end());
        return out;
    }

    // Maximal proper subfields (for norm-kernel intersections), any field.
    std::vector<FieldSpec> maximal_subfields() const {
        std::vector<FieldSpec> out;
        if (degree() == 1) return out;
        for (auto& [qz, e] : factorize(Int(degree()))) {
            long q = to_long(qz);
            for (auto& s : subgroups_of_order(degree() / q)) out.push_back(subfield(s));
        }
        return out;
    }

    DirichletCharacter trivial_char() const {
        return DirichletCharacter(G_, std::vector<long>(G_->gens().size(), 0));
    }

    bool contains_subgroup_of(const FieldSpec& other) const {
        // "other is a subfield of this": every character of other lies in this
        // group (after moving to a common modulus the caller arranged).
        for (auto& c : other.chars_) {
            bool found = false;
            for (auto& d : chars_) {
                if (chars_equal_across(c, d)) { found = true; break; }
            }
            if (!found) return false;
        }
        return true;
    }

    // Canonical identity string: conductor plus sorted primitive exponent data.
    std::string key() const {
        std::ostringstream os;
        os << conductor_ << ":";
        std::vector<std::string> items;
        for (auto& c : chars_) {
            std::ostringstream it;
            long cond = c.conductor();
            it << cond << "[";
            if (cond > 1) {
                ResidueGroup Gc(cond);
                for (auto& g : Gc.gens()) {
                    auto [num, den] = c.primitive_value_exponent(g.residue, cond);
                    it << g.residue << "^" << num << "/" << den << ",";
                }
            }
            it << "]";
            items.push_back(it.str());
        }
        std::sort(items.begin(), items.end());
        for (auto& s : items) os << s << ";";
        return os.str();
    }

    bool same_field(const FieldSpec& o) const { return key() == o.key(); }

    static bool chars_equal_across(const DirichletCharacter& a, const DirichletCharacter& b) {
        long ca = a.conductor(), cb = b.conductor();
        if (ca != cb) return false;
        if (ca == 1) return true;
        ResidueGroup Gc(ca);
        for (auto& g : Gc.gens())
            if (a.primitive_value_exponent(g.residue, ca) != b.primitive_value_exponent(g.residue, cb))
                return false;
        return true;
    }

  private:
    std::shared_ptr<const ResidueGroup> G_;
    std::vector<DirichletCharacter> chars_;
    long conductor_ = 1;
    bool cyclic_ = true;
    size_t gen_index_ = 0;
    std::vector<long> kernel_;

    void finish() {
        // cyclicity: an element of order = group order
        long n = (long)chars_.size();
        cyclic_ = false;
        for (size_t i = 0; i < chars_.size(); ++i)
            if (chars_[i].order() == n) {
                cyclic_ = true;
                gen_index_ = i;
                break;
            }
        // kernel residues
        kernel_.clear();
        long m = G_->modulus();
        for (long t = 1; t <= m; ++t) {
            if (m > 1 && std::gcd(t, m) != 1) continue;
            if (m == 1 && t > 1) break;
            bool allone = true;
            for (auto& c : chars_)
                if (!c.value_is_one(t)) { allone = false; break; }
            if (allone) kernel_.push_back(t % m == 0 ? m : t);
        }
    }
};

// Move two specs onto a common working modulus and form the compositum.
inline FieldSpec compositum(const FieldSpec& A, const FieldSpec& B, bool require_cyclic = false) {
    long M = std::lcm(A.modulus(), B.modulus());
    auto GM = std::make_shared<ResidueGroup>(M);
    std::vector<DirichletCharacter> gens;
    for (auto& c : A.characters()) gens.push_back(c.extend(GM));
    for (auto& c : B.characters()) gens.push_back(c.extend(GM));
    return FieldSpec::generated_by(gens, require_cyclic);
}

// ---------------------------------------------------------------------------
// Operations of the characters module
// ---------------------------------------------------------------------------

// build_field_spec: cyclic real field from exponent data on the canonical
// generators of (Z/f)^*.  `gen_exps` holds one pair (generator residue,
// exponent) per canonical generator that carries a nonzero exponent.
inline FieldSpec build_field_spec(long f, const std::vector<std::pair<long, long>>& gen_exps) {
    auto G = std::make_shared<ResidueGroup>(f);
    std::vector<long> e(G->gens().size(), 0);
    for (auto& [res, ex] : gen_exps) {
        bool found = false;
        for (size_t j = 0; j < G->gens().size(); ++j)
            if (G->gens()[j].residue == res % f || G->gens()[j].residue == res) {
                e[j] = ex;
                found = true;
            }
        if (!found) throw std::domain_error("build_field_spec: " + std::to_string(res) +
                                            " is not a canonical generator of (Z/" + std::to_string(f) + ")^*");
    }
    DirichletCharacter chi(G, e);
    if (!chi.is_even()) throw OddCharacter();
    return FieldSpec::generated_by({chi}, true);
}

struct RationalCharacterDecomposition {
    DirichletCharacter chi0;   // prime-to-p part, order d
    DirichletCharacter chi_p;  // p-power part, order p^c
    long d = 1;
    long pc = 1;
};

struct PAdicCharacterConstituent {
    long phi0_order;      // order of phi0
    long d_phi0;          // [Q_p(values of phi0) : Q_p] = ord of p mod phi0_order
    std::vector<long> orbit_exponents;  // the a with chi^a bundled into phi
};

struct PAdicCharacterFamily {
    std::vector<PAdicCharacterConstituent> constituents;
};

inline RationalCharacterDecomposition decompose_rational(const DirichletCharacter& chi, long p) {
    long n = chi.order();
    long pc = 1;
    while (n % p == 0) { n /= p; pc *= p; }
    long d = n;  // prime-to-p part
    RationalCharacterDecomposition R;
    R.d = d;
    R.pc = pc;
    if (d == 1) {
        R.chi0 = chi.power(chi.order());  // trivial
        R.chi_p = chi;
    } else if (pc == 1) {
        R.chi0 = chi;
        R.chi_p = chi.power(chi.order());  // trivial
    } else {
        long u = to_long(inv_mod(Int(pc), Int(d)));
        long v = to_long(inv_mod(Int(d), Int(pc)));
        R.chi0 = chi.power(pc * u);  // order d
        R.chi_p = chi.power(d * v);  // order pc
    }
    return R;
}

// All irreducible p-adic characters phi | chi with their d_{phi0}.
inline PAdicCharacterFamily padic_family(const DirichletCharacter& chi, long p) {
    PAdicCharacterFamily F;
    long n = chi.order();
    if (n == 1) return F;
    long d = n, pc = 1;
    while (d % p == 0) { d /= p; pc *= p; }
    // Degree-one constituents of chi: chi^a with gcd(a, n) = 1.
    // p-adic conjugacy: a ~ a' iff a' == a * p^j (mod d) for some j (any unit
    // action on the p-part).  Orbits are indexed by orbits of <p> on the
    // faithful residues mod d paired with the full unit orbit mod pc.
    std::set<long> done;
    for (long a = 0; a < n; ++a) {
        if (std::gcd(a, n) != 1) continue;
        if (done.count(a)) continue;
        PAdicCharacterConstituent C;
        long a_mod_d = d == 1 ? 0 : a % d;
        long ord_phi0 = d == 1 ? 1 : d / std::gcd(a_mod_d == 0 ? d : a_mod_d, d);
        C.phi0_order = ord_phi0;
        C.d_phi0 = ord_phi0 == 1 ? 1 : mult_order(p, ord_phi0);
        // orbit: all b with gcd(b, n)=1, b == a p^j mod d (some j), any mod pc
        for (long b = 0; b < n; ++b) {
            if (std::gcd(b, n) != 1) continue;
            bool same_orbit = false;
            long bd = d == 1 ? 0 : b % d;
            long t = a_mod_d;
            for (long j = 0; j < C.d_phi0 * 4 + 4; ++j) {
                if (d == 1 || t == bd) { same_orbit = true; break; }
                t = to_long(Int((Int(t) * p) % d));
            }
            if (same_orbit) {
                C.orbit_exponents.push_back(b);
                done.insert(b);
            }
        }
        F.constituents.push_back(C);
    }
    return F;
}

enum class CaseKind { INERT_AVAILABLE, GREENBERG, NONSPECIAL, SPECIAL };

inline const char* to_string(CaseKind k) {
    switch (k) {
        case CaseKind::INERT_AVAILABLE: return "INERT_AVAILABLE";
        case CaseKind::GREENBERG: return "GREENBERG";
        case CaseKind::NONSPECIAL: return "NONSPECIAL";
        case CaseKind::SPECIAL: return "SPECIAL";
    }
    return "?";
}

struct CaseTag {
    CaseKind kind;
    FieldSpec C;    // K ∩ Q(mu_{p^infty})^+
    FieldSpec C0;   // k ∩ Q(mu_p)^+
    long r = 1;         // [C : Q]
    long C_over_C0 = 1; // [C : C0]
};

inline bool is_p_power(long n, long p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

// C = subfield cut out by characters of p-power conductor; C0 likewise in k
// with conductor dividing p (odd p) resp. 4 (p = 2; Q(mu_2)^+ = Q(mu_4)^+ = Q,
// so C0 = Q there).
inline CaseTag cyclotomic_intersection(const FieldSpec& K, long p) {
    std::vector<DirichletCharacter> cchars, c0chars;
    long n = K.degree();
    long d = n;
    while (d % p == 0) d /= p;
    for (auto& c : K.characters()) {
        long cond = c.conductor();
        if (cond == 1 || is_p_power(cond, p)) cchars.push_back(c);
        // k = prime-to-p-order part
        if (c.order() != 0 && d % c.order() == 0) {
            if (cond == 1 || (p > 2 && cond == p)) c0chars.push_back(c);
        }
    }
    CaseTag T;
    T.C = K.subfield(cchars);
    T.C0 = K.subfield(c0chars);
    T.r = T.C.degree();
    T.C_over_C0 = T.C.degree() / T.C0.degree();
    long kdeg = d;
    if (T.r == 1) T.kind = CaseKind::INERT_AVAILABLE;
    else if (T.C.degree() == K.degree()) T.kind = CaseKind::GREENBERG;
    else if (T.C0.degree() == kdeg) T.kind = CaseKind::SPECIAL;
    else T.kind = CaseKind::NONSPECIAL;
    return T;
}

struct SplittingData {
    long residue_degree;   // g
    long num_primes;       // degree / g
    FieldSpec decomposition_field;
};

// (e, g, count) of q in K, ramified primes included: the unramified-at-q part
// of the character group plays the role of the full group.
struct FullSplittingData {
    long e = 1, g = 1, count = 1;
};

inline FullSplittingData splitting_with_ramification(const FieldSpec& K, long q) {
    FullSplittingData S;
    std::vector<DirichletCharacter> unram;
    for (auto& c : K.characters())
        if (c.conductor() % q != 0) unram.push_back(c);
    S.e = K.degree() / (long)unram.size();
    long g = 1;
    for (auto& c : unram) {
        long cond = c.conductor();
        if (cond == 1) continue;
        g = std::lcm(g, c.primitive_value_exponent(q, cond).second);
    }
    S.g = g;
    S.count = (long)unram.size() / g;
    return S;
}

inline SplittingData frobenius_splitting(const FieldSpec& K, long q) {
    if (K.conductor() % q == 0) throw RamifiedPrime(q);
    SplittingData S;
    S.residue_degree = K.frobenius_order(q);
    S.num_primes = K.degree() / S.residue_degree;
    std::vector<DirichletCharacter> fixed;
    for (auto& c : K.characters()) {
        long cond = c.conductor();
        if (cond == 1 || c.primitive_value_exponent(q, cond).first == 0) fixed.push_back(c);
    }
    S.decomposition_field = K.subfield(fixed);
    return S;
}

// Frobenius of ell generates Gal(K/C)?  Gal(K/C) has order deg K / deg C and
// tau in Gal(K/C) iff every character of C is 1 at ell.
inline bool frobenius_generates_gal_K_over_C(const FieldSpec& K, const CaseTag& tag, long ell) {
    long target = K.degree() / tag.C.degree();
    for (auto& c : tag.C.characters()) {
        long cond = c.conductor();
        if (cond == 1) continue;
        if (ell % cond == 0) return false;
        if (c.primitive_value_exponent(ell, cond).first != 0) return false;  // not split in C
    }
    return K.frobenius_order(ell) == target;
}

inline long find_auxiliary_prime(const FieldSpec& K, long p, long N, long bound) {
    CaseTag tag = cyclotomic_intersection(K, p);
    if (tag.C.degree() == K.degree()) throw DegenerateTower();
    long modulus = 2;
    for (long i = 0; i < N; ++i) modulus *= p;
    for (long ell = modulus + 1; ell <= bound; ell += modulus) {
        if (!is_prime(ell)) continue;
        if (K.conductor() % ell == 0) continue;
        if (frobenius_generates_gal_K_over_C(K, tag, ell)) return ell;
    }
    throw NotFound(bound);
}

// Degree-p^N subfield of Q(mu_ell).
inline FieldSpec cyclic_subfield_of_prime_cyclotomic(long ell, long pN) {
    if ((ell - 1) % (2 * pN) != 0) throw BadCongruence(ell, 2 * pN);
    auto G = std::make_shared<ResidueGroup>(ell);
    std::vector<long> e(G->gens().size());
    e[0] = (ell - 1) / pN;  // unique canonical generator for prime modulus
    return FieldSpec::generated_by({DirichletCharacter(G, e)}, true);
}

struct AuxiliaryTower {
    FieldSpec K, M_ell, M0, L, Khat, Lhat;
    long ell = 0, p = 0, N = 1;
    long pN = 1;
    CaseTag tag;
    long tau_order = 1;         // order of tau_ell in Gal(K/Q)
    bool tau_generates = true;  // tau_ell generates Gal(K/C)?
    bool split_in_C = true;     // ell totally split in C?
};

inline AuxiliaryTower build_auxiliary_tower(const FieldSpec& K, long ell, long N, long p) {
    long pN = 1;
    for (long i = 0; i < N; ++i) pN *= p;
    if (!is_prime(ell) || (ell - 1) % (2 * pN) != 0) throw BadCongruence(ell, 2 * pN);
    if (K.conductor() % ell == 0) throw RamifiedPrime(ell);
    AuxiliaryTower T;
    T.K = K;
    T.ell = ell;
    T.p = p;
    T.N = N;
    T.pN = pN;
    T.tag = cyclotomic_intersection(K, p);
    T.M_ell = cyclic_subfield_of_prime_cyclotomic(ell, pN);
    T.M0 = compositum(T.M_ell, T.tag.C);
    T.L = compositum(K, T.M_ell);
    // Khat: the subfield of K with [K : Khat] = p when p | [K:Q], else Q.
    if (K.degree() % p == 0) {
        T.Khat = FieldSpec::generated_by({K.cyclic_generator().power(p)}, true);
    } else {
        T.Khat = FieldSpec();
    }
    T.Lhat = compositum(T.Khat, T.M_ell);
    T.tau_order = K.frobenius_order(ell);
    T.tau_generates = frobenius_generates_gal_K_over_C(K, T.tag, ell);
    T.split_in_C = true;
    for (auto& c : T.tag.C.characters()) {
        long cond = c.conductor();
        if (cond == 1) continue;
        if (c.primitive_value_exponent(ell, cond).first != 0) T.split_in_C = false;
    }
    return T;
}

// --- JSON (the lingua franca format) ---------------------------------------
// {"conductor": f, "generators": [[residue, exponent], ...], "p": p}
// A generator pair refers to a canonical generator of (Z/f)^* and the
// character's exponent on it, taken modulo that generator's order.

}  // namespace ramc

#endif
