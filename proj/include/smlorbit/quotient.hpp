#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "groebner.hpp"
#include "polymap.hpp"

namespace smlorbit {

// Finite-dimensional quotient algebra S = K[x]/I presented by its standard
// monomial basis (basis[0] is the monomial 1) and structure constants.
// Elements are coordinate vectors of length dim().
template <class D>
struct QuotientAlgebra {
    using Elem = typename D::Elem;
    using Coords = std::vector<Elem>;

    RingPtr<D> ring;
    std::vector<Monomial> basis;
    std::vector<std::vector<Coords>> table; // table[i][j] = coords of basis[i]*basis[j]
    std::optional<GroebnerBasis<D>> gb;     // present when built directly from an ideal

    std::size_t dim() const { return basis.size(); }

    int basis_index(const Monomial& m) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == m) return static_cast<int>(i);
        return -1;
    }

    Coords zero() const { return Coords(dim(), ring->dom.zero()); }
    Coords one() const {
        Coords c = zero();
        c[0] = ring->dom.one();
        return c;
    }
    Coords from_scalar(const Elem& e) const {
        Coords c = zero();
        c[0] = e;
        return c;
    }
    Coords add(const Coords& a, const Coords& b) const {
        Coords r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = ring->dom.add(r[i], b[i]);
        return r;
    }
    Coords sub(const Coords& a, const Coords& b) const {
        Coords r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = ring->dom.sub(r[i], b[i]);
        return r;
    }
    Coords neg(const Coords& a) const {
        Coords r = a;
        for (auto& x : r) x = ring->dom.neg(x);
        return r;
    }
    Coords scalar_mul(const Coords& a, const Elem& s) const {
        Coords r = a;
        for (auto& x : r) x = ring->dom.mul(x, s);
        return r;
    }
    Coords mul(const Coords& a, const Coords& b) const {
        const auto& dom = ring->dom;
        Coords r = zero();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (dom.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (dom.is_zero(b[j])) continue;
                Elem c = dom.mul(a[i], b[j]);
                const Coords& t = table[i][j];
                for (std::size_t k = 0; k < r.size(); ++k)
                    r[k] = dom.add(r[k], dom.mul(c, t[k]));
            }
        }
        return r;
    }
    bool is_zero(const Coords& a) const {
        for (const auto& x : a)
            if (!ring->dom.is_zero(x)) return false;
        return true;
    }
    bool eq(const Coords& a, const Coords& b) const {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!ring->dom.eq(a[i], b[i])) return false;
        return true;
    }
};

// Evaluation target adapter: drives Polynomial<DP>::evaluate_with over points
// whose coordinates live in a quotient algebra over DA, converting
// coefficients through `conv` (identity, or rational -> residue reduction).
template <class DP, class DA>
struct AlgebraEvalOps {
    using Value = typename QuotientAlgebra<DA>::Coords;
    const QuotientAlgebra<DA>* S;
    std::function<typename DA::Elem(const typename DP::Elem&)> conv;

    Value zero() const { return S->zero(); }
    Value one() const { return S->one(); }
    Value add(const Value& a, const Value& b) const { return S->add(a, b); }
    Value mul(const Value& a, const Value& b) const { return S->mul(a, b); }
    Value from_coeff(const typename DP::Elem& c) const { return S->from_scalar(conv(c)); }
};

template <class D>
typename QuotientAlgebra<D>::Coords to_coords(const QuotientAlgebra<D>& S,
                                              const Polynomial<D>& p) {
    if (!S.gb) throw Error(ErrorClass::internal, "to_coords needs the defining basis");
    auto nf = normal_form(p, *S.gb);
    auto c = S.zero();
    for (const auto& [m, coeff] : nf.terms()) {
        int idx = S.basis_index(m);
        if (idx < 0) throw InternalDefect("normal form leaves the standard basis");
        c[static_cast<std::size_t>(idx)] = coeff;
    }
    return c;
}

// Standard-monomial presentation of K[x]/I. Zero-dimensionality is detected
// by requiring a pure power of every variable among the leading terms.
template <class D>
QuotientAlgebra<D> build_quotient(const Ideal<D>& I, MonomialOrder order) {
    static_assert(D::is_field);
    auto G = buchberger(I, order);
    std::size_t d = I.ring->nvars();
    if (G.basis.size() == 1 && G.basis[0].is_constant())
        throw NotZeroDimensional("unit ideal has the zero ring as quotient");

    std::vector<std::uint32_t> bound(d, 0);
    std::vector<bool> seen(d, false);
    for (const auto& g : G.basis) {
        const Monomial& lm = g.leading_monomial();
        int nz = -1;
        bool pure = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (lm.e[i] == 0) continue;
            if (nz >= 0) pure = false;
            nz = static_cast<int>(i);
        }
        if (pure && nz >= 0) {
            seen[static_cast<std::size_t>(nz)] = true;
            bound[static_cast<std::size_t>(nz)] = lm.e[static_cast<std::size_t>(nz)];
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        if (!seen[i])
            throw NotZeroDimensional("no pure power of " + I.ring->vars[i] +
                                     " among leading terms");

    // enumerate monomials below the pure-power box, keep the standard ones
    std::vector<Monomial> std_monos;
    Monomial cur(d);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == d) {
            for (const auto& g : G.basis)
                if (g.leading_monomial().divides(cur)) return;
            std_monos.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e < bound[i]; ++e) {
            cur.e[i] = e;
            rec(i + 1);
        }
        cur.e[i] = 0;
    };
    rec(0);
    std::sort(std_monos.begin(), std_monos.end(), [&G](const Monomial& a, const Monomial& b) {
        return G.ring->order.less(a, b);
    });

    QuotientAlgebra<D> S;
    S.ring = G.ring;
    S.basis = std::move(std_monos);
    S.gb = G;
    std::size_t r = S.basis.size();
    S.table.assign(r, std::vector<typename QuotientAlgebra<D>::Coords>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            auto prod = Polynomial<D>::monomial_term(G.ring, S.basis[i].mul(S.basis[j]),
                                                     G.ring->dom.one());
            auto coords = to_coords(S, prod);
            S.table[i][j] = coords;
            S.table[j][i] = std::move(coords);
        }
    }
    return S;
}

// p-integrality gate and reduction of all structure constants mod p^K. The
// basis is kept verbatim, so dim(S/p^K S) = dim(S); a denominator divisible
// by p (including one hidden in the monic defining basis) is a BadPrime and
// the caller must move to another prime.
inline mpz_class rational_mod_pk(const mpq_class& q, const PadicRing& R) {
    return R.from_rational(q);
}

inline QuotientAlgebra<PadicRing> reduce_mod_pk(const QuotientAlgebra<Rationals>& S,
                                                std::int64_t p, int K) {
    PadicRing R(p, K);
    if (S.gb) {
        for (const auto& g : S.gb->basis)
            for (const auto& [m, c] : g.terms())
                if (c.get_den() % p == 0)
                    throw BadPrime("reduced basis coefficient " + c.get_str() +
                                   " not p-integral at p=" + std::to_string(p));
    }
    QuotientAlgebra<PadicRing> T;
    T.ring = make_ring<PadicRing>(R, S.ring->vars, S.ring->order);
    T.basis = S.basis;
    std::size_t r = S.dim();
    T.table.assign(r, std::vector<QuotientAlgebra<PadicRing>::Coords>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            QuotientAlgebra<PadicRing>::Coords c;
            c.reserve(r);
            for (const auto& q : S.table[i][j]) c.push_back(R.from_rational(q));
            T.table[i][j] = std::move(c);
        }
    return T;
}

inline QuotientAlgebra<PadicRing>::Coords reduce_coords(const QuotientAlgebra<PadicRing>& T,
                                                        const std::vector<mpq_class>& coords) {
    const PadicRing& R = T.ring->dom;
    QuotientAlgebra<PadicRing>::Coords c;
    c.reserve(coords.size());
    for (const auto& q : coords) c.push_back(R.from_rational(q));
    return c;
}

using PadicCoords = QuotientAlgebra<PadicRing>::Coords;

inline AlgebraEvalOps<Rationals, PadicRing> rational_eval_ops(const QuotientAlgebra<PadicRing>& S) {
    const PadicRing& R = S.ring->dom;
    return AlgebraEvalOps<Rationals, PadicRing>{
        &S, [&R](const mpq_class& q) { return R.from_rational(q); }};
}

// One application of the induced point map on S^d for a map with rational
// coefficients, reducing coefficients into the residue ring.
inline std::vector<PadicCoords> dyn_eval_mod(const PolyMap<Rationals>& tau,
                                             const QuotientAlgebra<PadicRing>& S,
                                             const std::vector<PadicCoords>& s) {
    return dyn_eval_with(tau, rational_eval_ops(S), s);
}

// Minimal a >= 1 with f_sigma^a(s) = s in (S/pS)^d. The congruence is
// established on the orbit of the supplied point (which is all the later
// construction uses), not on every point of (S/pS)^d; since the induced map
// is a bijection of a finite set, the orbit of s is a pure cycle.
inline long cycle_length(const PolyMap<Rationals>& sigma, const QuotientAlgebra<PadicRing>& Sp,
                         const std::vector<PadicCoords>& s, long cap = 1000000) {
    if (Sp.ring->dom.precision() != 1)
        throw PreconditionFailed("cycle_length expects the mod-p algebra (K = 1)");
    auto cur = dyn_eval_mod(sigma, Sp, s);
    auto eq_point = [&](const std::vector<PadicCoords>& a, const std::vector<PadicCoords>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!Sp.eq(a[i], b[i])) return false;
        return true;
    };
    long a = 1;
    while (!eq_point(cur, s)) {
        cur = dyn_eval_mod(sigma, Sp, cur);
        ++a;
        if (a > cap)
            throw PreconditionFailed("orbit of the base point does not close within cap " +
                                     std::to_string(cap) + "; the point may be preperiodic only");
    }
    return a;
}

using PadicMatrix = std::vector<std::vector<PadicCoords>>;

inline PadicMatrix mat_mul(const QuotientAlgebra<PadicRing>& S, const PadicMatrix& A,
                           const PadicMatrix& B) {
    std::size_t d = A.size();
    PadicMatrix C(d, std::vector<PadicCoords>(d, S.zero()));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                C[i][j] = S.add(C[i][j], S.mul(A[i][k], B[k][j]));
    return C;
}

inline PadicMatrix mat_identity(const QuotientAlgebra<PadicRing>& S, std::size_t d) {
    PadicMatrix I(d, std::vector<PadicCoords>(d, S.zero()));
    for (std::size_t i = 0; i < d; ++i) I[i][i] = S.one();
    return I;
}

inline bool mat_is_identity(const QuotientAlgebra<PadicRing>& S, const PadicMatrix& A) {
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) {
            bool want_one = i == j;
            if (want_one && !S.eq(A[i][j], S.one())) return false;
            if (!want_one && !S.is_zero(A[i][j])) return false;
        }
    return true;
}

// Jacobian of sigma evaluated mod p at a point of S^d.
inline PadicMatrix jacobian_mod(const PolyMap<Rationals>& sigma,
                                const QuotientAlgebra<PadicRing>& Sp,
                                const std::vector<PadicCoords>& s) {
    auto J = jacobian(sigma);
    auto ops = rational_eval_ops(Sp);
    std::size_t d = J.size();
    PadicMatrix M(d, std::vector<PadicCoords>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            M[i][j] = J[i][j].evaluate_with(ops, std::span<const PadicCoords>(s));
    return M;
}

// Smallest exponent m with J(sigma^a; s_k)^m = I mod p for every point of the
// mod-p cycle s_0, ..., s_{a-1}: the lcm of the multiplicative orders of the
// per-point chain-rule products. Exponentially smaller than the order of the
// full matrix group over S/pS, and sufficient at the points actually used.
inline long jacobian_identity_exponent(const PolyMap<Rationals>& sigma,
                                       const QuotientAlgebra<PadicRing>& Sp,
                                       const std::vector<std::vector<PadicCoords>>& cycle,
                                       long order_cap = 1000000) {
    std::size_t a = cycle.size();
    std::size_t d = sigma.ring->nvars();
    std::vector<PadicMatrix> M;
    M.reserve(a);
    for (const auto& pt : cycle) M.push_back(jacobian_mod(sigma, Sp, pt));

    long m = 1;
    for (std::size_t k = 0; k < a; ++k) {
        // J(sigma^a; s_k) by the chain rule along the cycle
        PadicMatrix A = mat_identity(Sp, d);
        for (std::size_t t = 0; t < a; ++t) A = mat_mul(Sp, M[(k + t) % a], A);
        PadicMatrix P = A;
        long ord = 1;
        while (!mat_is_identity(Sp, P)) {
            P = mat_mul(Sp, P, A);
            ++ord;
            if (ord > order_cap)
                throw SingularJacobian("Jacobian power cycle does not reach the identity; "
                                       "the map is likely not an automorphism mod p");
        }
        m = std::lcm(m, ord);
    }
    return m;
}

} // namespace smlorbit
