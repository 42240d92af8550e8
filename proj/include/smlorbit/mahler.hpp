#pragma once

#include <map>
#include <memory>

#include "config.hpp"
#include "quotient.hpp"

namespace smlorbit {

using AlgebraPtr = std::shared_ptr<const QuotientAlgebra<PadicRing>>;

// binomial coefficient C(z, k) at an arbitrary integer z: the product
// z(z-1)...(z-k+1)/k!, always an integer
inline mpz_class binomial_at(const mpz_class& z, int k) {
    mpz_class num = 1;
    for (int i = 0; i < k; ++i) num *= z - i;
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    return num / fact;
}

// What is guaranteed about coefficients beyond the stored truncation:
//   exact_zero  — the function is exactly the stored polynomial
//   arc_floor   — unstored b_k vanish mod p^K and satisfy v(b_k) >= (k+1)/2,
//                 the decay of successive-approximation arcs and of
//                 polynomial images of such arcs
enum class TailGuarantee { exact_zero, arc_floor };

// Element of R(S) (polynomials mapping Z_p into S) truncated mod p^K, stored
// on the binomial basis (z choose k). Absent indices are 0 mod p^K.
struct MahlerSeries {
    AlgebraPtr S;
    std::map<int, PadicCoords> coeffs;
    TailGuarantee tail = TailGuarantee::exact_zero;

    int degree() const { return coeffs.empty() ? -1 : coeffs.rbegin()->first; }

    const PadicRing& padic() const { return S->ring->dom; }

    // exact valuation of the stored coefficient, capped at the precision
    int stored_floor(int k) const {
        auto it = coeffs.find(k);
        if (it == coeffs.end()) return padic().precision();
        int v = padic().precision();
        for (const auto& c : it->second) v = std::min(v, padic().valuation_floor(c));
        return v;
    }

    PadicCoords coeff(int k) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? S->zero() : it->second;
    }

    void set_coeff(int k, PadicCoords c) {
        if (S->is_zero(c))
            coeffs.erase(k);
        else
            coeffs[k] = std::move(c);
    }

    bool is_zero() const { return coeffs.empty(); }

    PadicCoords eval_at(const mpz_class& z) const {
        const PadicRing& R = padic();
        PadicCoords acc = S->zero();
        for (const auto& [k, b] : coeffs) {
            auto w = R.reduce_z(binomial_at(z, k));
            acc = S->add(acc, S->scalar_mul(b, w));
        }
        return acc;
    }
    PadicCoords eval_at(long z) const { return eval_at(mpz_class(z)); }
};

inline MahlerSeries mahler_zero(const AlgebraPtr& S) { return MahlerSeries{S, {}, TailGuarantee::exact_zero}; }

inline MahlerSeries mahler_constant(const AlgebraPtr& S, PadicCoords c) {
    MahlerSeries f{S, {}, TailGuarantee::exact_zero};
    f.set_coeff(0, std::move(c));
    return f;
}

// Interpolation through values at z = 0..D: b_k is the k-th forward
// difference at 0, so eval_at(j) reproduces v_j for 0 <= j <= D.
inline MahlerSeries mahler_from_values(const AlgebraPtr& S, std::vector<PadicCoords> values) {
    MahlerSeries f{S, {}, TailGuarantee::exact_zero};
    std::size_t D = values.size();
    for (std::size_t k = 0; k < D; ++k) {
        f.set_coeff(static_cast<int>(k), values[0]);
        for (std::size_t j = 0; j + k + 1 < D; ++j) values[j] = S->sub(values[j + 1], values[j]);
    }
    return f;
}

inline MahlerSeries mahler_add(const MahlerSeries& f, const MahlerSeries& g) {
    MahlerSeries r{f.S, {}, f.tail == TailGuarantee::exact_zero && g.tail == TailGuarantee::exact_zero
                               ? TailGuarantee::exact_zero
                               : TailGuarantee::arc_floor};
    int D = std::max(f.degree(), g.degree());
    for (int k = 0; k <= D; ++k) r.set_coeff(k, f.S->add(f.coeff(k), g.coeff(k)));
    return r;
}

inline MahlerSeries mahler_sub(const MahlerSeries& f, const MahlerSeries& g) {
    MahlerSeries r{f.S, {}, f.tail == TailGuarantee::exact_zero && g.tail == TailGuarantee::exact_zero
                               ? TailGuarantee::exact_zero
                               : TailGuarantee::arc_floor};
    int D = std::max(f.degree(), g.degree());
    for (int k = 0; k <= D; ++k) r.set_coeff(k, f.S->sub(f.coeff(k), g.coeff(k)));
    return r;
}

inline MahlerSeries mahler_scalar(const MahlerSeries& f, const mpz_class& s) {
    MahlerSeries r{f.S, {}, f.tail};
    const PadicRing& R = f.padic();
    auto sr = R.reduce_z(s);
    for (const auto& [k, b] : f.coeffs) r.set_coeff(k, f.S->scalar_mul(b, sr));
    return r;
}

// g(z) = f(z+1) via Pascal: the coefficient at k becomes b_k + b_{k+1}.
inline MahlerSeries shift(const MahlerSeries& f) {
    MahlerSeries r{f.S, {}, f.tail};
    int D = f.degree();
    for (int k = 0; k <= D; ++k) r.set_coeff(k, f.S->add(f.coeff(k), f.coeff(k + 1)));
    return r;
}

// Product by evaluation at z = 0..deg(f)+deg(g) followed by interpolation;
// pointwise values multiply exactly in S.
inline MahlerSeries mahler_mul(const MahlerSeries& f, const MahlerSeries& g, long cap = 400) {
    long D = std::max(f.degree(), 0) + std::max(g.degree(), 0);
    if (D > cap)
        throw DegreeOverflow("Mahler product degree " + std::to_string(D) + " exceeds cap " +
                             std::to_string(cap));
    if (f.is_zero() || g.is_zero()) return mahler_zero(f.S);
    std::vector<PadicCoords> values;
    values.reserve(static_cast<std::size_t>(D) + 1);
    for (long z = 0; z <= D; ++z) values.push_back(f.S->mul(f.eval_at(z), g.eval_at(z)));
    auto r = mahler_from_values(f.S, std::move(values));
    r.tail = f.tail == TailGuarantee::exact_zero && g.tail == TailGuarantee::exact_zero
                 ? TailGuarantee::exact_zero
                 : TailGuarantee::arc_floor;
    return r;
}

// coordinatewise residue reduction to the canonical mod-p lift in [0, p)
inline PadicCoords coords_mod_p(const QuotientAlgebra<PadicRing>& S, const PadicCoords& c) {
    const PadicRing& R = S.ring->dom;
    PadicCoords r;
    r.reserve(c.size());
    for (const auto& x : c) r.push_back(mpz_class(x % R.p()));
    return r;
}

// Solves h_i(z+1) = h_i(z) - Q_i(z) with h_i(0) = 0 and deg(h_i) <= N+1:
// writing Q_i = sum c_k (z choose k), take h_i = -sum c_k (z choose k+1),
// which telescopes through (z+1 choose k+1) - (z choose k+1) = (z choose k).
// Coefficients are canonical mod-p lifts, so the identity holds exactly.
inline std::vector<MahlerSeries> solve_difference(const std::vector<MahlerSeries>& Q) {
    std::vector<MahlerSeries> H;
    H.reserve(Q.size());
    for (const auto& q : Q) {
        const auto& S = *q.S;
        MahlerSeries h{q.S, {}, TailGuarantee::exact_zero};
        for (const auto& [k, c] : q.coeffs)
            h.set_coeff(k + 1, coords_mod_p(S, S.neg(c)));
        H.push_back(std::move(h));
    }
    return H;
}

} // namespace smlorbit
