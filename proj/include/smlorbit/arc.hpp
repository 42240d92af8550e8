#pragma once

#include "mahler.hpp"

namespace smlorbit {

// Interpolating arc for an automorphism rho at a base point s0: d truncated
// Mahler series with f_i(0) = s0[i] and f_i(z+1) = H_i(f_1(z), ..., f_d(z))
// mod p^K, where rho = (H_1, ..., H_d).
struct Arc {
    AlgebraPtr S;
    PolyMap<Rationals> rho;
    std::vector<PadicCoords> base;
    std::vector<MahlerSeries> f;
    std::int64_t p = 0;
    int K = 0;
    bool experimental_prime = false; // p = 3 under the override flag

    std::size_t dims() const { return f.size(); }
};

namespace detail {

inline std::vector<PadicCoords> eval_arc_cols(const std::vector<MahlerSeries>& g, long z) {
    std::vector<PadicCoords> pt;
    pt.reserve(g.size());
    for (const auto& gi : g) pt.push_back(gi.eval_at(z));
    return pt;
}

} // namespace detail

// Successive approximation mod p, p^2, ..., p^K. Each level divides the
// functional-equation defect by p^j exactly, solves the linearized
// difference system (valid because the Jacobian is the identity mod p), and
// accumulates p^j h_{i,j} with deg(h_{i,j}) <= 2j-1. The level structure is
// what forces the coefficient decay v(b_k) >= ceil((k+1)/2): level j can
// only touch binomial indices k <= 2j-1.
inline Arc build_arc(const PolyMap<Rationals>& rho, const AlgebraPtr& S,
                     const std::vector<PadicCoords>& s0, std::int64_t p, int K,
                     const Config& cfg = Config{}) {
    if (p == 2) throw SmallPrime("p = 2 is refused: the interpolation construction fails there");
    if (p == 3 && !cfg.allow_p3_experimental)
        throw SmallPrime("p = 3 is refused by default (convergence unproven); "
                         "set the experimental override to run it non-certifying");
    const PadicRing& R = S->ring->dom;
    if (R.p() != p || R.precision() != K)
        throw PreconditionFailed("algebra precision does not match requested (p, K)");
    std::size_t d = rho.ring->nvars();
    if (s0.size() != d) throw ArityMismatch("base point arity");

    auto mod_p_coords = [&](const PadicCoords& c) { return coords_mod_p(*S, c); };
    auto eq_mod_p = [&](const PadicCoords& a, const PadicCoords& b) {
        auto ra = mod_p_coords(a), rb = mod_p_coords(b);
        for (std::size_t i = 0; i < ra.size(); ++i)
            if (ra[i] != rb[i]) return false;
        return true;
    };

    // precondition (i): the base point is fixed mod p
    auto ops = rational_eval_ops(*S);
    auto fs0 = dyn_eval_with(rho, ops, s0);
    for (std::size_t i = 0; i < d; ++i)
        if (!eq_mod_p(fs0[i], s0[i]))
            throw PreconditionFailed("base point is not fixed mod p (coordinate " +
                                     std::to_string(i) + ")");
    // precondition (ii): identity Jacobian mod p
    {
        auto M = jacobian_mod(rho, *S, s0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto want = i == j ? S->one() : S->zero();
                if (!eq_mod_p(M[i][j], want))
                    throw PreconditionFailed("Jacobian at the base point is not the identity mod p");
            }
    }

    mpz_class pj = 1;
    long himg_deg = std::max(rho.max_image_degree(), 1L);
    std::vector<MahlerSeries> g;
    for (std::size_t i = 0; i < d; ++i) g.push_back(mahler_constant(S, s0[i]));

    for (int j = 1; j <= K - 1; ++j) {
        pj *= p;
        long Dg = 0;
        for (const auto& gi : g) Dg = std::max<long>(Dg, gi.degree());
        long Dd = std::max(Dg, himg_deg * Dg);
        if (Dd > cfg.mahler_degree_cap)
            throw DegreeOverflow("arc defect degree " + std::to_string(Dd) + " exceeds cap");

        // values of g at 0..Dd+1, then pointwise H and differences
        std::vector<std::vector<PadicCoords>> gv; // gv[z][i]
        gv.reserve(static_cast<std::size_t>(Dd) + 2);
        for (long z = 0; z <= Dd + 1; ++z) gv.push_back(detail::eval_arc_cols(g, z));

        std::vector<MahlerSeries> Q;
        Q.reserve(d);
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<PadicCoords> defect_vals;
            defect_vals.reserve(static_cast<std::size_t>(Dd) + 1);
            for (long z = 0; z <= Dd; ++z) {
                auto hz = rho.images[i].evaluate_with(
                    ops, std::span<const PadicCoords>(gv[static_cast<std::size_t>(z)]));
                defect_vals.push_back(S->sub(gv[static_cast<std::size_t>(z) + 1][i], hz));
            }
            auto defect = mahler_from_values(S, std::move(defect_vals));
            // divide by p^j exactly and reduce mod p
            MahlerSeries q{S, {}, TailGuarantee::exact_zero};
            for (const auto& [k, c] : defect.coeffs) {
                PadicCoords qc;
                qc.reserve(c.size());
                for (const auto& x : c) qc.push_back(R.exact_div_pow(x, j));
                q.set_coeff(k, coords_mod_p(*S, qc));
            }
            // degree ledger: the defect after reduction lives in degree <= 2j-2
            if (q.degree() > 2 * j - 2)
                throw InternalDefect("defect degree " + std::to_string(q.degree()) +
                                     " breaks the 2j-2 ledger at level " + std::to_string(j));
            Q.push_back(std::move(q));
        }

        auto H = solve_difference(Q);
        for (std::size_t i = 0; i < d; ++i) {
            if (H[i].degree() > 2 * j - 1)
                throw InternalDefect("correction degree breaks the 2j-1 ledger");
            g[i] = mahler_add(g[i], mahler_scalar(H[i], pj));
        }
    }

    Arc arc{S, rho, s0, std::move(g), p, K, p == 3};
    for (auto& fi : arc.f) fi.tail = TailGuarantee::arc_floor;

    // post-validation: functional equation and coefficient decay
    long zmax = std::min(2L * K, 20L);
    for (long z = 0; z <= zmax; ++z) {
        auto fz = detail::eval_arc_cols(arc.f, z);
        auto fz1 = detail::eval_arc_cols(arc.f, z + 1);
        auto hz = dyn_eval_with(rho, ops, fz);
        for (std::size_t i = 0; i < d; ++i)
            if (!S->eq(fz1[i], hz[i]))
                throw InternalDefect("functional equation fails at z = " + std::to_string(z));
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!S->eq(arc.f[i].eval_at(0L), s0[i]))
            throw InternalDefect("arc does not start at the base point");
        for (const auto& [k, c] : arc.f[i].coeffs) {
            if (k == 0) continue;
            if (arc.f[i].stored_floor(k) < (k + 2) / 2)
                throw InternalDefect("coefficient valuation below the (k+1)/2 floor at k = " +
                                     std::to_string(k));
        }
    }
    return arc;
}

// f_{rho^n}(s0) read off the arc; agrees with n-fold dyn_eval mod p^K.
inline std::vector<PadicCoords> arc_eval(const Arc& arc, long n) {
    return detail::eval_arc_cols(arc.f, n);
}

} // namespace smlorbit
