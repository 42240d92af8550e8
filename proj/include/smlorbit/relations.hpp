#pragma once

#include "config.hpp"
#include "polymap.hpp"

namespace smlorbit {

// The five containment relations between an endomorphism acting on ideals
// and its dynamical evaluation map acting on F_p-points:
//   (a) preimage(tau, I) contains J          (ideal, via elimination)
//   (b) I contains tau(J)                    (ideal, generator membership)
//   (c) V(I) subset of V(tau(J))             (points)
//   (d) f_tau(V(I)) subset of V(J)           (points, image route)
//   (e) V(I) subset of f_tau^{-1}(V(J))      (points, preimage route)
// Always a <=> b, c <=> d <=> e and b => c; c does not imply b for
// non-radical I, which check_relations can exhibit.
struct RelationVerdict {
    bool a = false, b = false, c = false, d = false, e = false;
    long count_VI = 0, count_VJ = 0, count_VtauJ = 0;
};

template <class F>
RelationVerdict check_relations(const PolyMap<F>& tau, const Ideal<F>& I, const Ideal<F>& J,
                                const Config& cfg = Config{}) {
    static_assert(F::is_field);
    check_map(tau);
    if (!I.ring->same(*J.ring) || !I.ring->same(*tau.ring))
        throw RingMismatch("relations inputs span rings");
    long p = I.ring->dom.characteristic();
    if (p <= 0) throw ValidationError("coefficient_field", "relations check needs F_p");
    std::size_t d = I.ring->nvars();
    double total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= static_cast<double>(p);
    if (total > static_cast<double>(cfg.enum_cap))
        throw EnumerationTooLarge("p^d = " + std::to_string(total) + " exceeds cap");

    RelationVerdict v;

    auto GI = buchberger(I);
    // (b): generator-wise membership of tau(J) in I; enough because tau is a
    // ring homomorphism, so tau of a combination stays in the ideal once the
    // generator images do
    std::vector<Polynomial<F>> tauJ;
    for (const auto& g : J.gens) tauJ.push_back(g.substitute(tau.images));
    v.b = true;
    for (const auto& g : tauJ)
        if (!member(g, GI)) v.b = false;

    // (a): computed independently through the preimage ideal
    v.a = contains(preimage_ideal(tau, I), J);

    // enumerate F_p^d
    std::vector<std::vector<typename F::Elem>> points;
    std::vector<typename F::Elem> cur(d, I.ring->dom.zero());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == d) {
            points.push_back(cur);
            return;
        }
        for (long x = 0; x < p; ++x) {
            cur[i] = I.ring->dom.from_int(x);
            rec(i + 1);
        }
    };
    rec(0);

    auto vanishes = [&](const std::vector<Polynomial<F>>& gens,
                        const std::vector<typename F::Elem>& pt) {
        for (const auto& g : gens)
            if (!I.ring->dom.is_zero(g.evaluate(pt))) return false;
        return true;
    };

    std::vector<std::size_t> VI;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (vanishes(I.gens, points[i])) VI.push_back(i);
        if (vanishes(J.gens, points[i])) ++v.count_VJ;
        if (vanishes(tauJ, points[i])) ++v.count_VtauJ;
    }
    v.count_VI = static_cast<long>(VI.size());

    // (c): V(I) inside V(tau(J)), by evaluating the substituted generators
    v.c = true;
    for (auto i : VI)
        if (!vanishes(tauJ, points[i])) v.c = false;

    // (d): push V(I) through f_tau, then test J
    v.d = true;
    for (auto i : VI) {
        auto img = dyn_eval(tau, points[i]);
        if (!vanishes(J.gens, img)) v.d = false;
    }

    // (e): materialize f_tau^{-1}(V(J)) over the whole point set, then test inclusion
    std::vector<bool> in_pre(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto img = dyn_eval(tau, points[i]);
        in_pre[i] = vanishes(J.gens, img);
    }
    v.e = true;
    for (auto i : VI)
        if (!in_pre[i]) v.e = false;

    return v;
}

} // namespace smlorbit
