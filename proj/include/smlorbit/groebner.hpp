#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "polynomial.hpp"

namespace smlorbit {

template <class D>
struct Ideal {
    RingPtr<D> ring;
    std::vector<Polynomial<D>> gens; // nonzero; empty list is the zero ideal
};

template <class D>
Ideal<D> make_ideal(const RingPtr<D>& ring, std::vector<Polynomial<D>> gens) {
    std::vector<Polynomial<D>> kept;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.ring()->same(*ring)) throw RingMismatch("ideal generator from another ring");
        kept.push_back(std::move(g));
    }
    return Ideal<D>{ring, std::move(kept)};
}

template <class D>
struct GroebnerBasis {
    RingPtr<D> ring; // carries the order the basis was computed under
    std::vector<Polynomial<D>> basis;

    MonomialOrder order() const { return ring->order; }
};

namespace detail {

// re-sort a polynomial's terms under another ring's order
template <class D>
Polynomial<D> convert_ring(const Polynomial<D>& p, const RingPtr<D>& target) {
    Polynomial<D> r(target);
    for (const auto& [m, c] : p.terms())
        r = r.add(Polynomial<D>::monomial_term(target, m, c));
    return r;
}

template <class D>
Polynomial<D> mono_mul(const Polynomial<D>& p, const Monomial& m, const typename D::Elem& c) {
    Polynomial<D> r(p.ring());
    const auto& dom = p.ring()->dom;
    for (const auto& [pm, pc] : p.terms()) {
        auto nc = dom.mul(pc, c);
        if (!dom.is_zero(nc))
            r = r.add(Polynomial<D>::monomial_term(p.ring(), pm.mul(m), nc));
    }
    return r;
}

} // namespace detail

// Canonical remainder: no term of the result is divisible by any leading
// term of G; p - normal_form(p, G) lies in the ideal generated by G.
template <class D>
Polynomial<D> normal_form(const Polynomial<D>& p, const GroebnerBasis<D>& G) {
    static_assert(D::is_field, "normal form requires field coefficients");
    if (!p.ring()->same(*G.ring)) {
        if (p.ring()->vars != G.ring->vars || !p.ring()->dom.same(G.ring->dom))
            throw RingMismatch("normal_form across rings");
    }
    const auto& dom = G.ring->dom;
    Polynomial<D> work = detail::convert_ring(p, G.ring);
    Polynomial<D> rem(G.ring);
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial();
        bool reduced = false;
        for (const auto& g : G.basis) {
            if (!g.leading_monomial().divides(lm)) continue;
            auto q = lm.div(g.leading_monomial());
            auto coeff = dom.mul(work.leading_coeff(), dom.inv(g.leading_coeff()));
            work = work.sub(detail::mono_mul(g, q, coeff));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem = rem.add(Polynomial<D>::monomial_term(G.ring, lm, work.leading_coeff()));
            work = work.sub(Polynomial<D>::monomial_term(G.ring, lm, work.leading_coeff()));
        }
    }
    return rem;
}

template <class D>
Polynomial<D> s_polynomial(const Polynomial<D>& f, const Polynomial<D>& g) {
    const auto& dom = f.ring()->dom;
    Monomial L = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
    auto uf = L.div(f.leading_monomial());
    auto ug = L.div(g.leading_monomial());
    auto a = detail::mono_mul(f, uf, dom.inv(f.leading_coeff()));
    auto b = detail::mono_mul(g, ug, dom.inv(g.leading_coeff()));
    return a.sub(b);
}

// Buchberger with normal pair-selection strategy (minimal lcm degree, ties
// broken by the order) and the two standard pair-dropping criteria. Output
// is the reduced monic basis, sorted by leading monomial, so it is unique
// for a fixed input ideal and order.
template <class D>
GroebnerBasis<D> buchberger(const Ideal<D>& ideal, MonomialOrder order) {
    static_assert(D::is_field, "Buchberger requires field coefficients");
    RingPtr<D> ring = with_order(ideal.ring, order);
    const auto& dom = ring->dom;

    std::vector<Polynomial<D>> G;
    for (const auto& g : ideal.gens) {
        auto h = detail::convert_ring(g, ring);
        if (!h.is_zero()) G.push_back(h.scalar_mul(dom.inv(h.leading_coeff())));
    }

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    auto pair_less = [&ring](const Pair& a, const Pair& b) {
        long da = a.lcm.total_degree(), db = b.lcm.total_degree();
        if (da != db) return da < db;
        auto c = ring->order.compare(a.lcm, b.lcm);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> pending_keys;
    auto push_pair = [&](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        pending.push_back({i, j, Monomial::lcm(G[i].leading_monomial(), G[j].leading_monomial())});
        pending_keys.insert({i, j});
    };
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j) push_pair(i, j);

    auto is_pending = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return pending_keys.count({a, b}) > 0;
    };

    while (!pending.empty()) {
        auto it = std::min_element(pending.begin(), pending.end(), pair_less);
        Pair pr = *it;
        pending.erase(it);
        pending_keys.erase({pr.i, pr.j});

        // product criterion
        if (G[pr.i].leading_monomial().coprime(G[pr.j].leading_monomial())) continue;
        // chain criterion: some k with LT(g_k) | lcm and both companion pairs done
        bool chained = false;
        for (std::size_t k = 0; k < G.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (G[k].leading_monomial().divides(pr.lcm) && !is_pending(pr.i, k) &&
                !is_pending(pr.j, k))
                chained = true;
        }
        if (chained) continue;

        GroebnerBasis<D> cur{ring, G};
        auto rem = normal_form(s_polynomial(G[pr.i], G[pr.j]), cur);
        if (rem.is_zero()) continue;
        rem = rem.scalar_mul(dom.inv(rem.leading_coeff()));
        G.push_back(rem);
        for (std::size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
    }

    // minimalize: drop elements whose LT is divisible by another's LT
    std::vector<Polynomial<D>> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const auto& li = G[i].leading_monomial();
            const auto& lj = G[j].leading_monomial();
            if (lj.divides(li) && !(li == lj && j > i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    // fully reduce each element against the others
    std::vector<Polynomial<D>> reduced = minimal;
    for (std::size_t pass = 0; pass < reduced.size() + 1; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            std::vector<Polynomial<D>> others;
            for (std::size_t j = 0; j < reduced.size(); ++j)
                if (j != i) others.push_back(reduced[j]);
            GroebnerBasis<D> g_others{ring, others};
            auto nf = normal_form(reduced[i], g_others);
            nf = nf.scalar_mul(dom.inv(nf.leading_coeff()));
            if (!nf.equals(reduced[i])) {
                reduced[i] = nf;
                changed = true;
            }
        }
        if (!changed) break;
    }
    std::sort(reduced.begin(), reduced.end(), [&ring](const auto& a, const auto& b) {
        return ring->order.less(a.leading_monomial(), b.leading_monomial());
    });
    if (reduced.empty()) {
        // zero ideal: empty basis
        return GroebnerBasis<D>{ring, {}};
    }
    return GroebnerBasis<D>{ring, std::move(reduced)};
}

template <class D>
GroebnerBasis<D> buchberger(const Ideal<D>& ideal) {
    return buchberger(ideal, ideal.ring->order);
}

template <class D>
bool member(const Polynomial<D>& p, const GroebnerBasis<D>& G) {
    return normal_form(p, G).is_zero();
}

// I contains J, decided generator-wise against GB(I).
template <class D>
bool contains(const Ideal<D>& I, const Ideal<D>& J) {
    if (!I.ring->same(*J.ring)) throw RingMismatch("contains across rings");
    auto G = buchberger(I);
    for (const auto& g : J.gens)
        if (!member(g, G)) return false;
    return true;
}

template <class D>
bool contains(const GroebnerBasis<D>& GI, const Ideal<D>& J) {
    for (const auto& g : J.gens)
        if (!member(g, GI)) return false;
    return true;
}

namespace detail {

template <class D>
Polynomial<D> permute_vars(const Polynomial<D>& p, const std::vector<std::size_t>& new_of_old,
                           const RingPtr<D>& target) {
    Polynomial<D> r(target);
    for (const auto& [m, c] : p.terms()) {
        Monomial nm(target->nvars());
        for (std::size_t i = 0; i < m.e.size(); ++i) nm.e[new_of_old[i]] = m.e[i];
        r = r.add(Polynomial<D>::monomial_term(target, nm, c));
    }
    return r;
}

} // namespace detail

// Generators of I intersected with the subring on `keep`, via a block
// elimination order with the dropped variables in the dominant block.
template <class D>
Ideal<D> eliminate(const Ideal<D>& I, const std::vector<bool>& keep) {
    if (keep.size() != I.ring->nvars()) throw ArityMismatch("eliminate: keep mask size");
    std::size_t n = keep.size();
    std::vector<std::size_t> new_of_old(n);
    std::vector<std::string> pvars;
    std::size_t ndrop = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!keep[i]) {
            new_of_old[i] = pvars.size();
            pvars.push_back(I.ring->vars[i]);
            ++ndrop;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) {
            new_of_old[i] = pvars.size();
            pvars.push_back(I.ring->vars[i]);
        }
    auto pring = make_ring<D>(I.ring->dom, pvars,
                              MonomialOrder::elimination(static_cast<int>(ndrop)));
    std::vector<Polynomial<D>> pgens;
    for (const auto& g : I.gens) pgens.push_back(detail::permute_vars(g, new_of_old, pring));
    auto G = buchberger(make_ideal(pring, pgens), pring->order);

    std::vector<std::size_t> back(n);
    for (std::size_t i = 0; i < n; ++i) back[new_of_old[i]] = i;
    std::vector<Polynomial<D>> out;
    for (const auto& g : G.basis) {
        bool pure = true;
        for (const auto& [m, c] : g.terms())
            for (std::size_t i = 0; i < ndrop && pure; ++i)
                if (m.e[i]) pure = false;
        if (pure) out.push_back(detail::permute_vars(g, back, I.ring));
    }
    return make_ideal(I.ring, std::move(out));
}

} // namespace smlorbit
