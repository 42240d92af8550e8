#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "groebner.hpp"
#include "polynomial.hpp"

namespace smlorbit {

// Polynomial endomorphism x_i -> images[i]. When inverse images are present
// they are user-supplied; verify_automorphism checks both compositions give
// the identity (modulo a defining ideal, for quotient-ring presentations).
template <class D>
struct PolyMap {
    RingPtr<D> ring;
    std::vector<Polynomial<D>> images;
    std::optional<std::vector<Polynomial<D>>> inverse_images;

    static PolyMap identity(const RingPtr<D>& ring) {
        std::vector<Polynomial<D>> im, inv;
        for (std::size_t i = 0; i < ring->nvars(); ++i) {
            im.push_back(Polynomial<D>::variable(ring, i));
            inv.push_back(Polynomial<D>::variable(ring, i));
        }
        return PolyMap{ring, std::move(im), std::move(inv)};
    }

    bool has_inverse() const { return inverse_images.has_value(); }

    PolyMap inverse() const {
        if (!inverse_images) throw NoInverse();
        return PolyMap{ring, *inverse_images, images};
    }

    long max_image_degree() const {
        long d = 0;
        for (const auto& f : images) d = std::max(d, f.total_degree());
        return d;
    }
};

template <class D>
void check_map(const PolyMap<D>& m) {
    if (m.images.size() != m.ring->nvars())
        throw ArityMismatch("map has " + std::to_string(m.images.size()) + " images for " +
                            std::to_string(m.ring->nvars()) + " variables");
    if (m.inverse_images && m.inverse_images->size() != m.ring->nvars())
        throw ArityMismatch("inverse image count differs from variable count");
}

// (t2 ∘ t1)(x_i) = t1(x_i) with every variable replaced by t2's images.
template <class D>
PolyMap<D> compose(const PolyMap<D>& t2, const PolyMap<D>& t1, long degree_cap = 0) {
    if (!t2.ring->same(*t1.ring)) throw RingMismatch("compose across rings");
    std::vector<Polynomial<D>> im;
    im.reserve(t1.images.size());
    for (const auto& f : t1.images) {
        auto g = f.substitute(t2.images);
        if (degree_cap > 0 && g.total_degree() > degree_cap)
            throw DegreeOverflow("composition degree " + std::to_string(g.total_degree()) +
                                 " exceeds cap " + std::to_string(degree_cap));
        im.push_back(std::move(g));
    }
    std::optional<std::vector<Polynomial<D>>> inv;
    if (t1.inverse_images && t2.inverse_images) {
        std::vector<Polynomial<D>> vi;
        for (const auto& f : *t2.inverse_images) vi.push_back(f.substitute(*t1.inverse_images));
        inv = std::move(vi);
    }
    return PolyMap<D>{t1.ring, std::move(im), std::move(inv)};
}

// Cache of squared powers for iterate(); concurrent reads are safe, writes
// are serialized.
template <class D>
class IterateCache {
public:
    explicit IterateCache(PolyMap<D> base) : base_(std::move(base)) {}

    const PolyMap<D>& base() const { return base_; }

    PolyMap<D> pow2(int k, bool inverse, long degree_cap) {
        std::scoped_lock lock(mu_);
        auto& table = inverse ? inv_pows_ : pows_;
        if (table.empty()) {
            if (inverse) {
                if (!base_.inverse_images) throw NoInverse();
                table.push_back(base_.inverse());
            } else {
                table.push_back(base_);
            }
        }
        while (static_cast<int>(table.size()) <= k)
            table.push_back(compose(table.back(), table.back(), degree_cap));
        return table[static_cast<std::size_t>(k)];
    }

private:
    PolyMap<D> base_;
    std::vector<PolyMap<D>> pows_;
    std::vector<PolyMap<D>> inv_pows_;
    std::mutex mu_;
};

// sigma^n by repeated squaring; negative n requires a supplied inverse.
template <class D>
PolyMap<D> iterate(const PolyMap<D>& sigma, long n, long degree_cap = 0,
                   IterateCache<D>* cache = nullptr) {
    check_map(sigma);
    if (n == 0) return PolyMap<D>::identity(sigma.ring);
    bool inverse = n < 0;
    if (inverse && !sigma.inverse_images)
        throw NoInverse("negative iterate of a map without a verified inverse");
    unsigned long k = inverse ? static_cast<unsigned long>(-(n + 1)) + 1ul
                              : static_cast<unsigned long>(n);
    std::unique_ptr<IterateCache<D>> local;
    if (!cache) {
        local = std::make_unique<IterateCache<D>>(sigma);
        cache = local.get();
    }
    std::optional<PolyMap<D>> acc;
    int bit = 0;
    while (k) {
        if (k & 1ul) {
            auto piece = cache->pow2(bit, inverse, degree_cap);
            acc = acc ? compose(*acc, piece, degree_cap) : piece;
        }
        k >>= 1;
        ++bit;
    }
    return *acc;
}

// Both compositions must give the identity; with a defining ideal Q the
// identity is required modulo Q (quotient-ring automorphisms). Returns the
// index of the first failing variable, or -1 on success.
template <class D>
int automorphism_witness(const PolyMap<D>& sigma, const GroebnerBasis<D>* defining = nullptr) {
    check_map(sigma);
    if (!sigma.inverse_images) throw NoInverse("verification requires inverse images");
    auto reduce = [&](Polynomial<D> p) {
        return defining ? normal_form(p, *defining) : std::move(p);
    };
    for (std::size_t i = 0; i < sigma.ring->nvars(); ++i) {
        auto x = Polynomial<D>::variable(sigma.ring, i);
        auto a = reduce((*sigma.inverse_images)[i].substitute(sigma.images).sub(x));
        if (!a.is_zero()) return static_cast<int>(i);
        auto b = reduce(sigma.images[i].substitute(*sigma.inverse_images).sub(x));
        if (!b.is_zero()) return static_cast<int>(i);
    }
    return -1;
}

template <class D>
bool verify_automorphism(const PolyMap<D>& sigma, const GroebnerBasis<D>* defining = nullptr) {
    return automorphism_witness(sigma, defining) < 0;
}

// Symbolic Jacobian: entry (i, j) = d(images[i]) / d(x_j).
template <class D>
std::vector<std::vector<Polynomial<D>>> jacobian(const PolyMap<D>& tau) {
    check_map(tau);
    std::size_t d = tau.ring->nvars();
    std::vector<std::vector<Polynomial<D>>> J(d);
    for (std::size_t i = 0; i < d; ++i) {
        J[i].reserve(d);
        for (std::size_t j = 0; j < d; ++j) J[i].push_back(tau.images[i].derivative(j));
    }
    return J;
}

template <class D>
std::vector<std::vector<typename D::Elem>> jacobian_at(const PolyMap<D>& tau,
                                                       const std::vector<typename D::Elem>& s) {
    auto J = jacobian(tau);
    std::vector<std::vector<typename D::Elem>> R(J.size());
    for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t j = 0; j < J.size(); ++j) R[i].push_back(J[i][j].evaluate(s));
    return R;
}

// Dynamical evaluation map: s -> (F_1(s), ..., F_d(s)).
template <class D>
std::vector<typename D::Elem> dyn_eval(const PolyMap<D>& tau,
                                       const std::vector<typename D::Elem>& s) {
    check_map(tau);
    if (s.size() != tau.ring->nvars()) throw ArityMismatch("dyn_eval: point arity");
    std::vector<typename D::Elem> out;
    out.reserve(tau.images.size());
    for (const auto& f : tau.images) out.push_back(f.evaluate(s));
    return out;
}

// Same map over any evaluation target (quotient-algebra points included).
template <class D, class Ops>
std::vector<typename Ops::Value> dyn_eval_with(const PolyMap<D>& tau, const Ops& ops,
                                               const std::vector<typename Ops::Value>& s) {
    check_map(tau);
    if (s.size() != tau.ring->nvars()) throw ArityMismatch("dyn_eval: point arity");
    std::vector<typename Ops::Value> out;
    out.reserve(tau.images.size());
    for (const auto& f : tau.images)
        out.push_back(f.evaluate_with(ops, std::span<const typename Ops::Value>(s)));
    return out;
}

// tau^{-1}(I) = { p : p(F_1, ..., F_d) in I }, computed by adjoining tag
// variables y_i, forming I + <y_i - F_i(x)>, eliminating x and renaming back.
template <class D>
Ideal<D> preimage_ideal(const PolyMap<D>& tau, const Ideal<D>& I) {
    static_assert(D::is_field, "preimage_ideal requires field coefficients");
    check_map(tau);
    if (!tau.ring->same(*I.ring)) throw RingMismatch("preimage_ideal across rings");
    std::size_t d = I.ring->nvars();
    std::vector<std::string> evars = I.ring->vars;
    for (const auto& v : I.ring->vars) evars.push_back(v + "__pre");
    auto ering = make_ring<D>(I.ring->dom, evars,
                              MonomialOrder::elimination(static_cast<int>(d)));

    auto lift = [&](const Polynomial<D>& p) {
        Polynomial<D> r(ering);
        for (const auto& [m, c] : p.terms()) {
            Monomial nm(2 * d);
            for (std::size_t i = 0; i < d; ++i) nm.e[i] = m.e[i];
            r = r.add(Polynomial<D>::monomial_term(ering, nm, c));
        }
        return r;
    };

    std::vector<Polynomial<D>> gens;
    for (const auto& g : I.gens) gens.push_back(lift(g));
    for (std::size_t i = 0; i < d; ++i) {
        auto yi = Polynomial<D>::variable(ering, d + i);
        gens.push_back(yi.sub(lift(tau.images[i])));
    }
    auto G = buchberger(make_ideal(ering, gens), ering->order);

    std::vector<Polynomial<D>> out;
    for (const auto& g : G.basis) {
        bool pure = true;
        for (const auto& [m, c] : g.terms())
            for (std::size_t i = 0; i < d && pure; ++i)
                if (m.e[i]) pure = false;
        if (!pure) continue;
        Polynomial<D> back(I.ring);
        for (const auto& [m, c] : g.terms()) {
            Monomial nm(d);
            for (std::size_t i = 0; i < d; ++i) nm.e[i] = m.e[d + i];
            back = back.add(Polynomial<D>::monomial_term(I.ring, nm, c));
        }
        out.push_back(std::move(back));
    }
    return make_ideal(I.ring, std::move(out));
}

} // namespace smlorbit
