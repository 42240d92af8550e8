#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <smlorbit/parser.hpp>
#include <smlorbit/polymap.hpp>

namespace tu {

using namespace smlorbit;

template <class D>
Polynomial<D> P(const std::string& s, const RingPtr<D>& R) {
    return parse_poly<D>(s, R);
}

inline RingPtr<Rationals> qring(std::vector<std::string> vars,
                                MonomialOrder ord = MonomialOrder::grevlex()) {
    return make_ring<Rationals>(Rationals{}, std::move(vars), ord);
}

inline RingPtr<PrimeField> fpring(std::int64_t p, std::vector<std::string> vars) {
    return make_ring<PrimeField>(PrimeField{p}, std::move(vars));
}

template <class D>
Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, int max_deg) {
    Monomial m(nvars);
    int budget = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
    for (int i = 0; i < budget; ++i) m.e[rng() % nvars] += 1;
    return m;
}

template <class D>
Polynomial<D> random_poly(std::mt19937_64& rng, const RingPtr<D>& R, int max_deg, int nterms,
                          long coeff_range = 7) {
    Polynomial<D> p(R);
    for (int i = 0; i < nterms; ++i) {
        long c = static_cast<long>(rng() % static_cast<unsigned long>(2 * coeff_range + 1)) -
                 coeff_range;
        auto mono = random_monomial<D>(rng, R->nvars(), max_deg);
        p = p.add(Polynomial<D>::monomial_term(R, mono, R->dom.from_int(c)));
    }
    return p;
}

template <class D>
PolyMap<D> map_of(const RingPtr<D>& R, std::vector<std::string> images,
                  std::vector<std::string> inverse = {}) {
    std::vector<Polynomial<D>> im;
    for (const auto& s : images) im.push_back(P<D>(s, R));
    std::optional<std::vector<Polynomial<D>>> inv;
    if (!inverse.empty()) {
        std::vector<Polynomial<D>> vi;
        for (const auto& s : inverse) vi.push_back(P<D>(s, R));
        inv = std::move(vi);
    }
    return PolyMap<D>{R, std::move(im), std::move(inv)};
}

template <class D>
Ideal<D> ideal_of(const RingPtr<D>& R, std::vector<std::string> gens) {
    std::vector<Polynomial<D>> g;
    for (const auto& s : gens) g.push_back(P<D>(s, R));
    return make_ideal(R, std::move(g));
}

} // namespace tu
