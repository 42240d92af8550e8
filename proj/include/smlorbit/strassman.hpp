#pragma once

#include <limits>

#include "mahler.hpp"

namespace smlorbit {

inline int mpz_valuation(const mpz_class& z, std::int64_t p, int cap) {
    if (z == 0) return cap;
    mpz_class r = z;
    int v = 0;
    while (v < cap && mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p))) {
        r /= p;
        ++v;
    }
    return v;
}

// A p-adic number known to absolute precision `prec`:
//   zero == false:  value = p^val * unit + O(p^prec), 0 <= val < prec, p does not divide unit
//   zero == true:   |value|_p <= p^-prec
struct PadicScaled {
    bool zero = true;
    int val = 0;
    mpz_class unit = 0;
    int prec = 0;
};

inline PadicScaled scale_rational(const mpq_class& q, std::int64_t p, int prec) {
    if (prec <= 0) throw PrecisionExhausted("no residual precision for a series coefficient");
    if (q == 0) return PadicScaled{true, 0, 0, prec};
    int vn = mpz_valuation(q.get_num(), p, prec + 64);
    int vd = mpz_valuation(q.get_den(), p, prec + 64);
    int v = vn - vd;
    if (v >= prec) return PadicScaled{true, 0, 0, prec};
    mpz_class pv, pk;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(vn));
    mpz_class num = q.get_num() / pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(vd));
    mpz_class den = q.get_den() / pv;
    int rem = prec - v;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(rem));
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), mpz_class(den % pk).get_mpz_t(), pk.get_mpz_t());
    mpz_class u = (num % pk) * dinv % pk;
    if (u < 0) u += pk;
    return PadicScaled{false, v, u, prec};
}

// Truncated monomial power series over the coordinates of a finite
// dimensional algebra, with a guaranteed valuation floor for everything
// beyond the stored range.
struct PadicPowerSeries {
    std::int64_t p = 0;
    int K = 0;
    std::size_t r = 0;
    int stored_degree = -1;
    std::map<int, std::vector<PadicScaled>> coeffs;
    TailGuarantee tail = TailGuarantee::exact_zero;
    // per coordinate: q > 0 certifies that every value of that coordinate
    // series on Z_p is 0 mod p^q (sup-norm statement from the source
    // representation; survives the k! losses of the basis change)
    std::vector<int> value_zero_prec;

    // floor valid for all true monomial coefficients with index >= k beyond
    // the stored range
    int tail_floor(int k) const {
        if (tail == TailGuarantee::exact_zero) return std::numeric_limits<int>::max() / 2;
        int best = std::numeric_limits<int>::max() / 2;
        int span = static_cast<int>(2 * (p - 1)) + 2;
        for (int j = k; j <= k + span; ++j) {
            int fl = (j + 2) / 2 - j / static_cast<int>(p - 1);
            best = std::min(best, fl);
        }
        return best;
    }
};

// Signed Stirling numbers of the first kind: z(z-1)...(z-k+1) = sum_j s(k,j) z^j.
inline std::vector<std::vector<mpz_class>> stirling_first(int D) {
    std::vector<std::vector<mpz_class>> s(static_cast<std::size_t>(D) + 1);
    s[0] = {1};
    for (int k = 0; k < D; ++k) {
        s[static_cast<std::size_t>(k) + 1].assign(static_cast<std::size_t>(k) + 2, 0);
        for (int j = 0; j <= k; ++j) {
            s[k + 1][j + 1] += s[k][j];
            s[k + 1][j] -= mpz_class(k) * s[k][j];
        }
    }
    return s;
}

// Basis change (z choose k) -> z^j with exact scaled bookkeeping. Stored
// coefficients come out with absolute precision K - v_p(D!) (the lift
// ambiguity of each b_k is divided by k!), further capped by the arc tail
// floor when the source series carries one; the sup-norm zero certificate is
// recorded separately per coordinate since it does not lose the k! factors.
inline PadicPowerSeries mahler_to_power(const MahlerSeries& f) {
    const PadicRing& R = f.padic();
    std::int64_t p = R.p();
    int K = R.precision();
    int D = std::max(f.degree(), 0);
    PadicPowerSeries g;
    g.p = p;
    g.K = K;
    g.r = f.S->dim();
    g.stored_degree = f.is_zero() ? -1 : D;
    g.tail = f.tail;

    int vfac = 0; // v_p(D!)
    for (mpz_class pw = p; pw <= D; pw *= p) vfac += D / static_cast<int>(pw.get_si());
    int prec = K - vfac;
    if (f.tail == TailGuarantee::arc_floor) {
        // unstored Mahler coefficients contribute below the tail floor
        PadicPowerSeries probe;
        probe.p = p;
        probe.tail = TailGuarantee::arc_floor;
        prec = std::min(prec, probe.tail_floor(D + 1));
    }
    if (!f.is_zero() && prec <= 0)
        throw PrecisionExhausted("k! losses consume the whole precision at degree " +
                                 std::to_string(D));

    g.value_zero_prec.assign(g.r, 0);
    for (std::size_t idx = 0; idx < g.r; ++idx) {
        bool all_zero = true;
        for (const auto& [k, c] : f.coeffs)
            if (c[idx] != 0) all_zero = false;
        if (all_zero) g.value_zero_prec[idx] = K;
    }
    if (f.is_zero()) return g;

    auto s = stirling_first(D);
    std::vector<mpz_class> fact(static_cast<std::size_t>(D) + 1);
    fact[0] = 1;
    for (int k = 1; k <= D; ++k) fact[k] = fact[k - 1] * k;

    for (int j = 0; j <= D; ++j) {
        std::vector<PadicScaled> row;
        row.reserve(g.r);
        for (std::size_t idx = 0; idx < g.r; ++idx) {
            mpq_class cj = 0;
            for (int k = std::max(j, 0); k <= D; ++k) {
                auto it = f.coeffs.find(k);
                if (it == f.coeffs.end()) continue;
                if (j >= static_cast<int>(s[k].size())) continue;
                cj += mpq_class(it->second[idx] * s[k][j], fact[k]);
            }
            mpq_class canon(cj);
            canon.canonicalize();
            row.push_back(scale_rational(canon, p, prec));
        }
        g.coeffs[j] = std::move(row);
    }
    return g;
}

struct StrassmanVerdict {
    enum class Kind { zero_series, bound, indeterminate };
    Kind kind = Kind::indeterminate;
    int bound = -1;      // for Kind::bound: at most this many zeros in Z_p
    int precision = 0;   // for Kind::zero_series: values vanish mod p^precision
    int min_valuation = -1;
    std::string note;
};

// Classical Strassman index for one coordinate: N = last index attaining the
// minimal stored valuation, rigorous when the tail floor and every
// undetermined coefficient sit strictly above that valuation.
inline StrassmanVerdict strassman_bound(const PadicPowerSeries& g, std::size_t coord) {
    StrassmanVerdict v;
    if (coord < g.value_zero_prec.size() && g.value_zero_prec[coord] >= g.K) {
        v.kind = StrassmanVerdict::Kind::zero_series;
        v.precision = g.K;
        return v;
    }
    int vstar = std::numeric_limits<int>::max();
    int N = -1;
    int min_zero_prec = std::numeric_limits<int>::max();
    for (const auto& [j, row] : g.coeffs) {
        const PadicScaled& c = row[coord];
        if (c.zero) {
            min_zero_prec = std::min(min_zero_prec, c.prec);
            continue;
        }
        if (c.val < vstar) {
            vstar = c.val;
            N = j;
        } else if (c.val == vstar) {
            N = std::max(N, j);
        }
    }
    int tail = g.tail_floor(g.stored_degree + 1);
    if (N < 0) {
        // nothing determinably nonzero
        int prec = std::min(min_zero_prec, tail);
        if (prec >= g.K || g.coeffs.empty()) {
            v.kind = StrassmanVerdict::Kind::zero_series;
            v.precision = std::min(prec, g.K);
        } else {
            v.kind = StrassmanVerdict::Kind::indeterminate;
            v.note = "all coefficients vanish at available precision " + std::to_string(prec) +
                     " < " + std::to_string(g.K);
            v.precision = prec;
        }
        return v;
    }
    if (vstar >= g.K || vstar >= tail || vstar >= min_zero_prec) {
        v.kind = StrassmanVerdict::Kind::indeterminate;
        v.min_valuation = vstar;
        v.note = "minimal valuation " + std::to_string(vstar) +
                 " cannot be separated from tail/undetermined coefficients";
        return v;
    }
    v.kind = StrassmanVerdict::Kind::bound;
    v.bound = N;
    v.min_valuation = vstar;
    return v;
}

// A common zero of all coordinates is a zero of each one, so the sharpest
// per-coordinate bound applies; the series is zero only when every
// coordinate is.
inline StrassmanVerdict extended_strassman(const PadicPowerSeries& g) {
    StrassmanVerdict out;
    bool any_bound = false;
    int best = std::numeric_limits<int>::max();
    int zero_prec = std::numeric_limits<int>::max();
    bool all_zero = true;
    bool any_indet = false;
    for (std::size_t c = 0; c < g.r; ++c) {
        auto v = strassman_bound(g, c);
        switch (v.kind) {
        case StrassmanVerdict::Kind::zero_series:
            zero_prec = std::min(zero_prec, v.precision);
            break;
        case StrassmanVerdict::Kind::bound:
            all_zero = false;
            any_bound = true;
            best = std::min(best, v.bound);
            break;
        case StrassmanVerdict::Kind::indeterminate:
            all_zero = false;
            any_indet = true;
            break;
        }
    }
    if (all_zero) {
        out.kind = StrassmanVerdict::Kind::zero_series;
        out.precision = g.r ? zero_prec : g.K;
        return out;
    }
    if (any_bound) {
        out.kind = StrassmanVerdict::Kind::bound;
        out.bound = best;
        return out;
    }
    out.kind = StrassmanVerdict::Kind::indeterminate;
    out.note = any_indet ? "every nonzero coordinate is indeterminate" : "";
    return out;
}

} // namespace smlorbit
