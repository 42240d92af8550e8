#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arc.hpp"
#include "config.hpp"
#include "strassman.hpp"

namespace smlorbit {

// Inputs for an orbit computation in R = K[x_1..x_d], optionally presented
// as a quotient ring through a defining ideal Q (added to both sides; sigma
// must leave Q invariant in both directions).
template <class D>
struct OrbitJob {
    RingPtr<D> ring;
    PolyMap<D> sigma;
    Ideal<D> I;
    Ideal<D> J;
    std::optional<Ideal<D>> defining;
};

struct ScanBits {
    long N = 0;
    std::vector<std::uint8_t> bits; // index n + N for n in [-N, N]

    bool at(long n) const { return bits[static_cast<std::size_t>(n + N)] != 0; }
    void set(long n, bool v) { bits[static_cast<std::size_t>(n + N)] = v ? 1 : 0; }
    std::vector<long> true_ns() const {
        std::vector<long> out;
        for (long n = -N; n <= N; ++n)
            if (at(n)) out.push_back(n);
        return out;
    }
};

enum class ScanDirection {
    mirror, // test I >= sigma^{-n}(J) against one fixed basis of I (fast path)
    forward // rebuild <sigma^n(I gens)> and test J against it, n by n
};

namespace detail {

template <class D>
std::vector<Polynomial<D>> full_gens(const Ideal<D>& I, const std::optional<Ideal<D>>& Q) {
    auto gens = I.gens;
    if (Q)
        for (const auto& g : Q->gens) gens.push_back(g);
    return gens;
}

// sigma must descend to the quotient: both image sets stay inside Q.
template <class D>
void check_defining_invariance(const PolyMap<D>& sigma, const Ideal<D>& Q) {
    auto GQ = buchberger(Q);
    for (const auto& g : Q.gens) {
        if (!member(g.substitute(sigma.images), GQ))
            throw ValidationError("defining_ideal", "not invariant under sigma");
        if (sigma.inverse_images && !member(g.substitute(*sigma.inverse_images), GQ))
            throw ValidationError("defining_ideal", "not invariant under sigma^{-1}");
    }
}

template <class D>
void check_scan_pre(const OrbitJob<D>& job) {
    check_map(job.sigma);
    if (!job.sigma.inverse_images)
        throw NoInverse("scan requires a map with supplied inverse images");
    std::optional<GroebnerBasis<D>> GQ;
    if (job.defining) {
        GQ = buchberger(*job.defining);
        check_defining_invariance(job.sigma, *job.defining);
    }
    int w = automorphism_witness(job.sigma, GQ ? &*GQ : nullptr);
    if (w >= 0)
        throw ValidationError("sigma", "not an automorphism: composition fails at variable '" +
                                           job.ring->vars[static_cast<std::size_t>(w)] + "'");
}

} // namespace detail

// One containment bit computed the direct way: a fresh basis for
// <sigma^n(C_1), ..., sigma^n(C_s)> (+ Q), then generator-wise membership
// of J. Independent of the mirror fast path; used for re-verification.
template <class D>
bool scan_one_forward(const OrbitJob<D>& job, long n, const Config& cfg = Config{}) {
    auto sn = iterate(job.sigma, n, cfg.degree_cap);
    std::vector<Polynomial<D>> gens;
    for (const auto& c : job.I.gens) gens.push_back(c.substitute(sn.images));
    if (job.defining)
        for (const auto& q : job.defining->gens) gens.push_back(q);
    auto G = buchberger(make_ideal(job.ring, gens));
    for (const auto& dgen : detail::full_gens(job.J, job.defining))
        if (!member(dgen, G)) return false;
    return true;
}

// Window scan of S(I, J) = { n : sigma^n(I) >= J }. The mirror engine uses
// sigma^n(I) >= J  <=>  I >= sigma^{-n}(J) (apply the automorphism sigma^{-n}
// to both sides) and keeps only images reduced mod a fixed basis of I, so
// the per-step cost stays flat as |n| grows.
template <class D>
ScanBits scan(const OrbitJob<D>& job, long N, const Config& cfg = Config{},
              ScanDirection dir = ScanDirection::mirror) {
    detail::check_scan_pre(job);
    ScanBits out;
    out.N = N;
    out.bits.assign(static_cast<std::size_t>(2 * N + 1), 0);

    if (dir == ScanDirection::forward) {
        for (long n = -N; n <= N; ++n) out.set(n, scan_one_forward(job, n, cfg));
        return out;
    }

    auto I_full = make_ideal(job.ring, detail::full_gens(job.I, job.defining));
    auto GI = buchberger(I_full);
    auto J_gens = detail::full_gens(job.J, job.defining);

    auto reduce_images = [&](const std::vector<Polynomial<D>>& imgs) {
        std::vector<Polynomial<D>> r;
        r.reserve(imgs.size());
        for (const auto& f : imgs) r.push_back(normal_form(f, GI));
        return r;
    };
    auto test_membership = [&](const std::vector<Polynomial<D>>& reduced) {
        for (const auto& dgen : J_gens) {
            auto img = dgen.substitute(reduced);
            if (!normal_form(img, GI).is_zero()) return false;
        }
        return true;
    };

    std::vector<Polynomial<D>> fwd, bwd;
    for (std::size_t i = 0; i < job.ring->nvars(); ++i) {
        auto x = normal_form(Polynomial<D>::variable(job.ring, i), GI);
        fwd.push_back(x);
        bwd.push_back(x);
    }
    out.set(0, test_membership(fwd));
    for (long m = 1; m <= N; ++m) {
        // bwd holds sigma^{-m} images mod I: bit at +m
        std::vector<Polynomial<D>> nb, nf;
        for (std::size_t i = 0; i < job.ring->nvars(); ++i) {
            nb.push_back((*job.sigma.inverse_images)[i].substitute(bwd));
            nf.push_back(job.sigma.images[i].substitute(fwd));
        }
        bwd = reduce_images(nb);
        fwd = reduce_images(nf);
        out.set(m, test_membership(bwd));
        out.set(-m, test_membership(fwd));
    }
    return out;
}

enum class FitStatus { sml_fit, no_fit, inconclusive };

struct FitResult {
    FitStatus status = FitStatus::inconclusive;
    long period = 0;
    std::vector<long> progressions; // residues mod period with bit true
    std::vector<long> exceptional;  // window positions disagreeing with the pattern
};

inline long mod_pos(long n, long a) { return ((n % a) + a) % a; }

// Smallest a <= N/4 such that the bits restricted to the core
// [-N+a, N-a] are exactly a-periodic; burn-in margins may disagree and land
// in the exceptional set. Failure to fit is NO_FIT only in positive
// characteristic or past the configured confidence radius; otherwise the
// window is simply too small to claim anything.
inline FitResult fit_sml(const ScanBits& b, const Config& cfg = Config{},
                         bool positive_characteristic = false) {
    FitResult r;
    long N = b.N;
    for (long a = 1; a <= N / 4; ++a) {
        long lo = -N + a, hi = N - a;
        bool periodic = true;
        for (long n = lo; n + a <= hi && periodic; ++n)
            if (b.at(n) != b.at(n + a)) periodic = false;
        if (!periodic) continue;
        r.status = FitStatus::sml_fit;
        r.period = a;
        std::vector<bool> val(static_cast<std::size_t>(a), false);
        for (long res = 0; res < a; ++res) {
            long n = lo + mod_pos(res - lo, a);
            val[static_cast<std::size_t>(res)] = b.at(n);
            if (val[static_cast<std::size_t>(res)]) r.progressions.push_back(res);
        }
        for (long n = -N; n <= N; ++n) {
            if (n >= lo && n <= hi) continue;
            if (b.at(n) != val[static_cast<std::size_t>(mod_pos(n, a))]) r.exceptional.push_back(n);
        }
        return r;
    }
    if (positive_characteristic || N >= cfg.nofit_confidence_radius)
        r.status = FitStatus::no_fit;
    else
        r.status = FitStatus::inconclusive;
    return r;
}

// Smallest prime >= max(5, start) at which every coefficient of the job
// (both image sets, all generators, and the reduced basis of I) is
// p-integral, so reductions mod p^K are defined.
inline std::int64_t good_prime(const OrbitJob<Rationals>& job, std::int64_t start,
                               const Config& cfg = Config{}) {
    std::vector<mpz_class> dens;
    auto take = [&](const Polynomial<Rationals>& f) {
        for (const auto& [m, c] : f.terms())
            if (c.get_den() != 1) dens.push_back(c.get_den());
    };
    for (const auto& f : job.sigma.images) take(f);
    if (job.sigma.inverse_images)
        for (const auto& f : *job.sigma.inverse_images) take(f);
    for (const auto& f : job.I.gens) take(f);
    for (const auto& f : job.J.gens) take(f);
    if (job.defining)
        for (const auto& f : job.defining->gens) take(f);
    auto GI = buchberger(make_ideal(job.ring, detail::full_gens(job.I, job.defining)));
    for (const auto& f : GI.basis) take(f);

    for (std::int64_t p = std::max<std::int64_t>(5, start); p <= cfg.good_prime_cap; ++p) {
        if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
        bool ok = true;
        for (const auto& d : dens)
            if (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) ok = false;
        if (ok) return p;
    }
    throw BadPrime("no usable prime below the configured cap");
}

struct ClassCertificate {
    enum class Verdict { full, finite, indeterminate };
    long residue_s = 0; // residue class of S(I, J) mod period
    long residue_t = 0; // mirrored class the arcs were built on
    Verdict verdict = Verdict::indeterminate;
    int precision = 0;           // FULL: every class member vanishes mod p^precision
    long bound = -1;             // FINITE: at most this many n in the whole class
    std::vector<long> gen_bounds; // per generator: >=0 bound, -1 zero-series, -2 indeterminate
    std::vector<long> zeros;     // located in-window members of S(I, J) in this class
};

struct CertifyResult {
    std::int64_t prime = 0;
    int precision = 0;
    long cycle_len = 0;
    long exponent = 0;
    long period = 0;
    bool experimental_prime = false;
    std::vector<ClassCertificate> classes;

    bool all_determinate() const {
        for (const auto& c : classes)
            if (c.verdict == ClassCertificate::Verdict::indeterminate) return false;
        return true;
    }
};

// Residue-class certification: reduce S = Q[x]/(I + Q) mod p^K, find the
// mod-p cycle length a of the canonical point and the exponent m that makes
// the Jacobian of sigma^a the identity mod p along the cycle, interpolate
// each class of the mirrored set T = { n : sigma^n(J) <= I } by an arc for
// rho = sigma^{am}, and bound the zeros of every generator of J along each
// arc. Class residues are reported for S(I, J) via n -> -n.
inline CertifyResult certify_at(const OrbitJob<Rationals>& job, std::int64_t p, int K,
                                const ScanBits& bits, const Config& cfg = Config{}) {
    detail::check_scan_pre(job);
    auto I_full = make_ideal(job.ring, detail::full_gens(job.I, job.defining));
    auto SQ = build_quotient(I_full, job.ring->order);

    auto S = std::make_shared<const QuotientAlgebra<PadicRing>>(reduce_mod_pk(SQ, p, K));
    auto Sp = std::make_shared<const QuotientAlgebra<PadicRing>>(reduce_mod_pk(SQ, p, 1));

    // canonical point (x_1 + I, ..., x_d + I)
    std::size_t d = job.ring->nvars();
    std::vector<std::vector<mpq_class>> sq;
    for (std::size_t i = 0; i < d; ++i)
        sq.push_back(to_coords(SQ, Polynomial<Rationals>::variable(SQ.gb->ring, i)));
    std::vector<PadicCoords> sK, s1;
    for (const auto& c : sq) {
        sK.push_back(reduce_coords(*S, c));
        s1.push_back(reduce_coords(*Sp, c));
    }

    long a = cycle_length(job.sigma, *Sp, s1, cfg.cycle_cap);
    std::vector<std::vector<PadicCoords>> cycle{s1};
    for (long k = 1; k < a; ++k) cycle.push_back(dyn_eval_mod(job.sigma, *Sp, cycle.back()));
    long m = jacobian_identity_exponent(job.sigma, *Sp, cycle, cfg.order_cap);
    long period = a * m;

    auto rho = iterate(job.sigma, period, cfg.degree_cap);

    CertifyResult res;
    res.prime = p;
    res.precision = K;
    res.cycle_len = a;
    res.exponent = m;
    res.period = period;
    res.experimental_prime = (p == 3);

    std::vector<PadicCoords> base = sK;
    for (long k = 0; k < period; ++k) {
        if (k > 0) base = dyn_eval_mod(job.sigma, *S, base);
        auto arc = build_arc(rho, S, base, p, K, cfg);

        long arc_deg = 0;
        for (const auto& fi : arc.f) arc_deg = std::max<long>(arc_deg, fi.degree());

        ClassCertificate cert;
        cert.residue_t = k;
        cert.residue_s = mod_pos(-k, period);

        bool all_zero = true;
        bool any_bound = false;
        long best = -1;
        int full_prec = K;
        for (const auto& dgen : job.J.gens) {
            long Dg = std::max<long>(1, dgen.total_degree()) * std::max<long>(arc_deg, 0);
            if (Dg > cfg.mahler_degree_cap)
                throw DegreeOverflow("generator series degree " + std::to_string(Dg));
            std::vector<PadicCoords> values;
            values.reserve(static_cast<std::size_t>(Dg) + 1);
            auto ops = rational_eval_ops(*S);
            for (long z = 0; z <= Dg; ++z) {
                auto pt = arc_eval(arc, z);
                values.push_back(
                    dgen.evaluate_with(ops, std::span<const PadicCoords>(pt)));
            }
            auto series = mahler_from_values(S, std::move(values));
            series.tail = TailGuarantee::arc_floor;
            auto verdict = extended_strassman(mahler_to_power(series));
            switch (verdict.kind) {
            case StrassmanVerdict::Kind::zero_series:
                cert.gen_bounds.push_back(-1);
                full_prec = std::min(full_prec, verdict.precision);
                break;
            case StrassmanVerdict::Kind::bound:
                cert.gen_bounds.push_back(verdict.bound);
                all_zero = false;
                any_bound = true;
                best = best < 0 ? verdict.bound : std::min(best, static_cast<long>(verdict.bound));
                break;
            case StrassmanVerdict::Kind::indeterminate:
                cert.gen_bounds.push_back(-2);
                all_zero = false;
                break;
            }
        }
        if (all_zero) {
            cert.verdict = ClassCertificate::Verdict::full;
            cert.precision = full_prec;
        } else if (any_bound) {
            cert.verdict = ClassCertificate::Verdict::finite;
            cert.bound = best;
            for (long n = -bits.N; n <= bits.N; ++n)
                if (bits.at(n) && mod_pos(n, period) == cert.residue_s) cert.zeros.push_back(n);
        } else {
            cert.verdict = ClassCertificate::Verdict::indeterminate;
        }
        res.classes.push_back(std::move(cert));
    }
    return res;
}

// Retry ladder: indeterminate classes get a doubled precision (capped);
// non-p-integral data moves to the next good prime.
inline CertifyResult certify(const OrbitJob<Rationals>& job, std::optional<std::int64_t> prime,
                             int K0, const ScanBits& bits, const Config& cfg = Config{}) {
    std::int64_t p = prime ? *prime : good_prime(job, 5, cfg);
    int prime_attempts = 0;
    for (;;) {
        try {
            CertifyResult last;
            for (int K = K0;; K *= 2) {
                if (K > cfg.max_precision) K = cfg.max_precision;
                last = certify_at(job, p, K, bits, cfg);
                if (last.all_determinate() || K >= cfg.max_precision) return last;
            }
        } catch (const BadPrime&) {
            if (++prime_attempts > 8) throw;
            p = good_prime(job, p + 1, cfg);
        }
    }
}

} // namespace smlorbit
