#pragma once

#include "relations.hpp"
#include "report.hpp"

namespace smlorbit {

// One entry point per CLI verb: job in, deterministic report out. The CLI
// and the test harnesses share these so a report re-run from its embedded
// job reproduces itself byte for byte.
struct RunOptions {
    std::optional<long> window;
    std::optional<std::int64_t> prime;
    std::optional<int> precision;
    ScanDirection direction = ScanDirection::mirror;
};

struct RunOutcome {
    json report;
    int exit_code = 0;
    std::string summary;
};

namespace rundetail {

template <class D>
std::pair<ScanBits, FitResult> scan_and_fit(const LoadedJob<D>& L, long window, const Config& cfg,
                                            ScanDirection dir) {
    auto bits = scan(L.orbit, window, cfg, dir);
    bool poschar = L.ring->dom.characteristic() > 0;
    auto fit = fit_sml(bits, cfg, poschar);
    return {bits, fit};
}

template <class Fn>
auto dispatch_field(const JobFile& f, Fn&& fn) {
    switch (f.field.kind) {
    case FieldKind::rationals: return fn(Rationals{});
    case FieldKind::prime_field: return fn(PrimeField{f.field.p});
    case FieldKind::rational_functions: return fn(RationalFunctionField{f.field.p});
    case FieldKind::integers:
        throw ValidationError("coefficient_field", "Z coefficients have no field engine; use Q");
    }
    throw ValidationError("coefficient_field", "unrecognized field");
}

inline json coords_json(const PadicCoords& c) {
    json a = json::array();
    for (const auto& x : c) a.push_back(x.get_str());
    return a;
}

} // namespace rundetail

inline RunOutcome run_scan(const JobFile& f, const RunOptions& o) {
    return rundetail::dispatch_field(f, [&](auto dom) {
        auto L = load_job(f, dom);
        Config cfg = f.config();
        long window = o.window.value_or(f.window);
        auto [bits, fit] = rundetail::scan_and_fit(L, window, cfg, o.direction);
        std::string dirname = o.direction == ScanDirection::mirror ? "mirror" : "forward";
        RunOutcome out;
        out.report = make_report("scan", f.raw, scan_result_json(bits, fit, dirname));
        out.summary = human_summary(bits, fit, nullptr);
        return out;
    });
}

inline RunOutcome run_certify(const JobFile& f, const RunOptions& o) {
    if (f.field.kind != FieldKind::rationals)
        throw ValidationError("coefficient_field", "certification requires coefficient_field Q");
    auto L = load_job(f, Rationals{});
    Config cfg = f.config();
    long window = o.window.value_or(f.window);
    auto [bits, fit] = rundetail::scan_and_fit(L, window, cfg, ScanDirection::mirror);
    auto result = scan_result_json(bits, fit, "mirror");
    std::optional<std::int64_t> prime = o.prime ? o.prime : f.prime;
    int K0 = o.precision.value_or(f.precision.value_or(cfg.precision));
    json diag = json::object();
    RunOutcome out;
    CertifyResult cert;
    const CertifyResult* certp = nullptr;
    try {
        cert = certify(L.orbit, prime, K0, bits, cfg);
        result["certify"] = certify_result_json(cert);
        certp = &cert;
        if (!cert.all_determinate()) out.exit_code = static_cast<int>(ErrorClass::indeterminate);
    } catch (const NotZeroDimensional& e) {
        diag["notes"] = json::array({std::string("scan-only: ") + e.what()});
    }
    out.report = make_report("certify", f.raw, result, diag);
    out.summary = human_summary(bits, fit, certp);
    return out;
}

inline RunOutcome run_arc(const JobFile& f, const RunOptions& o) {
    if (f.field.kind != FieldKind::rationals)
        throw ValidationError("coefficient_field", "arc construction requires coefficient_field Q");
    auto L = load_job(f, Rationals{});
    Config cfg = f.config();
    detail::check_scan_pre(L.orbit);
    std::int64_t p = o.prime ? *o.prime : f.prime.value_or(0);
    if (p == 0) p = good_prime(L.orbit, 5, cfg);
    int K = o.precision.value_or(f.precision.value_or(cfg.precision));
    auto I_full = make_ideal(L.ring, detail::full_gens(L.orbit.I, L.orbit.defining));
    auto SQ = build_quotient(I_full, L.ring->order);
    auto S = std::make_shared<const QuotientAlgebra<PadicRing>>(reduce_mod_pk(SQ, p, K));
    auto Sp = std::make_shared<const QuotientAlgebra<PadicRing>>(reduce_mod_pk(SQ, p, 1));
    std::size_t d = L.ring->nvars();
    std::vector<PadicCoords> sK, s1;
    for (std::size_t i = 0; i < d; ++i) {
        auto cq = to_coords(SQ, Polynomial<Rationals>::variable(SQ.gb->ring, i));
        sK.push_back(reduce_coords(*S, cq));
        s1.push_back(reduce_coords(*Sp, cq));
    }
    long a = cycle_length(L.orbit.sigma, *Sp, s1, cfg.cycle_cap);
    std::vector<std::vector<PadicCoords>> cyc{s1};
    for (long k = 1; k < a; ++k) cyc.push_back(dyn_eval_mod(L.orbit.sigma, *Sp, cyc.back()));
    long m = jacobian_identity_exponent(L.orbit.sigma, *Sp, cyc, cfg.order_cap);
    long period = a * m;
    auto rho = iterate(L.orbit.sigma, period, cfg.degree_cap);

    json classes = json::array();
    auto base = sK;
    for (long k = 0; k < period; ++k) {
        if (k > 0) base = dyn_eval_mod(L.orbit.sigma, *S, base);
        auto arc = build_arc(rho, S, base, p, K, cfg);
        json aj;
        aj["mirror_residue"] = k;
        json bp = json::array();
        for (const auto& c : base) bp.push_back(rundetail::coords_json(c));
        aj["base_point"] = std::move(bp);
        json series = json::array();
        for (const auto& fi : arc.f) {
            json sj;
            json coeffs = json::object();
            json floors = json::object();
            for (const auto& [kk, c] : fi.coeffs) {
                coeffs[std::to_string(kk)] = rundetail::coords_json(c);
                floors[std::to_string(kk)] = fi.stored_floor(kk);
            }
            sj["coeffs"] = std::move(coeffs);
            sj["valuation_floors"] = std::move(floors);
            series.push_back(std::move(sj));
        }
        aj["series"] = std::move(series);
        classes.push_back(std::move(aj));
    }
    json result;
    result["prime"] = p;
    result["precision"] = K;
    result["cycle_length"] = a;
    result["exponent"] = m;
    result["period"] = period;
    result["classes"] = std::move(classes);
    RunOutcome out;
    out.report = make_report("arc", f.raw, result);
    out.summary = "arcs built for " + std::to_string(period) + " residue classes at " +
                  std::to_string(p) + "^" + std::to_string(K);
    return out;
}

inline RunOutcome run_groebner(const JobFile& f, const RunOptions&) {
    return rundetail::dispatch_field(f, [&](auto dom) {
        auto L = load_job(f, dom);
        auto order = L.ring->order;
        if (f.options.contains("order")) {
            std::string os = f.options.at("order");
            if (os == "lex") order = MonomialOrder::lex();
            else if (os == "grevlex") order = MonomialOrder::grevlex();
            else throw ValidationError("options.order", "expected 'lex' or 'grevlex'");
        }
        auto G = buchberger(L.orbit.I, order);
        json basis = json::array();
        std::string text;
        for (const auto& g : G.basis) {
            basis.push_back(g.str());
            text += g.str() + "\n";
        }
        json result;
        result["order"] = order.str();
        result["basis"] = std::move(basis);
        RunOutcome out;
        out.report = make_report("groebner", f.raw, result);
        out.summary = std::move(text);
        return out;
    });
}

inline RunOutcome run_strassman(const JobFile& f, const RunOptions& o) {
    std::int64_t p = o.prime ? *o.prime : f.prime.value_or(5);
    int K = o.precision.value_or(f.precision.value_or(12));
    if (f.series.empty()) throw ValidationError("series", "no coefficients given");
    PadicPowerSeries g;
    g.p = p;
    g.K = K;
    g.r = 1;
    g.stored_degree = static_cast<int>(f.series.size()) - 1;
    g.tail = TailGuarantee::exact_zero;
    bool all_zero = true;
    for (std::size_t j = 0; j < f.series.size(); ++j) {
        mpq_class q(f.series[j]);
        q.canonicalize();
        if (q != 0) all_zero = false;
        g.coeffs[static_cast<int>(j)] = {scale_rational(q, p, K)};
    }
    g.value_zero_prec = {all_zero ? K : 0};
    auto v = strassman_bound(g, 0);
    json result;
    RunOutcome out;
    switch (v.kind) {
    case StrassmanVerdict::Kind::zero_series:
        result["verdict"] = "ZeroSeries";
        result["precision"] = v.precision;
        break;
    case StrassmanVerdict::Kind::bound:
        result["verdict"] = "Bound";
        result["bound"] = v.bound;
        result["min_valuation"] = v.min_valuation;
        break;
    case StrassmanVerdict::Kind::indeterminate:
        result["verdict"] = "Indeterminate";
        result["note"] = v.note;
        out.exit_code = static_cast<int>(ErrorClass::indeterminate);
        break;
    }
    out.report = make_report("strassman", f.raw, result);
    out.summary = result.dump();
    return out;
}

inline RunOutcome run_relations(const JobFile& f, const RunOptions&) {
    if (f.field.kind != FieldKind::prime_field)
        throw ValidationError("coefficient_field", "relations check runs over Fp");
    auto L = load_job(f, PrimeField{f.field.p});
    auto v = check_relations(L.orbit.sigma, L.orbit.I, L.orbit.J, f.config());
    json result;
    result["a"] = v.a;
    result["b"] = v.b;
    result["c"] = v.c;
    result["d"] = v.d;
    result["e"] = v.e;
    result["count_VI"] = v.count_VI;
    result["count_VJ"] = v.count_VJ;
    result["count_VtauJ"] = v.count_VtauJ;
    RunOutcome out;
    out.report = make_report("relations", f.raw, result);
    out.summary = result.dump();
    return out;
}

inline RunOutcome run_verify_auto(const JobFile& f, const RunOptions&) {
    return rundetail::dispatch_field(f, [&](auto dom) {
        using D = decltype(dom);
        auto L = load_job(f, dom);
        std::optional<GroebnerBasis<D>> GQ;
        if (L.orbit.defining) {
            GQ = buchberger(*L.orbit.defining);
            detail::check_defining_invariance(L.orbit.sigma, *L.orbit.defining);
        }
        int w = automorphism_witness(L.orbit.sigma, GQ ? &*GQ : nullptr);
        json result;
        result["verified"] = w < 0;
        if (w >= 0) result["witness"] = L.ring->vars[static_cast<std::size_t>(w)];
        RunOutcome out;
        out.report = make_report("verify-auto", f.raw, result);
        out.exit_code = w < 0 ? 0 : static_cast<int>(ErrorClass::validation);
        out.summary = w < 0 ? "automorphism verified"
                            : "verification FAILED at variable " +
                                  L.ring->vars[static_cast<std::size_t>(w)];
        return out;
    });
}

inline RunOutcome run_command(const std::string& command, const JobFile& f, const RunOptions& o) {
    if (command == "scan") return run_scan(f, o);
    if (command == "certify") return run_certify(f, o);
    if (command == "arc") return run_arc(f, o);
    if (command == "groebner") return run_groebner(f, o);
    if (command == "strassman") return run_strassman(f, o);
    if (command == "relations") return run_relations(f, o);
    if (command == "verify-auto") return run_verify_auto(f, o);
    throw ValidationError("command", "unknown command '" + command + "'");
}

} // namespace smlorbit
