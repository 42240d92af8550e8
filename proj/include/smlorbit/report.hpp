#pragma once

#include <sstream>

#include "job.hpp"
#include "version.hpp"

namespace smlorbit {

// Stable 64-bit FNV-1a over the canonical (key-sorted, whitespace-free)
// dump; identifies the job inside its report across runs.
inline std::string job_hash(const json& job) {
    std::string s = job.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline json make_report(const std::string& command, const json& job, json result,
                        json diagnostics = json::object()) {
    json r;
    r["schema"] = 1;
    r["tool_version"] = std::string(kToolVersion);
    r["command"] = command;
    r["job_hash"] = job_hash(job);
    r["job"] = job;
    r["result"] = std::move(result);
    r["diagnostics"] = std::move(diagnostics);
    return r;
}

inline std::string fit_status_str(FitStatus s) {
    switch (s) {
    case FitStatus::sml_fit: return "SML_FIT";
    case FitStatus::no_fit: return "NO_FIT";
    case FitStatus::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

inline json scan_result_json(const ScanBits& bits, const FitResult& fit,
                             const std::string& direction) {
    json r;
    r["window"] = bits.N;
    r["true_n"] = bits.true_ns();
    r["status"] = fit_status_str(fit.status);
    if (fit.status == FitStatus::sml_fit) {
        r["period"] = fit.period;
        r["progressions"] = fit.progressions;
        r["exceptional"] = fit.exceptional;
    }
    r["direction"] = direction;
    return r;
}

inline const char* verdict_str(ClassCertificate::Verdict v) {
    switch (v) {
    case ClassCertificate::Verdict::full: return "FULL";
    case ClassCertificate::Verdict::finite: return "FINITE";
    case ClassCertificate::Verdict::indeterminate: return "INDETERMINATE";
    }
    return "?";
}

inline json certify_result_json(const CertifyResult& c) {
    json r;
    r["prime"] = c.prime;
    r["precision"] = c.precision;
    r["cycle_length"] = c.cycle_len;
    r["exponent"] = c.exponent;
    r["period"] = c.period;
    r["experimental_prime"] = c.experimental_prime;
    json classes = json::array();
    for (const auto& cc : c.classes) {
        json e;
        e["residue"] = cc.residue_s;
        e["mirror_residue"] = cc.residue_t;
        e["verdict"] = verdict_str(cc.verdict);
        if (cc.verdict == ClassCertificate::Verdict::full) e["precision"] = cc.precision;
        if (cc.verdict == ClassCertificate::Verdict::finite) {
            e["bound"] = cc.bound;
            e["zeros"] = cc.zeros;
        }
        e["generator_bounds"] = cc.gen_bounds;
        classes.push_back(std::move(e));
    }
    r["classes"] = std::move(classes);
    return r;
}

// "S = (0 mod 4) ∪ (3 mod 4), no exceptions, certified FULL at 5^12 for classes {0,3}"
inline std::string human_summary(const ScanBits& bits, const FitResult& fit,
                                 const CertifyResult* cert) {
    std::ostringstream os;
    if (fit.status == FitStatus::sml_fit) {
        os << "S = ";
        if (fit.progressions.empty()) {
            os << "{}";
        } else {
            bool first = true;
            for (long r : fit.progressions) {
                if (!first) os << " ∪ ";
                os << "(" << r << " mod " << fit.period << ")";
                first = false;
            }
        }
        if (fit.exceptional.empty()) {
            os << ", no exceptions";
        } else {
            os << ", exceptions {";
            for (std::size_t i = 0; i < fit.exceptional.size(); ++i)
                os << (i ? "," : "") << fit.exceptional[i];
            os << "}";
        }
    } else {
        os << "status " << fit_status_str(fit.status) << "; bits true at {";
        auto t = bits.true_ns();
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
        os << "} in window [" << -bits.N << ", " << bits.N << "]";
    }
    if (cert) {
        std::vector<long> full, finite, indet;
        for (const auto& c : cert->classes) {
            if (c.verdict == ClassCertificate::Verdict::full) full.push_back(c.residue_s);
            else if (c.verdict == ClassCertificate::Verdict::finite) finite.push_back(c.residue_s);
            else indet.push_back(c.residue_s);
        }
        auto list = [&os](const std::vector<long>& v) {
            os << "{";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
            os << "}";
        };
        if (!full.empty()) {
            os << ", certified FULL at " << cert->prime << "^" << cert->precision
               << " for classes ";
            std::vector<long> s = full;
            std::sort(s.begin(), s.end());
            list(s);
        }
        if (!finite.empty()) {
            os << ", FINITE classes ";
            std::vector<long> s = finite;
            std::sort(s.begin(), s.end());
            list(s);
        }
        if (!indet.empty()) {
            os << ", INDETERMINATE classes ";
            list(indet);
        }
        os << " (period " << cert->period << ")";
    }
    return os.str();
}

} // namespace smlorbit
