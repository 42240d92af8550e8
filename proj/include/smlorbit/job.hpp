#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbit.hpp"
#include "parser.hpp"

namespace smlorbit {

using nlohmann::json;

enum class FieldKind { rationals, prime_field, rational_functions, integers };

struct FieldSpec {
    FieldKind kind = FieldKind::rationals;
    std::int64_t p = 0;

    static FieldSpec parse(const std::string& s) {
        if (s == "Q") return {FieldKind::rationals, 0};
        if (s == "Z") return {FieldKind::integers, 0};
        if (s.rfind("Fp:", 0) == 0)
            return {FieldKind::prime_field, std::stoll(s.substr(3))};
        if (s.rfind("Fp(t):", 0) == 0)
            return {FieldKind::rational_functions, std::stoll(s.substr(6))};
        throw ValidationError("coefficient_field", "unrecognized field '" + s + "'");
    }
};

// On-disk job description (schema 1). Polynomial strings are parsed in the
// declared ring; lengths of sigma/sigma_inv must equal the variable count.
struct JobFile {
    json raw;
    std::string name;
    std::vector<std::string> variables;
    FieldSpec field;
    std::vector<std::string> defining_ideal;
    std::vector<std::string> sigma;
    std::vector<std::string> sigma_inv;
    std::vector<std::string> ideal_I;
    std::vector<std::string> ideal_J;
    std::vector<std::string> radical_ideal_I;
    std::vector<std::string> radical_ideal_J;
    std::vector<std::string> series; // strassman verb input
    long window = 10;
    std::optional<std::int64_t> prime;
    std::optional<int> precision;
    json options;

    static std::vector<std::string> str_list(const json& j, const std::string& field) {
        if (!j.is_array()) throw ValidationError(field, "expected an array of strings");
        std::vector<std::string> out;
        for (const auto& e : j) {
            if (!e.is_string()) throw ValidationError(field, "expected an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    static JobFile from_json(const json& j) {
        JobFile f;
        f.raw = j;
        if (!j.is_object()) throw ValidationError("job", "job file must be a JSON object");
        if (j.value("schema", 0) != 1)
            throw ValidationError("schema", "unsupported schema (expected 1)");
        f.name = j.value("name", "");
        if (j.contains("variables")) f.variables = str_list(j.at("variables"), "variables");
        f.field = FieldSpec::parse(j.value("coefficient_field", "Q"));
        if (j.contains("defining_ideal"))
            f.defining_ideal = str_list(j.at("defining_ideal"), "defining_ideal");
        if (j.contains("sigma")) f.sigma = str_list(j.at("sigma"), "sigma");
        if (j.contains("sigma_inv")) f.sigma_inv = str_list(j.at("sigma_inv"), "sigma_inv");
        if (j.contains("ideal_I")) f.ideal_I = str_list(j.at("ideal_I"), "ideal_I");
        if (j.contains("ideal_J")) f.ideal_J = str_list(j.at("ideal_J"), "ideal_J");
        if (j.contains("radical_ideal_I"))
            f.radical_ideal_I = str_list(j.at("radical_ideal_I"), "radical_ideal_I");
        if (j.contains("radical_ideal_J"))
            f.radical_ideal_J = str_list(j.at("radical_ideal_J"), "radical_ideal_J");
        if (j.contains("series")) f.series = str_list(j.at("series"), "series");
        f.window = j.value("window", 10L);
        if (j.contains("prime")) f.prime = j.at("prime").get<std::int64_t>();
        if (j.contains("precision")) f.precision = j.at("precision").get<int>();
        f.options = j.value("options", json::object());
        if (!f.sigma.empty() && f.sigma.size() != f.variables.size())
            throw ValidationError("sigma", "image count differs from variable count");
        if (!f.sigma_inv.empty() && f.sigma_inv.size() != f.variables.size())
            throw ValidationError("sigma_inv", "image count differs from variable count");
        return f;
    }

    static JobFile load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("job", "cannot open '" + path + "'");
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw ValidationError("job", std::string("JSON parse failure: ") + e.what());
        }
        return from_json(j);
    }

    Config config() const {
        Config cfg;
        if (precision) cfg.precision = *precision;
        if (options.contains("max_precision")) cfg.max_precision = options.at("max_precision");
        if (options.contains("degree_cap")) cfg.degree_cap = options.at("degree_cap");
        if (options.contains("mahler_degree_cap"))
            cfg.mahler_degree_cap = options.at("mahler_degree_cap");
        if (options.contains("nofit_confidence_radius"))
            cfg.nofit_confidence_radius = options.at("nofit_confidence_radius");
        if (options.contains("allow_p3_experimental"))
            cfg.allow_p3_experimental = options.at("allow_p3_experimental");
        return cfg;
    }
};

template <class D>
struct LoadedJob {
    RingPtr<D> ring;
    OrbitJob<D> orbit;
    std::optional<Ideal<D>> radical_I;
    std::optional<Ideal<D>> radical_J;
};

template <class D>
Polynomial<D> parse_field(const std::string& text, const RingPtr<D>& ring,
                          const std::string& field) {
    try {
        return parse_poly<D>(text, ring);
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(field, std::string(e.what()) + " in '" + text + "'");
    }
}

template <class D>
LoadedJob<D> load_job(const JobFile& f, D dom) {
    if (f.variables.empty()) throw ValidationError("variables", "at least one variable required");
    auto ring = make_ring<D>(std::move(dom), f.variables);
    auto parse_list = [&](const std::vector<std::string>& xs, const std::string& field) {
        std::vector<Polynomial<D>> out;
        for (std::size_t i = 0; i < xs.size(); ++i)
            out.push_back(parse_field<D>(xs[i], ring, field + "[" + std::to_string(i) + "]"));
        return out;
    };
    LoadedJob<D> L;
    L.ring = ring;
    std::optional<std::vector<Polynomial<D>>> inv;
    if (!f.sigma_inv.empty()) inv = parse_list(f.sigma_inv, "sigma_inv");
    PolyMap<D> sigma{ring, parse_list(f.sigma, "sigma"), std::move(inv)};
    std::optional<Ideal<D>> defining;
    if (!f.defining_ideal.empty())
        defining = make_ideal(ring, parse_list(f.defining_ideal, "defining_ideal"));
    L.orbit = OrbitJob<D>{ring, std::move(sigma), make_ideal(ring, parse_list(f.ideal_I, "ideal_I")),
                          make_ideal(ring, parse_list(f.ideal_J, "ideal_J")), std::move(defining)};
    if (!f.radical_ideal_I.empty())
        L.radical_I = make_ideal(ring, parse_list(f.radical_ideal_I, "radical_ideal_I"));
    if (!f.radical_ideal_J.empty())
        L.radical_J = make_ideal(ring, parse_list(f.radical_ideal_J, "radical_ideal_J"));
    return L;
}

} // namespace smlorbit
