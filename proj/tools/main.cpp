// smlorbit: computes and certifies the structure of S(I, J) = { n :
// sigma^n(I) contains J } for a polynomial-ring automorphism sigma.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <smlorbit/run.hpp>

using namespace smlorbit;

namespace {

struct CliOpts {
    std::string job_path;
    std::string out_path;
    std::optional<long> window;
    std::optional<std::int64_t> prime;
    std::optional<int> precision;
    std::string direction = "mirror";
    bool quiet = false;
};

void emit(const json& report, const CliOpts& o, const std::string& summary) {
    std::string text = report.dump(2) + "\n";
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out_path);
        out << text;
    }
    if (!o.quiet && !summary.empty()) std::cerr << summary << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbit structure of ideal containments under polynomial automorphisms"};
    app.require_subcommand(1);
    CliOpts o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--job", o.job_path, "job file (JSON)")->required();
        c->add_option("--out", o.out_path, "write the JSON report to this file");
        c->add_flag("--quiet", o.quiet, "suppress the human-readable summary");
    };

    auto* orbit = app.add_subcommand("orbit", "window scan / certification of S(I, J)");
    orbit->require_subcommand(1);
    auto* oscan = orbit->add_subcommand("scan", "compute containment bits over a window");
    add_common(oscan);
    oscan->add_option("--window", o.window, "window radius N (overrides the job)");
    oscan->add_option("--direction", o.direction, "mirror (default) or forward");
    auto* ocert = orbit->add_subcommand("certify", "scan plus per-residue-class certification");
    add_common(ocert);
    ocert->add_option("--window", o.window, "window radius N");
    ocert->add_option("--prime", o.prime, "certification prime (>= 5)");
    ocert->add_option("--precision", o.precision, "p-adic precision K");

    auto* arc = app.add_subcommand("arc", "interpolating arcs");
    arc->require_subcommand(1);
    auto* abuild = arc->add_subcommand("build", "build per-class arcs and dump coefficients");
    add_common(abuild);
    abuild->add_option("--prime", o.prime, "prime (>= 5)");
    abuild->add_option("--precision", o.precision, "p-adic precision K");

    auto* grb = app.add_subcommand("groebner", "reduced basis of ideal_I");
    add_common(grb);

    auto* str = app.add_subcommand("strassman", "zero-count bound for a coefficient list");
    add_common(str);
    str->add_option("--prime", o.prime, "prime");
    str->add_option("--precision", o.precision, "precision K");

    auto* rel = app.add_subcommand("relations", "ideal/point containment relations over Fp");
    rel->require_subcommand(1);
    auto* rcheck = rel->add_subcommand("check", "evaluate the five relations");
    add_common(rcheck);

    auto* vauto = app.add_subcommand("verify-auto", "verify the supplied inverse images");
    add_common(vauto);

    CLI11_PARSE(app, argc, argv);

    try {
        JobFile f = JobFile::load(o.job_path);
        RunOptions ro;
        ro.window = o.window;
        ro.prime = o.prime;
        ro.precision = o.precision;
        if (o.direction == "forward") ro.direction = ScanDirection::forward;
        else if (o.direction != "mirror") throw ValidationError("direction", "mirror or forward");

        std::string command;
        if (oscan->parsed()) command = "scan";
        else if (ocert->parsed()) command = "certify";
        else if (abuild->parsed()) command = "arc";
        else if (grb->parsed()) command = "groebner";
        else if (str->parsed()) command = "strassman";
        else if (rcheck->parsed()) command = "relations";
        else if (vauto->parsed()) command = "verify-auto";

        auto out = run_command(command, f, ro);
        emit(out.report, o, out.summary);
        return out.exit_code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorClass::internal);
    }
}
