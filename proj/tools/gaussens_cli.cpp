// gaussens: identity verification, sampling campaigns, Page-slope tables and Hawking presets.
//
// Exit codes: 0 success, 1 identity/statistical failure, 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaussens/analytic.hpp"
#include "gaussens/batch_io.hpp"
#include "gaussens/constants.hpp"
#include "gaussens/constraints.hpp"
#include "gaussens/errors.hpp"
#include "gaussens/manifest.hpp"
#include "gaussens/observables.hpp"
#include "gaussens/sampler.hpp"
#include "gaussens/spec_io.hpp"
#include "gaussens/verify.hpp"

namespace fs = std::filesystem;
using namespace gaussens;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string default_out_dir() {
    const char* env = std::getenv("GAUSSENS_OUT_DIR");
    return env && *env ? env : "gaussens_out";
}

void write_file(const fs::path& p, const std::string& content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + p.string());
    out << content;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_manifest(const fs::path& manifest, RunManifest m) {
    m.end_time = timestamp_now();
    write_file(manifest, m.to_json(manifest.parent_path().string()).dump(2) + "\n");
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite = "all";
    std::vector<std::string> tolerances;
    std::string out;
    bool serial = false;
};

int cmd_verify(const VerifyArgs& a) {
    RunManifest m;
    m.command = "verify";
    m.start_time = timestamp_now();
    VerifyOptions opt;
    opt.suite = a.suite;
    opt.exec = a.serial ? Exec::Serial : Exec::Parallel;
    for (const auto& t : a.tolerances) {
        const auto eq = t.find('=');
        try {
            if (eq == std::string::npos)
                opt.tolerance = std::stod(t);
            else
                opt.overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw ConfigError("bad --tolerance value '" + t + "'");
        }
    }
    const VerifyReport report = run_verify(opt);

    const fs::path dir = a.out.empty() ? fs::path(default_out_dir()) : fs::path(a.out);
    nlohmann::json j = report.to_json();
    j["suite"] = a.suite;
    write_file(dir / "verify_report.json", j.dump(2) + "\n");
    nlohmann::json cfg = {{"suite", a.suite}, {"tolerances", a.tolerances}};
    m.config_hash = sha256_hex(cfg.dump());
    m.outputs = {"verify_report.json"};
    write_manifest(dir / "manifest.json", m);

    for (const auto& c : report.checks) {
        std::printf("%-4s %-34s residual %.3e %s %.1e\n", c.pass ? "ok" : "FAIL", c.tag.c_str(), c.residual,
                    c.lower_bound ? ">" : "<=", c.tolerance);
    }
    std::printf("%s: %zu identities, report %s\n", report.all_pass() ? "PASS" : "FAIL", report.checks.size(),
                (dir / "verify_report.json").string().c_str());
    return report.all_pass() ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- sample

int cmd_sample(const std::string& config_path, const std::string& out) {
    RunManifest m;
    m.command = "sample";
    m.start_time = timestamp_now();
    if (!fs::exists(config_path)) throw ConfigError("config file not found: " + config_path);
    const std::string text = read_text(config_path);
    const SampleCampaign campaign =
        parse_campaign(read_json_file(config_path), fs::path(config_path).parent_path().string());
    const SamplerConfig& cfg = campaign.config;
    const ModeSubset a(cfg.spec.n_modes(), campaign.subsystem);

    const SampleBatch batch = sample(cfg);
    const ObservableTable table = estimate_observables(batch, a, campaign.x_list);

    const fs::path dir = out.empty() ? fs::path(default_out_dir()) : fs::path(out);
    nlohmann::json meta = batch_metadata(batch);
    meta["subsystem"] = campaign.subsystem;
    nlohmann::json ess = nlohmann::json::object();
    for (const auto& r : table.rows) ess[r.observable + "/x=" + std::to_string(r.x)] = r.ess;
    meta["ess"] = ess;
    write_file(dir / "batch_meta.json", meta.dump(2) + "\n");
    write_file(dir / "batch_samples.csv", batch_csv(batch));
    write_file(dir / "statistics.csv", table.to_csv());

    m.config_path = config_path;
    m.config_hash = sha256_hex(text);
    m.seed = cfg.seed;
    m.outputs = {"batch_meta.json", "batch_samples.csv", "statistics.csv"};
    write_manifest(dir / "manifest.json", m);

    std::cout << table.to_csv();
    std::printf("%zu samples, acceptance %.3f, outputs in %s\n", batch.samples.size(), batch.acceptance_rate,
                dir.string().c_str());
    return kExitOk;
}

// ---------------------------------------------------------------- page-slope

int cmd_page_slope(const std::string& spec_path, const std::string& out) {
    RunManifest m;
    m.command = "page-slope";
    m.start_time = timestamp_now();
    if (!fs::exists(spec_path)) throw ConfigError("spec file not found: " + spec_path);
    const SpecDocument doc = load_spec_file(spec_path);
    const fs::path csv = out.empty() ? fs::path(default_out_dir()) / "page_slope.csv" : fs::path(out);
    write_file(csv, page_slope_csv(page_slope(doc.spec)));
    m.config_path = spec_path;
    m.config_hash = sha256_hex(read_text(spec_path));
    m.outputs = {csv.filename().string()};
    write_manifest(fs::path(csv.string() + ".manifest.json"), m);
    std::printf("%d modes, cumulative entropy %s\n", doc.spec.n_modes(), csv.string().c_str());
    return kExitOk;
}

// ---------------------------------------------------------------- hawking

struct HawkingArgs {
    double mass_solar = 0.0;
    double mass_planck = 0.0;
    double k = 1.0;
    std::string windows;
    std::string lambda_form = "exp";
    std::string out;
    bool count_only = false;
    double mode_cap = 100000;
};

WindowRange parse_range(const std::string& s, double window_count) {
    if (s.empty()) return {0, static_cast<std::int64_t>(std::min(window_count, 9.0e18))};
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("--windows expects begin:end");
    try {
        return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw ConfigError("--windows expects integers begin:end");
    }
}

int cmd_hawking(const HawkingArgs& a) {
    RunManifest m;
    m.command = "hawking";
    m.start_time = timestamp_now();
    if ((a.mass_solar > 0.0) == (a.mass_planck > 0.0))
        throw ConfigError("give exactly one positive mass (--mass-solar or --mass-planck)");
    if (!(a.k > 0.0)) throw ConfigError("--k must be positive");
    const double m0 = a.mass_solar > 0.0 ? a.mass_solar * constants::solar_mass_in_planck_units : a.mass_planck;
    const HawkingModel model(m0, a.k);
    const WindowRange range = parse_range(a.windows, model.window_count());
    const LambdaForm form = lambda_form_from_string(a.lambda_form);
    const double total = hawking_mode_count(model);
    const double in_range = hawking_range_modes(model, range);

    nlohmann::json report = {{"initial_mass_planck", m0},
                             {"k", a.k},
                             {"window_count", model.window_count()},
                             {"total_mode_count", total},
                             {"log10_total_mode_count", std::log10(total)},
                             {"window_range", {range.begin, range.end}},
                             {"range_mode_count", in_range},
                             {"mode_cap", a.mode_cap}};
    std::cout << report.dump(2) << "\n";

    const fs::path spec_file = a.out.empty() ? fs::path(default_out_dir()) / "hawking_spec.json" : fs::path(a.out);
    const fs::path report_file = fs::path(spec_file.string() + ".report.json");
    m.config_hash = sha256_hex(report.dump());
    if (a.count_only) {
        write_file(report_file, report.dump(2) + "\n");
        m.outputs = {report_file.filename().string()};
        write_manifest(fs::path(spec_file.string() + ".manifest.json"), m);
        return kExitOk;
    }
    if (in_range > a.mode_cap) {
        std::fprintf(stderr, "range holds %.6g modes, above the cap %.6g; use --count-only or a smaller --windows\n",
                     in_range, a.mode_cap);
        return kExitUsage;
    }
    const ConstraintSpec spec = hawking_constraints(model, range, form, a.mode_cap);
    HawkingPreset preset{m0, a.k, range, form};
    write_file(spec_file, spec_to_json(spec, preset).dump(2) + "\n");
    write_file(report_file, report.dump(2) + "\n");
    m.outputs = {spec_file.filename().string(), report_file.filename().string()};
    write_manifest(fs::path(spec_file.string() + ".manifest.json"), m);
    std::printf("%d modes in %zu windows written to %s\n", spec.n_modes(), spec.windows().size(),
                spec_file.string().c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained Gaussian-state ensembles: identities, sampling and Hawking presets"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check the analytic identity chain (no sampling)");
    verify->add_option("--suite", va.suite, "all | replica | saddle | fock | analytic")
        ->check(CLI::IsMember({"all", "replica", "saddle", "fock", "analytic"}));
    verify->add_option("--tolerance", va.tolerances, "Global tolerance VALUE or per-identity TAG=VALUE");
    verify->add_option("--out", va.out, "Report directory (default $GAUSSENS_OUT_DIR or ./gaussens_out)");
    verify->add_flag("--serial", va.serial, "Use the serial reference kernels");

    std::string config, sample_out;
    auto* samp = app.add_subcommand("sample", "Run a sampling campaign from a JSON config");
    samp->add_option("--config", config, "Sampler config JSON")->required();
    samp->add_option("--out", sample_out, "Output directory");

    std::string spec_path, page_out;
    auto* page = app.add_subcommand("page-slope", "Cumulative entropy along the mode ordering");
    page->add_option("--spec", spec_path, "Constraint spec JSON")->required();
    page->add_option("--out", page_out, "Output CSV");

    HawkingArgs ha;
    auto* hawk = app.add_subcommand("hawking", "Mode count and constraint spec for an evaporating black hole");
    hawk->add_option("--mass-solar", ha.mass_solar, "Initial mass in solar masses");
    hawk->add_option("--mass-planck", ha.mass_planck, "Initial mass in Planck masses (toy presets)");
    hawk->add_option("--k", ha.k, "Mass lost per window, Planck units");
    hawk->add_option("--windows", ha.windows, "Window range begin:end (default: whole lifetime)");
    hawk->add_option("--lambda-form", ha.lambda_form, "exp | coth")->check(CLI::IsMember({"exp", "coth"}));
    hawk->add_option("--out", ha.out, "Output spec JSON");
    hawk->add_flag("--count-only", ha.count_only, "Only report the mode count");
    hawk->add_option("--mode-cap", ha.mode_cap, "Largest spec that may be materialized");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(va);
        if (*samp) return cmd_sample(config, sample_out);
        if (*page) return cmd_page_slope(spec_path, page_out);
        if (*hawk) return cmd_hawking(ha);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitUsage;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitUsage;
    } catch (const DimensionError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
    return kExitUsage;
}
