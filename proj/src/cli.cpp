#include "siegel/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "siegel/conjugation.hpp"
#include "siegel/errors.hpp"
#include "siegel/numeric_policy.hpp"
#include "siegel/serialize.hpp"
#include "siegel/verify.hpp"

#ifndef SIEGEL_FIXTURE_DIR
#define SIEGEL_FIXTURE_DIR "fixtures"
#endif

namespace fs = std::filesystem;

namespace siegel {

namespace {

constexpr std::uint64_t default_seed = 20240601;

// Raised from within a command to leave with a specific exit code.
struct Exit {
    int code;
    std::string message;
};

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            xs.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InvalidDescriptor("not a number: \"" + item + "\"");
        }
    }
    if (xs.empty()) throw InvalidDescriptor("empty coordinate list");
    return xs;
}

// "re" or "re,im"
Complex parse_complex(const std::string& text) {
    const auto xs = parse_numbers(text);
    if (xs.size() > 2) throw InvalidDescriptor("complex value must be \"re\" or \"re,im\": " + text);
    return {xs[0], xs.size() == 2 ? xs[1] : 0.0};
}

struct Options {
    // common
    std::optional<std::uint64_t> seed;
    double tol = 1e-10;
    std::string out_dir;
    std::string format = "json";
    std::string map_file;
    std::optional<double> A;
    std::string B = "0", C = "0";
    // orbit
    bool forward = false, backward = false;
    std::string start;
    double a = 0.34;
    int n = 40;
    // conjugate
    std::string q;
    std::optional<double> alpha;
    std::string variant = "basic";
    double rho = 0.5;
    double threshold = 1e-3;
    // verify
    std::vector<std::string> fixtures;
    std::size_t samples = 10000;
    std::size_t julia_samples = 10000;
};

struct LoadedMap {
    std::optional<MapDescriptor> f;
    std::optional<QuadraticSiegel> raw; // quadratic input, possibly invalid
    Json descriptor;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidDescriptor("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidDescriptor(path + ": " + e.what());
    }
}

LoadedMap load_map(const Options& o) {
    LoadedMap m;
    if (!o.map_file.empty() && o.A) throw InvalidDescriptor("give either --map or --A/--B/--C, not both");
    if (o.A) {
        m.raw = QuadraticSiegel{*o.A, parse_complex(o.B), parse_complex(o.C)};
        m.descriptor = Json{{"family", "quadratic"}, {"A", number(m.raw->A)}, {"B", to_json(m.raw->B)},
                            {"C", to_json(m.raw->C)}};
    } else if (!o.map_file.empty()) {
        m.descriptor = read_json_file(o.map_file);
        // fixture files carry the descriptor under "map"
        if (m.descriptor.is_object() && !m.descriptor.contains("family") && m.descriptor.contains("map"))
            m.descriptor = Json(m.descriptor["map"]);
        if (m.descriptor.is_object() && m.descriptor.value("family", Json()) == "quadratic")
            m.raw = quadratic_coefficients_from_json(m.descriptor);
    } else {
        throw InvalidDescriptor("no map given: use --map FILE or --A/--B/--C");
    }
    if (m.raw) {
        const ClassificationReport r = classify_quadratic(m.raw->A, m.raw->B, m.raw->C);
        if (r.is_self_map) m.f = MapDescriptor::quadratic(m.raw->A, m.raw->B, m.raw->C);
    } else {
        m.f = map_from_json(m.descriptor);
    }
    return m;
}

const MapDescriptor& require_self_map(const LoadedMap& m) {
    if (!m.f) throw Exit{exit_not_self_map, "the map is not a self-map of the Siegel domain"};
    return *m.f;
}

Json common_config(const Options& o, std::uint64_t seed, const LoadedMap* m) {
    Json c{{"seed", seed}, {"tol", number(o.tol)}};
    if (m) c["map"] = m->descriptor;
    if (!o.out_dir.empty()) c["out"] = o.out_dir;
    c["format"] = o.format;
    return c;
}

Json envelope(const std::string& command, Json config) {
    return Json{{"command", command}, {"config", std::move(config)}, {"numeric_policy", to_json(numeric_policy())}};
}

void write_text(const Options& o, const std::string& file, const std::string& text, std::ostream& out) {
    if (o.out_dir.empty()) {
        out << text;
        return;
    }
    fs::create_directories(o.out_dir);
    const fs::path path = fs::path(o.out_dir) / file;
    std::ofstream f(path);
    if (!f) throw Exit{exit_malformed, "cannot write " + path.string()};
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string describe(const std::optional<BoundaryPoint>& b) {
    if (!b) return "none";
    if (b->at_infinity()) return "inf";
    std::string s = "(";
    for (std::size_t i = 0; i < b->dim(); ++i) {
        const Complex c = b->v()[i];
        s += (i ? ", " : "") + format_double(c.real());
        if (c.imag() != 0.0) s += (c.imag() < 0 ? "-" : "+") + format_double(std::abs(c.imag())) + "i";
    }
    return s + ")";
}

// ---- commands ---------------------------------------------------------------------

int cmd_classify(const Options& o, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    const LoadedMap m = load_map(o);
    const ClassificationReport r =
        m.raw ? classify_quadratic(m.raw->A, m.raw->B, m.raw->C) : classify(*m.f);
    Json rep = envelope("classify", common_config(o, seed, &m));
    rep["report"] = to_json(r);
    write_text(o, "classify.json", dump(rep), out);
    err << "classify: " << (r.type ? to_string(*r.type) : std::string("not a self-map"));
    if (r.denjoy_wolff) err << ", DW " << describe(r.denjoy_wolff);
    if (r.brfp) err << ", BRFP " << describe(r.brfp) << " alpha=" << format_double(r.brfp_multiplier.value_or(0));
    err << "\n";
    return r.is_self_map ? exit_ok : exit_not_self_map;
}

int cmd_orbit(const Options& o, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    if (o.forward && o.backward) throw InvalidDescriptor("--forward and --backward are exclusive");
    if (o.format != "json" && o.format != "csv" && o.format != "both")
        throw InvalidDescriptor("--format must be json, csv or both");
    if (o.format == "both" && o.out_dir.empty()) throw InvalidDescriptor("--format both needs --out DIR");
    if (o.start.empty()) throw InvalidDescriptor("--start is required");
    if (o.n < 0) throw InvalidDescriptor("--n must be non-negative");
    const LoadedMap m = load_map(o);
    const MapDescriptor& f = require_self_map(m);
    const CVector start = parse_start(o.start, f.dim());
    if (!in_siegel_domain(start)) throw InvalidDescriptor("--start is not a point of the Siegel domain");
    const SiegelPoint z0 = SiegelPoint::from_coords(start);

    Json config = common_config(o, seed, &m);
    config["direction"] = o.forward ? "forward" : "backward";
    config["start"] = to_json(start);
    config["n"] = o.n;
    if (!o.forward) config["a"] = number(o.a);

    int code = exit_ok;
    Json rep = envelope("orbit", config);
    std::string csv;
    if (o.forward) {
        const ForwardOrbit orbit = forward_orbit(f, z0, o.n, o.tol);
        rep["orbit"] = to_json(orbit);
        csv = orbit_csv(orbit.points, orbit.steps);
        err << "orbit: forward, " << orbit.points.size() - 1 << " steps, DW="
            << (orbit.interior_limit ? "interior" : describe(orbit.dw_estimate))
            << (orbit.converged ? "" : " (not converged)") << "\n";
    } else {
        if (!(o.a > 0.0 && o.a < 1.0)) throw InvalidDescriptor("--a must lie in (0, 1)");
        const BackwardOrbit orbit = backward_orbit(f, z0, o.a, o.n);
        rep["orbit"] = to_json(orbit);
        csv = orbit_csv(orbit.points, orbit.steps);
        err << "orbit: backward, " << orbit.points.size() - 1 << " steps, q=" << describe(orbit.limit)
            << ", alpha=" << format_double(orbit.multiplier_estimate)
            << ", koranyi=" << format_double(orbit.koranyi_certificate) << "\n";
        if (orbit.status != OrbitStatus::complete) {
            err << "orbit: stopped early (" << to_string(orbit.status) << "): " << orbit.status_message << "\n";
            code = exit_construction_failed;
        }
    }
    if (o.format != "csv") write_text(o, "orbit.json", dump(rep), out);
    if (o.format != "json") write_text(o, "orbit.csv", csv, out);
    return code;
}

int cmd_conjugate(const Options& o, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    if (o.variant != "basic" && o.variant != "expandable")
        throw InvalidDescriptor("--variant must be basic or expandable");
    if (!(o.threshold > 0.0)) throw InvalidDescriptor("--threshold must be positive");
    const LoadedMap m = load_map(o);
    const MapDescriptor& f = require_self_map(m);

    std::optional<BoundaryPoint> q;
    if (!o.q.empty())
        q = BoundaryPoint::siegel(parse_start(o.q, f.dim()));
    else
        q = classify(f).brfp;
    if (!q) throw Exit{exit_construction_failed, "no repelling boundary fixed point known; pass --q"};
    if (q->at_infinity())
        throw Exit{exit_construction_failed, "the repelling fixed point is at infinity; the construction needs a finite q"};
    const double alpha = o.alpha ? *o.alpha : multiplier_at_boundary(f, *q);
    if (!(alpha > 1.0) || !std::isfinite(alpha))
        throw Exit{exit_construction_failed, "multiplier at q is " + format_double(alpha) + ", need alpha > 1"};

    Json config = common_config(o, seed, &m);
    config["q"] = to_json(*q);
    config["alpha"] = number(alpha);
    config["variant"] = o.variant;
    config["rho"] = number(o.rho);
    config["n"] = o.n;
    config["threshold"] = number(o.threshold);
    Json rep = envelope("conjugate", config);

    SpecialConstruction sc;
    try {
        sc = special_backward_construct(f, *q, alpha, o.rho, o.n);
    } catch (const ConstructionFailed& e) {
        rep["error"] = e.what();
        write_text(o, "conjugate.json", dump(rep), out);
        throw Exit{exit_construction_failed, e.what()};
    }
    const ConjugationModel model = o.variant == "basic" ? ConjugationModel::basic(alpha, f.dim())
                                                        : ConjugationModel::expandable(expandable_decompose(f));
    const ConjugationRun run = run_conjugation(f, sc.orbit, model, default_grid(f.dim()), o.n);

    const double final_residual = run.residuals.empty() ? INFINITY : run.residuals.back();
    Json construction{{"a", number(sc.a)}, {"n0", sc.n0}, {"axis_displacements", Json::array()}};
    for (double d : sc.axis_displacements) construction["axis_displacements"].push_back(format_double(d));
    rep["construction"] = construction;
    rep["run"] = to_json(run);
    rep["final_residual"] = number(final_residual);
    rep["converged"] = final_residual < o.threshold;
    write_text(o, "conjugate.json", dump(rep), out);

    err << "n  residual\n";
    for (std::size_t n = 0; n < run.residuals.size(); ++n) err << n << "  " << format_double(run.residuals[n]) << "\n";
    err << "conjugate: final residual " << format_double(final_residual) << (final_residual < o.threshold ? " < " : " >= ")
        << format_double(o.threshold) << "\n";
    return final_residual < o.threshold ? exit_ok : exit_construction_failed;
}

std::vector<std::string> bundled_fixtures() {
    std::vector<std::string> paths;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(SIEGEL_FIXTURE_DIR, ec))
        if (e.path().extension() == ".json") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    return paths;
}

int cmd_verify(const Options& o, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> paths = o.fixtures.empty() ? bundled_fixtures() : o.fixtures;
    std::vector<Fixture> fixtures;
    std::vector<CheckResult> load_failures;
    for (const auto& p : paths) {
        try {
            fixtures.push_back(fixture_from_json(read_json_file(p)));
        } catch (const Error& e) {
            load_failures.push_back(failed_load(p, e.what()));
        }
    }
    SuiteOptions so;
    so.property_samples = o.samples;
    so.julia_samples = o.julia_samples;
    SuiteReport suite = run_verify_suite(fixtures, seed, so);
    suite.checks.insert(suite.checks.begin(), load_failures.begin(), load_failures.end());

    Json config{{"seed", seed}, {"fixtures", paths}, {"samples", o.samples}, {"julia_samples", o.julia_samples}};
    if (!o.out_dir.empty()) config["out"] = o.out_dir;
    Json rep = envelope("verify", config);
    rep["suite"] = to_json(suite);
    write_text(o, "verify.json", dump(rep), out);

    std::size_t failed = 0;
    for (const auto& c : suite.checks)
        if (!c.pass) {
            ++failed;
            err << "FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        }
    err << "verify: " << suite.checks.size() << " checks, " << failed << " failed\n";
    return suite.all_pass() ? exit_ok : exit_verify_failed;
}

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("SIEGEL_DYNAMICS_SEED")) {
        try {
            std::size_t used = 0;
            const std::string s(env);
            const unsigned long long v = std::stoull(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw InvalidDescriptor(std::string("SIEGEL_DYNAMICS_SEED is not an unsigned integer: ") + env);
        }
    }
    return default_seed;
}

} // namespace

CVector parse_start(const std::string& text, std::size_t dim) {
    const auto xs = parse_numbers(text);
    CVector v(dim);
    if (xs.size() == dim) {
        for (std::size_t i = 0; i < dim; ++i) v[i] = xs[i];
    } else if (xs.size() == 2 * dim) {
        for (std::size_t i = 0; i < dim; ++i) v[i] = Complex(xs[2 * i], xs[2 * i + 1]);
    } else {
        throw InvalidDescriptor("expected " + std::to_string(dim) + " real or " + std::to_string(2 * dim) +
                                " (re, im) values, got " + std::to_string(xs.size()));
    }
    return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iteration of holomorphic self-maps of the Siegel domain", "siegel_dynamics"};
    app.set_config("--config", "", "TOML/INI config file; flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "RNG seed (fallback: $SIEGEL_DYNAMICS_SEED)");
    app.add_option("--tol", o.tol, "forward-orbit convergence tolerance")->capture_default_str();
    app.add_option("--out", o.out_dir, "write reports into this directory instead of stdout");
    app.add_option("--format", o.format, "json|csv|both (orbit)")->capture_default_str();
    app.add_option("--map", o.map_file, "map descriptor JSON file");
    app.add_option("--A", o.A, "quadratic coefficient A");
    app.add_option("--B", o.B, "quadratic coefficient B as re or re,im")->capture_default_str();
    app.add_option("--C", o.C, "quadratic coefficient C as re or re,im")->capture_default_str();

    auto* classify_cmd = app.add_subcommand("classify", "classify a quadratic (or any) map");

    auto* orbit_cmd = app.add_subcommand("orbit", "forward or backward orbit");
    orbit_cmd->add_flag("--forward", o.forward, "forward iteration");
    orbit_cmd->add_flag("--backward", o.backward, "bounded-step backward iteration (default)");
    orbit_cmd->add_option("--start", o.start, "z_re,z_im[,w...] or N real coordinates");
    orbit_cmd->add_option("--a", o.a, "step bound")->capture_default_str();
    orbit_cmd->add_option("--n", o.n, "number of steps")->capture_default_str();

    auto* conj_cmd = app.add_subcommand("conjugate", "conjugate the map to its linear model at a BRFP");
    conj_cmd->add_option("--q", o.q, "boundary fixed point (Siegel coordinates); default from classify");
    conj_cmd->add_option("--alpha", o.alpha, "multiplier at q; default estimated");
    conj_cmd->add_option("--variant", o.variant, "basic|expandable")->capture_default_str();
    conj_cmd->add_option("--rho", o.rho, "exclusion radius about q")->capture_default_str();
    conj_cmd->add_option("--n", o.n, "orbit length and largest n")->capture_default_str();
    conj_cmd->add_option("--threshold", o.threshold, "success threshold on the final residual")
        ->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    verify_cmd->add_option("--fixture", o.fixtures, "fixture files (default: bundled fixtures)");
    verify_cmd->add_option("--samples", o.samples, "samples per property check")->capture_default_str();
    verify_cmd->add_option("--julia-samples", o.julia_samples, "samples per Julia check")->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend()); // CLI11 consumes from the back
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_malformed;
    }

    try {
        if (seed_opt->count() > 0) o.seed = seed_flag;
        if (!(o.tol > 0.0)) throw InvalidDescriptor("--tol must be positive");
        const std::uint64_t seed = resolve_seed(o);
        if (classify_cmd->parsed()) return cmd_classify(o, seed, out, err);
        if (orbit_cmd->parsed()) return cmd_orbit(o, seed, out, err);
        if (conj_cmd->parsed()) return cmd_conjugate(o, seed, out, err);
        if (verify_cmd->parsed()) return cmd_verify(o, seed, out, err);
    } catch (const Exit& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const InvalidDescriptor& e) {
        err << "error: " << e.what() << "\n";
        return exit_malformed;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << "\n";
        return exit_malformed;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << "\n";
        return exit_malformed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_construction_failed;
    }
    return exit_malformed;
}

} // namespace siegel
