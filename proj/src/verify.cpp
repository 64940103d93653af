#include "siegel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siegel/errors.hpp"
#include "siegel/kernels.hpp"

namespace siegel {

namespace {

double rel_dev(const CVector& a, const CVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    return worst;
}

void record(PropertyResult& r, double value, bool violated) {
    ++r.samples;
    r.worst = std::max(r.worst, value);
    if (violated) ++r.violations;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CheckResult from_property(std::string name, const PropertyResult& p, std::string detail = {}) {
    return CheckResult{std::move(name), p.pass(), p.samples, p.violations, p.worst, std::move(detail)};
}

CheckResult single(std::string name, bool pass, double worst, std::string detail = {}) {
    return CheckResult{std::move(name), pass, 1, pass ? 0u : 1u, worst, std::move(detail)};
}

} // namespace

// ---- random objects ------------------------------------------------------------

QuadraticSiegel random_quadratic(Rng& rng) {
    const double A = rng.log_uniform(0.2, 3.0);
    const double b = A * rng.uniform();
    const double c = std::sqrt((A - b) * rng.uniform());
    return QuadraticSiegel{A, std::polar(b, rng.uniform(0.0, 2.0 * std::numbers::pi)),
                           std::polar(c, rng.uniform(0.0, 2.0 * std::numbers::pi))};
}

SiegelAutomorphism random_automorphism(Rng& rng, std::size_t dim) {
    const std::size_t m = dim - 1;
    std::vector<Primitive> chain;
    // Moderate parameter ranges: a long chain of large dilations and
    // translations amplifies the rounding of the parameters themselves
    // (|lambda|^2 = alpha, |omega| = 1 only to the last bit) by ||w||^2 / t.
    const int len = 1 + static_cast<int>(rng.uniform() * 4);
    for (int i = 0; i < len; ++i) {
        const int kind = static_cast<int>(rng.uniform() * 4);
        CVector v(m);
        switch (kind) {
        case 0:
            for (auto& c : v) c = 0.5 * rng.complex_normal();
            chain.push_back(Translation{rng.normal(), v});
            break;
        case 1: chain.push_back(Dilation{rng.log_uniform(0.25, 4.0)}); break;
        case 2:
            for (auto& c : v) c = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
            chain.push_back(Rotation{v});
            break;
        default: {
            const double alpha = rng.log_uniform(0.25, 4.0);
            for (auto& c : v) c = std::polar(std::sqrt(alpha), rng.uniform(0.0, 2.0 * std::numbers::pi));
            chain.push_back(LinearDiag{alpha, v});
        }
        }
    }
    return automorphism_from_chain(chain);
}

// ---- properties ------------------------------------------------------------------

PropertyResult check_metric_consistency(Rng& rng, std::size_t n_pairs, std::size_t dim, double tol) {
    PropertyResult r;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const SiegelPoint p = random_siegel_point(rng, dim);
        const SiegelPoint q = random_siegel_point(rng, dim);
        const double dev = std::abs(dist_siegel(p, q) - dist_ball(siegel_to_ball(p), siegel_to_ball(q)));
        record(r, dev, !(dev < tol));
    }
    return r;
}

PropertyResult check_automorphism_isometry(Rng& rng, std::size_t n_pairs, std::size_t dim, double tol) {
    PropertyResult r;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const SiegelAutomorphism a = random_automorphism(rng, dim);
        const SiegelPoint p = random_siegel_point(rng, dim);
        const SiegelPoint q = random_siegel_point(rng, dim);
        const double dev = std::abs(dist_siegel(a.apply(p), a.apply(q)) - dist_siegel(p, q));
        record(r, dev, !(dev < tol));
    }
    return r;
}

PropertyResult check_distance_ratio_bound(Rng& rng, std::size_t n_pairs, std::size_t dim) {
    PropertyResult r;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const BallPoint z = random_ball_point(rng, dim);
        const BallPoint w = random_ball_point(rng, dim);
        const double d = dist_ball(z, w);
        const double nz = norm(z.v()), nw = norm(w.v());
        const double lhs = (1.0 - nw) / (1.0 - nz);
        const double rhs = (1.0 + d) / (1.0 - d * nz);
        const double excess = lhs / rhs - 1.0;
        record(r, excess, excess > 1e-9);
    }
    return r;
}

PropertyResult check_horosphere_correspondence(Rng& rng, std::size_t n_points, std::size_t dim) {
    PropertyResult r;
    const BoundaryPoint e1 = [&] {
        CVector v(dim);
        v[0] = 1.0;
        return BoundaryPoint::ball(v);
    }();
    for (std::size_t i = 0; i < n_points; ++i) {
        const SiegelPoint p = random_siegel_point(rng, dim);
        // Keep samples away from the horosphere itself, where both tests are a coin toss.
        const double level = p.defect() * (rng.uniform() < 0.5 ? rng.uniform(0.5, 0.99) : rng.uniform(1.01, 2.0));
        const bool siegel_in = horosphere_contains(Horosphere::siegel_at_infinity(level), p);
        const bool ball_in = horosphere_contains(Horosphere::ball(e1, 1.0 / level), siegel_to_ball(p));
        record(r, siegel_in == ball_in ? 0.0 : 1.0, siegel_in != ball_in);
    }
    return r;
}

PropertyResult check_kernel_equivalence(Rng& rng, std::size_t n_pairs) {
    PropertyResult r;
    SiegelBatch2 p, q;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        p.push_back(random_siegel_point(rng, 2));
        q.push_back(random_siegel_point(rng, 2));
    }
    std::vector<double> ds(n_pairs), dv(n_pairs), ts(n_pairs), tv(n_pairs);
    const KernelPath fast = detected_kernel_path();
    dist_siegel_batch(p, q, ds.data(), KernelPath::scalar);
    dist_siegel_batch(p, q, dv.data(), fast);
    defect_batch(p, ts.data(), KernelPath::scalar);
    defect_batch(p, tv.data(), fast);
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const SiegelPoint a(Complex(p.zr[i], p.zi[i]), CVector{Complex(p.wr[i], p.wi[i])});
        const SiegelPoint b(Complex(q.zr[i], q.zi[i]), CVector{Complex(q.wr[i], q.wi[i])});
        const double dev = std::abs(ds[i] - dist_siegel(a, b));
        const bool bitwise = ds[i] == dv[i] && ts[i] == tv[i] && ts[i] == a.defect();
        record(r, dev, !bitwise || dev > 1e-15);
    }
    return r;
}

PropertyResult check_quadratic_iterates(Rng& rng, std::size_t n_maps, std::size_t n_points, int n_max, double tol) {
    PropertyResult r;
    for (std::size_t m = 0; m < n_maps; ++m) {
        const QuadraticSiegel q = random_quadratic(rng);
        const MapDescriptor f = MapDescriptor::quadratic(q.A, q.B, q.C);
        for (std::size_t i = 0; i < n_points; ++i) {
            const SiegelPoint p = random_siegel_point(rng, 2);
            CVector cur = p.coords();
            double worst = 0.0;
            for (int n = 0; n <= n_max; ++n) {
                worst = std::max(worst, rel_dev(cur, quadratic_iterate_closed(q, n, p.coords())));
                cur = evaluate_coords(f, cur);
            }
            record(r, worst, !(worst < tol));
        }
    }
    return r;
}

PropertyResult check_quadratic_inverse(Rng& rng, std::size_t n_points, double tol) {
    PropertyResult r;
    for (std::size_t i = 0; i < n_points; ++i) {
        const QuadraticSiegel q = random_quadratic(rng);
        const MapDescriptor f = MapDescriptor::quadratic(q.A, q.B, q.C);
        // Targets are drawn from f(H^2): outside the image the preimage leaves
        // the domain and evaluating f there cancels catastrophically.
        const SiegelPoint p = random_siegel_point(rng, 2);
        const CVector target = evaluate_coords(f, p.coords());
        const InverseResult inv = quadratic_inverse(q, target);
        const double dev = std::max(rel_dev(evaluate_coords(f, inv.point), target), rel_dev(inv.point, p.coords()));
        record(r, dev, !(dev < tol));
    }
    return r;
}

PropertyResult check_self_map_closure(const MapDescriptor& f, Rng& rng, std::size_t n_points) {
    PropertyResult r;
    for (std::size_t i = 0; i < n_points; ++i) {
        const SiegelPoint p = random_siegel_point(rng, f.dim());
        const CVector fp = evaluate_coords(f, p.coords());
        const bool ok = in_siegel_domain(fp);
        record(r, ok ? 0.0 : 1.0, !ok);
    }
    return r;
}

PropertyResult check_orbit_exactness(const MapDescriptor& f, const BackwardOrbit& orbit, double tol) {
    PropertyResult r;
    for (std::size_t k = 0; k + 1 < orbit.points.size(); ++k) {
        const double dev = rel_dev(evaluate_coords(f, orbit.points[k + 1].coords()), orbit.points[k].coords());
        record(r, dev, !(dev <= tol));
    }
    return r;
}

// ---- fixtures -------------------------------------------------------------------

Fixture fixture_from_json(const Json& j) {
    try {
        Fixture fx;
        fx.name = j.at("name").get<std::string>();
        fx.map_json = j.at("map");
        fx.start = cvector_from_json(j.at("start"));
        fx.a = j.at("a").get<double>();
        fx.n = j.at("n").get<int>();
        if (j.contains("brfp")) fx.brfp = boundary_from_json(j.at("brfp"));
        fx.alpha = j.value("alpha", 0.0);
        if (j.contains("dw")) fx.dw = boundary_from_json(j.at("dw"));
        if (j.contains("c")) fx.c = j.at("c").get<double>();
        if (j.contains("growth_r0")) fx.growth_r0 = j.at("growth_r0").get<double>();
        return fx;
    } catch (const Json::exception& e) {
        throw InvalidDescriptor(std::string("malformed fixture: ") + e.what());
    }
}

Json to_json(const Fixture& f) {
    Json j{{"name", f.name}, {"map", f.map_json}, {"start", to_json(f.start)}, {"a", f.a}, {"n", f.n}};
    if (f.brfp) j["brfp"] = to_json(*f.brfp);
    j["alpha"] = f.alpha;
    if (f.dw) j["dw"] = to_json(*f.dw);
    if (f.c) j["c"] = *f.c;
    if (f.growth_r0) j["growth_r0"] = *f.growth_r0;
    return j;
}

bool SuiteReport::all_pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

CheckResult failed_load(const std::string& source, const std::string& why) {
    return CheckResult{"fixture-load:" + source, false, 0, 1, 0.0, why};
}

namespace {

void run_fixture(const Fixture& fx, std::uint64_t seed, std::size_t& index, const SuiteOptions& opts,
                 std::vector<CheckResult>& out) {
    const std::string pre = "fixture:" + fx.name + ":";
    auto next_rng = [&] { return Rng(mix_seed(seed, index++)); };

    std::optional<MapDescriptor> fopt;
    try {
        fopt = map_from_json(fx.map_json);
    } catch (const Error& e) {
        out.push_back(single(pre + "descriptor", false, 0.0, e.what()));
        return;
    }
    const MapDescriptor& f = *fopt;

    {
        Rng rng = next_rng();
        out.push_back(from_property(pre + "self-map-closure", check_self_map_closure(f, rng, opts.property_samples)));
    }

    BackwardOrbit orbit;
    try {
        orbit = backward_orbit(f, SiegelPoint::from_coords(fx.start), fx.a, fx.n);
    } catch (const Error& e) {
        out.push_back(single(pre + "backward-orbit", false, 0.0, e.what()));
        return;
    }
    out.push_back(single(pre + "backward-orbit", orbit.status == OrbitStatus::complete,
                         static_cast<double>(orbit.points.size() - 1), to_string(orbit.status)));
    out.push_back(from_property(pre + "orbit-exactness", check_orbit_exactness(f, orbit)));

    {
        PropertyResult steps;
        for (std::size_t k = 0; k < orbit.steps.size(); ++k) {
            const bool bad = orbit.steps[k] > fx.a || (k > 0 && orbit.steps[k] < orbit.steps[k - 1] - 1e-10);
            record(steps, orbit.steps[k], bad);
        }
        out.push_back(from_property(pre + "step-bound-and-monotone", steps));
        PropertyResult defects;
        for (std::size_t k = 0; k + 1 < orbit.defects.size(); ++k)
            record(defects, orbit.defects[k + 1] / orbit.defects[k], !(orbit.defects[k + 1] < orbit.defects[k]));
        out.push_back(from_property(pre + "defects-decreasing", defects));
    }

    const double upper = (1.0 + fx.a) / (1.0 - fx.a);
    std::optional<double> decay_c = fx.c;
    if (fx.growth_r0) {
        const EllipticGrowth g = elliptic_growth_constant(f, *fx.growth_r0, 16, 8);
        out.push_back(single(pre + "elliptic-growth-constant", g.c < 1.0 && !g.apparent_non_elliptic, g.c));
        decay_c = g.c;
    }
    {
        const double alpha = orbit.multiplier_estimate;
        const double lower = fx.c ? 1.0 / *fx.c : 1.0;
        const bool ok = alpha >= lower - 1e-9 && alpha <= upper + 1e-9;
        out.push_back(single(pre + "multiplier-sandwich", ok, alpha,
                             "[" + format_double(lower) + ", " + format_double(upper) + "]"));
    }
    if (decay_c) {
        const DefectDecayReport d = verify_defect_decay(orbit, *decay_c);
        out.push_back(CheckResult{pre + "defect-decay", d.ok, d.pairs, d.violations, d.worst_margin, {}});
    }
    out.push_back(single(pre + "koranyi-certificate", std::isfinite(orbit.koranyi_certificate),
                         orbit.koranyi_certificate));

    if (fx.brfp) {
        const double m = multiplier_at_boundary(f, *fx.brfp);
        out.push_back(single(pre + "multiplier-at-brfp", std::abs(m - fx.alpha) <= 1e-6, m,
                             "expected " + format_double(fx.alpha)));
        const JuliaReport jr = julia_inclusion_check(f, *fx.brfp, fx.alpha, opts.julia_samples, mix_seed(seed, index++));
        out.push_back(CheckResult{pre + "julia-at-brfp", jr.violations == 0, jr.samples, jr.violations,
                                  jr.max_tightness, {}});
        if (orbit.limit && !orbit.limit->at_infinity()) {
            const BoundaryPoint b = fx.brfp->model() == Model::ball ? frame_boundary_to_siegel(f, *fx.brfp) : *fx.brfp;
            const double gap = b.at_infinity() ? INFINITY : max_abs_diff(orbit.limit->v(), b.v());
            out.push_back(single(pre + "orbit-limit", gap <= 1e-6, gap));
            if (orbit.points.size() >= 5) {
                const AsymptoticsReport as =
                    orbit_asymptotics(orbit, SiegelAutomorphism::recentering(orbit.limit->v()), 1e-6);
                const bool ok = as.re_ok && as.im_ok && as.w_ok && std::abs(as.t_ratio.back() - fx.alpha) <= 1e-6;
                out.push_back(single(pre + "asymptotics", ok, std::abs(as.t_ratio.back() - fx.alpha)));
            }
        }
    }
    if (fx.dw && fx.c) {
        const JuliaReport jr = julia_inclusion_check(f, *fx.dw, *fx.c, opts.julia_samples, mix_seed(seed, index++));
        out.push_back(CheckResult{pre + "julia-at-dw", jr.violations == 0, jr.samples, jr.violations,
                                  jr.max_tightness, {}});
    }
}

} // namespace

SuiteReport run_verify_suite(const std::vector<Fixture>& fixtures, std::uint64_t seed, const SuiteOptions& opts) {
    SuiteReport rep;
    rep.seed = seed;
    std::size_t index = 0;
    auto next_rng = [&] { return Rng(mix_seed(seed, index++)); };
    const std::size_t n = opts.property_samples;

    for (std::size_t dim : {2u, 3u}) {
        Rng rng = next_rng();
        rep.checks.push_back(
            from_property("metric-consistency:N=" + std::to_string(dim), check_metric_consistency(rng, n, dim)));
    }
    for (std::size_t dim : {2u, 3u}) {
        Rng rng = next_rng();
        rep.checks.push_back(
            from_property("automorphism-isometry:N=" + std::to_string(dim), check_automorphism_isometry(rng, n, dim)));
    }
    for (std::size_t dim : {1u, 2u, 3u}) {
        Rng rng = next_rng();
        rep.checks.push_back(
            from_property("distance-ratio-bound:N=" + std::to_string(dim), check_distance_ratio_bound(rng, n, dim)));
    }
    {
        Rng rng = next_rng();
        rep.checks.push_back(from_property("horosphere-cayley", check_horosphere_correspondence(rng, n, 2)));
    }
    {
        Rng rng = next_rng();
        rep.checks.push_back(from_property("batch-kernel-equivalence", check_kernel_equivalence(rng, n)));
    }
    {
        Rng rng = next_rng();
        rep.checks.push_back(from_property("quadratic-iterate", check_quadratic_iterates(rng, 5, 20, 20)));
    }
    {
        Rng rng = next_rng();
        rep.checks.push_back(from_property("quadratic-inverse", check_quadratic_inverse(rng, std::min<std::size_t>(n, 1000))));
    }
    for (const auto& fx : fixtures) run_fixture(fx, seed, index, opts, rep.checks);
    return rep;
}

Json to_json(const SuiteReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json j{{"name", c.name},
               {"pass", c.pass},
               {"samples", c.samples},
               {"violations", c.violations},
               {"worst", format_double(c.worst)}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(j);
    }
    return Json{{"seed", r.seed}, {"all_pass", r.all_pass()}, {"checks", checks}};
}

} // namespace siegel
