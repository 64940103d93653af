#include "siegel/conjugation.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/errors.hpp"

namespace siegel {

std::string to_string(ConjugationVariant v) { return v == ConjugationVariant::basic ? "basic" : "expandable"; }

ConjugationModel ConjugationModel::basic(double alpha, std::size_t dim) {
    if (!(alpha > 1.0)) throw InvalidParameter("conjugation: alpha must exceed 1");
    ConjugationModel m;
    m.alpha = alpha;
    m.omega = CVector(dim - 1);
    for (auto& o : m.omega) o = 1.0;
    m.rotating.assign(dim - 1, false);
    return m;
}

ConjugationModel ConjugationModel::expandable(const ExpandableData& e) {
    ConjugationModel m;
    m.alpha = e.alpha;
    m.variant = ConjugationVariant::expandable;
    m.omega = e.omega;
    m.rotating = e.rotating;
    m.L = e.L;
    return m;
}

SiegelAutomorphism ConjugationModel::eta(int k) const {
    CVector lambda = omega;
    for (auto& l : lambda) l = std::pow(l, k) * std::pow(alpha, 0.5 * k);
    return SiegelAutomorphism::linear_diag(std::pow(alpha, k), lambda);
}

CVector ConjugationModel::project(const CVector& c) const {
    CVector out = c;
    for (std::size_t j = 1; j < c.size(); ++j)
        if (!rotating[j - 1]) out[j] = 0.0;
    return out;
}

std::vector<SiegelPoint> default_grid(std::size_t dim) {
    std::vector<SiegelPoint> grid;
    const Complex offsets[] = {0.0, 0.3, -0.3, Complex(0, 0.3), Complex(0, -0.3)};
    for (int i = 0; i < 5; ++i) {
        const double x = 0.1 * std::pow(100.0, i / 4.0);
        for (const Complex o : offsets) {
            CVector w(dim - 1);
            if (dim > 1) w[0] = o * std::sqrt(x);
            grid.emplace_back(Complex(x, 0.0), w);
        }
    }
    return grid;
}

SiegelAutomorphism build_tau(const BackwardOrbit& orbit, int n, const ConjugationModel& model) {
    if (n < 0 || static_cast<std::size_t>(n) >= orbit.points.size())
        throw InvalidParameter("build_tau: index " + std::to_string(n) + " outside the orbit");
    const SiegelPoint& zn = orbit.points[static_cast<std::size_t>(n)];
    const SiegelAutomorphism h = SiegelAutomorphism::translation(zn.z().imag(), zn.w());
    const SiegelAutomorphism delta_inv = SiegelAutomorphism::dilation(1.0 / zn.defect());
    CVector rot = model.omega;
    for (auto& r : rot) r = std::pow(std::conj(r), n);
    return compose(invert(h), compose(SiegelAutomorphism::rotation(rot), delta_inv));
}

TauDiagnostics tau_limit_diagnostics(const BackwardOrbit& orbit, const ConjugationModel& model, int k,
                                     const std::vector<SiegelPoint>& grid, int burn_in) {
    if (k < 0) throw InvalidParameter("tau_limit_diagnostics: k must be >= 0");
    TauDiagnostics d;
    const SiegelAutomorphism eta_k = model.eta(k);
    const SiegelAutomorphism eta_inv = model.eta(-1);
    const int len = static_cast<int>(orbit.points.size());
    for (int n = 0; n + std::max(k, 1) < len; ++n) {
        const SiegelAutomorphism tn = build_tau(orbit, n, model);
        const SiegelAutomorphism shift = compose(invert(build_tau(orbit, n + k, model)), tn);
        const SiegelAutomorphism step = compose(invert(build_tau(orbit, n + 1, model)), compose(eta_inv, tn));
        double e1 = 0.0, e2 = 0.0;
        for (const auto& z : grid) {
            e1 = std::max(e1, dist_siegel(shift.apply(z), eta_k.apply(z)));
            e2 = std::max(e2, dist_siegel(step.apply(z), z));
        }
        d.shift_error.push_back(e1);
        d.step_error.push_back(e2);
    }
    auto tail_non_increasing = [&](const std::vector<double>& v) {
        for (std::size_t i = static_cast<std::size_t>(burn_in) + 1; i < v.size(); ++i)
            if (v[i] > v[i - 1] + 1e-12) return false;
        return true;
    };
    d.decreasing = tail_non_increasing(d.shift_error) && tail_non_increasing(d.step_error);
    return d;
}

SiegelPoint psi_eval(const MapDescriptor& f, const BackwardOrbit& orbit, const ConjugationModel& model, int n,
                     const SiegelPoint& z) {
    const SiegelAutomorphism tau = build_tau(orbit, n, model);
    const CVector start = tau.apply_coords(model.project(z.coords()));
    if (!in_siegel_domain(start)) throw DomainError("psi_eval: tau_n(p(Z)) left the domain");
    SiegelPoint cur = SiegelPoint::from_coords(start);
    for (int k = 0; k < n; ++k) {
        const CVector next = evaluate_coords(f, cur.coords());
        if (!in_siegel_domain(next)) throw DomainError("psi_eval: iterate left the domain");
        cur = SiegelPoint::from_coords(next);
    }
    return cur;
}

std::vector<std::pair<SiegelPoint, SiegelPoint>> psi_approx(const ConjugationRun& run, int n) {
    std::vector<std::pair<SiegelPoint, SiegelPoint>> out;
    for (const auto& z : run.grid) out.emplace_back(z, psi_eval(run.f, run.orbit, run.model, n, z));
    return out;
}

double conjugation_residual(const ConjugationRun& run, int n) {
    const SiegelAutomorphism eta = run.model.eta(1);
    double r = 0.0;
    for (const auto& z : run.grid) {
        const SiegelPoint lhs = psi_eval(run.f, run.orbit, run.model, n, eta.apply(z));
        const SiegelPoint rhs = evaluate(run.f, psi_eval(run.f, run.orbit, run.model, n, z));
        r = std::max(r, dist_siegel(lhs, rhs));
    }
    return r;
}

std::vector<double> psi_interpolation_check(const ConjugationRun& run, int n, int k_max) {
    std::vector<double> err;
    const std::size_t dim = run.f.dim();
    for (int k = 0; k <= k_max && static_cast<std::size_t>(k) < run.orbit.points.size(); ++k) {
        const SiegelPoint ak(Complex(std::pow(run.model.alpha, -k), 0.0), CVector(dim - 1));
        err.push_back(dist_siegel(psi_eval(run.f, run.orbit, run.model, n, ak),
                                  run.orbit.points[static_cast<std::size_t>(k)]));
    }
    return err;
}

double g_diagnostic(const ConjugationRun& run, int n, int m) {
    const SiegelAutomorphism tau_inv = invert(build_tau(run.orbit, m, run.model));
    const SiegelAutomorphism eta_inv = run.model.eta(-m);
    double e = 0.0;
    for (const auto& z : run.grid) {
        try {
            const SiegelPoint g = tau_inv.apply(psi_eval(run.f, run.orbit, run.model, n, eta_inv.apply(z)));
            e = std::max(e, dist_siegel(g, SiegelPoint::from_coords(run.model.project(z.coords()))));
        } catch (const DomainError&) {
        }
    }
    return e;
}

BackwardOrbit recenter_orbit(const BackwardOrbit& orbit, const SiegelAutomorphism& by) {
    BackwardOrbit out = orbit;
    for (auto& p : out.points) p = by.apply(p);
    summarize_backward_orbit(out);
    return out;
}

ConjugationRun run_conjugation(const MapDescriptor& f, BackwardOrbit orbit, const ConjugationModel& model,
                               std::vector<SiegelPoint> grid, int n_max) {
    if (orbit.points.empty()) throw InvalidParameter("run_conjugation: empty orbit");
    if (orbit.points.front().dim() != f.dim()) throw DimensionMismatch("run_conjugation: orbit dimension");
    SiegelAutomorphism recenter;
    if (orbit.limit && !orbit.limit->at_infinity() && norm(orbit.limit->v()) > 0.0)
        recenter = SiegelAutomorphism::recentering(orbit.limit->v());
    ConjugationRun run{recenter.is_identity() ? f : MapDescriptor::conjugated(f, recenter),
                       recenter,
                       recenter.is_identity() ? std::move(orbit) : recenter_orbit(orbit, recenter),
                       model,
                       std::move(grid),
                       {},
                       {},
                       {},
                       {}};
    n_max = std::min<int>(n_max, static_cast<int>(run.orbit.points.size()) - 1);
    for (int n = 0; n <= n_max; ++n) {
        run.psi_samples.push_back(psi_approx(run, n));
        run.residuals.push_back(conjugation_residual(run, n));
    }
    run.interp_errors = psi_interpolation_check(run, n_max, std::min(n_max / 2, 10));
    for (int m = 0; m <= n_max; ++m) run.g_errors.push_back(g_diagnostic(run, n_max, m));
    return run;
}

SpecialConstruction special_backward_construct(const MapDescriptor& f, const BoundaryPoint& q_in, double alpha,
                                               double exclusion_radius, int n, const SolverPolicy& solver) {
    if (!(alpha > 1.0)) throw InvalidParameter("special_backward_construct: alpha must exceed 1");
    if (!(exclusion_radius > 0.0 && exclusion_radius <= 2.0))
        throw InvalidParameter("special_backward_construct: exclusion radius must lie in (0, 2]");
    const BoundaryPoint q = q_in.model() == Model::ball ? frame_boundary_to_siegel(f, q_in) : q_in;
    if (q.at_infinity())
        throw InvalidParameter("special_backward_construct: q at infinity; conjugate the map so that q is finite");

    SpecialConstruction sc;
    sc.a = (alpha - 1.0) / (alpha + 1.0);
    // The horosphere through the axis point (alpha^{-k}, 0) has ball radius
    // R = alpha^{-k} and lies within Euclidean distance 2R of q.
    sc.n0 = std::max(0, static_cast<int>(std::ceil(std::log(2.0 / exclusion_radius) / std::log(alpha))));

    const SiegelAutomorphism recenter = SiegelAutomorphism::recentering(q.v());
    const MapDescriptor g = recenter.is_identity() ? f : MapDescriptor::conjugated(f, recenter);
    const std::size_t dim = f.dim();

    for (int k = sc.n0; k <= sc.n0 + n; ++k) {
        const SiegelPoint r(Complex(std::pow(alpha, -k), 0.0), CVector(dim - 1));
        const CVector fr = evaluate_coords(g, r.coords());
        sc.axis_displacements.push_back(in_siegel_domain(fr) ? dist_siegel(r, SiegelPoint::from_coords(fr)) : 1.0);
    }

    const SiegelPoint seed(Complex(std::pow(alpha, -sc.n0), 0.0), CVector(dim - 1));
    BackwardOrbit orbit = backward_orbit(g, seed, sc.a + 1e-9, n, solver);
    if (orbit.status != OrbitStatus::complete)
        throw ConstructionFailed("special_backward_construct: orbit stopped after " +
                                 std::to_string(orbit.points.size() - 1) + " steps (" + orbit.status_message +
                                 "); step bound " + std::to_string(sc.a));
    if (!recenter.is_identity()) {
        orbit = recenter_orbit(orbit, invert(recenter));
    }
    sc.orbit = std::move(orbit);
    return sc;
}

} // namespace siegel
