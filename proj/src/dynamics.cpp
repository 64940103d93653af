#include "siegel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "siegel/errors.hpp"
#include "siegel/numeric_policy.hpp"
#include "siegel/sampling.hpp"

namespace siegel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundaryPoint to_frame_siegel(const MapDescriptor& f, const BoundaryPoint& q) {
    return q.model() == Model::ball ? frame_boundary_to_siegel(f, q) : q;
}

BoundaryPoint siegel_boundary_to_ball(const BoundaryPoint& s, bool flipped) {
    BoundaryPoint b = boundary_to_ball(s);
    if (!flipped) return b;
    CVector v = b.v();
    v[0] = -v[0];
    return BoundaryPoint::ball(v);
}

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Koranyi ratio at infinity, in the standard ball picture where infinity is (1, 0).
double koranyi_ratio_at_infinity(const SiegelPoint& p) {
    const double one_minus_sq = ball_one_minus_norm_sq(p);
    const double one_minus_norm = one_minus_sq / (1.0 + std::sqrt(std::max(0.0, 1.0 - one_minus_sq)));
    return (2.0 / std::abs(p.z() + 1.0)) / one_minus_norm;
}

} // namespace

CVector siegel_inversion(const CVector& c) {
    CVector out(c.size());
    out[0] = 1.0 / c[0];
    for (std::size_t j = 1; j < c.size(); ++j) out[j] = c[j] / c[0];
    return out;
}

// ---- forward -----------------------------------------------------------------

ForwardOrbit forward_orbit(const MapDescriptor& f, const SiegelPoint& z0, int n_max, double tol) {
    if (!(tol > 0.0)) throw InvalidParameter("forward_orbit: tol must be positive");
    ForwardOrbit out;
    out.points.push_back(z0);
    auto near_sphere = [&](const SiegelPoint& p) { return ball_one_minus_norm_sq(p) < tol; };
    for (int k = 0; k < n_max; ++k) {
        const SiegelPoint& cur = out.points.back();
        if (near_sphere(cur)) {
            out.converged = true;
            break;
        }
        const CVector next = evaluate_coords(f, cur.coords());
        if (!in_siegel_domain(next)) {
            // The defect underflowed: numerically on the boundary already.
            out.converged = true;
            break;
        }
        out.points.push_back(SiegelPoint::from_coords(next));
        const double d = dist_siegel(cur, out.points.back());
        out.steps.push_back(d);
        if (d < tol) {
            out.converged = true;
            out.interior_limit = out.points.back();
            break;
        }
    }
    const SiegelPoint& last = out.points.back();
    if (!out.interior_limit) {
        if (std::abs(last.z()) > 1.0 / std::sqrt(tol))
            out.dw_estimate = BoundaryPoint::siegel_infinity(last.dim());
        else {
            CVector q = boundary_projection(last);
            q[0] = Complex(norm_sq(tail(q)), q[0].imag());
            out.dw_estimate = BoundaryPoint::siegel(q);
        }
    }
    return out;
}

// ---- multiplier ----------------------------------------------------------------

MultiplierEstimate estimate_multiplier(const MapDescriptor& f, const BoundaryPoint& q_in, double decay,
                                       int n_samples) {
    if (!(decay > 0.0 && decay < 1.0)) throw InvalidParameter("multiplier: decay must lie in (0, 1)");
    if (n_samples < 3) throw InvalidParameter("multiplier: need at least 3 samples");
    const BoundaryPoint q = to_frame_siegel(f, q_in);
    if (q.dim() != f.dim()) throw DimensionMismatch("multiplier: boundary point dimension");

    MultiplierEstimate est;
    double s = 1.0;
    for (int k = 1; k <= n_samples; ++k) {
        s *= decay;
        double ratio;
        if (q.at_infinity()) {
            CVector z(f.dim());
            z[0] = 1.0 / s;
            const CVector fz = evaluate_coords(f, z);
            const double tf = defect_of(fz);
            ratio = tf > 0.0 ? defect_of(z) / tf : kInf;
        } else {
            CVector z = q.v();
            z[0] += s;
            const double t = defect_of(z);
            const double tf = defect_of(evaluate_coords(f, z));
            ratio = tf / t;
        }
        if (!std::isfinite(ratio) || ratio <= 0.0) ratio = kInf;
        est.ratios.push_back(ratio);
    }
    est.min_ratio = *std::min_element(est.ratios.begin(), est.ratios.end());

    const double last = est.ratios.back();
    if (!std::isfinite(last) || last > 1e12) {
        est.value = kInf;
        return est;
    }
    // Richardson on r_k = alpha + c s_k: e_k = (r_k - decay r_{k-1}) / (1 - decay).
    // The extrapolant taken is the one where successive e_k agree best, which
    // sits between truncation error (early k) and rounding (late k).
    std::vector<double> e;
    for (std::size_t k = 1; k < est.ratios.size(); ++k)
        e.push_back((est.ratios[k] - decay * est.ratios[k - 1]) / (1.0 - decay));
    double best = kInf;
    est.value = e.back();
    for (std::size_t k = 1; k < e.size(); ++k) {
        const double diff = std::abs(e[k] - e[k - 1]);
        if (std::isfinite(diff) && diff < best) {
            best = diff;
            est.value = e[k];
        }
    }
    return est;
}

double multiplier_at_boundary(const MapDescriptor& f, const BoundaryPoint& q, double decay, int n_samples) {
    return estimate_multiplier(f, q, decay, n_samples).value;
}

// ---- backward ------------------------------------------------------------------

SiegelPoint backward_step(const MapDescriptor& f, const SiegelPoint& zn, double a, const SolverPolicy& solver) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidParameter("backward_step: step bound must lie in (0, 1)");
    if (zn.dim() != f.dim()) throw DimensionMismatch("backward_step: point dimension");

    std::vector<CVector> candidates;
    if (solver.use_closed_form)
        if (auto inv = closed_form_inverse(f, zn.coords())) candidates.push_back(inv->point);

    if (candidates.empty()) {
        const double t = zn.defect();
        std::vector<CVector> seeds{zn.coords()};
        CVector pushed = zn.coords();
        pushed[0] -= 0.5 * t;
        seeds.push_back(pushed);
        double best_residual = kInf;
        for (const auto& seed : seeds) {
            const NewtonResult r = newton_preimage(f, zn, seed, solver);
            best_residual = std::min(best_residual, r.residual);
            if (r.converged) candidates.push_back(r.point);
        }
        if (candidates.empty())
            throw SolverFailure("backward_step: Newton did not converge", best_residual);
    }

    std::optional<SiegelPoint> best;
    double best_step = kInf;
    for (const auto& c : candidates) {
        if (!in_siegel_domain(c)) continue;
        const SiegelPoint p = SiegelPoint::from_coords(c);
        const double d = dist_siegel(zn, p);
        if (d > a + 1e-14) continue;
        const bool tie = std::abs(d - best_step) <= 1e-12;
        if (!best || (tie ? p.defect() < best->defect() : d < best_step)) {
            best = p;
            best_step = d;
        }
    }
    if (!best) throw NoBackwardStep("backward_step: no preimage in the domain within step bound");
    return *best;
}

std::string to_string(OrbitStatus s) {
    switch (s) {
    case OrbitStatus::complete: return "complete";
    case OrbitStatus::no_backward_step: return "no-backward-step";
    case OrbitStatus::solver_failure: return "solver-failure";
    }
    return "unknown";
}

BackwardOrbit backward_orbit(const MapDescriptor& f, const SiegelPoint& z0, double a, int n,
                             const SolverPolicy& solver) {
    if (n < 0) throw InvalidParameter("backward_orbit: n must be >= 0");
    if (!(a > 0.0 && a < 1.0)) throw InvalidParameter("backward_orbit: step bound must lie in (0, 1)");
    BackwardOrbit orbit;
    orbit.step_bound = a;
    orbit.flipped_frame = f.flipped_frame();
    orbit.points.push_back(z0);
    for (int k = 0; k < n; ++k) {
        try {
            SiegelPoint next = backward_step(f, orbit.points.back(), a, solver);
            orbit.steps.push_back(dist_siegel(orbit.points.back(), next));
            orbit.points.push_back(std::move(next));
        } catch (const NoBackwardStep& e) {
            orbit.status = OrbitStatus::no_backward_step;
            orbit.status_message = e.what();
            break;
        } catch (const SolverFailure& e) {
            orbit.status = OrbitStatus::solver_failure;
            orbit.status_message = e.what();
            break;
        }
    }
    summarize_backward_orbit(orbit);
    return orbit;
}

void summarize_backward_orbit(BackwardOrbit& orbit) {
    orbit.defects.clear();
    for (const auto& p : orbit.points) orbit.defects.push_back(p.defect());
    if (orbit.points.size() < 2) return;

    std::vector<double> ratios;
    for (std::size_t k = 0; k + 1 < orbit.defects.size(); ++k) ratios.push_back(orbit.defects[k] / orbit.defects[k + 1]);
    const std::size_t quarter = std::max<std::size_t>(1, ratios.size() / 4);
    orbit.multiplier_estimate = median(std::vector<double>(ratios.end() - static_cast<std::ptrdiff_t>(quarter), ratios.end()));

    const SiegelPoint& last = orbit.points.back();
    const SiegelPoint& prev = orbit.points[orbit.points.size() - 2];
    const std::size_t dim = last.dim();
    if (std::abs(last.z()) > 1e6 && std::abs(last.z()) > std::abs(prev.z())) {
        orbit.limit = BoundaryPoint::siegel_infinity(dim);
        orbit.koranyi_certificate = 0.0;
        for (const auto& p : orbit.points)
            orbit.koranyi_certificate = std::max(orbit.koranyi_certificate, koranyi_ratio_at_infinity(p));
    } else {
        const std::size_t m = std::min<std::size_t>(5, orbit.points.size());
        CVector q(dim);
        for (std::size_t k = orbit.points.size() - m; k < orbit.points.size(); ++k)
            q += boundary_projection(orbit.points[k]);
        q *= 1.0 / static_cast<double>(m);
        q[0] = Complex(norm_sq(tail(q)), q[0].imag());
        orbit.limit = BoundaryPoint::siegel(q);
        orbit.koranyi_certificate = 0.0;
        for (const auto& p : orbit.points)
            orbit.koranyi_certificate = std::max(orbit.koranyi_certificate, koranyi_ratio_siegel(p, q));
    }
    orbit.limit_ball = siegel_boundary_to_ball(*orbit.limit, orbit.flipped_frame);
}

DefectDecayReport verify_defect_decay(const BackwardOrbit& orbit, double c) {
    if (!(c > 0.0)) throw InvalidParameter("verify_defect_decay: c must be positive");
    DefectDecayReport r;
    r.worst_margin = kInf;
    const auto& t = orbit.defects;
    for (std::size_t n = 0; n < t.size(); ++n) {
        double ck = 1.0;
        for (std::size_t m = n + 1; m < t.size(); ++m) {
            ck *= c;
            const double bound = ck * t[n];
            const double margin = 1.0 - t[m] / bound;
            ++r.pairs;
            r.worst_margin = std::min(r.worst_margin, margin);
            if (t[m] > bound * (1.0 + 1e-12)) ++r.violations;
        }
    }
    if (r.pairs == 0) r.worst_margin = 0.0;
    r.ok = r.violations == 0;
    return r;
}

// ---- Julia -------------------------------------------------------------------

JuliaReport julia_inclusion_check(const MapDescriptor& f, const BoundaryPoint& x_in, double alpha, int n_samples,
                                  std::uint64_t seed) {
    if (!(alpha > 0.0)) throw InvalidParameter("julia_inclusion_check: alpha must be positive");
    const BoundaryPoint x = to_frame_siegel(f, x_in);
    const std::size_t dim = f.dim();
    Rng rng(seed);
    JuliaReport rep;
    rep.alpha = alpha;
    rep.seed = seed;
    constexpr int kGrid = 20;
    const double slack = 1e-12;

    const SiegelAutomorphism recenter =
        x.at_infinity() ? SiegelAutomorphism::identity() : SiegelAutomorphism::recentering(x.v());
    const SiegelAutomorphism back = invert(recenter);

    for (int i = 0; i < n_samples; ++i) {
        const double grid = static_cast<double>(i % kGrid) / (kGrid - 1); // in [0, 1]
        ++rep.samples;
        if (x.at_infinity()) {
            // Level t of the horosphere { defect > t }, log-spaced over [1e-3, 1e3].
            const double t = std::pow(10.0, -3.0 + 6.0 * grid) * rng.uniform(1.0, 2.0);
            CVector w = std::sqrt(t) * rng.log_uniform(0.1, 10.0) * random_unit_vector(rng, dim - 1);
            if (dim == 1) w = CVector();
            const double y = t * rng.normal() * rng.log_uniform(0.1, 10.0);
            const SiegelPoint p(Complex(t + norm_sq(w), y), w);
            const double tf = defect_of(evaluate_coords(f, p.coords()));
            const double tight = (t / alpha) / tf;
            rep.max_tightness = std::max(rep.max_tightness, tf > 0.0 ? tight : kInf);
            if (!(tf >= (t / alpha) * (1.0 - slack))) ++rep.violations;
        } else {
            // Point of the recentred horosphere { |z|^2 < R t }.
            const double R = std::pow(10.0, -2.0 + 4.0 * grid);
            const double t = R * rng.uniform(1e-3, 1.0);
            const double m = std::sqrt(R * t * rng.uniform(t / R, 1.0));
            const double re = t + (m - t) * rng.uniform();
            const double w_norm = std::sqrt(re - t);
            const double y = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, m * m - re * re));
            CVector w = dim > 1 ? w_norm * random_unit_vector(rng, dim - 1) : CVector();
            const SiegelPoint p = back.apply(SiegelPoint(Complex(re, y), w));
            const double rho = horosphere_ratio_siegel(p, x.v());
            const CVector fp = evaluate_coords(f, p.coords());
            if (!in_siegel_domain(fp)) {
                ++rep.violations;
                rep.max_tightness = kInf;
                continue;
            }
            const double rho_f = horosphere_ratio_siegel(SiegelPoint::from_coords(fp), x.v());
            rep.max_tightness = std::max(rep.max_tightness, rho_f / (alpha * rho));
            if (rho_f > alpha * rho * (1.0 + slack)) ++rep.violations;
        }
    }
    return rep;
}

// ---- asymptotics ---------------------------------------------------------------

AsymptoticsReport orbit_asymptotics(const BackwardOrbit& orbit, const SiegelAutomorphism& recenter, double tol) {
    if (orbit.points.size() < 5) throw OrbitTooShort("orbit_asymptotics: need at least 5 points");
    AsymptoticsReport r;
    r.alpha = orbit.multiplier_estimate;
    std::vector<double> t;
    for (const auto& p : orbit.points) {
        const SiegelPoint q = recenter.apply(p);
        const double tq = q.defect();
        t.push_back(tq);
        r.re_z_over_t.push_back(q.z().real() / tq);
        r.im_z_over_t.push_back(q.z().imag() / tq);
        r.w_sq_over_t.push_back(norm_sq(q.w()) / tq);
        r.w_sq_over_re_z.push_back(norm_sq(q.w()) / q.z().real());
    }
    for (std::size_t k = 0; k + 1 < t.size(); ++k) r.t_ratio.push_back(t[k] / t[k + 1]);
    r.re_ok = std::abs(r.re_z_over_t.back() - 1.0) <= tol;
    r.im_ok = std::abs(r.im_z_over_t.back()) <= tol;
    r.w_ok = std::abs(r.w_sq_over_t.back()) <= tol;
    r.t_ok = std::abs(r.t_ratio.back() - r.alpha) <= tol;
    r.special = std::abs(r.w_sq_over_re_z.back()) <= tol;
    return r;
}

// ---- elliptic growth -----------------------------------------------------------

EllipticGrowth elliptic_growth_constant(const MapDescriptor& f, double r0, int n_grid, int n_radii) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw InvalidParameter("elliptic_growth_constant: r0 must lie in (0, 1)");
    if (n_grid < 2 || n_radii < 1) throw InvalidParameter("elliptic_growth_constant: grid too small");
    const std::size_t dim = f.dim();
    if (norm(evaluate_ball(f, BallPoint(CVector(dim))).v()) > 1e-12)
        throw InvalidParameter("elliptic_growth_constant: map does not fix the origin");

    // Unit directions: full angular grid for N <= 2, seeded draws beyond.
    std::vector<CVector> dirs;
    const double two_pi = 2.0 * std::numbers::pi;
    if (dim == 1) {
        for (int i = 0; i < n_grid; ++i) dirs.push_back(CVector{std::polar(1.0, two_pi * i / n_grid)});
    } else if (dim == 2) {
        for (int a = 0; a < n_grid; ++a) {
            const double th = 0.5 * std::numbers::pi * a / (n_grid - 1);
            for (int b = 0; b < n_grid; ++b)
                for (int c = 0; c < n_grid; ++c)
                    dirs.push_back(CVector{std::polar(std::cos(th), two_pi * b / n_grid),
                                           std::polar(std::sin(th), two_pi * c / n_grid)});
        }
    } else {
        Rng rng(0x5eedULL);
        const int count = n_grid * n_grid * n_grid;
        for (int i = 0; i < count; ++i) dirs.push_back(random_unit_vector(rng, dim));
    }

    EllipticGrowth g;
    for (int i = 0; i < n_radii; ++i) {
        const double frac = n_radii == 1 ? 0.0 : static_cast<double>(i) / (n_radii - 1);
        const double r = 1.0 - (1.0 - r0) * std::pow(1e-6, frac);
        double M = 0.0;
        for (const auto& d : dirs) M = std::max(M, norm(evaluate_ball(f, BallPoint(r * d)).v()));
        g.radii.push_back(r);
        g.max_norm.push_back(M);
        g.c = std::max(g.c, M < 1.0 ? (1.0 - r) / (1.0 - M) : kInf);
    }
    g.apparent_non_elliptic = g.c >= 1.0 - 1e-9;
    return g;
}

// ---- angular -------------------------------------------------------------------

AngularReport angular_ratio_diagnostics(const MapDescriptor& f, const BoundaryPoint& q_in,
                                        const std::vector<SiegelPoint>& samples, double amplitude) {
    const BoundaryPoint q = to_frame_siegel(f, q_in);
    const SiegelAutomorphism recenter =
        q.at_infinity() ? SiegelAutomorphism::identity() : SiegelAutomorphism::recentering(q.v());
    auto normalize = [&](const CVector& c) {
        return q.at_infinity() ? siegel_inversion(c) : recenter.apply_coords(c);
    };
    AngularReport r;
    const CVector origin(f.dim());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const CVector z = normalize(samples[i].coords());
        const CVector fz = normalize(evaluate_coords(f, samples[i].coords()));
        if (!in_siegel_domain(z) || !in_siegel_domain(fz) ||
            !(koranyi_ratio_siegel(SiegelPoint::from_coords(z), origin) < amplitude)) {
            r.rejected.push_back(i);
            continue;
        }
        // Ball picture with q at (1, 0): 1 - pi_1 = 2z / (1 + z), pi' = 2w / (1 + z).
        const Complex one_minus = 2.0 * z[0] / (1.0 + z[0]);
        const Complex one_minus_f = 2.0 * fz[0] / (1.0 + fz[0]);
        r.ratio.push_back(std::abs(one_minus_f / one_minus));
        r.tangential.push_back(2.0 * norm(tail(fz)) / std::abs(1.0 + fz[0]) / std::sqrt(std::abs(one_minus)));
    }
    r.bounded = !r.ratio.empty();
    for (std::size_t i = 0; i < r.ratio.size(); ++i)
        r.bounded = r.bounded && std::isfinite(r.ratio[i]) && std::isfinite(r.tangential[i]) && r.ratio[i] < 1e6 &&
                    r.tangential[i] < 1e6;
    if (!r.ratio.empty()) {
        r.ratio_limit = r.ratio.back();
        r.tangential_limit = r.tangential.back();
    }
    return r;
}

} // namespace siegel
