#include "siegel/solver.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace siegel {

namespace {

Eigen::VectorXd to_real(const CVector& c) {
    Eigen::VectorXd x(2 * c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        x(2 * j) = c[j].real();
        x(2 * j + 1) = c[j].imag();
    }
    return x;
}

CVector to_complex(const Eigen::VectorXd& x) {
    CVector c(static_cast<std::size_t>(x.size() / 2));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = Complex(x(2 * j), x(2 * j + 1));
    return c;
}

} // namespace

NewtonResult newton_preimage(const MapDescriptor& f, const SiegelPoint& target, const CVector& seed,
                             const SolverPolicy& policy) {
    const std::size_t n = target.dim();
    const CVector tc = target.coords();
    const double t = target.defect();

    Eigen::VectorXd scale(2 * n);
    scale(0) = scale(1) = std::max(std::abs(tc[0]), t);
    for (std::size_t j = 1; j < n; ++j) scale(2 * j) = scale(2 * j + 1) = std::max(std::abs(tc[j]), std::sqrt(t));

    auto residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
        const CVector fx = evaluate_coords(f, to_complex(x));
        if (!fx.is_finite()) return false;
        r = (to_real(fx) - to_real(tc)).cwiseQuotient(scale);
        return true;
    };

    NewtonResult out;
    Eigen::VectorXd x = to_real(seed);
    Eigen::VectorXd r;
    if (!residual(x, r)) {
        out.point = seed;
        out.residual = INFINITY;
        return out;
    }
    double rn = r.lpNorm<Eigen::Infinity>();

    // A few polishing iterations past the tolerance bring the residual down to
    // rounding level; they stop as soon as a step fails to improve it.
    int polish = 0;
    for (int it = 0; it < policy.max_iterations && polish < 3; ++it) {
        if (rn <= policy.residual_tol) ++polish;
        out.iterations = it + 1;
        // Finite-difference steps follow the local scales of the current iterate.
        const CVector cur = to_complex(x);
        const double tc_cur = std::max(std::abs(defect_of(cur)), 1e-300);
        Eigen::VectorXd h(2 * n);
        h(0) = policy.fd_relative_step * std::max(tc_cur, 1e-3 * std::abs(cur[0].real()));
        h(1) = policy.fd_relative_step * std::max(std::abs(cur[0].imag()), tc_cur);
        for (std::size_t j = 1; j < n; ++j)
            h(2 * j) = h(2 * j + 1) = policy.fd_relative_step * std::max(std::sqrt(tc_cur), 1e-3 * std::abs(cur[j]));

        Eigen::MatrixXd J(2 * n, 2 * n);
        bool ok = true;
        for (std::size_t k = 0; k < 2 * n && ok; ++k) {
            Eigen::VectorXd xp = x, xm = x, rp, rm;
            xp(k) += h(k);
            xm(k) -= h(k);
            ok = residual(xp, rp) && residual(xm, rm);
            if (ok) J.col(k) = (rp - rm) / (2.0 * h(k));
        }
        if (!ok) break;

        const Eigen::VectorXd dx = J.fullPivLu().solve(-r);
        if (!dx.allFinite()) break;

        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k <= policy.max_halvings; ++k, lambda *= 0.5) {
            Eigen::VectorXd xn = x + lambda * dx, rnew;
            if (residual(xn, rnew) && rnew.lpNorm<Eigen::Infinity>() < rn) {
                x = xn;
                r = rnew;
                rn = rnew.lpNorm<Eigen::Infinity>();
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    out.point = to_complex(x);
    out.residual = rn;
    out.converged = rn <= policy.residual_tol;
    return out;
}

} // namespace siegel
