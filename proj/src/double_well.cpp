#include "rdslab/error.hpp"
#include "rdslab/systems.hpp"

#include <cmath>

namespace rdslab {

DoubleWell::DoubleWell(int d, double dt, bool tamed) : d_(d), dt_(dt), tamed_(tamed) {
    if (d < 1) throw Error(ErrorCode::precondition, "double-well dimension must be >= 1");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::precondition, "dt must be positive");
}

State DoubleWell::drift(const State &y) { return (1.0 - y.squaredNorm()) * y; }

Eigen::MatrixXd DoubleWell::drift_jacobian(const State &y) {
    const auto d = y.size();
    Eigen::MatrixXd j = (1.0 - y.squaredNorm()) * Eigen::MatrixXd::Identity(d, d);
    j.noalias() -= 2.0 * y * y.transpose();
    return j;
}

std::vector<std::pair<std::string, double>> DoubleWell::params() const {
    return {{"d", static_cast<double>(d_)}, {"dt", dt_}, {"tamed", tamed_ ? 1.0 : 0.0}};
}

// Tamed Euler-Maruyama: u' = u + b(u) dt / (1 + dt |b(u)|) + dW.
void DoubleWell::step(State &x, std::span<const double> noise) const {
    const double r2 = x.squaredNorm();
    const double f = 1.0 - r2;
    const double c = tamed_ ? dt_ / (1.0 + dt_ * std::abs(f) * std::sqrt(r2)) : dt_;
    const double g = c * f;
    for (int i = 0; i < d_; ++i) x[i] = x[i] + g * x[i] + noise[static_cast<std::size_t>(i)];
}

// Exact derivative of the discrete step, so tangent and finite-difference flows agree
// to O(h) regardless of dt.
void DoubleWell::step_tangent(State &x, Eigen::MatrixXd &v, std::span<const double> noise) const {
    const double r2 = x.squaredNorm();
    const double f = 1.0 - r2;
    const double bnorm = std::abs(f) * std::sqrt(r2);
    const Eigen::MatrixXd jac = drift_jacobian(x);
    Eigen::MatrixXd dstep = Eigen::MatrixXd::Identity(d_, d_);
    if (tamed_) {
        const double denom = 1.0 + dt_ * bnorm;
        dstep += (dt_ / denom) * jac;
        if (bnorm > 0.0) {
            const State b = f * x;
            const double kappa = dt_ * dt_ / (denom * denom * bnorm);
            dstep.noalias() -= kappa * b * (b.transpose() * jac);
        }
    } else {
        dstep += dt_ * jac;
    }
    v = dstep * v;
    step(x, noise);
}

Noise DoubleWell::sample_noise(const SeedLineage &seed, std::int64_t first, std::int64_t end,
                               std::int64_t origin) const {
    return NoisePath::wiener_cells(seed, d_, dt_, first, end, origin);
}

Noise DoubleWell::zero_noise(std::int64_t first, std::int64_t end) const {
    return NoisePath::zero(d_, dt_, first, end);
}

} // namespace rdslab
