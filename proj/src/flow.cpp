#include "rdslab/error.hpp"
#include "rdslab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace rdslab {

void check_noise(const System &sys, const CellView &noise, std::int64_t from, std::int64_t to) {
    if (std::abs(noise.dt - sys.dt()) > 1e-12 * sys.dt())
        throw Error(ErrorCode::precondition, "noise dt does not match system dt");
    if (noise.dim != sys.noise_dim())
        throw Error(ErrorCode::precondition, "noise dimension " + std::to_string(noise.dim) +
                                                 " does not match system noise dimension " +
                                                 std::to_string(sys.noise_dim()));
    if (to < from) throw Error(ErrorCode::precondition, "negative integration time");
    if (!noise.covers(from, to))
        throw Error(ErrorCode::out_of_window, "integration cells [" + std::to_string(from) + ", " + std::to_string(to) +
                                                  ") not covered by noise cells [" + std::to_string(noise.first) +
                                                  ", " + std::to_string(noise.end) + ")");
}

namespace {
void check_state(const System &sys, const State &x) {
    if (x.size() != sys.dim())
        throw Error(ErrorCode::precondition, "state has dimension " + std::to_string(x.size()) + ", system expects " +
                                                 std::to_string(sys.dim()));
}
} // namespace

void advance(const System &sys, const CellView &noise, std::span<State> states, std::int64_t from, std::int64_t to) {
    check_noise(sys, noise, from, to);
    for (auto &x : states) {
        check_state(sys, x);
        for (std::int64_t k = from; k < to; ++k) sys.step(x, noise.cell(k));
    }
}

State flow(const System &sys, const CellView &noise, State x0, double t) {
    const auto n = sys.steps(t);
    advance(sys, noise, std::span<State>(&x0, 1), 0, n);
    return x0;
}

std::pair<State, State> flow_pair(const System &sys, const CellView &noise, State x0, State y0, double t) {
    const auto n = sys.steps(t);
    State xs[2] = {std::move(x0), std::move(y0)};
    advance(sys, noise, xs, 0, n);
    return {std::move(xs[0]), std::move(xs[1])};
}

TangentFlow flow_with_tangent(const System &sys, const CellView &noise, State x0, Eigen::MatrixXd v0, double t) {
    if (!sys.has_jacobian()) throw Error(ErrorCode::unsupported, "system '" + sys.name() + "' has no Jacobian stepper");
    check_state(sys, x0);
    if (v0.rows() != sys.dim() || v0.cols() < 1)
        throw Error(ErrorCode::precondition, "tangent matrix must be dim x k with k >= 1");
    const auto n = sys.steps(t);
    check_noise(sys, noise, 0, n);
    for (std::int64_t k = 0; k < n; ++k) sys.step_tangent(x0, v0, noise.cell(k));
    return {std::move(x0), std::move(v0)};
}

void write_trajectory_csv(std::ostream &os, const System &sys, std::span<const double> times,
                          std::span<const State> states) {
    if (times.size() != states.size()) throw Error(ErrorCode::precondition, "times and states differ in length");
    os << "t";
    if (sys.state_space() == StateSpace::circle) {
        os << ",angle";
    } else {
        for (int j = 1; j <= sys.dim(); ++j) os << ",x_" << j;
    }
    os << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << times[i];
        for (Eigen::Index j = 0; j < states[i].size(); ++j) os << ',' << states[i][j];
        os << '\n';
    }
}

void advance_sampled(const System &sys, const SeedLineage &seed, NoiseMode mode, std::span<State> states,
                     std::int64_t from, std::int64_t to) {
    constexpr std::int64_t kChunk = 1 << 14;
    for (std::int64_t a = from; a < to; a += kChunk) {
        const std::int64_t b = std::min(to, a + kChunk);
        // Relative cells [0, b - a) of this chunk are absolute cells [a, b).
        const Noise noise = mode == NoiseMode::zero ? sys.zero_noise(0, b - a) : sys.sample_noise(seed, 0, b - a, a);
        advance(sys, cells(noise), states, 0, b - a);
    }
}

} // namespace rdslab
