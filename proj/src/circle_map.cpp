#include "rdslab/error.hpp"
#include "rdslab/systems.hpp"

#include <cmath>
#include <numbers>

namespace rdslab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CircleMap::CircleMap(double eps_c) : eps_c_(eps_c) {
    if (!(eps_c > 0.0 && eps_c < 0.5))
        throw Error(ErrorCode::precondition, "circle map needs eps_c in (0, 1/2), got " + std::to_string(eps_c));
}

double CircleMap::wrap(double angle) noexcept {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double CircleMap::arc_distance(double a, double b) noexcept {
    const double d = std::abs(wrap(a) - wrap(b));
    return std::min(d, kTwoPi - d);
}

double CircleMap::step_angle(double x, double alpha, double eps_c) noexcept {
    return wrap(x + eps_c * std::sin(2.0 * (x - alpha)));
}

std::vector<std::pair<std::string, double>> CircleMap::params() const { return {{"eps_c", eps_c_}}; }

void CircleMap::step(State &x, std::span<const double> noise) const { x[0] = step_angle(x[0], noise[0], eps_c_); }

void CircleMap::step_tangent(State &x, Eigen::MatrixXd &v, std::span<const double> noise) const {
    v *= 1.0 + 2.0 * eps_c_ * std::cos(2.0 * (x[0] - noise[0]));
    step(x, noise);
}

double CircleMap::distance(const State &a, const State &b) const { return arc_distance(a[0], b[0]); }

Noise CircleMap::sample_noise(const SeedLineage &seed, std::int64_t first, std::int64_t end,
                              std::int64_t origin) const {
    return NoiseSeq::sample(seed, UniformInterval{0.0, kTwoPi}, 1, first, end, origin);
}

Noise CircleMap::zero_noise(std::int64_t first, std::int64_t end) const {
    return NoiseSeq::from_values(1, first, std::vector<double>(static_cast<std::size_t>(end - first), 0.0));
}

std::optional<State> CircleMap::stationary_draw(const SeedLineage &seed) const {
    CounterRng rng(seed.key(), 0);
    State x(1);
    x[0] = kTwoPi * rng.uniform();
    return x;
}

State CircleMap::canonical(State x) const {
    if (x.size() != 1) throw Error(ErrorCode::precondition, "circle states are single angles");
    x[0] = wrap(x[0]);
    return x;
}

} // namespace rdslab
