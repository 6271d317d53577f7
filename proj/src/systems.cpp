#include "rdslab/systems.hpp"

#include "rdslab/error.hpp"

namespace rdslab {

void System::step_tangent(State &, Eigen::MatrixXd &, std::span<const double>) const {
    throw Error(ErrorCode::unsupported, "system '" + name() + "' has no Jacobian stepper");
}

double System::distance(const State &a, const State &b) const { return (a - b).norm(); }

std::optional<State> System::stationary_draw(const SeedLineage &) const { return std::nullopt; }

} // namespace rdslab
