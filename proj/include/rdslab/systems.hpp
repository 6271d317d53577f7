#pragma once

#include "rdslab/noise.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rdslab {

using State = Eigen::VectorXd;

enum class StateSpace { euclidean, circle };
enum class TimeKind { continuous, discrete };

/// A random dynamical system given by a one-cell update rule. Implementations are
/// immutable; every member function is safe to call concurrently.
class System {
  public:
    virtual ~System() = default;

    virtual std::string name() const = 0;
    virtual StateSpace state_space() const = 0;
    virtual TimeKind time_kind() const = 0;
    /// Dimension of the state vector (1 for the circle).
    virtual int dim() const = 0;
    virtual int noise_dim() const = 0;
    virtual double dt() const = 0;
    /// Named parameters, in a fixed order.
    virtual std::vector<std::pair<std::string, double>> params() const = 0;

    /// x <- one step of the cocycle driven by `noise` (one cell).
    virtual void step(State &x, std::span<const double> noise) const = 0;

    virtual bool has_jacobian() const { return false; }
    /// Advances x and the tangent matrix v (dim x k) by the linearization of `step` at x.
    virtual void step_tangent(State &x, Eigen::MatrixXd &v, std::span<const double> noise) const;

    virtual double distance(const State &a, const State &b) const;

    /// Noise on cells [first, end), a pure function of the seed and the absolute cell index
    /// (relative cell k is absolute cell k + origin).
    virtual Noise sample_noise(const SeedLineage &seed, std::int64_t first, std::int64_t end,
                               std::int64_t origin = 0) const = 0;
    /// The noise realization that leaves the deterministic part alone.
    virtual Noise zero_noise(std::int64_t first, std::int64_t end) const = 0;

    /// Exact draw from the stationary law, when one is known in closed form.
    virtual std::optional<State> stationary_draw(const SeedLineage &seed) const;

    /// Supremum of the one-sided Lipschitz quotient of the drift, when defined.
    virtual std::optional<double> one_sided_lipschitz() const { return std::nullopt; }

    /// Canonical state used as the burn-in start for stationary sampling.
    virtual State origin() const { return State::Zero(dim()); }

    /// Maps a point given in user coordinates into the state space (wraps angles).
    virtual State canonical(State x) const { return x; }

    std::int64_t steps(double t, std::string_view what = "t") const { return grid_index(t, dt(), what); }
};

/// du = (1 - |u|^2) u dt + dW on R^d, integrated by (tamed) Euler-Maruyama.
class DoubleWell final : public System {
  public:
    explicit DoubleWell(int d = 2, double dt = 1e-3, bool tamed = true);

    static State drift(const State &y);
    static Eigen::MatrixXd drift_jacobian(const State &y);
    /// L = 1: the symmetric Jacobian has eigenvalues 1 - 3|y|^2 and 1 - |y|^2, largest at y = 0.
    static constexpr double one_sided_lipschitz_constant() noexcept { return 1.0; }

    bool tamed() const noexcept { return tamed_; }

    std::string name() const override { return "doublewell"; }
    StateSpace state_space() const override { return StateSpace::euclidean; }
    TimeKind time_kind() const override { return TimeKind::continuous; }
    int dim() const override { return d_; }
    int noise_dim() const override { return d_; }
    double dt() const override { return dt_; }
    std::vector<std::pair<std::string, double>> params() const override;

    void step(State &x, std::span<const double> noise) const override;
    bool has_jacobian() const override { return true; }
    void step_tangent(State &x, Eigen::MatrixXd &v, std::span<const double> noise) const override;

    Noise sample_noise(const SeedLineage &seed, std::int64_t first, std::int64_t end,
                       std::int64_t origin = 0) const override;
    Noise zero_noise(std::int64_t first, std::int64_t end) const override;

    std::optional<double> one_sided_lipschitz() const override { return one_sided_lipschitz_constant(); }

  private:
    int d_;
    double dt_;
    bool tamed_;
};

/// x -> x + eps_c sin(2(x - alpha)) mod 2pi with alpha uniform on [0, 2pi), one step per
/// unit time. Commutes with rotation by pi, so antipodal points stay antipodal.
class CircleMap final : public System {
  public:
    explicit CircleMap(double eps_c = 0.3);

    static double wrap(double angle) noexcept;
    static double arc_distance(double a, double b) noexcept;
    static double step_angle(double x, double alpha, double eps_c) noexcept;

    double eps_c() const noexcept { return eps_c_; }

    std::string name() const override { return "circlemap"; }
    StateSpace state_space() const override { return StateSpace::circle; }
    TimeKind time_kind() const override { return TimeKind::discrete; }
    int dim() const override { return 1; }
    int noise_dim() const override { return 1; }
    double dt() const override { return 1.0; }
    std::vector<std::pair<std::string, double>> params() const override;

    void step(State &x, std::span<const double> noise) const override;
    bool has_jacobian() const override { return true; }
    void step_tangent(State &x, Eigen::MatrixXd &v, std::span<const double> noise) const override;
    double distance(const State &a, const State &b) const override;

    Noise sample_noise(const SeedLineage &seed, std::int64_t first, std::int64_t end,
                       std::int64_t origin = 0) const override;
    Noise zero_noise(std::int64_t first, std::int64_t end) const override;
    std::optional<State> stationary_draw(const SeedLineage &seed) const override;
    State canonical(State x) const override;

  private:
    double eps_c_;
};

/// circle_step: one step of the circle map at noise angle alpha.
inline double circle_step(double x, double alpha, double eps_c) { return CircleMap::step_angle(x, alpha, eps_c); }

// ---------------------------------------------------------------------------
// Flows. Time t is measured from the noise anchor (cell 0) and must be grid-aligned.

/// phi(t, w) x0.
State flow(const System &sys, const CellView &noise, State x0, double t);
/// (phi(t, w) x0, phi(t, w) y0) with the same noise.
std::pair<State, State> flow_pair(const System &sys, const CellView &noise, State x0, State y0, double t);

struct TangentFlow {
    State x;
    Eigen::MatrixXd v;
};
/// State and tangent matrix after time t; no renormalization.
TangentFlow flow_with_tangent(const System &sys, const CellView &noise, State x0, Eigen::MatrixXd v0, double t);

/// Steps every state in lockstep over cells [from, to). Bit-identical to advancing each
/// state on its own.
void advance(const System &sys, const CellView &noise, std::span<State> states, std::int64_t from, std::int64_t to);

enum class NoiseMode { random, zero };

/// Like advance(), but draws the noise for [from, to) from `seed` in bounded chunks.
/// Per-cell seed derivation makes this identical to sampling the whole window up front.
void advance_sampled(const System &sys, const SeedLineage &seed, NoiseMode mode, std::span<State> states,
                     std::int64_t from, std::int64_t to);

/// Throws unless noise and system agree on dt and dimension, and [from, to) is covered.
void check_noise(const System &sys, const CellView &noise, std::int64_t from, std::int64_t to);

/// Writes t, x_1..x_d (or t, angle) rows.
void write_trajectory_csv(std::ostream &os, const System &sys, std::span<const double> times,
                          std::span<const State> states);

} // namespace rdslab
