#pragma once

#include "rdslab/seed.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace rdslab {

/// Converts a time to a grid index, rejecting times that are not multiples of dt.
std::int64_t grid_index(double t, double dt, std::string_view what);

/// Non-owning view of per-cell noise values. Cell k covers [k*dt, (k+1)*dt).
struct CellView {
    const double *data = nullptr;
    std::int64_t first = 0;
    std::int64_t end = 0;
    int dim = 0;
    double dt = 1.0;

    std::span<const double> cell(std::int64_t k) const noexcept {
        return {data + (k - first) * dim, static_cast<std::size_t>(dim)};
    }
    bool covers(std::int64_t from, std::int64_t to) const noexcept { return first <= from && to <= end; }
};

namespace detail {

/// Immutable, shareable storage of consecutive cells with a relabelling offset.
/// Relative cell k lives at absolute cell k + origin.
class CellStore {
  public:
    CellStore(int dim, std::int64_t first, std::int64_t end, std::vector<double> values,
              std::int64_t origin = 0);

    int dim() const noexcept { return dim_; }
    std::int64_t first() const noexcept { return first_; }
    std::int64_t end() const noexcept { return end_; }
    std::int64_t origin() const noexcept { return origin_; }
    std::int64_t size() const noexcept { return end_ - first_; }

    const double *begin_ptr() const noexcept { return values_->data() + offset_; }
    std::span<const double> cell(std::int64_t k) const noexcept;

    CellStore shifted(std::int64_t cells) const;
    /// Adds cells [new_first, first) whose values are given in `prefix`.
    CellStore prepended(std::int64_t new_first, std::vector<double> prefix) const;

    bool same_values(const CellStore &other) const;

  private:
    int dim_;
    std::int64_t first_;
    std::int64_t end_;
    std::int64_t origin_;
    std::shared_ptr<const std::vector<double>> values_;
    std::size_t offset_ = 0;
};

} // namespace detail

/// A realization of d-dimensional Wiener noise on a finite grid window [t_lo, t_hi],
/// anchored so that w(0) = 0. Increments are stored per cell; values between grid
/// points are linear interpolants.
class NoisePath {
  public:
    /// Independent N(0, dt I) increments on [t_lo, t_hi]. Each cell is derived from
    /// (lineage, absolute cell index) alone.
    static NoisePath sample_wiener(const SeedLineage &seed, int d, double t_lo, double t_hi, double dt);
    /// Cells [first, end) relative to `origin`: relative cell k is absolute cell k + origin.
    static NoisePath wiener_cells(const SeedLineage &seed, int d, double dt, std::int64_t first,
                                  std::int64_t end, std::int64_t origin = 0);
    /// Deterministic path from explicit increments (cell `first_cell` onwards).
    static NoisePath from_increments(int d, double dt, std::int64_t first_cell, std::vector<double> increments);
    static NoisePath zero(int d, double dt, std::int64_t first, std::int64_t end);

    /// (theta^tau w)(t) = w(t + tau) - w(tau). Pure re-indexing; tau must lie in the window.
    NoisePath shift(double tau) const;
    NoisePath shift_cells(std::int64_t cells) const;

    /// Exact partial sums at grid times, linear interpolation in between.
    Eigen::VectorXd evaluate(double t) const;

    /// Grows the window to the left. Only paths with a seed lineage can be extended.
    NoisePath extend_left(double new_t_lo) const;
    NoisePath extend_left_cells(std::int64_t new_first) const;

    int dim() const noexcept { return store_.dim(); }
    double dt() const noexcept { return dt_; }
    double t_lo() const noexcept { return static_cast<double>(store_.first()) * dt_; }
    double t_hi() const noexcept { return static_cast<double>(store_.end()) * dt_; }
    std::int64_t first_cell() const noexcept { return store_.first(); }
    std::int64_t end_cell() const noexcept { return store_.end(); }
    std::int64_t cell_count() const noexcept { return store_.size(); }
    std::span<const double> increment(std::int64_t k) const noexcept { return store_.cell(k); }
    const std::optional<SeedLineage> &lineage() const noexcept { return lineage_; }
    /// Absolute index of relative cell 0 (non-zero after shifts).
    std::int64_t origin() const noexcept { return store_.origin(); }

    CellView cells() const noexcept { return {store_.begin_ptr(), store_.first(), store_.end(), dim(), dt_}; }
    operator CellView() const noexcept { return cells(); } // NOLINT

    /// Bit-exact equality of window, increments and dt.
    bool identical(const NoisePath &other) const;

    /// Columns t, w_1..w_d at every grid time of the window.
    void write_csv(std::ostream &os) const;

  private:
    NoisePath(double dt, detail::CellStore store, std::optional<SeedLineage> lineage)
        : dt_(dt), store_(std::move(store)), lineage_(std::move(lineage)) {}

    double dt_;
    detail::CellStore store_;
    std::optional<SeedLineage> lineage_;
};

struct UniformInterval {
    double lo;
    double hi;
};
struct UniformSet {
    std::vector<double> values;
};
/// One-step law of a discrete-time noise sequence (applied per coordinate).
using NoiseLaw = std::variant<UniformInterval, UniformSet>;

/// I.i.d. draws indexed by integer time, for discrete-time systems (dt = 1).
class NoiseSeq {
  public:
    static NoiseSeq sample(const SeedLineage &seed, NoiseLaw law, int d, std::int64_t first, std::int64_t end,
                           std::int64_t origin = 0);
    static NoiseSeq from_values(int d, std::int64_t first, std::vector<double> values);

    NoiseSeq shift(std::int64_t steps) const;
    NoiseSeq extend_left(std::int64_t new_first) const;

    int dim() const noexcept { return store_.dim(); }
    std::int64_t first() const noexcept { return store_.first(); }
    std::int64_t end() const noexcept { return store_.end(); }
    std::span<const double> draw(std::int64_t k) const noexcept { return store_.cell(k); }
    const std::optional<SeedLineage> &lineage() const noexcept { return lineage_; }
    const std::optional<NoiseLaw> &law() const noexcept { return law_; }

    CellView cells() const noexcept { return {store_.begin_ptr(), store_.first(), store_.end(), dim(), 1.0}; }
    operator CellView() const noexcept { return cells(); } // NOLINT

    bool identical(const NoiseSeq &other) const;

  private:
    NoiseSeq(detail::CellStore store, std::optional<SeedLineage> lineage, std::optional<NoiseLaw> law)
        : store_(std::move(store)), lineage_(std::move(lineage)), law_(std::move(law)) {}

    detail::CellStore store_;
    std::optional<SeedLineage> lineage_;
    std::optional<NoiseLaw> law_;
};

using Noise = std::variant<NoisePath, NoiseSeq>;

CellView cells(const Noise &noise) noexcept;
Noise shift_cells(const Noise &noise, std::int64_t cells);

// Deterministic steering paths.

struct TransitSteering {
    Eigen::VectorXd from;
    Eigen::VectorXd to;
    double eta0;
    /// End of the window; defaults to 1/eta0. Beyond 1/eta0 the path is held constant.
    std::optional<double> t_hi;
};

struct ContractSteering {
    int d;
    double eta1;
    double eta2;
    double t_hi;
};

/// w(t) = eta0 * t * (to - from) on [0, 1/eta0].
NoisePath steering_path(const TransitSteering &params, double dt);
/// w(t) = (eta1 eta2 t, 0, ..., 0) on [0, 1/eta1], then (eta2, 0, ..., 0).
NoisePath steering_path(const ContractSteering &params, double dt);

} // namespace rdslab
