#include "rdslab/noise.hpp"

#include "rdslab/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace rdslab {

namespace {

std::string fmt_time(double t) {
    std::ostringstream os;
    os << std::setprecision(17) << t;
    return os.str();
}

void fill_wiener_cells(std::uint64_t key, int d, double dt, std::int64_t abs_first, std::int64_t abs_end,
                       std::vector<double> &out) {
    const double scale = std::sqrt(dt);
    out.resize(static_cast<std::size_t>((abs_end - abs_first) * d));
    std::size_t pos = 0;
    for (std::int64_t a = abs_first; a < abs_end; ++a) {
        CounterRng rng(key, static_cast<std::uint64_t>(a));
        for (int j = 0; j < d; j += 2) {
            const auto [z1, z2] = rng.normal_pair();
            out[pos++] = scale * z1;
            if (j + 1 < d) out[pos++] = scale * z2;
        }
    }
}

double draw_from(const NoiseLaw &law, CounterRng &rng) {
    const double u = rng.uniform();
    if (const auto *iv = std::get_if<UniformInterval>(&law)) return iv->lo + (iv->hi - iv->lo) * u;
    const auto &set = std::get<UniformSet>(law).values;
    const auto n = set.size();
    return set[std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)))];
}

void fill_seq_cells(std::uint64_t key, const NoiseLaw &law, int d, std::int64_t abs_first, std::int64_t abs_end,
                    std::vector<double> &out) {
    out.resize(static_cast<std::size_t>((abs_end - abs_first) * d));
    std::size_t pos = 0;
    for (std::int64_t a = abs_first; a < abs_end; ++a) {
        CounterRng rng(key, static_cast<std::uint64_t>(a));
        for (int j = 0; j < d; ++j) out[pos++] = draw_from(law, rng);
    }
}

void check_law(const NoiseLaw &law) {
    if (const auto *iv = std::get_if<UniformInterval>(&law)) {
        if (!(iv->hi > iv->lo)) throw Error(ErrorCode::precondition, "uniform interval needs hi > lo");
    } else if (std::get<UniformSet>(law).values.empty()) {
        throw Error(ErrorCode::precondition, "uniform set must be non-empty");
    }
}

void check_dim(int d) {
    if (d < 1) throw Error(ErrorCode::precondition, "noise dimension must be >= 1, got " + std::to_string(d));
}

void check_anchor(std::int64_t first, std::int64_t end) {
    if (first > 0 || end < 0)
        throw Error(ErrorCode::precondition, "noise window must contain time 0 (cells [" + std::to_string(first) +
                                                 ", " + std::to_string(end) + "))");
}

} // namespace

std::int64_t grid_index(double t, double dt, std::string_view what) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw Error(ErrorCode::precondition, "dt must be positive and finite, got " + fmt_time(dt));
    if (!std::isfinite(t)) throw Error(ErrorCode::precondition, std::string(what) + " must be finite");
    const double q = t / dt;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
        throw Error(ErrorCode::grid_alignment, std::string(what) + "=" + fmt_time(t) +
                                                   " is not a multiple of dt=" + fmt_time(dt));
    return static_cast<std::int64_t>(r);
}

namespace detail {

CellStore::CellStore(int dim, std::int64_t first, std::int64_t end, std::vector<double> values,
                     std::int64_t origin)
    : dim_(dim), first_(first), end_(end), origin_(origin),
      values_(std::make_shared<const std::vector<double>>(std::move(values))) {
    if (end < first) throw Error(ErrorCode::precondition, "cell window end precedes its start");
    if (values_->size() != static_cast<std::size_t>((end - first) * dim))
        throw Error(ErrorCode::precondition, "cell values do not match window size");
}

std::span<const double> CellStore::cell(std::int64_t k) const noexcept {
    return {begin_ptr() + (k - first_) * dim_, static_cast<std::size_t>(dim_)};
}

CellStore CellStore::shifted(std::int64_t cells) const {
    CellStore out = *this;
    out.first_ -= cells;
    out.end_ -= cells;
    out.origin_ += cells;
    return out;
}

CellStore CellStore::prepended(std::int64_t new_first, std::vector<double> prefix) const {
    prefix.insert(prefix.end(), begin_ptr(), begin_ptr() + size() * dim_);
    return CellStore(dim_, new_first, end_, std::move(prefix), origin_);
}

bool CellStore::same_values(const CellStore &other) const {
    return dim_ == other.dim_ && first_ == other.first_ && end_ == other.end_ &&
           std::equal(begin_ptr(), begin_ptr() + size() * dim_, other.begin_ptr());
}

} // namespace detail

// ---------------------------------------------------------------------------
// NoisePath

NoisePath NoisePath::sample_wiener(const SeedLineage &seed, int d, double t_lo, double t_hi, double dt) {
    if (t_lo > 0.0 || t_hi < 0.0)
        throw Error(ErrorCode::precondition, "window [" + fmt_time(t_lo) + ", " + fmt_time(t_hi) + "] must contain 0");
    return wiener_cells(seed, d, dt, grid_index(t_lo, dt, "t_lo"), grid_index(t_hi, dt, "t_hi"));
}

NoisePath NoisePath::wiener_cells(const SeedLineage &seed, int d, double dt, std::int64_t first,
                                  std::int64_t end, std::int64_t origin) {
    check_dim(d);
    check_anchor(first, end);
    grid_index(0.0, dt, "dt");
    std::vector<double> values;
    fill_wiener_cells(seed.key(), d, dt, first + origin, end + origin, values);
    return NoisePath(dt, detail::CellStore(d, first, end, std::move(values), origin), seed);
}

NoisePath NoisePath::from_increments(int d, double dt, std::int64_t first_cell, std::vector<double> increments) {
    check_dim(d);
    grid_index(0.0, dt, "dt");
    if (increments.size() % static_cast<std::size_t>(d) != 0)
        throw Error(ErrorCode::precondition, "increment count is not a multiple of the dimension");
    const auto end = first_cell + static_cast<std::int64_t>(increments.size()) / d;
    check_anchor(first_cell, end);
    return NoisePath(dt, detail::CellStore(d, first_cell, end, std::move(increments)), std::nullopt);
}

NoisePath NoisePath::zero(int d, double dt, std::int64_t first, std::int64_t end) {
    check_dim(d);
    return from_increments(d, dt, first, std::vector<double>(static_cast<std::size_t>((end - first) * d), 0.0));
}

NoisePath NoisePath::shift(double tau) const { return shift_cells(grid_index(tau, dt_, "shift")); }

NoisePath NoisePath::shift_cells(std::int64_t cells) const {
    if (cells < first_cell() || cells > end_cell())
        throw Error(ErrorCode::out_of_window, "shift " + fmt_time(static_cast<double>(cells) * dt_) +
                                                  " lies outside the window [" + fmt_time(t_lo()) + ", " +
                                                  fmt_time(t_hi()) + "]");
    return NoisePath(dt_, store_.shifted(cells), lineage_);
}

Eigen::VectorXd NoisePath::evaluate(double t) const {
    if (!(t >= t_lo() - 1e-12 * dt_ && t <= t_hi() + 1e-12 * dt_))
        throw Error(ErrorCode::out_of_window,
                    "t=" + fmt_time(t) + " outside window [" + fmt_time(t_lo()) + ", " + fmt_time(t_hi()) + "]");
    const double q = t / dt_;
    const double r = std::round(q);
    std::int64_t k;
    double frac = 0.0;
    if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q))) {
        k = static_cast<std::int64_t>(r);
    } else {
        k = static_cast<std::int64_t>(std::floor(q));
        frac = q - std::floor(q);
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim());
    if (k >= 0) {
        for (std::int64_t c = 0; c < k; ++c) w += Eigen::Map<const Eigen::VectorXd>(increment(c).data(), dim());
    } else {
        for (std::int64_t c = -1; c >= k; --c) w -= Eigen::Map<const Eigen::VectorXd>(increment(c).data(), dim());
    }
    if (frac > 0.0) w += frac * Eigen::Map<const Eigen::VectorXd>(increment(k).data(), dim());
    return w;
}

NoisePath NoisePath::extend_left(double new_t_lo) const {
    return extend_left_cells(grid_index(new_t_lo, dt_, "new_t_lo"));
}

NoisePath NoisePath::extend_left_cells(std::int64_t new_first) const {
    if (new_first > first_cell())
        throw Error(ErrorCode::precondition, "extend_left target " + fmt_time(static_cast<double>(new_first) * dt_) +
                                                 " is right of the current start " + fmt_time(t_lo()));
    if (new_first == first_cell()) return *this;
    if (!lineage_) throw Error(ErrorCode::unsupported, "cannot extend a deterministic path without a seed lineage");
    std::vector<double> prefix;
    fill_wiener_cells(lineage_->key(), dim(), dt_, new_first + origin(), first_cell() + origin(), prefix);
    return NoisePath(dt_, store_.prepended(new_first, std::move(prefix)), lineage_);
}

bool NoisePath::identical(const NoisePath &other) const {
    return dt_ == other.dt_ && store_.same_values(other.store_);
}

void NoisePath::write_csv(std::ostream &os) const {
    const int d = dim();
    os << "t";
    for (int j = 1; j <= d; ++j) os << ",w_" << j;
    os << '\n';
    // Running sums outward from the anchor, matching evaluate().
    const auto n = static_cast<std::size_t>(cell_count() + 1);
    std::vector<Eigen::VectorXd> w(n, Eigen::VectorXd::Zero(d));
    const auto at = [&](std::int64_t k) -> Eigen::VectorXd & { return w[static_cast<std::size_t>(k - first_cell())]; };
    for (std::int64_t k = 1; k <= end_cell(); ++k)
        at(k) = at(k - 1) + Eigen::Map<const Eigen::VectorXd>(increment(k - 1).data(), d);
    for (std::int64_t k = -1; k >= first_cell(); --k)
        at(k) = at(k + 1) - Eigen::Map<const Eigen::VectorXd>(increment(k).data(), d);
    os << std::setprecision(17);
    for (std::int64_t k = first_cell(); k <= end_cell(); ++k) {
        os << static_cast<double>(k) * dt_;
        for (int j = 0; j < d; ++j) os << ',' << at(k)[j];
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// NoiseSeq

NoiseSeq NoiseSeq::sample(const SeedLineage &seed, NoiseLaw law, int d, std::int64_t first, std::int64_t end,
                          std::int64_t origin) {
    check_dim(d);
    check_law(law);
    if (end < first) throw Error(ErrorCode::precondition, "sequence end precedes its start");
    std::vector<double> values;
    fill_seq_cells(seed.key(), law, d, first + origin, end + origin, values);
    return NoiseSeq(detail::CellStore(d, first, end, std::move(values), origin), seed, std::move(law));
}

NoiseSeq NoiseSeq::from_values(int d, std::int64_t first, std::vector<double> values) {
    check_dim(d);
    if (values.size() % static_cast<std::size_t>(d) != 0)
        throw Error(ErrorCode::precondition, "value count is not a multiple of the dimension");
    const auto end = first + static_cast<std::int64_t>(values.size()) / d;
    return NoiseSeq(detail::CellStore(d, first, end, std::move(values)), std::nullopt, std::nullopt);
}

NoiseSeq NoiseSeq::shift(std::int64_t steps) const {
    if (steps < first() || steps > end())
        throw Error(ErrorCode::out_of_window, "shift " + std::to_string(steps) + " lies outside the index window [" +
                                                  std::to_string(first()) + ", " + std::to_string(end()) + "]");
    return NoiseSeq(store_.shifted(steps), lineage_, law_);
}

NoiseSeq NoiseSeq::extend_left(std::int64_t new_first) const {
    if (new_first > first()) throw Error(ErrorCode::precondition, "extend_left target is right of the current start");
    if (new_first == first()) return *this;
    if (!lineage_ || !law_) throw Error(ErrorCode::unsupported, "cannot extend a sequence without a seed lineage");
    std::vector<double> prefix;
    fill_seq_cells(lineage_->key(), *law_, dim(), new_first + store_.origin(), first() + store_.origin(), prefix);
    return NoiseSeq(store_.prepended(new_first, std::move(prefix)), lineage_, law_);
}

bool NoiseSeq::identical(const NoiseSeq &other) const { return store_.same_values(other.store_); }

CellView cells(const Noise &noise) noexcept {
    return std::visit([](const auto &n) { return n.cells(); }, noise);
}

Noise shift_cells(const Noise &noise, std::int64_t cells) {
    return std::visit(
        [cells](const auto &n) -> Noise {
            if constexpr (std::is_same_v<std::decay_t<decltype(n)>, NoisePath>)
                return n.shift_cells(cells);
            else
                return n.shift(cells);
        },
        noise);
}

// ---------------------------------------------------------------------------
// Steering paths

NoisePath steering_path(const TransitSteering &params, double dt) {
    if (!(params.eta0 > 0.0)) throw Error(ErrorCode::precondition, "eta0 must be > 0");
    if (params.from.size() != params.to.size() || params.from.size() == 0)
        throw Error(ErrorCode::precondition, "transit endpoints must have equal, non-zero dimension");
    const double ramp_end = 1.0 / params.eta0;
    const double t_hi = params.t_hi.value_or(ramp_end);
    const auto n = grid_index(t_hi, dt, "transit window end");
    if (n < 0) throw Error(ErrorCode::precondition, "transit window end must be >= 0");
    const int d = static_cast<int>(params.from.size());
    const Eigen::VectorXd delta = params.to - params.from;
    const auto value = [&](std::int64_t k) -> Eigen::VectorXd {
        const double t = static_cast<double>(k) * dt;
        if (t >= ramp_end) return delta;
        return params.eta0 * t * delta;
    };
    std::vector<double> inc(static_cast<std::size_t>(n * d));
    Eigen::VectorXd prev = value(0);
    for (std::int64_t k = 0; k < n; ++k) {
        const Eigen::VectorXd next = value(k + 1);
        for (int j = 0; j < d; ++j) inc[static_cast<std::size_t>(k * d + j)] = next[j] - prev[j];
        prev = next;
    }
    return NoisePath::from_increments(d, dt, 0, std::move(inc));
}

NoisePath steering_path(const ContractSteering &params, double dt) {
    if (!(params.eta1 > 0.0) || !(params.eta2 > 0.0))
        throw Error(ErrorCode::precondition, "eta1 and eta2 must be > 0");
    check_dim(params.d);
    const auto n = grid_index(params.t_hi, dt, "contract window end");
    if (n < 0) throw Error(ErrorCode::precondition, "contract window end must be >= 0");
    const double ramp_end = 1.0 / params.eta1;
    const auto first_coord = [&](std::int64_t k) {
        const double t = static_cast<double>(k) * dt;
        return t >= ramp_end ? params.eta2 : params.eta1 * params.eta2 * t;
    };
    std::vector<double> inc(static_cast<std::size_t>(n * params.d), 0.0);
    for (std::int64_t k = 0; k < n; ++k)
        inc[static_cast<std::size_t>(k * params.d)] = first_coord(k + 1) - first_coord(k);
    return NoisePath::from_increments(params.d, dt, 0, std::move(inc));
}

} // namespace rdslab
