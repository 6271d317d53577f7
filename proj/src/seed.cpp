#include "rdslab/seed.hpp"

#include <cmath>
#include <numbers>

namespace rdslab {

SeedLineage::SeedLineage(std::uint64_t master) : master_(master), key_(mix64(master ^ 0x5eed5eed5eed5eedULL)) {}

SeedLineage SeedLineage::child(std::uint64_t index) const {
    SeedLineage out = *this;
    out.path_.push_back(index);
    out.key_ = mix64(key_ ^ mix64(index + kGolden));
    return out;
}

std::string SeedLineage::to_string() const {
    std::string s = std::to_string(master_);
    for (auto i : path_) {
        s += '/';
        s += std::to_string(i);
    }
    return s;
}

std::pair<double, double> CounterRng::normal_pair() noexcept {
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

} // namespace rdslab
