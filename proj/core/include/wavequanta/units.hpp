#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace wq {

/// Constants shared by every module. Lengths in the meV-ps preset are in micrometres.
struct UnitSystem {
    std::string name = "natural";
    double hbar = 1.0;
    double c = 1.0;
    double k_B = 1.0;

    double h() const { return 2.0 * std::numbers::pi * hbar; }

    static UnitSystem natural();
    /// h = 4.1 meV ps, k_B = 0.086 meV/K, c in um/ps.
    static UnitSystem mev_ps();
    static UnitSystem from_name(std::string_view name);
};

} // namespace wq
