#include "wavequanta/units.hpp"

#include "wavequanta/error.hpp"

namespace wq {

UnitSystem UnitSystem::natural() { return {}; }

UnitSystem UnitSystem::mev_ps() {
    UnitSystem u;
    u.name = "mev-ps";
    u.hbar = 4.1 / (2.0 * std::numbers::pi);
    u.c = 299.792458;
    u.k_B = 0.086;
    return u;
}

UnitSystem UnitSystem::from_name(std::string_view name) {
    if (name == "natural") return natural();
    if (name == "mev-ps") return mev_ps();
    throw ValidationError("unknown unit preset '" + std::string(name) + "' (expected natural|mev-ps)");
}

} // namespace wq
