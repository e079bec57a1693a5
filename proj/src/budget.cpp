#include "symsplit/budget.hpp"

#include <sstream>

namespace symsplit {

std::string Budgets::fingerprint() const
{
    std::ostringstream os;
    os << "node_cap=" << node_cap << ";factor_bound=" << factor_bound << ";harvest_cap=" << harvest_cap
       << ";unit_radius_cap=" << unit_radius_cap << ";cell_cap=" << cell_cap << ";hp_cap=" << hp_cap
       << ";digits=" << digits;
    return os.str();
}

} // namespace symsplit
