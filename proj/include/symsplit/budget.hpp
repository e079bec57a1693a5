#pragma once

#include <cstdint>
#include <string>

namespace symsplit {

// Work limits. Exhausting one yields Indeterminate, never a wrong answer.
struct Budgets {
    std::uint64_t node_cap = 20'000'000;  // Fincke-Pohst nodes per enumeration
    std::uint64_t factor_bound = 1'000'000'000'000ULL; // Pollard rho cutoff for integer factoring
    std::uint64_t harvest_cap = 40'000;  // candidate elements tried while collecting relations
    std::uint64_t unit_radius_cap = 80;  // log-space radius scanned for units
    std::uint64_t cell_cap = 200'000;    // covering cells per principality test
    std::uint64_t hp_cap = 10'000;       // largest exponent tried for h_p without h_L
    unsigned digits = 128;               // decimal digits of the embeddings

    // Stable text form; part of cache keys.
    std::string fingerprint() const;
};

} // namespace symsplit
