#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcoh/abelian.hpp"
#include "gcoh/graded_ring.hpp"

namespace gcoh {

// One sourced mod-2 dimension: dim H^k(-; Z_2) with an optional named
// generator and the citation the value comes from.
struct Mod2Entry {
    long dim = 0;
    std::string generator;
    std::string citation;

    friend bool operator==(const Mod2Entry& a, const Mod2Entry& b) {
        return a.dim == b.dim && a.generator == b.generator && a.citation == b.citation;
    }
};

// Built-in, citation-tagged data about one space.  Any subset of the data
// fields may be populated; at least one always is.
struct SpaceRecord {
    std::string id;
    std::string citation;
    std::vector<AbelianGroup> integral_groups;      // full table, degree-indexed (may be empty)
    std::map<long, AbelianGroup> integral_partial;  // isolated known degrees
    std::map<long, Mod2Entry> mod2_dims;
    std::vector<long> poincare;  // free ranks per degree (may be empty)
    std::optional<RingPresentation> presentation;

    friend bool operator==(const SpaceRecord& a, const SpaceRecord& b);
};

// Look up a built-in record ("V_7_2", "G~_8_3", "G~_10_3", "W8_2_1",
// "W10_2_1", "SO3", "V_10_3_facts").  Throws std::out_of_range for ids not in
// space_ids().
const SpaceRecord& get_space(const std::string& id);
std::vector<std::string> space_ids();

// Concrete presentation for a parametric family:
//   lai_even(n): H^*(G~_{2n,2}) on Omega_t, kappa, Omega, mu, top 4n-4
//   odd_g2(n):   H^*(G~_{2n+1,2}) = Z[x2, x{2n}]/(x2^n - 2·x{2n}, x{2n}^2), top 4n-2
//   w21(n):      H^*(W^{2n}_{2,1}) on xb2, xb{2n-2}, xb{2n-1}, top 6n-7
// n runs over 2..8; anything else throws std::invalid_argument.
RingPresentation instantiate_family(const std::string& family, long n);

// Structural JSON round-trip for records (exact: record_from_json inverts
// record_to_json).
std::string record_to_json(const SpaceRecord& rec);
SpaceRecord record_from_json(const std::string& text);

}  // namespace gcoh
