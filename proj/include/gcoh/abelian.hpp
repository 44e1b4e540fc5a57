#pragma once
// Finitely generated abelian groups in invariant-factor normal form, the
// functors and decision procedures built on them, and kernel/cokernel types
// of maps between canonically presented groups.
//
// Canonical coordinates of a group with t invariant factors and rank r:
// t + r integers, torsion coordinates first (coordinate i taken modulo the
// i-th invariant factor), free coordinates last.

#include "gcoh/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gcoh {

class AbelianGroup {
  public:
    AbelianGroup() = default;  // trivial group
    static AbelianGroup free_group(long rank);
    static AbelianGroup cyclic(const Int& n);  // Z_n; n = 0 means Z, n = 1 trivial
    // Canonicalizes an arbitrary direct sum of cyclic groups.
    static AbelianGroup from_cyclic_orders(long rank, const std::vector<Int>& orders);

    long rank() const { return rank_; }
    const std::vector<Int>& invariant_factors() const { return factors_; }

    bool is_trivial() const { return rank_ == 0 && factors_.empty(); }
    bool is_free() const { return factors_.empty(); }
    bool is_finite() const { return rank_ == 0; }
    Int torsion_order() const;  // product of invariant factors
    Int order() const;          // throws if infinite
    long coord_count() const { return static_cast<long>(factors_.size()) + rank_; }

    AbelianGroup direct_sum(const AbelianGroup& other) const;
    AbelianGroup torsion_part() const;

    // "0", "Z", "Z^r", "Z_d", joined by " ⊕ "; parse also accepts "+".
    std::string to_string() const;
    static std::optional<AbelianGroup> parse(std::string_view s);
    std::string to_json() const;  // {"rank": r, "torsion": [d1, ...]}

    bool operator==(const AbelianGroup&) const = default;
    bool operator<(const AbelianGroup& o) const;

  private:
    long rank_ = 0;
    std::vector<Int> factors_;  // each >= 2, d_i | d_{i+1}
};

// Z^rows / (column span of relations), in canonical form.
AbelianGroup cokernel(const IntMat& relations);

// dim g (x) Z_2  =  rank + #even invariant factors;  dim Tor(g, Z_2) = #even.
long tensor_z2_dim(const AbelianGroup& g);
long tor_z2_dim(const AbelianGroup& g);

// True iff a short exact sequence 0 -> sub -> total -> quot -> 0 exists.
// Exact: rank arithmetic plus a finite p-group subgroup search per prime.
bool exists_extension(const AbelianGroup& sub, const AbelianGroup& total, const AbelianGroup& quot);

// True iff some homomorphism g -> h has kernel and cokernel of the stated
// isomorphism types.
bool exists_hom_with(const AbelianGroup& g, const AbelianGroup& h, const AbelianGroup& kernel,
                     const AbelianGroup& cokernel_type);

// All isomorphism types of subgroups of a finite group, sorted, no duplicates.
std::vector<AbelianGroup> subgroup_types(const AbelianGroup& g);

std::vector<std::pair<Int, long>> prime_factorization(Int n);
std::vector<Int> divisors(const Int& n);  // sorted ascending
// All finite abelian groups of order exactly n, sorted.
std::vector<AbelianGroup> finite_types_of_order(const Int& n);

// Presentation matrix of the canonical coordinates: (t + rank) x t diagonal.
IntMat presentation_matrix(const AbelianGroup& g);

// f is a (coords of b) x (coords of a) integer matrix describing a
// homomorphism a -> b in canonical coordinates.
AbelianGroup map_kernel_type(const AbelianGroup& a, const AbelianGroup& b, const IntMat& f);
AbelianGroup map_cokernel_type(const AbelianGroup& b, const IntMat& f);
bool map_injective(const AbelianGroup& a, const AbelianGroup& b, const IntMat& f);
bool map_surjective(const AbelianGroup& b, const IntMat& f);

}  // namespace gcoh
