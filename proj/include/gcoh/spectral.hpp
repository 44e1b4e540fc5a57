#pragma once

#include <string>
#include <vector>

#include "gcoh/abelian.hpp"
#include "gcoh/graded_ring.hpp"
#include "gcoh/matrix.hpp"

namespace gcoh {

// A graded group that may carry an unresolved torsion symbol: the entry means
// known ⊕ <symbol>, with symbol empty for fully known entries.
struct SymbolicGroup {
    AbelianGroup known;
    std::string symbol;

    bool is_symbolic() const { return !symbol.empty(); }
    // "Z ⊕ T_6" style display.
    std::string display() const;

    friend bool operator==(const SymbolicGroup& a, const SymbolicGroup& b) {
        return a.known == b.known && a.symbol == b.symbol;
    }
};

// One cell of a bigraded page.  symbolic, when non-empty, is the display text
// for cells whose value involves unresolved symbols (the group field then
// holds only the known contribution).
struct BigradedEntry {
    long p = 0;
    long q = 0;
    AbelianGroup group;
    std::vector<std::string> labels;  // generator names, at most one per generator
    std::string symbolic;
};

// A differential on page r: shifts bidegree by (r, -r+1); matrix in canonical
// coordinates (target coordinates x source coordinates).
struct DifferentialRecord {
    long r = 0;
    long source_p = 0;
    long source_q = 0;
    long target_p = 0;
    long target_q = 0;
    IntMat matrix;
    std::string note;
};

struct BigradedPage {
    long r = 0;
    std::vector<BigradedEntry> entries;
    std::vector<DifferentialRecord> differentials;
};

// An oriented S^m-bundle with base given as a ring presentation and Euler
// class a homogeneous polynomial of degree m+1 over the base generators (the
// zero polynomial is allowed).
struct SphereBundleSpec {
    RingPresentation base;
    long fiber_dim = 0;
    IntPolynomial euler;
};

// Total-space group in one degree: the extension of quot = E_inf^{N-m,m} by
// sub = E_inf^{N,0}.  When more than one isomorphism type admits such an
// extension the entry is flagged, group is the direct sum of the two pieces,
// and candidates lists every admissible type.
struct GysinDegree {
    long degree = 0;
    AbelianGroup group;
    AbelianGroup sub;
    AbelianGroup quot;
    bool ambiguous = false;
    std::vector<AbelianGroup> candidates;
};

struct GysinResult {
    long fiber_dim = 0;
    BigradedPage e_page;  // page m+1, rows q = 0 and q = m, with the cup differential
    BigradedPage einf;
    std::vector<GysinDegree> total;  // degrees 0 .. base top + m
};

// Runs the two-row spectral sequence of the sphere bundle: the single
// differential d_{m+1} is cup product with the Euler class.  Throws
// std::invalid_argument when the base presentation is invalid or the Euler
// class is not homogeneous of degree m+1.
GysinResult gysin_total(const SphereBundleSpec& spec);

// E2 page of an SO(3)-fiber bundle over a base with the given graded groups
// (degree-indexed from 0), for columns window_lo..window_hi.  Rows q = 0 and
// q = 3 copy the base; row q = 2 at p is (H^p otimes Z_2) + Tor(H^{p+1}, Z_2),
// assembled symbolically when the inputs carry unknown symbols.  Throws
// std::out_of_range when the window needs degrees beyond the given data.
BigradedPage so3_e2_page(const std::vector<SymbolicGroup>& base, long window_lo, long window_hi);

// Deterministic rendering; format is "text" or "latex" (anything else throws
// std::invalid_argument).
std::string render_page(const BigradedPage& page, const std::string& format);

}  // namespace gcoh
