#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcoh/abelian.hpp"

namespace gcoh {

// Search problem for the unknown torsion subgroups T_k of a closed orientable
// manifold X of dimension dim whose degree-k cohomology is Z^{betti[k]} (+)
// T_{k-1}.  The boundary values T_0 = T_1 = T_3 = 0 and T_2 = Z_2 are fixed,
// and Poincare duality identifies T_k with T_{dim-1-k}, so the free unknowns
// are T_4 .. T_{(dim-1)/2}.
struct TorsionProblem {
    long n = 0;    // X = G~_{n,3}
    long dim = 0;  // 3(n-3)

    std::vector<long> betti;  // ranks of H^0 .. H^dim

    // Known dimensions of H^k(X; Z_2), keyed by k.
    std::map<long, long> mod2_dims;

    // Integral cohomology of the sphere-bundle total space W -> X with fiber
    // S^2 and Euler class in H^3(X), degrees 0 .. dim+2.
    std::vector<AbelianGroup> sphere_target;

    // Degrees N with H^N(V; Z) = 0 for the SO(3)-bundle total space V -> X.
    std::vector<long> so3_vanishing;

    // Isomorphism types allowed for each unknown T_k.
    std::vector<AbelianGroup> candidates;

    long mid() const { return (dim - 1) / 2; }
    std::vector<long> unknown_degrees() const;
};

// One choice of the free unknowns, keyed by k (4 .. mid).
struct TorsionAssignment {
    std::map<long, AbelianGroup> unknowns;

    std::string to_string() const;  // "T_4=0, T_5=Z_2, ..."
    friend bool operator==(const TorsionAssignment& a, const TorsionAssignment& b) {
        return a.unknowns == b.unknowns;
    }
    friend bool operator<(const TorsionAssignment& a, const TorsionAssignment& b) {
        return a.unknowns < b.unknowns;
    }
};

// Outcome of one constraint check.  On failure, degree points at the smallest
// cohomological degree where the contradiction shows up.
struct ConstraintReport {
    bool ok = true;
    std::string constraint;  // "uct", "sphere", "so3"
    long degree = -1;
    std::string detail;
};

// T_k for any k in 0 .. dim-1, applying boundary values and duality.
AbelianGroup torsion_at(const TorsionProblem& problem, const TorsionAssignment& a, long k);

// The full table H^0 .. H^dim determined by the assignment.
std::vector<AbelianGroup> cohomology_from(const TorsionProblem& problem,
                                          const TorsionAssignment& a);

// Universal-coefficient check of the known mod-2 dimensions:
// dim H^k(X; Z_2) = betti[k] + e(T_{k-1}) + e(T_k), with e counting even
// invariant factors.
ConstraintReport check_uct_mod2(const TorsionProblem& problem, const TorsionAssignment& a);

// Degreewise assembly of H^*(W) from the long exact sequence of the sphere
// bundle W -> X: each H^N(W) is an extension of a kernel by a cokernel of
// cup-product maps H^p(X) -> H^{p+3}(X), with the cokernels embedding into
// the recorded groups of W.  Feasibility is decided exactly by a forward scan
// over the columns.
ConstraintReport check_sphere_assembly(const TorsionProblem& problem,
                                       const TorsionAssignment& a);

// Collapse check of the SO(3)-bundle V -> X against H^N(V) = 0 for each
// recorded N: some choice of the undetermined differentials must wipe out the
// three surviving entries of total degree N.
ConstraintReport check_so3(const TorsionProblem& problem, const TorsionAssignment& a);

struct SolveOptions {
    bool use_uct = true;
    bool use_sphere = true;
    bool use_so3 = true;
    bool explain = false;  // record one line per eliminated assignment
};

struct SolveResult {
    std::vector<TorsionAssignment> solutions;  // in enumeration order
    long examined = 0;
    std::vector<std::string> explain_log;
};

// Exhaustive scan of all candidate assignments; the parallel and serial
// entry points return identical results.
SolveResult solve(const TorsionProblem& problem, const SolveOptions& options = {});
SolveResult solve_serial(const TorsionProblem& problem, const SolveOptions& options = {});

// The two bundled search problems, assembled from the catalog records.
TorsionProblem grassmann_problem(long n);

}  // namespace gcoh
