#include "gcoh/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gcoh/catalog.hpp"
#include "gcoh/matrix.hpp"

namespace gcoh {

namespace {

const AbelianGroup& trivial_group() {
    static const AbelianGroup g = AbelianGroup::free_group(0);
    return g;
}

void validate_base(const TorsionProblem& p) {
    if (p.dim < 5) throw std::invalid_argument("solver: dimension too small");
    if (static_cast<long>(p.betti.size()) != p.dim + 1)
        throw std::invalid_argument("solver: betti must list the ranks of H^0..H^dim");
    for (long b : p.betti)
        if (b < 0) throw std::invalid_argument("solver: negative rank");
}

// All isomorphism types Z^s (+) S with s <= rank(g) and S a subgroup type of
// the torsion part: exactly the types that can embed into g.
std::vector<AbelianGroup> sub_types_with_rank(const AbelianGroup& g) {
    std::vector<AbelianGroup> out;
    for (const AbelianGroup& t : subgroup_types(g.torsion_part()))
        for (long s = 0; s <= g.rank(); ++s)
            out.push_back(AbelianGroup::from_cyclic_orders(s, t.invariant_factors()));
    return out;
}

}  // namespace

std::vector<long> TorsionProblem::unknown_degrees() const {
    std::vector<long> ks;
    for (long k = 4; k <= mid(); ++k) ks.push_back(k);
    return ks;
}

std::string TorsionAssignment::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, g] : unknowns) {
        if (!first) os << ", ";
        first = false;
        os << "T_" << k << "=" << g.to_string();
    }
    return os.str();
}

AbelianGroup torsion_at(const TorsionProblem& problem, const TorsionAssignment& a, long k) {
    if (k < 0 || k >= problem.dim) return trivial_group();
    if (k > problem.mid()) k = problem.dim - 1 - k;  // Poincare duality
    if (k <= 1 || k == 3) return trivial_group();
    if (k == 2) return AbelianGroup::cyclic(Int(2));
    auto it = a.unknowns.find(k);
    if (it == a.unknowns.end())
        throw std::invalid_argument("torsion_at: no value assigned to T_" + std::to_string(k));
    return it->second;
}

std::vector<AbelianGroup> cohomology_from(const TorsionProblem& problem,
                                          const TorsionAssignment& a) {
    validate_base(problem);
    std::vector<AbelianGroup> table;
    table.reserve(static_cast<size_t>(problem.dim) + 1);
    for (long k = 0; k <= problem.dim; ++k) {
        AbelianGroup t = torsion_at(problem, a, k - 1);
        table.push_back(AbelianGroup::from_cyclic_orders(problem.betti[static_cast<size_t>(k)],
                                                         t.invariant_factors()));
    }
    return table;
}

ConstraintReport check_uct_mod2(const TorsionProblem& problem, const TorsionAssignment& a) {
    std::vector<AbelianGroup> X = cohomology_from(problem, a);
    for (const auto& [k, want] : problem.mod2_dims) {
        if (k < 0 || k > problem.dim)
            throw std::invalid_argument("uct check: mod-2 dimension recorded out of range");
        long got = tensor_z2_dim(X[static_cast<size_t>(k)]) +
                   (k + 1 <= problem.dim ? tor_z2_dim(X[static_cast<size_t>(k + 1)]) : 0);
        if (got != want) {
            return {false, "uct", k,
                    "mod-2 dimension in degree " + std::to_string(k) + " is " +
                        std::to_string(got) + ", recorded " + std::to_string(want)};
        }
    }
    return {};
}

ConstraintReport check_sphere_assembly(const TorsionProblem& problem,
                                       const TorsionAssignment& a) {
    const long d = problem.dim;
    if (static_cast<long>(problem.sphere_target.size()) != d + 3)
        throw std::invalid_argument("sphere check: target must list H^0..H^{dim+2}");
    std::vector<AbelianGroup> X = cohomology_from(problem, a);
    auto Xat = [&](long k) -> const AbelianGroup& {
        return (k >= 0 && k <= d) ? X[static_cast<size_t>(k)] : trivial_group();
    };
    auto Wat = [&](long k) -> const AbelianGroup& {
        return (k >= 0 && k <= d + 2) ? problem.sphere_target[static_cast<size_t>(k)]
                                      : trivial_group();
    };

    // Below the first cup map the bundle group equals the base group.
    for (long N : {0L, 1L}) {
        if (!(Wat(N) == Xat(N)))
            return {false, "sphere", N,
                    "H^" + std::to_string(N) + " of the bundle must equal the base group"};
    }

    // Column p contributes the cup map f_p : H^p(X) -> H^{p+3}(X).  Degree
    // N of the bundle is an extension of ker f_{N-2} by coker f_{N-3}, so
    // coker f_p embeds into H^{p+3}(W) and the p-th step here checks the
    // extension in degree p+2 against every cokernel reachable for column
    // p-1 (the scan starts from coker f_{-1} = H^2(X)).
    std::set<AbelianGroup> reach = {Xat(2)};
    for (long p = 0; p <= d; ++p) {
        std::vector<std::pair<AbelianGroup, AbelianGroup>> feasible;
        for (const AbelianGroup& K : sub_types_with_rank(Xat(p)))
            for (const AbelianGroup& C : sub_types_with_rank(Wat(p + 3)))
                if (exists_hom_with(Xat(p), Xat(p + 3), K, C)) feasible.emplace_back(K, C);
        if (feasible.empty())
            return {false, "sphere", p + 3,
                    "no cup map H^" + std::to_string(p) + " -> H^" + std::to_string(p + 3) +
                        " fits H^" + std::to_string(p + 3) + " of the bundle"};
        std::set<AbelianGroup> next;
        for (const auto& [K, C] : feasible) {
            if (next.count(C)) continue;
            for (const AbelianGroup& c : reach) {
                if (exists_extension(c, Wat(p + 2), K)) {
                    next.insert(C);
                    break;
                }
            }
        }
        if (next.empty())
            return {false, "sphere", p + 2,
                    "H^" + std::to_string(p + 2) +
                        " of the bundle does not assemble from the sequence"};
        reach = std::move(next);
    }
    return {};
}

namespace {

// F_2-basis of the 2-torsion subgroup {x : 2x = 0}, as canonical coordinate
// vectors.
struct TwoTorsion {
    long t = 0;
    std::vector<std::vector<Int>> gens;
};

TwoTorsion two_torsion_space(const AbelianGroup& g) {
    TwoTorsion s;
    const auto fac = g.invariant_factors();
    const long nc = g.coord_count();
    for (size_t i = 0; i < fac.size(); ++i) {
        if (fac[i] % 2 == 0) {
            std::vector<Int> v(static_cast<size_t>(nc), Int(0));
            v[i] = fac[i] / 2;
            s.gens.push_back(std::move(v));
        }
    }
    s.t = static_cast<long>(s.gens.size());
    return s;
}

bool zero_element(const AbelianGroup& g, const std::vector<Int>& v) {
    const auto fac = g.invariant_factors();
    for (size_t i = 0; i < v.size(); ++i) {
        if (i < fac.size()) {
            if (v[i] % fac[i] != 0) return false;
        } else if (v[i] != 0) {
            return false;
        }
    }
    return true;
}

// Indices of canonical coordinates of even order (a hom to an elementary
// 2-group must vanish on the others).
std::vector<long> even_coords(const AbelianGroup& g) {
    std::vector<long> out;
    const auto fac = g.invariant_factors();
    for (size_t i = 0; i < fac.size(); ++i)
        if (fac[i] % 2 == 0) out.push_back(static_cast<long>(i));
    return out;
}

long f2_rank(const std::vector<std::uint64_t>& vecs) {
    std::uint64_t piv[64] = {0};
    long rank = 0;
    for (std::uint64_t x : vecs) {
        while (x) {
            int b = 63 - __builtin_clzll(x);
            if (piv[b]) {
                x ^= piv[b];
            } else {
                piv[b] = x;
                ++rank;
                break;
            }
        }
    }
    return rank;
}

bool intersects(const std::set<AbelianGroup>& s, const std::vector<AbelianGroup>& v) {
    return std::any_of(v.begin(), v.end(),
                       [&](const AbelianGroup& g) { return s.count(g) != 0; });
}

// Decides whether some choice of the undetermined differentials of the
// SO(3)-bundle spectral sequence kills every entry of total degree N.  The
// three surviving second-page cells of total degree N are (N,0), (N-2,2)
// and (N-3,3); the relevant arrows are the two page-2 maps out of row 3
//     g4 : H^{N-4} -> (Z_2)^{m2},   g3 : H^{N-3} -> (Z_2)^{m3},
// the two page-3 maps out of row 2
//     h1 : (Z_2)^{m1} -> H^N,       h2 : (Z_2)^{m2} -> H^{N+1}
// (with 2-torsion image and h2 vanishing on the image of g4), and the two
// page-4 maps out of row 3, which enter only through the isomorphism types
// they would need to realize.
bool so3_degree_possible(const std::vector<AbelianGroup>& X, long d, long N) {
    auto Xat = [&](long k) -> const AbelianGroup& {
        return (k >= 0 && k <= d) ? X[static_cast<size_t>(k)] : trivial_group();
    };
    const AbelianGroup& A4 = Xat(N - 4);
    const AbelianGroup& A3 = Xat(N - 3);
    const AbelianGroup& AN = Xat(N);
    const AbelianGroup& A1 = Xat(N + 1);
    for (const AbelianGroup* g : {&A4, &A3, &AN, &A1})
        if (g->rank() != 0)
            throw std::invalid_argument("so3 check: the groups in degrees " +
                                        std::to_string(N - 4) + ".." + std::to_string(N + 1) +
                                        " around a vanishing degree must be finite");

    auto row2 = [&](long q) { return tensor_z2_dim(Xat(q)) + tor_z2_dim(Xat(q + 1)); };
    const long m1 = row2(N - 3);
    const long m2 = row2(N - 2);
    const long m3 = row2(N - 1);

    const TwoTorsion tN = two_torsion_space(AN);
    const TwoTorsion t1 = two_torsion_space(A1);
    const std::vector<long> e4 = even_coords(A4);
    const std::vector<long> e3 = even_coords(A3);
    auto fits = [](long a, long b) { return a * b <= 22; };
    if (!fits(tN.t, m1) || !fits(t1.t, m2) || !fits(m2, static_cast<long>(e4.size())) ||
        !fits(m3, static_cast<long>(e3.size())))
        throw std::invalid_argument("so3 check: differential search space too large");

    // Cokernel types achievable by h1 (the cell (N,0) must then be finished
    // off by a page-4 arrow from the kernel of g4).
    std::set<AbelianGroup> h1_cokers;
    {
        const long bits = tN.t * m1;
        for (std::uint64_t code = 0; code < (1ull << bits); ++code) {
            IntMat h(AN.coord_count(), m1);
            for (long j = 0; j < m1; ++j)
                for (long i = 0; i < tN.t; ++i)
                    if (code >> (j * tN.t + i) & 1)
                        for (long c = 0; c < AN.coord_count(); ++c)
                            h.at(c, j) += tN.gens[static_cast<size_t>(i)][static_cast<size_t>(c)];
            h1_cokers.insert(map_cokernel_type(AN, h));
        }
    }

    // Kernel types achievable by g3 (the cell (N-3,3) must then embed into
    // the cokernel of h2 via a page-4 arrow).
    std::set<AbelianGroup> g3_kernels;
    {
        const AbelianGroup target =
            AbelianGroup::from_cyclic_orders(0, std::vector<Int>(static_cast<size_t>(m3), Int(2)));
        const long bits = m3 * static_cast<long>(e3.size());
        for (std::uint64_t code = 0; code < (1ull << bits); ++code) {
            IntMat g(m3, A3.coord_count());
            for (size_t j = 0; j < e3.size(); ++j)
                for (long i = 0; i < m3; ++i)
                    if (code >> (static_cast<long>(j) * m3 + i) & 1) g.at(i, e3[j]) = 1;
            g3_kernels.insert(map_kernel_type(A3, target, g));
        }
    }

    const AbelianGroup Zm2 =
        AbelianGroup::from_cyclic_orders(0, std::vector<Int>(static_cast<size_t>(m2), Int(2)));
    const long g4bits = m2 * static_cast<long>(e4.size());
    for (std::uint64_t g4code = 0; g4code < (1ull << g4bits); ++g4code) {
        IntMat g4(m2, A4.coord_count());
        std::vector<std::uint64_t> g4cols;
        for (size_t j = 0; j < e4.size(); ++j) {
            std::uint64_t col = 0;
            for (long i = 0; i < m2; ++i)
                if (g4code >> (static_cast<long>(j) * m2 + i) & 1) {
                    g4.at(i, e4[j]) = 1;
                    col |= 1ull << i;
                }
            g4cols.push_back(col);
        }
        AbelianGroup ker4 = map_kernel_type(A4, Zm2, g4);
        if (!intersects(h1_cokers, subgroup_types(ker4))) continue;

        const long need = m2 - f2_rank(g4cols);  // required F_2-rank of h2
        if (need > t1.t) continue;
        const long h2bits = t1.t * m2;
        for (std::uint64_t h2code = 0; h2code < (1ull << h2bits); ++h2code) {
            std::vector<std::uint64_t> h2cols;
            for (long j = 0; j < m2; ++j)
                h2cols.push_back((h2code >> (j * t1.t)) & ((1ull << t1.t) - 1));
            if (f2_rank(h2cols) != need) continue;

            IntMat h2(A1.coord_count(), m2);
            for (long j = 0; j < m2; ++j)
                for (long i = 0; i < t1.t; ++i)
                    if (h2cols[static_cast<size_t>(j)] >> i & 1)
                        for (long c = 0; c < A1.coord_count(); ++c)
                            h2.at(c, j) += t1.gens[static_cast<size_t>(i)][static_cast<size_t>(c)];

            // h2 must vanish on the image of g4 to descend to page 3.
            IntMat comp = mat_mul(h2, g4);
            bool compat = true;
            for (long j = 0; compat && j < comp.cols; ++j) {
                std::vector<Int> col(static_cast<size_t>(comp.rows));
                for (long i = 0; i < comp.rows; ++i) col[static_cast<size_t>(i)] = comp.at(i, j);
                compat = zero_element(A1, col);
            }
            if (!compat) continue;

            AbelianGroup coker2 = map_cokernel_type(A1, h2);
            if (intersects(g3_kernels, subgroup_types(coker2))) return true;
        }
    }
    return false;
}

}  // namespace

ConstraintReport check_so3(const TorsionProblem& problem, const TorsionAssignment& a) {
    std::vector<AbelianGroup> X = cohomology_from(problem, a);
    std::vector<long> degrees = problem.so3_vanishing;
    std::sort(degrees.begin(), degrees.end());
    for (long N : degrees) {
        if (N < 4 || N + 1 > problem.dim)
            throw std::invalid_argument("so3 check: vanishing degree out of range");
        if (!so3_degree_possible(X, problem.dim, N))
            return {false, "so3", N,
                    "no differential pattern kills the bundle cohomology in degree " +
                        std::to_string(N)};
    }
    return {};
}

namespace {

struct Outcome {
    int failed = 0;  // 0 pass, 1 uct, 2 sphere, 3 so3
    long degree = -1;
};

Outcome evaluate_assignment(const TorsionProblem& p, const TorsionAssignment& a,
                            const SolveOptions& opt) {
    if (opt.use_uct) {
        ConstraintReport r = check_uct_mod2(p, a);
        if (!r.ok) return {1, r.degree};
    }
    if (opt.use_sphere) {
        ConstraintReport r = check_sphere_assembly(p, a);
        if (!r.ok) return {2, r.degree};
    }
    if (opt.use_so3 && !p.so3_vanishing.empty()) {
        ConstraintReport r = check_so3(p, a);
        if (!r.ok) return {3, r.degree};
    }
    return {};
}

TorsionAssignment decode(const std::vector<long>& ks, const std::vector<AbelianGroup>& cand,
                         long idx) {
    TorsionAssignment a;
    const long c = static_cast<long>(cand.size());
    for (long k : ks) {
        a.unknowns.emplace(k, cand[static_cast<size_t>(idx % c)]);
        idx /= c;
    }
    return a;
}

SolveResult solve_impl(const TorsionProblem& problem, const SolveOptions& options,
                       bool parallel) {
    validate_base(problem);
    if (problem.candidates.empty()) throw std::invalid_argument("solve: no candidate groups");
    std::vector<AbelianGroup> cand;
    for (const AbelianGroup& g : problem.candidates) {
        if (g.rank() != 0)
            throw std::invalid_argument("solve: candidate torsion groups must be finite");
        if (std::find(cand.begin(), cand.end(), g) == cand.end()) cand.push_back(g);
    }
    if (options.use_sphere &&
        static_cast<long>(problem.sphere_target.size()) != problem.dim + 3)
        throw std::invalid_argument("solve: sphere target must list H^0..H^{dim+2}");
    for (const auto& [k, dim] : problem.mod2_dims) {
        if (k < 0 || k > problem.dim || dim < 0)
            throw std::invalid_argument("solve: malformed mod-2 dimension record");
    }
    for (long N : problem.so3_vanishing)
        if (N < 4 || N + 1 > problem.dim)
            throw std::invalid_argument("solve: so3 vanishing degree out of range");

    const std::vector<long> ks = problem.unknown_degrees();
    long total = 1;
    for (size_t i = 0; i < ks.size(); ++i) {
        if (total > (1L << 40) / static_cast<long>(cand.size()))
            throw std::invalid_argument("solve: search space too large");
        total *= static_cast<long>(cand.size());
    }

    std::vector<Outcome> outcomes(static_cast<size_t>(total));
    std::atomic<bool> bad{false};
    std::exception_ptr error;
    (void)parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (long idx = 0; idx < total; ++idx) {
        if (bad.load()) continue;
        try {
            outcomes[static_cast<size_t>(idx)] =
                evaluate_assignment(problem, decode(ks, cand, idx), options);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!error) error = std::current_exception();
            }
            bad.store(true);
        }
    }
    if (error) std::rethrow_exception(error);

    SolveResult res;
    res.examined = total;
    static const char* names[] = {"", "uct", "sphere", "so3"};
    for (long idx = 0; idx < total; ++idx) {
        const Outcome& o = outcomes[static_cast<size_t>(idx)];
        if (o.failed == 0) {
            res.solutions.push_back(decode(ks, cand, idx));
        } else if (options.explain) {
            res.explain_log.push_back(decode(ks, cand, idx).to_string() + " -> " +
                                      names[o.failed] + " at degree " + std::to_string(o.degree));
        }
    }
    return res;
}

}  // namespace

SolveResult solve(const TorsionProblem& problem, const SolveOptions& options) {
    return solve_impl(problem, options, true);
}

SolveResult solve_serial(const TorsionProblem& problem, const SolveOptions& options) {
    return solve_impl(problem, options, false);
}

TorsionProblem grassmann_problem(long n) {
    if (n != 8 && n != 10)
        throw std::invalid_argument("grassmann_problem: only n = 8 and n = 10 are bundled");
    TorsionProblem p;
    p.n = n;
    p.dim = 3 * (n - 3);
    const SpaceRecord& rec = get_space(n == 8 ? "G~_8_3" : "G~_10_3");
    p.betti = rec.poincare;
    for (const auto& [k, entry] : rec.mod2_dims) p.mod2_dims[k] = entry.dim;
    p.sphere_target = get_space(n == 8 ? "W8_2_1" : "W10_2_1").integral_groups;
    if (n == 10) {
        for (const auto& [k, g] : get_space("V_10_3_facts").integral_partial)
            if (g.is_trivial()) p.so3_vanishing.push_back(k);
    }
    p.candidates = {AbelianGroup::free_group(0), AbelianGroup::cyclic(Int(2)),
                    AbelianGroup::cyclic(Int(3)), AbelianGroup::cyclic(Int(4)),
                    AbelianGroup::from_cyclic_orders(0, {Int(2), Int(2)})};
    return p;
}

}  // namespace gcoh
