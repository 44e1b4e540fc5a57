#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcoh/catalog.hpp"
#include "gcoh/graded_ring.hpp"
#include "gcoh/spectral.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

using namespace gcoh;

namespace {

AbelianGroup G(const char* s) {
    auto g = AbelianGroup::parse(s);
    REQUIRE(g.has_value());
    return *g;
}

// Euler class x2 for the odd_g2 family (generators x2, x_{2n}).
IntPolynomial euler_x2() { return poly_from_terms({{Int(1), Monomial{{1, 0}}}}); }

// Euler class 2*kappa - Omega_t^{n-1} for the lai_even family
// (generators Omega_t, kappa, Omega, mu).
IntPolynomial euler_lai(long n) {
    return poly_from_terms({{Int(2), Monomial{{0, 1, 0, 0}}},
                            {Int(-1), Monomial{{n - 1, 0, 0, 0}}}});
}

const BigradedEntry* find_entry(const BigradedPage& page, long p, long q) {
    for (const auto& e : page.entries)
        if (e.p == p && e.q == q) return &e;
    return nullptr;
}

const DifferentialRecord* find_diff(const BigradedPage& page, long sp, long sq) {
    for (const auto& d : page.differentials)
        if (d.source_p == sp && d.source_q == sq) return &d;
    return nullptr;
}

std::vector<AbelianGroup> table_groups(const RingPresentation& ring) {
    std::vector<AbelianGroup> out;
    for (const auto& comp : graded_table(ring)) out.push_back(comp.group);
    return out;
}

}  // namespace

TEST_CASE("circle bundle over odd_g2: three nonzero total degrees") {
    for (long n = 2; n <= 6; ++n) {
        INFO("n = " << n);
        SphereBundleSpec sp;
        sp.base = instantiate_family("odd_g2", n);
        sp.fiber_dim = 1;
        sp.euler = euler_x2();
        GysinResult r = gysin_total(sp);

        REQUIRE(static_cast<long>(r.total.size()) == 4 * n);  // degrees 0..4n-1
        for (const auto& d : r.total) {
            INFO("degree " << d.degree);
            CHECK_FALSE(d.ambiguous);
            REQUIRE(d.candidates.size() == 1);
            CHECK(d.candidates.front() == d.group);
            if (d.degree == 0 || d.degree == 4 * n - 1)
                CHECK(d.group == G("Z"));
            else if (d.degree == 2 * n)
                CHECK(d.group == G("Z_2"));
            else
                CHECK(d.group.is_trivial());
        }
    }
}

TEST_CASE("circle bundle over odd_g2: page structure and the doubled arrow") {
    SphereBundleSpec sp;
    sp.base = instantiate_family("odd_g2", 3);
    sp.fiber_dim = 1;
    sp.euler = euler_x2();
    GysinResult r = gysin_total(sp);

    CHECK(r.fiber_dim == 1);
    CHECK(r.e_page.r == 2);
    CHECK(r.einf.r == 3);
    CHECK(r.einf.differentials.empty());

    // Only rows q = 0 and q = 1 appear, over p = 0..top.
    for (const auto& e : r.e_page.entries) {
        CHECK((e.q == 0 || e.q == 1));
        CHECK(e.p >= 0);
        CHECK(e.p <= 10);
    }

    // d_2 : (4,1) -> (6,0) is multiplication by x2 on Z<x2^2> -> Z<x6>,
    // and x2^3 = 2 x6, so the single matrix entry is +-2.
    const DifferentialRecord* d = find_diff(r.e_page, 4, 1);
    REQUIRE(d != nullptr);
    CHECK(d->r == 2);
    CHECK(d->target_p == 6);
    CHECK(d->target_q == 0);
    REQUIRE(d->matrix.rows == 1);
    REQUIRE(d->matrix.cols == 1);
    Int entry = d->matrix.at(0, 0);
    CHECK((entry == 2 || entry == -2));

    // Differential records appear only for nonzero matrices; every
    // recorded one sits on row q = 1 with target row q = 0.
    for (const auto& rec : r.e_page.differentials) {
        CHECK(rec.source_q == 1);
        CHECK(rec.target_q == 0);
        CHECK(rec.target_p == rec.source_p + 2);
        bool nonzero = false;
        for (const auto& v : rec.matrix.a)
            if (v != 0) nonzero = true;
        CHECK(nonzero);
    }

    // E_inf^{0,0} = Z<1>, E_inf^{6,0} = Z_2 (cokernel of the doubled arrow),
    // E_inf^{10,1} = Z (kernel row survives at the top).
    const BigradedEntry* e00 = find_entry(r.einf, 0, 0);
    REQUIRE(e00 != nullptr);
    CHECK(e00->group == G("Z"));
    const BigradedEntry* e60 = find_entry(r.einf, 6, 0);
    REQUIRE(e60 != nullptr);
    CHECK(e60->group == G("Z_2"));
    const BigradedEntry* e101 = find_entry(r.einf, 10, 1);
    REQUIRE(e101 != nullptr);
    CHECK(e101->group == G("Z"));
}

TEST_CASE("sphere bundle over the Lai ring reproduces the W tables") {
    for (long n : {3L, 4L, 5L}) {
        INFO("n = " << n);
        SphereBundleSpec sp;
        sp.base = instantiate_family("lai_even", n);
        sp.fiber_dim = 2 * n - 3;
        sp.euler = euler_lai(n);
        GysinResult r = gysin_total(sp);

        std::vector<AbelianGroup> want = table_groups(instantiate_family("w21", n));
        REQUIRE(r.total.size() == want.size());  // degrees 0..6n-7
        for (std::size_t k = 0; k < want.size(); ++k) {
            INFO("degree " << k);
            CHECK(r.total[k].group == want[k]);
            CHECK_FALSE(r.total[k].ambiguous);
            REQUIRE(r.total[k].candidates.size() == 1);
        }
    }

    // The stored records carry the same groups.
    for (auto [n, id] : std::vector<std::pair<long, const char*>>{{4, "W8_2_1"},
                                                                  {5, "W10_2_1"}}) {
        INFO(id);
        SphereBundleSpec sp;
        sp.base = instantiate_family("lai_even", n);
        sp.fiber_dim = 2 * n - 3;
        sp.euler = euler_lai(n);
        GysinResult r = gysin_total(sp);
        const auto& rec = get_space(id);
        REQUIRE(r.total.size() == rec.integral_groups.size());
        for (std::size_t k = 0; k < r.total.size(); ++k) {
            INFO("degree " << k);
            CHECK(r.total[k].group == rec.integral_groups[k]);
        }
    }
}

TEST_CASE("Lai bundle: surviving kernel and cokernel at p = 2n-2") {
    for (long n : {3L, 4L, 5L}) {
        INFO("n = " << n);
        SphereBundleSpec sp;
        sp.base = instantiate_family("lai_even", n);
        sp.fiber_dim = 2 * n - 3;
        sp.euler = euler_lai(n);
        GysinResult r = gysin_total(sp);

        // H^{2n-2}(base) = Z^2 and the Euler arrow kills exactly one Z on
        // each side of that column.
        const BigradedEntry* base_cell = find_entry(r.e_page, 2 * n - 2, 0);
        REQUIRE(base_cell != nullptr);
        CHECK(base_cell->group == G("Z^2"));
        const BigradedEntry* k = find_entry(r.einf, 2 * n - 2, 2 * n - 3);
        REQUIRE(k != nullptr);
        CHECK(k->group == G("Z"));
        const BigradedEntry* c = find_entry(r.einf, 2 * n - 2, 0);
        REQUIRE(c != nullptr);
        CHECK(c->group == G("Z"));

        // Global rank bookkeeping: total ranks match surviving page ranks,
        // and each degree splits its rank between sub and quot.
        long total_rank = 0;
        for (const auto& d : r.total) {
            CHECK(d.group.rank() == d.sub.rank() + d.quot.rank());
            total_rank += d.group.rank();
        }
        long einf_rank = 0;
        for (const auto& e : r.einf.entries) einf_rank += e.group.rank();
        CHECK(total_rank == einf_rank);

        // The fiber-row survivor embeds into the base group of its column:
        // rank can only drop and torsion must be a subgroup type.
        std::vector<AbelianGroup> base_table = table_groups(sp.base);
        for (const auto& e : r.einf.entries) {
            if (e.q != 2 * n - 3) continue;
            const AbelianGroup& big = base_table[e.p];
            CHECK(e.group.rank() <= big.rank());
            auto subs = subgroup_types(big.torsion_part());
            CHECK(std::find(subs.begin(), subs.end(), e.group.torsion_part()) !=
                  subs.end());
        }
    }
}

TEST_CASE("zero Euler class gives the product answer with no flags") {
    struct Case {
        RingPresentation ring;
        std::vector<long> fibers;
    };
    std::vector<Case> cases;
    cases.push_back({*get_space("G~_8_3").presentation, {1, 2, 3}});
    cases.push_back({*get_space("G~_10_3").presentation, {1, 3}});
    cases.push_back({instantiate_family("odd_g2", 2), {1, 2}});
    cases.push_back({instantiate_family("lai_even", 3), {1, 3}});

    for (const auto& cs : cases) {
        std::vector<AbelianGroup> base = table_groups(cs.ring);
        for (long m : cs.fibers) {
            INFO(cs.ring.name << " with fiber dimension " << m);
            SphereBundleSpec sp;
            sp.base = cs.ring;
            sp.fiber_dim = m;
            sp.euler = IntPolynomial{};
            GysinResult r = gysin_total(sp);
            REQUIRE(static_cast<long>(r.total.size()) ==
                    cs.ring.top_degree + m + 1);
            for (const auto& d : r.total) {
                INFO("degree " << d.degree);
                long pn = d.degree - m;
                AbelianGroup below = (pn >= 0 && pn <= cs.ring.top_degree)
                                         ? base[pn]
                                         : AbelianGroup::free_group(0);
                AbelianGroup here = (d.degree <= cs.ring.top_degree)
                                        ? base[d.degree]
                                        : AbelianGroup::free_group(0);
                CHECK(d.group == here.direct_sum(below));
                CHECK_FALSE(d.ambiguous);
                REQUIRE(d.candidates.size() == 1);
            }
            // Zero differential: no recorded arrows.
            CHECK(r.e_page.differentials.empty());
        }
    }
}

TEST_CASE("a genuinely ambiguous extension is flagged with both candidates") {
    // Over the 8-row ring with Euler class x4 on an S^3 bundle, degree 6 has
    // sub = Z_2 (from H^6) and quot = Z_2 (y3 in H^3 is killed by x4), and
    // both Z_4 and Z_2+Z_2 extend one by the other.
    SphereBundleSpec sp;
    sp.base = *get_space("G~_8_3").presentation;
    sp.fiber_dim = 3;
    sp.euler = poly_from_terms({{Int(1), Monomial{{0, 1, 0}}}});  // x4
    GysinResult r = gysin_total(sp);

    const GysinDegree& d6 = r.total[6];
    CHECK(d6.degree == 6);
    CHECK(d6.sub == G("Z_2"));
    CHECK(d6.quot == G("Z_2"));
    CHECK(d6.ambiguous);
    REQUIRE(d6.candidates.size() == 2);
    CHECK(std::find(d6.candidates.begin(), d6.candidates.end(), G("Z_4")) !=
          d6.candidates.end());
    CHECK(std::find(d6.candidates.begin(), d6.candidates.end(),
                    G("Z_2 ⊕ Z_2")) != d6.candidates.end());
    CHECK(d6.group == G("Z_2 ⊕ Z_2"));  // flagged entries report the direct sum
    CHECK(std::is_sorted(d6.candidates.begin(), d6.candidates.end()));
}

TEST_CASE("gysin_total argument validation") {
    RingPresentation base = instantiate_family("odd_g2", 3);

    SphereBundleSpec bad_fiber;
    bad_fiber.base = base;
    bad_fiber.fiber_dim = 0;
    bad_fiber.euler = IntPolynomial{};
    CHECK_THROWS_AS(gysin_total(bad_fiber), std::invalid_argument);

    SphereBundleSpec wrong_degree;
    wrong_degree.base = base;
    wrong_degree.fiber_dim = 2;  // needs degree 3, x2 has degree 2
    wrong_degree.euler = euler_x2();
    CHECK_THROWS_AS(gysin_total(wrong_degree), std::invalid_argument);

    SphereBundleSpec inhomogeneous;
    inhomogeneous.base = base;
    inhomogeneous.fiber_dim = 1;
    inhomogeneous.euler =
        poly_add(euler_x2(), poly_from_terms({{Int(1), Monomial{{0, 1}}}}));
    CHECK_THROWS_AS(gysin_total(inhomogeneous), std::invalid_argument);

    SphereBundleSpec bad_base;
    bad_base.base = base;
    bad_base.base.relations.push_back(
        poly_from_terms({{Int(1), Monomial{{1}}}}));  // wrong arity
    bad_base.fiber_dim = 1;
    bad_base.euler = euler_x2();
    CHECK_THROWS_AS(gysin_total(bad_base), std::invalid_argument);
}

TEST_CASE("symbolic group display") {
    SymbolicGroup g;
    CHECK_FALSE(g.is_symbolic());
    CHECK(g.display() == "0");
    g.known = G("Z ⊕ Z_2");
    CHECK(g.display() == "Z ⊕ Z_2");
    g.symbol = "T_6";
    CHECK(g.is_symbolic());
    CHECK(g.display() == "Z ⊕ Z_2 ⊕ T_6");
    g.known = AbelianGroup::free_group(0);
    CHECK(g.display() == "T_6");
}

TEST_CASE("so3 page over fully known groups") {
    const auto& rec = get_space("G~_8_3");
    std::vector<SymbolicGroup> base;
    for (const auto& g : rec.integral_groups) base.push_back({g, ""});

    BigradedPage pg = so3_e2_page(base, 0, 14);
    CHECK(pg.r == 2);
    CHECK(pg.differentials.empty());

    // Rows 0 and 3 copy the base groups.
    for (long q : {0L, 3L}) {
        for (long p = 0; p <= 14; ++p) {
            const BigradedEntry* e = find_entry(pg, p, q);
            REQUIRE(e != nullptr);
            CHECK(e->group == rec.integral_groups[p]);
            CHECK(e->symbolic.empty());
        }
    }

    // Row 2 is H^p (x) Z_2 + Tor(H^{p+1}, Z_2).
    std::map<long, AbelianGroup> want_row2;
    for (long p = 0; p <= 14; ++p) {
        long dim = tensor_z2_dim(rec.integral_groups[p]) +
                   tor_z2_dim(rec.integral_groups[p + 1]);
        want_row2[p] = AbelianGroup::from_cyclic_orders(
            0, std::vector<Int>(dim, Int(2)));
    }
    CHECK(want_row2[2] == G("Z_2"));   // Tor from H^3
    CHECK(want_row2[6] == G("Z_2"));   // H^6 (x) Z_2
    CHECK(want_row2[5] == G("Z_2"));   // Tor from H^6
    CHECK(want_row2[4] == G("Z_2"));   // H^4 = Z tensors to Z_2
    for (long p = 0; p <= 14; ++p) {
        const BigradedEntry* e = find_entry(pg, p, 2);
        REQUIRE(e != nullptr);
        INFO("p = " << p);
        CHECK(e->group == want_row2[p]);
    }

    // Only rows 0, 2, 3 appear.
    for (const auto& e : pg.entries) CHECK((e.q == 0 || e.q == 2 || e.q == 3));
}

TEST_CASE("so3 page renders unresolved torsion symbols") {
    // Base groups of a 22-degree table with one unknown symbol T_6 in
    // degree 15 and a known Z_2 in degree 16.
    std::vector<SymbolicGroup> base(22);
    base[0].known = G("Z");
    base[15].symbol = "T_6";
    base[16].known = G("Z_2");

    BigradedPage pg = so3_e2_page(base, 14, 17);

    const BigradedEntry* r0 = find_entry(pg, 15, 0);
    REQUIRE(r0 != nullptr);
    CHECK(r0->symbolic == "T_6");
    const BigradedEntry* r3 = find_entry(pg, 15, 3);
    REQUIRE(r3 != nullptr);
    CHECK(r3->symbolic == "T_6");

    const BigradedEntry* c15 = find_entry(pg, 15, 2);
    REQUIRE(c15 != nullptr);
    CHECK(c15->symbolic == "T_6⊗Z_2 ⊕ Z_2");
    CHECK(c15->group == G("Z_2"));  // the known part: Tor(H^16, Z_2)

    const BigradedEntry* c14 = find_entry(pg, 14, 2);
    REQUIRE(c14 != nullptr);
    CHECK(c14->symbolic == "Tor(T_6, Z_2)");
    CHECK(c14->group.is_trivial());

    const BigradedEntry* c16 = find_entry(pg, 16, 2);
    REQUIRE(c16 != nullptr);
    CHECK(c16->symbolic == "Z_2");  // known dimension carried as text
    CHECK(c16->group == G("Z_2"));

    // A symbol one degree above contributes through Tor only.
    std::vector<SymbolicGroup> base2(17);
    base2[11].symbol = "T_10";
    BigradedPage pg2 = so3_e2_page(base2, 10, 15);
    const BigradedEntry* t = find_entry(pg2, 10, 2);
    REQUIRE(t != nullptr);
    CHECK(t->symbolic == "Tor(T_10, Z_2)");
    const BigradedEntry* t11 = find_entry(pg2, 11, 2);
    REQUIRE(t11 != nullptr);
    CHECK(t11->symbolic == "T_10⊗Z_2");
}

TEST_CASE("so3 page window validation") {
    std::vector<SymbolicGroup> base(10);
    CHECK_THROWS_AS(so3_e2_page(base, -1, 3), std::out_of_range);
    CHECK_THROWS_AS(so3_e2_page(base, 4, 3), std::out_of_range);
    CHECK_THROWS_AS(so3_e2_page(base, 0, 9), std::out_of_range);  // needs H^10
    CHECK_NOTHROW(so3_e2_page(base, 0, 8));

    // All-zero base: every cell trivial and unflagged.
    BigradedPage pg = so3_e2_page(base, 0, 8);
    for (const auto& e : pg.entries) {
        CHECK(e.group.is_trivial());
        CHECK(e.symbolic.empty());
    }
}

TEST_CASE("text rendering") {
    SphereBundleSpec sp;
    sp.base = instantiate_family("odd_g2", 3);
    sp.fiber_dim = 1;
    sp.euler = euler_x2();
    GysinResult r = gysin_total(sp);

    std::string text = render_page(r.e_page, "text");
    CHECK(text.find("E_2 page") != std::string::npos);
    CHECK(text.find("q\\p") != std::string::npos);
    CHECK(text.find("q=1") != std::string::npos);
    CHECK(text.find("q=0") != std::string::npos);
    CHECK(text.find("Z ⟨x2⟩") != std::string::npos);
    CHECK(text.find("d_2: (4,1) -> (6,0)") != std::string::npos);
    CHECK(text.find("Euler") != std::string::npos);

    // Same deterministic output on repeat calls.
    CHECK(render_page(r.e_page, "text") == text);

    // Symbolic cells render their text form.
    std::vector<SymbolicGroup> base(22);
    base[15].symbol = "T_6";
    base[16].known = G("Z_2");
    std::string so3 = render_page(so3_e2_page(base, 14, 17), "text");
    CHECK(so3.find("T_6⊗Z_2 ⊕ Z_2") != std::string::npos);
    CHECK(so3.find("Tor(T_6, Z_2)") != std::string::npos);
    CHECK(so3.find("q=2") != std::string::npos);
}

TEST_CASE("latex rendering") {
    SphereBundleSpec sp;
    sp.base = instantiate_family("odd_g2", 3);
    sp.fiber_dim = 1;
    sp.euler = euler_x2();
    GysinResult r = gysin_total(sp);

    std::string latex = render_page(r.e_page, "latex");
    CHECK(latex.find("\\begin{tabular}") != std::string::npos);
    CHECK(latex.find("\\end{tabular}") != std::string::npos);
    CHECK(latex.find("\\hline") != std::string::npos);
    CHECK(latex.find("\\mathbb Z") != std::string::npos);
    CHECK(latex.find("&") != std::string::npos);

    // Torsion and symbols.
    std::vector<SymbolicGroup> base(22);
    base[15].symbol = "T_6";
    base[16].known = G("Z_2");
    std::string so3 = render_page(so3_e2_page(base, 14, 17), "latex");
    CHECK(so3.find("\\mathbb Z_{2}") != std::string::npos);
    CHECK(so3.find("\\otimes") != std::string::npos);
    CHECK(so3.find("\\oplus") != std::string::npos);

    CHECK_THROWS_AS(render_page(r.e_page, "html"), std::invalid_argument);
    CHECK_NOTHROW(render_page(BigradedPage{}, "text"));
    CHECK_NOTHROW(render_page(BigradedPage{}, "latex"));
}
