#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcoh/abelian.hpp"

using namespace gcoh;

namespace {
AbelianGroup G(const char* s) {
    auto g = AbelianGroup::parse(s);
    REQUIRE(g.has_value());
    return *g;
}
}  // namespace

TEST_CASE("canonical form") {
    CHECK(AbelianGroup::from_cyclic_orders(0, {Int(2), Int(3)}) == AbelianGroup::cyclic(6));
    AbelianGroup g = AbelianGroup::from_cyclic_orders(1, {Int(6), Int(4)});
    CHECK(g.rank() == 1);
    CHECK(g.invariant_factors() == std::vector<Int>{2, 12});
    CHECK(AbelianGroup::from_cyclic_orders(0, {Int(1), Int(1)}).is_trivial());
    CHECK(AbelianGroup::cyclic(0) == AbelianGroup::free_group(1));
    CHECK(AbelianGroup::from_cyclic_orders(0, {Int(0), Int(2)}) == G("Z + Z_2"));
    // divisor chain invariant
    AbelianGroup h = AbelianGroup::from_cyclic_orders(0, {Int(12), Int(18), Int(2)});
    for (size_t i = 0; i + 1 < h.invariant_factors().size(); ++i)
        CHECK(h.invariant_factors()[i + 1] % h.invariant_factors()[i] == 0);
}

TEST_CASE("serialization") {
    CHECK(AbelianGroup().to_string() == "0");
    CHECK(AbelianGroup::free_group(1).to_string() == "Z");
    CHECK(AbelianGroup::free_group(3).to_string() == "Z^3");
    CHECK(AbelianGroup::cyclic(2).to_string() == "Z_2");
    CHECK(G("Z ⊕ Z_2").to_string() == "Z ⊕ Z_2");
    CHECK(G("Z + Z_2") == G("Z ⊕ Z_2"));
    CHECK(G("Z_4 + Z_2").to_string() == "Z_2 ⊕ Z_4");
    CHECK(G("Z^2+Z_2+Z_6").invariant_factors() == std::vector<Int>{2, 6});
    CHECK_FALSE(AbelianGroup::parse("Q").has_value());
    CHECK_FALSE(AbelianGroup::parse("").has_value());
    CHECK(G("0").is_trivial());
    // round trip over a battery
    for (const char* s : {"0", "Z", "Z^2", "Z_2", "Z ⊕ Z_2", "Z^2 ⊕ Z_2 ⊕ Z_4"})
        CHECK(G(s).to_string() == s);
    CHECK(G("Z + Z_2").to_json() == "{\"rank\": 1, \"torsion\": [2]}");
    CHECK(AbelianGroup().to_json() == "{\"rank\": 0, \"torsion\": []}");
}

TEST_CASE("cokernel") {
    IntMat m1 = IntMat::from_rows({{Int(2), Int(0)}, {Int(0), Int(0)}});
    CHECK(cokernel(m1) == G("Z + Z_2"));
    IntMat m2 = IntMat::from_rows({{Int(2)}});
    CHECK(cokernel(m2) == G("Z_2"));
    // basis e1, e2, e3 with relation columns e1-2e2, e2-2e3, e3: eliminating
    // from the last column upward kills everything
    IntMat m3 = IntMat::from_rows(
        {{Int(1), Int(0), Int(0)}, {Int(-2), Int(1), Int(0)}, {Int(0), Int(-2), Int(1)}});
    CHECK(cokernel(m3).is_trivial());
    CHECK(cokernel(IntMat(2, 0)) == AbelianGroup::free_group(2));
    // invariant factor 1 never shows up
    IntMat m4 = IntMat::from_rows({{Int(1), Int(0)}, {Int(0), Int(6)}});
    CHECK(cokernel(m4) == G("Z_6"));
}

TEST_CASE("tensor and tor with Z_2") {
    CHECK(tensor_z2_dim(G("Z")) == 1);
    CHECK(tor_z2_dim(G("Z")) == 0);
    CHECK(tensor_z2_dim(G("Z_2")) == 1);
    CHECK(tor_z2_dim(G("Z_2")) == 1);
    CHECK(tensor_z2_dim(G("Z + Z_2 + Z_3")) == 2);
    CHECK(tor_z2_dim(G("Z + Z_2 + Z_3")) == 1);
    for (const char* s : {"0", "Z", "Z_2", "Z_4", "Z_2 + Z_4", "Z^2 + Z_6", "Z_9", "Z + Z_12"})
        CHECK(tensor_z2_dim(G(s)) == G(s).rank() + tor_z2_dim(G(s)));
}

TEST_CASE("exists_extension fixed table") {
    struct Row {
        const char *sub, *total, *quot;
        bool want;
    };
    const Row rows[] = {
        {"0", "0", "0", true},
        {"Z_2", "Z_4", "Z_2", true},
        {"Z", "Z + Z_2", "Z_2", true},
        {"Z_4", "Z_2 + Z_2", "0", false},
        {"Z_2", "Z_2 + Z_2", "Z_2", true},
        {"Z_4", "Z_8", "Z_2", true},
        {"Z_2", "Z_8", "Z_4", true},
        {"Z_2", "Z_2 + Z_4", "Z_4", true},
        {"Z_4", "Z_2 + Z_4", "Z_2", true},
        {"Z_2 + Z_2", "Z_2 + Z_4", "Z_2", true},
        {"Z_4", "Z_2 + Z_8", "Z_4", true},
        {"Z_9", "Z_3 + Z_3", "0", false},
        {"Z_3", "Z_9", "Z_3", true},
        {"Z_3", "Z_3 + Z_3", "Z_3", true},
        {"Z_2", "Z_2", "Z_2", false},
        {"Z_2", "Z_4", "Z_4", false},
        {"Z", "Z", "0", true},
        {"Z", "Z", "Z", false},
        {"Z", "Z", "Z_2", true},
        {"Z", "Z", "Z_12", true},
        {"Z", "Z^2", "Z", true},
        {"Z^2", "Z^2", "Z_2", true},
        {"Z + Z_2", "Z + Z_2", "Z_2", true},
        {"Z + Z_2", "Z + Z_4", "Z_2", true},
        {"Z + Z_4", "Z + Z_2 + Z_2", "Z_2", false},
        {"Z_2", "Z + Z_4", "Z", false},  // torsion quotient of free part impossible
        {"Z_2", "Z", "Z_2", false},
        {"0", "Z_6", "Z_6", true},
        {"Z_2", "Z_6", "Z_3", true},
        {"Z_3", "Z_6", "Z_2", true},
        {"Z_2", "Z_6", "Z_2", false},
    };
    for (const Row& r : rows) {
        CAPTURE(r.sub);
        CAPTURE(r.total);
        CAPTURE(r.quot);
        CHECK(exists_extension(G(r.sub), G(r.total), G(r.quot)) == r.want);
    }
}

TEST_CASE("exists_extension split property") {
    const char* names[] = {"0", "Z", "Z_2", "Z_3", "Z_4", "Z_2 + Z_2", "Z + Z_2", "Z_9"};
    for (const char* a : names)
        for (const char* b : names) {
            CAPTURE(a);
            CAPTURE(b);
            CHECK(exists_extension(G(a), G(a).direct_sum(G(b)), G(b)));
        }
}

TEST_CASE("exists_hom_with") {
    // multiplication by 2 on Z
    CHECK(exists_hom_with(G("Z"), G("Z"), G("0"), G("Z_2")));
    // only the zero map leaves Z_2 for Z
    CHECK_FALSE(exists_hom_with(G("Z_2"), G("Z"), G("0"), G("0")));
    CHECK_FALSE(exists_hom_with(G("Z_2"), G("Z"), G("0"), G("Z_2")));
    CHECK(exists_hom_with(G("Z_2"), G("Z_2"), G("0"), G("0")));
    CHECK(exists_hom_with(G("Z"), G("Z_2"), G("Z"), G("0")));
    CHECK(exists_hom_with(G("Z_4"), G("Z_2"), G("Z_2"), G("0")));
    CHECK(exists_hom_with(G("Z_2 + Z_2"), G("Z_2"), G("Z_2"), G("0")));
    CHECK(exists_hom_with(G("Z_2"), G("Z_4"), G("0"), G("Z_2")));
    CHECK_FALSE(exists_hom_with(G("Z_2"), G("Z_4"), G("0"), G("Z_4")));
    CHECK(exists_hom_with(G("Z_3"), G("Z_2"), G("Z_3"), G("Z_2")));
    CHECK_FALSE(exists_hom_with(G("Z_3"), G("Z_2"), G("0"), G("Z_2")));
    CHECK(exists_hom_with(G("Z"), G("Z + Z_2"), G("0"), G("Z_2")));
    CHECK(exists_hom_with(G("Z"), G("Z + Z_2"), G("0"), G("Z_4")));  // coker (Z+Z_2)/(2,1) = Z_4
    CHECK_FALSE(exists_hom_with(G("Z"), G("Z + Z_2"), G("0"), G("Z_3")));
    // zero map always realizes (kernel, cokernel) = (g, h)
    const char* names[] = {"0", "Z", "Z_2", "Z + Z_2", "Z_4", "Z_2 + Z_2"};
    for (const char* g : names)
        for (const char* h : names) CHECK(exists_hom_with(G(g), G(h), G(g), G(h)));
}

TEST_CASE("subgroup types") {
    auto types = subgroup_types(G("Z_4"));
    CHECK(types == std::vector<AbelianGroup>{G("0"), G("Z_2"), G("Z_4")});
    types = subgroup_types(G("Z_2 + Z_4"));
    CHECK(types ==
          std::vector<AbelianGroup>{G("0"), G("Z_2"), G("Z_4"), G("Z_2+Z_2"), G("Z_2+Z_4")});
    types = subgroup_types(G("Z_6"));
    CHECK(types == std::vector<AbelianGroup>{G("0"), G("Z_2"), G("Z_3"), G("Z_6")});
}

TEST_CASE("types of a given order") {
    auto t8 = finite_types_of_order(8);
    CHECK(t8 == std::vector<AbelianGroup>{G("Z_8"), G("Z_2+Z_4"), G("Z_2+Z_2+Z_2")});
    auto t12 = finite_types_of_order(12);
    CHECK(t12 == std::vector<AbelianGroup>{G("Z_12"), G("Z_2+Z_6")});
    CHECK(finite_types_of_order(1) == std::vector<AbelianGroup>{G("0")});
    CHECK(divisors(12) == std::vector<Int>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("map kernel and cokernel types") {
    // x -> 2x on Z
    IntMat two = IntMat::from_rows({{Int(2)}});
    CHECK(map_kernel_type(G("Z"), G("Z"), two).is_trivial());
    CHECK(map_cokernel_type(G("Z"), two) == G("Z_2"));
    // canonical generator of Z_4 onto Z_2
    IntMat one = IntMat::from_rows({{Int(1)}});
    CHECK(map_kernel_type(G("Z_4"), G("Z_2"), one) == G("Z_2"));
    CHECK(map_surjective(G("Z_2"), one));
    // coordinates are torsion-first: (t, f) in Z + Z_2, projection onto Z_2
    IntMat proj = IntMat::from_rows({{Int(1), Int(0)}});
    CHECK(map_kernel_type(G("Z + Z_2"), G("Z_2"), proj) == G("Z"));
    CHECK(map_cokernel_type(G("Z_2"), proj).is_trivial());
    // zero map
    IntMat z = IntMat(1, 2);
    CHECK(map_kernel_type(G("Z + Z_2"), G("Z"), z) == G("Z + Z_2"));
    CHECK(map_cokernel_type(G("Z"), z) == G("Z"));
    CHECK(map_injective(G("Z"), G("Z"), two));
    CHECK_FALSE(map_surjective(G("Z"), two));
}
