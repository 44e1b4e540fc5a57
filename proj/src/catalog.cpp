#include "gcoh/catalog.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcoh {
namespace {

using nlohmann::json;

Monomial mono(std::size_t ngens, std::initializer_list<std::pair<long, long>> entries) {
    Monomial m{std::vector<long>(ngens, 0)};
    for (const auto& e : entries) m.exps[static_cast<std::size_t>(e.first)] = e.second;
    return m;
}

IntPolynomial poly(std::vector<std::pair<Int, Monomial>> terms) {
    return poly_from_terms(std::move(terms));
}

std::vector<AbelianGroup> table_of(std::initializer_list<const char*> entries) {
    std::vector<AbelianGroup> out;
    for (const char* s : entries) {
        auto g = AbelianGroup::parse(s);
        if (!g) throw std::logic_error(std::string("bad group literal: ") + s);
        out.push_back(*g);
    }
    return out;
}

AbelianGroup group_of(const std::string& s) {
    auto g = AbelianGroup::parse(s);
    if (!g) throw std::logic_error("bad group literal: " + s);
    return *g;
}

RingPresentation make_g83() {
    RingPresentation p;
    p.name = "G83";
    p.generators = {{"y3", 3}, {"x4", 4}, {"x7", 7}};
    p.top_degree = 15;
    p.relations = {
        poly({{2, mono(3, {{0, 1}})}}),                  // 2*y3
        poly({{1, mono(3, {{0, 1}, {1, 1}})}}),          // y3*x4
        poly({{1, mono(3, {{0, 3}})}}),                  // y3^3
        poly({{1, mono(3, {{1, 3}})}}),                  // x4^3
        poly({{1, mono(3, {{2, 2}})}}),                  // x7^2
    };
    return p;
}

RingPresentation make_g103() {
    RingPresentation p;
    p.name = "G103";
    p.generators = {{"y3", 3}, {"x4", 4}, {"x9", 9}, {"x12", 12}, {"x13", 13}};
    p.top_degree = 21;
    p.relations = {
        poly({{2, mono(5, {{0, 1}})}}),                            // 2*y3
        poly({{1, mono(5, {{0, 3}})}}),                            // y3^3
        poly({{1, mono(5, {{0, 2}, {1, 1}})}}),                    // y3^2*x4
        poly({{1, mono(5, {{0, 1}, {1, 2}})}}),                    // y3*x4^2
        poly({{1, mono(5, {{1, 3}})}, {-2, mono(5, {{3, 1}})}}),   // x4^3 - 2*x12
        poly({{1, mono(5, {{0, 1}, {2, 1}})}}),                    // y3*x9
        poly({{1, mono(5, {{1, 1}, {2, 1}})}, {-2, mono(5, {{4, 1}})}}),  // x4*x9 - 2*x13
        poly({{1, mono(5, {{0, 1}, {4, 1}})}, {-1, mono(5, {{1, 1}, {3, 1}})}}),  // y3*x13 - x4*x12
        poly({{1, mono(5, {{2, 2}})}}),                            // x9^2
        poly({{1, mono(5, {{0, 2}, {3, 1}})}}),                    // y3^2*x12
        poly({{1, mono(5, {{1, 2}, {3, 1}})}}),                    // x4^2*x12
        poly({{1, mono(5, {{2, 1}, {3, 1}})}, {-1, mono(5, {{1, 2}, {4, 1}})}}),  // x9*x12 - x4^2*x13
    };
    return p;
}

// H^*(G~_{2n,2}; Z) on Omega_t = e(tautological), kappa, Omega = e(complement),
// mu = fundamental class.  Omega and mu are pinned by the relations
// Omega = 2*kappa - Omega_t^{n-1} and mu = kappa*Omega; the remaining products
// carry the sign (-1)^{n-1}, under which all syzygies close and the graded
// table is the complex-quadric table (rank 1 in even degrees, 2 in the middle).
RingPresentation make_lai_even(long n) {
    RingPresentation p;
    p.name = "LaiEven" + std::to_string(n);
    p.generators = {{"Omega_t", 2}, {"kappa", 2 * n - 2}, {"Omega", 2 * n - 2}, {"mu", 4 * n - 4}};
    p.top_degree = 4 * n - 4;
    const long sgn = (n % 2 != 0) ? 1 : -1;  // (-1)^{n-1}
    const long c = (n % 2 != 0) ? 1 : 0;     // (1 + (-1)^{n-1}) / 2
    p.relations = {
        // Omega_t^n - 2*kappa*Omega_t
        poly({{1, mono(4, {{0, n}})}, {-2, mono(4, {{0, 1}, {1, 1}})}}),
        // Omega + Omega_t^{n-1} - 2*kappa
        poly({{1, mono(4, {{2, 1}})}, {1, mono(4, {{0, n - 1}})}, {-2, mono(4, {{1, 1}})}}),
        // kappa*Omega_t^{n-1} - (-1)^{n-1}*mu
        poly({{1, mono(4, {{0, n - 1}, {1, 1}})}, {-sgn, mono(4, {{3, 1}})}}),
        // kappa*Omega - mu
        poly({{1, mono(4, {{1, 1}, {2, 1}})}, {-1, mono(4, {{3, 1}})}}),
        // kappa^2 - ((1+(-1)^{n-1})/2)*mu
        poly({{1, mono(4, {{1, 2}})}, {-c, mono(4, {{3, 1}})}}),
        // Omega_t^{2n-2} - 2*(-1)^{n-1}*mu
        poly({{1, mono(4, {{0, 2 * n - 2}})}, {-2 * sgn, mono(4, {{3, 1}})}}),
        // Omega^2 - 2*mu
        poly({{1, mono(4, {{2, 2}})}, {-2, mono(4, {{3, 1}})}}),
    };
    return p;
}

// H^*(G~_{2n+1,2}; Z) = Z[x2, x{2n}] / (x2^n - 2*x{2n}, x{2n}^2), top 4n-2.
RingPresentation make_odd_g2(long n) {
    RingPresentation p;
    p.name = "OddG2_" + std::to_string(n);
    const std::string hi = "x" + std::to_string(2 * n);
    p.generators = {{"x2", 2}, {hi, 2 * n}};
    p.top_degree = 4 * n - 2;
    p.relations = {
        poly({{1, mono(2, {{0, n}})}, {-2, mono(2, {{1, 1}})}}),
        poly({{1, mono(2, {{1, 2}})}}),
    };
    return p;
}

// H^*(W^{2n}_{2,1}; Z) = Z[xb2, xb{2n-2}, xb{2n-1}] /
// (xb2^{n-1} - 2*xb{2n-2}, xb{2n-2}^2, xb{2n-1}^2), top 6n-7.
RingPresentation make_w21(long n) {
    RingPresentation p;
    p.name = "W21_" + std::to_string(n);
    const std::string mid = "xb" + std::to_string(2 * n - 2);
    const std::string odd = "xb" + std::to_string(2 * n - 1);
    p.generators = {{"xb2", 2}, {mid, 2 * n - 2}, {odd, 2 * n - 1}};
    p.top_degree = 6 * n - 7;
    p.relations = {
        poly({{1, mono(3, {{0, n - 1}})}, {-2, mono(3, {{1, 1}})}}),
        poly({{1, mono(3, {{1, 2}})}}),
        poly({{1, mono(3, {{2, 2}})}}),
    };
    return p;
}

std::map<std::string, SpaceRecord> build_registry() {
    std::map<std::string, SpaceRecord> reg;

    {
        SpaceRecord r;
        r.id = "V_7_2";
        r.citation = "Paechter, The groups pi_r(V_{n,m}) and classical Stiefel tables: "
                     "H^*(V_{7,2}; Z) = (Z, 0, 0, 0, 0, 0, Z_2, 0, 0, 0, 0, Z)";
        r.integral_groups =
            table_of({"Z", "0", "0", "0", "0", "0", "Z_2", "0", "0", "0", "0", "Z"});
        reg.emplace(r.id, std::move(r));
    }
    {
        SpaceRecord r;
        r.id = "V_10_3_facts";
        r.citation = "Mimura-Toda, Topology of Lie groups (Stiefel manifold tables): "
                     "H^14(V_{10,3}; Z) = H^18(V_{10,3}; Z) = H^19(V_{10,3}; Z) = 0";
        r.integral_partial = {{14, AbelianGroup{}}, {18, AbelianGroup{}}, {19, AbelianGroup{}}};
        reg.emplace(r.id, std::move(r));
    }
    {
        SpaceRecord r;
        r.id = "SO3";
        r.citation = "standard textbook fact, recorded directly: "
                     "H^*(SO(3); Z) = (Z, 0, Z_2, Z)";
        r.integral_groups = table_of({"Z", "0", "Z_2", "Z"});
        reg.emplace(r.id, std::move(r));
    }
    {
        SpaceRecord r;
        r.id = "G~_8_3";
        r.citation = "ranks: classical Poincare polynomial of G~_{8,3}; torsion and ring "
                     "structure: computed by this toolkit's solver and ring engine";
        r.presentation = make_g83();
        r.poincare = {1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 1};
        r.integral_groups = table_of({"Z", "0", "0", "Z_2", "Z", "0", "Z_2", "Z", "Z", "0", "Z_2",
                                      "Z", "0", "Z_2", "0", "Z"});
        r.mod2_dims = {{6, Mod2Entry{1, "",
                                     "Korbas, Proposition 3.1: dim_{Z_2} H^6(G~_{8,3}; Z_2) = 1"}}};
        reg.emplace(r.id, std::move(r));
    }
    {
        SpaceRecord r;
        r.id = "G~_10_3";
        r.citation = "ranks: classical Poincare polynomial of G~_{10,3}; torsion and ring "
                     "structure: computed by this toolkit's solver and ring engine";
        r.presentation = make_g103();
        r.poincare = {1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1};
        r.integral_groups =
            table_of({"Z", "0", "0", "Z_2", "Z", "0", "Z_2", "Z_2", "Z", "Z", "0", "0", "Z", "Z",
                      "0", "Z_2", "Z_2", "Z", "0", "Z_2", "0", "Z"});
        const std::string korbas = "Korbas, Proposition 3.1 (mod-2 cohomology of G~_{10,3})";
        r.mod2_dims = {
            {4, Mod2Entry{1, "w~_2^2", korbas}},
            {8, Mod2Entry{1, "", korbas}},
            {9, Mod2Entry{1, "", korbas}},
            {10, Mod2Entry{0, "", korbas}},
            {12, Mod2Entry{1, "a_12", korbas}},
            {16, Mod2Entry{1, "w~_2^2*a_12", korbas}},
        };
        reg.emplace(r.id, std::move(r));
    }
    {
        SpaceRecord r;
        r.id = "W8_2_1";
        r.citation = "computed: graded table of the W^8_{2,1} presentation "
                     "Z[xb2, xb6, xb7]/(xb2^3 - 2*xb6, xb6^2, xb7^2), cross-checked against "
                     "the sphere-bundle route over G~_{8,2}";
        r.presentation = make_w21(4);
        r.presentation->name = "W8_2_1";
        r.integral_groups = table_of({"Z", "0", "Z", "0", "Z", "0", "Z", "Z", "Z", "Z", "Z", "Z",
                                      "0", "Z", "0", "Z", "0", "Z"});
        reg.emplace(r.id, std::move(r));
    }
    {
        SpaceRecord r;
        r.id = "W10_2_1";
        r.citation = "computed: graded table of the W^10_{2,1} presentation "
                     "Z[xb2, xb8, xb9]/(xb2^4 - 2*xb8, xb8^2, xb9^2), cross-checked against "
                     "the sphere-bundle route over G~_{10,2}";
        r.presentation = make_w21(5);
        r.presentation->name = "W10_2_1";
        r.integral_groups =
            table_of({"Z", "0", "Z", "0", "Z", "0", "Z", "0", "Z", "Z", "Z", "Z", "Z", "Z", "Z",
                      "Z", "0", "Z", "0", "Z", "0", "Z", "0", "Z"});
        reg.emplace(r.id, std::move(r));
    }

    for (const auto& [id, rec] : reg) {
        if (rec.presentation) {
            if (auto err = rec.presentation->validate()) {
                throw std::logic_error("catalog presentation " + id + ": " + *err);
            }
        }
    }
    return reg;
}

const std::map<std::string, SpaceRecord>& registry() {
    static const std::map<std::string, SpaceRecord> reg = build_registry();
    return reg;
}

json poly_to_j(const IntPolynomial& f) {
    json arr = json::array();
    for (const auto& [c, m] : f.terms) {
        arr.push_back(json::array({c.str(), m.exps}));
    }
    return arr;
}

IntPolynomial poly_from_j(const json& j) {
    std::vector<std::pair<Int, Monomial>> terms;
    for (const auto& t : j) {
        Int c(t.at(0).get<std::string>());
        Monomial m{t.at(1).get<std::vector<long>>()};
        terms.emplace_back(std::move(c), std::move(m));
    }
    return poly_from_terms(std::move(terms));
}

json pres_to_j(const RingPresentation& p) {
    json j;
    j["name"] = p.name;
    json gens = json::array();
    for (const auto& g : p.generators) gens.push_back(json::array({g.name, g.degree}));
    j["generators"] = std::move(gens);
    json rels = json::array();
    for (const auto& r : p.relations) rels.push_back(poly_to_j(r));
    j["relations"] = std::move(rels);
    j["top_degree"] = p.top_degree;
    j["sign_rule"] = p.sign_rule == SignRule::graded_commutative ? "graded_commutative"
                                                                 : "strictly_commutative";
    return j;
}

RingPresentation pres_from_j(const json& j) {
    RingPresentation p;
    p.name = j.at("name").get<std::string>();
    for (const auto& g : j.at("generators")) {
        p.generators.push_back({g.at(0).get<std::string>(), g.at(1).get<long>()});
    }
    for (const auto& r : j.at("relations")) p.relations.push_back(poly_from_j(r));
    p.top_degree = j.at("top_degree").get<long>();
    const std::string rule = j.at("sign_rule").get<std::string>();
    if (rule == "graded_commutative") {
        p.sign_rule = SignRule::graded_commutative;
    } else if (rule == "strictly_commutative") {
        p.sign_rule = SignRule::strictly_commutative;
    } else {
        throw std::invalid_argument("unknown sign_rule: " + rule);
    }
    return p;
}

}  // namespace

bool operator==(const SpaceRecord& a, const SpaceRecord& b) {
    if (a.id != b.id || a.citation != b.citation) return false;
    if (a.integral_groups != b.integral_groups) return false;
    if (a.integral_partial != b.integral_partial) return false;
    if (a.mod2_dims != b.mod2_dims) return false;
    if (a.poincare != b.poincare) return false;
    if (a.presentation.has_value() != b.presentation.has_value()) return false;
    if (a.presentation &&
        !(*a.presentation == *b.presentation && a.presentation->name == b.presentation->name)) {
        return false;
    }
    return true;
}

const SpaceRecord& get_space(const std::string& id) {
    const auto& reg = registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw std::out_of_range("unknown space id: " + id);
    return it->second;
}

std::vector<std::string> space_ids() {
    std::vector<std::string> out;
    for (const auto& [id, rec] : registry()) out.push_back(id);
    return out;
}

RingPresentation instantiate_family(const std::string& family, long n) {
    if (n < 2 || n > 8) {
        throw std::invalid_argument("family parameter n out of range 2..8: " + std::to_string(n));
    }
    if (family == "lai_even") return make_lai_even(n);
    if (family == "odd_g2") return make_odd_g2(n);
    if (family == "w21") {
        if (n < 3) {
            throw std::invalid_argument("w21 requires n >= 3 (the n = 2 presentation degenerates)");
        }
        return make_w21(n);
    }
    throw std::invalid_argument("unknown family: " + family);
}

std::string record_to_json(const SpaceRecord& rec) {
    json j;
    j["id"] = rec.id;
    j["citation"] = rec.citation;
    if (!rec.integral_groups.empty()) {
        json arr = json::array();
        for (const auto& g : rec.integral_groups) arr.push_back(g.to_string());
        j["integral_groups"] = std::move(arr);
    }
    if (!rec.integral_partial.empty()) {
        json obj = json::object();
        for (const auto& [k, g] : rec.integral_partial) obj[std::to_string(k)] = g.to_string();
        j["integral_partial"] = std::move(obj);
    }
    if (!rec.mod2_dims.empty()) {
        json obj = json::object();
        for (const auto& [k, e] : rec.mod2_dims) {
            obj[std::to_string(k)] =
                json{{"dim", e.dim}, {"generator", e.generator}, {"citation", e.citation}};
        }
        j["mod2_dims"] = std::move(obj);
    }
    if (!rec.poincare.empty()) j["poincare"] = rec.poincare;
    if (rec.presentation) j["presentation"] = pres_to_j(*rec.presentation);
    return j.dump(2);
}

SpaceRecord record_from_json(const std::string& text) {
    const json j = json::parse(text);
    SpaceRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.citation = j.at("citation").get<std::string>();
    if (j.contains("integral_groups")) {
        for (const auto& s : j.at("integral_groups")) {
            rec.integral_groups.push_back(group_of(s.get<std::string>()));
        }
    }
    if (j.contains("integral_partial")) {
        for (const auto& [k, v] : j.at("integral_partial").items()) {
            rec.integral_partial.emplace(std::stol(k), group_of(v.get<std::string>()));
        }
    }
    if (j.contains("mod2_dims")) {
        for (const auto& [k, v] : j.at("mod2_dims").items()) {
            Mod2Entry e{v.at("dim").get<long>(), v.at("generator").get<std::string>(),
                        v.at("citation").get<std::string>()};
            rec.mod2_dims.emplace(std::stol(k), std::move(e));
        }
    }
    if (j.contains("poincare")) rec.poincare = j.at("poincare").get<std::vector<long>>();
    if (j.contains("presentation")) rec.presentation = pres_from_j(j.at("presentation"));
    return rec;
}

}  // namespace gcoh
