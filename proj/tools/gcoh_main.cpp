// Command-line front end: cohomology tables, sphere-bundle spectral
// sequences, and the torsion searches, over the built-in catalog plus any
// documents merged in with --file.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcoh/catalog.hpp"
#include "gcoh/dsl.hpp"
#include "gcoh/graded_ring.hpp"
#include "gcoh/solver.hpp"
#include "gcoh/spectral.hpp"
#include "gcoh/verify.hpp"

using namespace gcoh;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string latex_group(const AbelianGroup& g) {
    if (g.is_trivial()) return "0";
    std::vector<std::string> parts;
    if (g.rank() == 1) parts.push_back("\\mathbb Z");
    if (g.rank() > 1) parts.push_back("\\mathbb Z^{" + std::to_string(g.rank()) + "}");
    for (const Int& q : g.invariant_factors()) parts.push_back("\\mathbb Z_{" + q.str() + "}");
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? " \\oplus " : "") + parts[i];
    return out;
}

// Polynomial lifts of the canonical coordinates of one graded component, in
// the same form graded_table_json uses.
std::vector<std::string> coordinate_generators(const RingPresentation& ring,
                                               const GradedComponent& comp) {
    std::vector<std::string> out;
    for (long j = 0; j < comp.group.coord_count(); ++j) {
        std::vector<std::pair<Int, Monomial>> terms;
        for (long i = 0; i < comp.from_canon.rows; ++i)
            if (comp.from_canon.at(i, j) != 0)
                terms.emplace_back(comp.from_canon.at(i, j), comp.basis[i]);
        out.push_back(ring.poly_string(poly_from_terms(std::move(terms))));
    }
    return out;
}

int unsupported_format(const std::string& format, const std::string& command) {
    std::cerr << "format '" << format << "' is not supported for " << command << "\n";
    return 2;
}

// Expectation blocks are verified whenever their target is rendered; the
// outcome goes to stderr so stdout stays pure payload.
bool check_expect(const ExpectDecl* expect, const std::vector<AbelianGroup>& table) {
    if (!expect) return true;
    bool ok = true;
    for (const auto& [k, want] : expect->groups) {
        AbelianGroup got;  // degrees beyond the table are trivial
        if (k >= 0 && k < static_cast<long>(table.size())) got = table[static_cast<size_t>(k)];
        if (!(got == want)) {
            std::cerr << "expect " << expect->target << ": degree " << k << " computed "
                      << got.to_string() << ", expected " << want.to_string() << "\n";
            ok = false;
        }
    }
    if (ok) std::cerr << "expect " << expect->target << ": ok\n";
    return ok;
}

const RingPresentation& need_ring(const DslDocument& doc, const std::string& name) {
    const RingPresentation* ring = doc.find_ring(name);
    if (!ring)
        throw DslError(DslErrorKind::unresolved_name, {}, "unknown ring '" + name + "'");
    return *ring;
}

int cmd_groups(const DslDocument& doc, const std::string& name, long max_deg,
               const std::string& format) {
    const RingPresentation& ring = need_ring(doc, name);
    long limit = ring.top_degree;
    if (max_deg >= 0 && max_deg < limit) limit = max_deg;
    auto full = graded_table(ring);
    if (format == "json") {
        if (limit == ring.top_degree) {
            std::cout << graded_table_json(ring) << "\n";
        } else {
            std::cout << "[";
            for (long k = 0; k <= limit; ++k) {
                const GradedComponent& comp = full[static_cast<size_t>(k)];
                if (k) std::cout << ", ";
                std::cout << "{\"degree\": " << k << ", \"group\": \""
                          << comp.group.to_string() << "\", \"generators\": [";
                auto gens = coordinate_generators(ring, comp);
                for (size_t j = 0; j < gens.size(); ++j)
                    std::cout << (j ? ", " : "") << json_str(gens[j]);
                std::cout << "]}";
            }
            std::cout << "]\n";
        }
    } else if (format == "latex") {
        std::cout << "\\begin{tabular}{lll}\n\\hline\n$k$ & $H^k$ & generators \\\\\n\\hline\n";
        for (long k = 0; k <= limit; ++k) {
            const GradedComponent& comp = full[static_cast<size_t>(k)];
            auto gens = coordinate_generators(ring, comp);
            std::cout << "$" << k << "$ & $" << latex_group(comp.group) << "$ & $";
            for (size_t j = 0; j < gens.size(); ++j) std::cout << (j ? ",\\; " : "") << gens[j];
            std::cout << "$ \\\\\n";
        }
        std::cout << "\\hline\n\\end{tabular}\n";
    } else {
        std::cout << "ring " << ring.name << ", top degree " << ring.top_degree << "\n";
        for (long k = 0; k <= limit; ++k) {
            const GradedComponent& comp = full[static_cast<size_t>(k)];
            auto gens = coordinate_generators(ring, comp);
            std::cout << "H^" << k << ": " << comp.group.to_string() << "  [";
            for (size_t j = 0; j < gens.size(); ++j) std::cout << (j ? ", " : "") << gens[j];
            std::cout << "]\n";
        }
    }
    std::vector<AbelianGroup> groups;
    for (const auto& comp : full) groups.push_back(comp.group);
    return check_expect(doc.find_expect(name), groups) ? 0 : 1;
}

GysinResult bundle_result(const DslDocument& doc, const std::string& name,
                          const RingPresentation** base_out) {
    const BundleDecl* b = doc.find_bundle(name);
    if (!b)
        throw DslError(DslErrorKind::unresolved_name, {}, "unknown bundle '" + name + "'");
    const RingPresentation& base = need_ring(doc, b->base);
    if (base_out) *base_out = &base;
    SphereBundleSpec spec;
    spec.base = base;
    spec.fiber_dim = b->fiber_dim;
    spec.euler = b->euler;
    return gysin_total(spec);
}

void page_json(std::ostream& os, const BigradedPage& page) {
    os << "{\"r\": " << page.r << ", \"entries\": [";
    for (size_t i = 0; i < page.entries.size(); ++i) {
        const BigradedEntry& e = page.entries[i];
        os << (i ? ", " : "") << "{\"p\": " << e.p << ", \"q\": " << e.q << ", \"group\": "
           << json_str(e.symbolic.empty() ? e.group.to_string() : e.symbolic) << "}";
    }
    os << "], \"differentials\": [";
    for (size_t i = 0; i < page.differentials.size(); ++i) {
        const DifferentialRecord& d = page.differentials[i];
        os << (i ? ", " : "") << "{\"r\": " << d.r << ", \"source\": [" << d.source_p << ", "
           << d.source_q << "], \"target\": [" << d.target_p << ", " << d.target_q
           << "], \"matrix\": [";
        for (long r = 0; r < d.matrix.rows; ++r) {
            os << (r ? ", " : "") << "[";
            for (long c = 0; c < d.matrix.cols; ++c)
                os << (c ? ", " : "") << "\"" << d.matrix.at(r, c).str() << "\"";
            os << "]";
        }
        os << "]}";
    }
    os << "]}";
}

void total_json(std::ostream& os, const GysinResult& g) {
    os << "[";
    for (size_t i = 0; i < g.total.size(); ++i) {
        const GysinDegree& d = g.total[i];
        os << (i ? ", " : "") << "{\"degree\": " << d.degree << ", \"group\": "
           << json_str(d.group.to_string()) << ", \"sub\": " << json_str(d.sub.to_string())
           << ", \"quot\": " << json_str(d.quot.to_string())
           << ", \"ambiguous\": " << (d.ambiguous ? "true" : "false") << ", \"candidates\": [";
        for (size_t j = 0; j < d.candidates.size(); ++j)
            os << (j ? ", " : "") << json_str(d.candidates[j].to_string());
        os << "]}";
    }
    os << "]";
}

void total_text(std::ostream& os, const GysinResult& g) {
    os << "total space cohomology:\n";
    for (const GysinDegree& d : g.total) {
        os << "H^" << d.degree << ": " << d.group.to_string();
        if (d.ambiguous) {
            os << "  (ambiguous extension; candidates:";
            for (size_t j = 0; j < d.candidates.size(); ++j)
                os << (j ? ", " : " ") << d.candidates[j].to_string();
            os << ")";
        }
        os << "\n";
    }
}

int cmd_gysin(const DslDocument& doc, const std::string& name, const std::string& format) {
    const RingPresentation* base = nullptr;
    GysinResult g = bundle_result(doc, name, &base);
    const BundleDecl& b = *doc.find_bundle(name);
    if (format == "json") {
        std::cout << "{\"bundle\": " << json_str(name) << ", \"base\": " << json_str(b.base)
                  << ", \"fiber\": " << b.fiber_dim << ", \"e_page\": ";
        page_json(std::cout, g.e_page);
        std::cout << ", \"einf\": ";
        page_json(std::cout, g.einf);
        std::cout << ", \"total\": ";
        total_json(std::cout, g);
        std::cout << "}\n";
        return 0;
    }
    if (format == "latex") {
        std::cout << render_page(g.e_page, "latex") << "\n"
                  << render_page(g.einf, "latex") << "\n";
        std::cout << "\\begin{tabular}{ll}\n\\hline\n$N$ & $H^N$ \\\\\n\\hline\n";
        for (const GysinDegree& d : g.total)
            std::cout << "$" << d.degree << "$ & $" << latex_group(d.group)
                      << (d.ambiguous ? "$ (ambiguous) \\\\\n" : "$ \\\\\n");
        std::cout << "\\hline\n\\end{tabular}\n";
        return 0;
    }
    std::cout << "bundle " << name << ": base " << b.base << ", fiber S^" << b.fiber_dim
              << ", euler " << base->poly_string(b.euler) << "\n\n";
    std::cout << render_page(g.e_page, "text") << "\n" << render_page(g.einf, "text") << "\n";
    total_text(std::cout, g);
    return 0;
}

int cmd_page(const DslDocument& doc, const std::string& name, const std::string& format) {
    GysinResult g = bundle_result(doc, name, nullptr);
    if (format == "json") {
        page_json(std::cout, g.e_page);
        std::cout << "\n";
        return 0;
    }
    std::cout << render_page(g.e_page, format);
    return 0;
}

int cmd_solve(const DslDocument& doc, const std::string& name, bool explain, bool all,
              const std::string& format) {
    const ProblemDecl* p = doc.find_problem(name);
    if (!p)
        throw DslError(DslErrorKind::unresolved_name, {}, "unknown problem '" + name + "'");
    SolveOptions options;
    options.explain = explain;
    SolveResult res = solve(p->problem, options);
    if (format == "json") {
        std::cout << "{\"problem\": " << json_str(name) << ", \"examined\": " << res.examined
                  << ", \"solutions\": [";
        for (size_t i = 0; i < res.solutions.size(); ++i) {
            std::cout << (i ? ", " : "") << "{\"assignment\": {";
            size_t j = 0;
            for (const auto& [k, g] : res.solutions[i].unknowns)
                std::cout << (j++ ? ", " : "") << "\"T_" << k << "\": "
                          << json_str(g.to_string());
            std::cout << "}, \"cohomology\": [";
            auto table = cohomology_from(p->problem, res.solutions[i]);
            for (size_t k = 0; k < table.size(); ++k)
                std::cout << (k ? ", " : "") << json_str(table[k].to_string());
            std::cout << "]}";
        }
        std::cout << "], \"explain\": [";
        for (size_t i = 0; i < res.explain_log.size(); ++i)
            std::cout << (i ? ", " : "") << json_str(res.explain_log[i]);
        std::cout << "]}\n";
    } else if (format == "text") {
        std::cout << "problem " << name << ": examined " << res.examined
                  << " assignments, " << res.solutions.size() << " solution(s)\n";
        for (size_t i = 0; i < res.solutions.size(); ++i) {
            std::cout << "solution " << i + 1 << ": " << res.solutions[i].to_string() << "\n";
            auto table = cohomology_from(p->problem, res.solutions[i]);
            for (size_t k = 0; k < table.size(); ++k)
                std::cout << "  H^" << k << ": " << table[k].to_string() << "\n";
        }
        if (explain) {
            std::cout << "eliminated:\n";
            for (const std::string& line : res.explain_log) std::cout << "  " << line << "\n";
        }
    } else {
        return unsupported_format(format, "solve");
    }
    int rc = 0;
    if (res.solutions.size() == 1) {
        if (!check_expect(doc.find_expect(name), cohomology_from(p->problem, res.solutions[0])))
            rc = 1;
    } else if (!all) {
        std::cerr << "problem " << name << ": " << res.solutions.size()
                  << " solutions (expected exactly one)\n";
        rc = 3;
    }
    return rc;
}

int cmd_verify(const std::string& format) {
    auto results = run_verification();
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (format == "json") {
        std::cout << "[";
        for (size_t i = 0; i < results.size(); ++i)
            std::cout << (i ? ", " : "") << "{\"number\": " << results[i].number
                      << ", \"name\": " << json_str(results[i].name)
                      << ", \"passed\": " << (results[i].passed ? "true" : "false")
                      << ", \"detail\": " << json_str(results[i].detail) << "}";
        std::cout << "]\n";
    } else if (format == "text") {
        for (const auto& r : results)
            std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.number << ": "
                      << r.name << " -- " << r.detail << "\n";
        std::cout << (all ? "all criteria hold" : "FAILURES above") << "\n";
    } else {
        return unsupported_format(format, "verify-paper");
    }
    return all ? 0 : 1;
}

int cmd_finite(const DslDocument& doc, const std::string& name, long scan_to,
               const std::string& format) {
    const RingPresentation& ring = need_ring(doc, name);
    auto monos = finite_generating_set(ring, ring.top_degree + 1, scan_to);
    auto degree_of = [&](const Monomial& m) {
        return ring.poly_degree(poly_from_terms({{1, m}}));
    };
    if (format == "json") {
        std::cout << "[";
        for (size_t i = 0; i < monos.size(); ++i)
            std::cout << (i ? ", " : "") << "{\"monomial\": "
                      << json_str(ring.monomial_string(monos[i]))
                      << ", \"degree\": " << degree_of(monos[i]) << "}";
        std::cout << "]\n";
        return 0;
    }
    if (format != "text") return unsupported_format(format, "finite-presentation");
    std::cout << "new generators of " << ring.name << " in degrees " << ring.top_degree + 1
              << ".." << scan_to << ":\n";
    if (monos.empty()) std::cout << "  none\n";
    for (const Monomial& m : monos)
        std::cout << "  " << ring.monomial_string(m) << "  (degree " << degree_of(m) << ")\n";
    return 0;
}

int cmd_duality(const DslDocument& doc, const std::string& name, const std::string& format) {
    const RingPresentation& ring = need_ring(doc, name);
    auto table = graded_table(ring);
    const long top = ring.top_degree;
    bool ok = true;
    std::ostringstream pairings;
    long count = 0;
    try {
        for (long k = 0; k <= top; ++k) {
            long rk = table[static_cast<size_t>(k)].group.rank();
            if (rk != table[static_cast<size_t>(top - k)].group.rank()) {
                std::cerr << "free ranks at degrees " << k << " and " << top - k
                          << " differ\n";
                ok = false;
            }
            if (rk == 0) continue;
            DualityPairing dp = duality_pairing(ring, k);
            ok = ok && dp.unimodular;
            if (format == "json")
                pairings << (count ? ", " : "") << "{\"degree\": " << k << ", \"rank\": " << rk
                         << ", \"unimodular\": " << (dp.unimodular ? "true" : "false") << "}";
            else
                pairings << "degree " << k << " x " << top - k << ": rank " << rk
                         << " pairing " << (dp.unimodular ? "unimodular" : "NOT unimodular")
                         << "\n";
            ++count;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "duality undefined: " << e.what() << "\n";
        return 1;
    }
    bool torsion_ok = true;
    for (long k = 1; k <= top; ++k) {
        AbelianGroup t = table[static_cast<size_t>(k)].group.torsion_part();
        AbelianGroup dual = table[static_cast<size_t>(top + 1 - k)].group.torsion_part();
        if (!(t == dual)) torsion_ok = false;
    }
    ok = ok && torsion_ok;
    if (format == "json") {
        std::cout << "{\"ring\": " << json_str(name) << ", \"pairings\": [" << pairings.str()
                  << "], \"torsion_symmetric\": " << (torsion_ok ? "true" : "false") << "}\n";
    } else if (format == "text") {
        std::cout << "ring " << ring.name << ", top degree " << top << "\n" << pairings.str();
        std::cout << "torsion " << (torsion_ok ? "symmetric" : "NOT symmetric")
                  << " about degree " << top + 1 << "\n";
    } else {
        return unsupported_format(format, "duality");
    }
    return ok ? 0 : 1;
}

int cmd_mod2(const DslDocument& doc, const std::string& name, const std::string& format) {
    const RingPresentation& ring = need_ring(doc, name);
    auto table = graded_table(ring);
    auto dim_at = [&](long k) {
        long d = tensor_z2_dim(table[static_cast<size_t>(k)].group);
        if (k + 1 <= ring.top_degree) d += tor_z2_dim(table[static_cast<size_t>(k + 1)].group);
        return d;
    };
    if (format == "json") {
        std::cout << "[";
        for (long k = 0; k <= ring.top_degree; ++k)
            std::cout << (k ? ", " : "") << "{\"degree\": " << k << ", \"dim\": " << dim_at(k)
                      << "}";
        std::cout << "]\n";
        return 0;
    }
    if (format != "text") return unsupported_format(format, "mod2-dims");
    std::cout << "ring " << ring.name << ", mod-2 dimensions:\n";
    for (long k = 0; k <= ring.top_degree; ++k)
        std::cout << "dim H^" << k << " = " << dim_at(k) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact integral cohomology of the oriented Grassmannian catalog"};
    app.require_subcommand(1);
    std::vector<std::string> files;
    std::string format = "text";
    app.add_option("--file", files, "additional document(s) merged into the built-in catalog")
        ->check(CLI::ExistingFile);
    app.add_option("--format", format, "output format (text, json, latex)")
        ->check(CLI::IsMember({"text", "json", "latex"}));

    auto* sc_groups = app.add_subcommand("groups", "graded cohomology table of a ring");
    std::string groups_name;
    long max_deg = -1;
    sc_groups->add_option("ring", groups_name, "ring name")->required();
    sc_groups->add_option("--max-deg", max_deg, "print degrees 0..K only");

    auto* sc_gysin = app.add_subcommand("gysin", "sphere-bundle pages and total cohomology");
    std::string gysin_name;
    sc_gysin->add_option("bundle", gysin_name, "bundle name")->required();

    auto* sc_page = app.add_subcommand("page", "starting page of a sphere bundle");
    std::string page_name;
    sc_page->add_option("bundle", page_name, "bundle name")->required();

    auto* sc_solve = app.add_subcommand("solve", "run a torsion search problem");
    std::string solve_name;
    bool explain = false, all = false;
    sc_solve->add_option("problem", solve_name, "problem name")->required();
    sc_solve->add_flag("--explain", explain, "log why each assignment was eliminated");
    sc_solve->add_flag("--all", all, "accept any number of solutions");

    auto* sc_verify = app.add_subcommand("verify-paper", "run the built-in acceptance checks");

    auto* sc_finite = app.add_subcommand("finite-presentation",
                                         "scan degrees past the truncation for new generators");
    std::string finite_name;
    long scan_to = 0;
    sc_finite->add_option("ring", finite_name, "ring name")->required();
    sc_finite->add_option("--scan-to", scan_to, "last degree to scan")->required();

    auto* sc_duality = app.add_subcommand("duality", "top-degree pairings of a ring");
    std::string duality_name;
    sc_duality->add_option("ring", duality_name, "ring name")->required();

    auto* sc_mod2 = app.add_subcommand("mod2-dims", "mod-2 dimensions of a ring's table");
    std::string mod2_name;
    sc_mod2->add_option("ring", mod2_name, "ring name")->required();

    auto* sc_export = app.add_subcommand("export", "print the loaded document as source text");

    // Global options remain usable after the subcommand name.
    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        DslDocument doc = builtin_document();
        for (const std::string& f : files) merge_documents(doc, parse_document(slurp(f), &doc));

        if (sc_groups->parsed()) return cmd_groups(doc, groups_name, max_deg, format);
        if (sc_gysin->parsed()) return cmd_gysin(doc, gysin_name, format);
        if (sc_page->parsed()) return cmd_page(doc, page_name, format);
        if (sc_solve->parsed()) return cmd_solve(doc, solve_name, explain, all, format);
        if (sc_verify->parsed()) return cmd_verify(format);
        if (sc_finite->parsed()) return cmd_finite(doc, finite_name, scan_to, format);
        if (sc_duality->parsed()) return cmd_duality(doc, duality_name, format);
        if (sc_mod2->parsed()) return cmd_mod2(doc, mod2_name, format);
        if (sc_export->parsed()) {
            if (format != "text") return unsupported_format(format, "export");
            std::cout << print_document(doc);
            return 0;
        }
    } catch (const DslError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
