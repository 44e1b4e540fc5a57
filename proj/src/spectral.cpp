#include "gcoh/spectral.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gcoh {
namespace {

std::string z2_power(long dim) {
    if (dim <= 0) return "";
    if (dim == 1) return "Z_2";
    return "Z_2^" + std::to_string(dim);
}

// Generator labels of a component: polynomial lifts of the canonical
// coordinates, with " ⊗ s" appended for the fiber row.
std::vector<std::string> component_labels(const RingPresentation& base, const GradedComponent& c,
                                          bool fiber_row) {
    std::vector<std::string> out;
    for (long j = 0; j < c.group.coord_count(); ++j) {
        IntPolynomial lift;
        for (long i = 0; i < c.from_canon.rows; ++i) {
            if (c.from_canon.at(i, j) != 0) {
                lift.terms.emplace_back(c.from_canon.at(i, j), c.basis[static_cast<size_t>(i)]);
            }
        }
        lift.normalize();
        std::string s = base.poly_string(lift);
        if (fiber_row) s += " ⊗ s";
        out.push_back(std::move(s));
    }
    return out;
}

// All isomorphism types that can sit in 0 -> sub -> G -> quot -> 0: the rank
// is forced, the torsion order is |T(sub)| * t with t dividing |T(quot)|, and
// each candidate is confirmed with the exact extension test.
std::vector<AbelianGroup> extension_candidates(const AbelianGroup& sub, const AbelianGroup& quot) {
    std::vector<AbelianGroup> out;
    const long rank = sub.rank() + quot.rank();
    const Int ts = sub.torsion_part().order();
    const Int tq = quot.torsion_part().order();
    for (const Int& t : divisors(tq)) {
        for (const auto& tors : finite_types_of_order(ts * t)) {
            AbelianGroup g = AbelianGroup::free_group(rank).direct_sum(tors);
            if (exists_extension(sub, g, quot)) out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string group_latex(const AbelianGroup& g) {
    if (g.is_trivial()) return "0";
    std::vector<std::string> parts;
    if (g.rank() == 1) parts.push_back("\\mathbb Z");
    if (g.rank() > 1) parts.push_back("\\mathbb Z^{" + std::to_string(g.rank()) + "}");
    for (const Int& d : g.invariant_factors()) parts.push_back("\\mathbb Z_{" + d.str() + "}");
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " \\oplus ";
        out += parts[i];
    }
    return out;
}

std::string symbolic_latex(std::string s) {
    auto replace_all = [&s](const std::string& from, const std::string& to) {
        size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("Z_2^", "\\mathbb Z_2^");
    replace_all("Z_2", "\\mathbb Z_2");
    replace_all("\\mathbb \\mathbb", "\\mathbb");  // guard double replacement
    replace_all("⊗", "\\otimes ");
    replace_all("⊕", "\\oplus");
    replace_all("Z^", "\\mathbb Z^");
    return s;
}

std::string cell_text(const BigradedEntry& e, bool latex) {
    if (!e.symbolic.empty()) return latex ? symbolic_latex(e.symbolic) : e.symbolic;
    std::string s = latex ? group_latex(e.group) : e.group.to_string();
    if (!latex && !e.labels.empty()) {
        s += " ⟨";
        for (size_t i = 0; i < e.labels.size(); ++i) {
            if (i) s += ", ";
            s += e.labels[i];
        }
        s += "⟩";
    }
    return s;
}

std::string matrix_text(const IntMat& m) {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < m.rows; ++i) {
        if (i) os << "; ";
        for (long j = 0; j < m.cols; ++j) {
            if (j) os << ",";
            os << m.at(i, j);
        }
    }
    os << "]";
    return os.str();
}

// Visible width in terminal columns: counts UTF-8 code points, not bytes.
size_t display_width(const std::string& s) {
    size_t w = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++w;
    }
    return w;
}

}  // namespace

std::string SymbolicGroup::display() const {
    if (!is_symbolic()) return known.to_string();
    if (known.is_trivial()) return symbol;
    return known.to_string() + " ⊕ " + symbol;
}

GysinResult gysin_total(const SphereBundleSpec& spec) {
    if (auto err = spec.base.validate()) {
        throw std::invalid_argument("gysin base: " + *err);
    }
    if (spec.fiber_dim < 1) throw std::invalid_argument("gysin: fiber dimension must be positive");
    const long m = spec.fiber_dim;
    if (!spec.euler.is_zero()) {
        if (!spec.base.poly_homogeneous(spec.euler) || spec.base.poly_degree(spec.euler) != m + 1) {
            throw std::invalid_argument("gysin: euler class must be homogeneous of degree " +
                                        std::to_string(m + 1));
        }
    }
    const long top = spec.base.top_degree;
    auto table = graded_table(spec.base);

    GysinResult res;
    res.fiber_dim = m;
    res.e_page.r = m + 1;
    res.einf.r = m + 2;

    // Differential matrices d_{m+1}: E^{p,m} -> E^{p+m+1,0}, cup with euler.
    std::map<long, IntMat> diff;  // keyed by source degree p
    if (spec.euler.is_zero()) {
        for (long p = 0; p + m + 1 <= top; ++p) {
            diff.emplace(p, IntMat(table[static_cast<size_t>(p + m + 1)].group.coord_count(),
                                   table[static_cast<size_t>(p)].group.coord_count()));
        }
    } else {
        const RingClass euler_class = class_of_poly(spec.base, spec.euler);
        for (long p = 0; p + m + 1 <= top; ++p) {
            diff.emplace(p, multiplication_matrix(euler_class, p));
        }
    }

    for (long p = 0; p <= top; ++p) {
        const auto& comp = table[static_cast<size_t>(p)];
        BigradedEntry row0{p, 0, comp.group, component_labels(spec.base, comp, false), ""};
        BigradedEntry rowm{p, m, comp.group, component_labels(spec.base, comp, true), ""};
        res.e_page.entries.push_back(std::move(row0));
        res.e_page.entries.push_back(std::move(rowm));
    }
    for (const auto& [p, mat] : diff) {
        bool nonzero = false;
        for (const auto& v : mat.a)
            if (v != 0) nonzero = true;
        if (!nonzero) continue;  // only genuinely nonzero arrows are recorded
        DifferentialRecord d;
        d.r = m + 1;
        d.source_p = p;
        d.source_q = m;
        d.target_p = p + m + 1;
        d.target_q = 0;
        d.matrix = mat;
        d.note = "cup product with the Euler class";
        res.e_page.differentials.push_back(std::move(d));
    }

    // E_infinity: row 0 entries are cokernels, row m entries are kernels.
    std::vector<AbelianGroup> einf0(static_cast<size_t>(top) + 1);
    std::vector<AbelianGroup> einfm(static_cast<size_t>(top) + 1);
    for (long p = 0; p <= top; ++p) {
        const auto& g = table[static_cast<size_t>(p)].group;
        if (p - m - 1 >= 0) {
            einf0[static_cast<size_t>(p)] = map_cokernel_type(g, diff.at(p - m - 1));
        } else {
            einf0[static_cast<size_t>(p)] = g;
        }
        if (p + m + 1 <= top) {
            einfm[static_cast<size_t>(p)] =
                map_kernel_type(g, table[static_cast<size_t>(p + m + 1)].group, diff.at(p));
        } else {
            einfm[static_cast<size_t>(p)] = g;
        }
        res.einf.entries.push_back(BigradedEntry{p, 0, einf0[static_cast<size_t>(p)], {}, ""});
        res.einf.entries.push_back(BigradedEntry{p, m, einfm[static_cast<size_t>(p)], {}, ""});
    }

    for (long n = 0; n <= top + m; ++n) {
        GysinDegree deg;
        deg.degree = n;
        deg.sub = (n <= top) ? einf0[static_cast<size_t>(n)] : AbelianGroup{};
        deg.quot = (n - m >= 0 && n - m <= top) ? einfm[static_cast<size_t>(n - m)] : AbelianGroup{};
        if (spec.euler.is_zero()) {
            // Zero Euler class: the product-like additive answer, never
            // flagged.
            deg.group = deg.sub.direct_sum(deg.quot);
            deg.candidates = {deg.group};
            deg.ambiguous = false;
        } else {
            deg.candidates = extension_candidates(deg.sub, deg.quot);
            if (deg.candidates.size() == 1) {
                deg.group = deg.candidates.front();
                deg.ambiguous = false;
            } else {
                deg.group = deg.sub.direct_sum(deg.quot);
                deg.ambiguous = true;
            }
        }
        res.total.push_back(std::move(deg));
    }
    return res;
}

BigradedPage so3_e2_page(const std::vector<SymbolicGroup>& base, long window_lo, long window_hi) {
    if (window_lo < 0 || window_lo > window_hi) {
        throw std::out_of_range("so3_e2_page: bad window");
    }
    if (static_cast<size_t>(window_hi) + 1 >= base.size()) {
        throw std::out_of_range(
            "so3_e2_page: window needs base degrees up to " + std::to_string(window_hi + 1) +
            " but only " + std::to_string(base.size()) + " are given");
    }
    BigradedPage page;
    page.r = 2;
    for (long p = window_lo; p <= window_hi; ++p) {
        const auto& at = base[static_cast<size_t>(p)];
        const auto& above = base[static_cast<size_t>(p + 1)];

        for (long q : {0L, 3L}) {
            BigradedEntry e;
            e.p = p;
            e.q = q;
            e.group = at.known;
            if (at.is_symbolic()) e.symbolic = at.display();
            page.entries.push_back(std::move(e));
        }

        // Row q = 2: (H^p ⊗ Z_2) ⊕ Tor(H^{p+1}, Z_2), dimension style, with
        // symbolic contributions spelled out.
        BigradedEntry e2;
        e2.p = p;
        e2.q = 2;
        std::vector<std::string> parts;
        std::string known_tensor = z2_power(tensor_z2_dim(at.known));
        if (!known_tensor.empty()) parts.push_back(known_tensor);
        if (at.is_symbolic()) parts.push_back(at.symbol + "⊗Z_2");
        std::string known_tor = z2_power(tor_z2_dim(above.known));
        if (!known_tor.empty()) parts.push_back(known_tor);
        if (above.is_symbolic()) parts.push_back("Tor(" + above.symbol + ", Z_2)");

        long known_dim = tensor_z2_dim(at.known) + tor_z2_dim(above.known);
        e2.group = AbelianGroup::from_cyclic_orders(0, std::vector<Int>(known_dim, 2));
        // Row 2 renders in dimension style ("Z_2^t"), so the display text is
        // always set for nonzero cells; zero cells fall back to the trivial
        // group's "0".
        std::string text;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) text += " ⊕ ";
            text += parts[i];
        }
        e2.symbolic = text;
        page.entries.push_back(std::move(e2));
    }
    return page;
}

std::string render_page(const BigradedPage& page, const std::string& format) {
    const bool latex = format == "latex";
    if (!latex && format != "text") {
        throw std::invalid_argument("render_page: format must be \"text\" or \"latex\"");
    }

    std::set<long> pset;
    std::set<long> qset;
    std::map<std::pair<long, long>, const BigradedEntry*> cells;
    for (const auto& e : page.entries) {
        pset.insert(e.p);
        qset.insert(e.q);
        cells[{e.p, e.q}] = &e;
    }

    std::ostringstream os;
    if (latex) {
        os << "\\begin{tabular}{c|";
        for (size_t i = 0; i < pset.size(); ++i) os << "c";
        os << "}\n";
        os << "q \\backslash p";
        for (long p : pset) os << " & " << p;
        os << " \\\\\n\\hline\n";
        for (auto it = qset.rbegin(); it != qset.rend(); ++it) {
            os << *it;
            for (long p : pset) {
                os << " & ";
                auto c = cells.find({p, *it});
                if (c != cells.end()) os << cell_text(*c->second, true);
            }
            os << " \\\\\n";
        }
        os << "\\end{tabular}\n";
        return os.str();
    }

    // Text grid: compute column widths from cell display widths.
    std::vector<long> ps(pset.begin(), pset.end());
    std::map<long, size_t> width;
    for (long p : ps) {
        size_t w = std::to_string(p).size();
        for (long q : qset) {
            auto c = cells.find({p, q});
            if (c != cells.end()) w = std::max(w, display_width(cell_text(*c->second, false)));
        }
        width[p] = w;
    }
    auto pad = [](const std::string& s, size_t w) {
        std::string out = s;
        size_t have = display_width(s);
        while (have < w) {
            out += ' ';
            ++have;
        }
        return out;
    };

    os << "E_" << page.r << " page\n";
    os << pad("q\\p", 5);
    for (long p : ps) os << " | " << pad(std::to_string(p), width[p]);
    os << "\n";
    for (auto it = qset.rbegin(); it != qset.rend(); ++it) {
        os << pad("q=" + std::to_string(*it), 5);
        for (long p : ps) {
            auto c = cells.find({p, *it});
            os << " | " << pad(c != cells.end() ? cell_text(*c->second, false) : "", width[p]);
        }
        os << "\n";
    }
    for (const auto& d : page.differentials) {
        bool nonzero = false;
        for (const auto& v : d.matrix.a) {
            if (v != 0) nonzero = true;
        }
        if (!nonzero) continue;
        os << "d_" << d.r << ": (" << d.source_p << "," << d.source_q << ") -> (" << d.target_p
           << "," << d.target_q << ") " << matrix_text(d.matrix);
        if (!d.note.empty()) os << "  # " << d.note;
        os << "\n";
    }
    return os.str();
}

}  // namespace gcoh
