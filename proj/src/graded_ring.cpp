#include "gcoh/graded_ring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gcoh {

namespace {

std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& v) {
    if (static_cast<long>(v.size()) != m.cols) throw std::logic_error("mat_vec: size mismatch");
    std::vector<Int> out(m.rows, Int(0));
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) out[i] += m.at(i, j) * v[j];
    return out;
}

std::vector<Int> reduce_coords(const AbelianGroup& g, std::vector<Int> c) {
    const auto& fac = g.invariant_factors();
    for (size_t i = 0; i < fac.size(); ++i) {
        c[i] %= fac[i];
        if (c[i] < 0) c[i] += fac[i];
    }
    return c;
}

std::string presentation_signature(const RingPresentation& p) {
    std::ostringstream os;
    for (const auto& g : p.generators) os << g.name << ':' << g.degree << ';';
    os << '|';
    for (const auto& r : p.relations) os << p.poly_string(r) << ';';
    os << "|top=" << p.top_degree << "|sr=" << (p.sign_rule == SignRule::graded_commutative);
    return os.str();
}

void monomials_rec(const RingPresentation& p, size_t gi, long remaining, Monomial& cur,
                   std::vector<Monomial>& out) {
    if (gi == p.generators.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    long d = p.generators[gi].degree;
    for (long e = remaining / d; e >= 0; --e) {
        cur.exps[gi] = e;
        monomials_rec(p, gi + 1, remaining - e * d, cur, out);
    }
    cur.exps[gi] = 0;
}

// Columns spanning the degree-d ideal piece: every product m*r with r a
// relation and m a monomial of degree d - deg(r), expressed over `basis`.
IntMat relation_columns(const RingPresentation& p, long d, const std::vector<Monomial>& basis) {
    std::map<Monomial, long> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<long>(i);
    std::vector<std::vector<Int>> cols;
    for (const auto& r : p.relations) {
        long dr = p.poly_degree(r);
        if (dr < 0 || dr > d) continue;
        for (const Monomial& m : monomials_of_degree(p, d - dr)) {
            IntPolynomial prod = poly_mul(p, poly_monomial(m), r);
            std::vector<Int> col(basis.size(), Int(0));
            for (const auto& [c, mono] : prod.terms) {
                auto it = index.find(mono);
                if (it == index.end()) throw std::logic_error("relation multiple out of basis");
                col[it->second] = c;
            }
            cols.push_back(std::move(col));
        }
    }
    IntMat mat(static_cast<long>(basis.size()), static_cast<long>(cols.size()));
    for (long j = 0; j < mat.cols; ++j)
        for (long i = 0; i < mat.rows; ++i) mat.at(i, j) = cols[j][i];
    return mat;
}

GradedComponent compute_component(const RingPresentation& p, long k) {
    GradedComponent comp;
    comp.degree = k;
    comp.basis = monomials_of_degree(p, k);
    comp.relation_matrix = relation_columns(p, k, comp.basis);
    const long nb = static_cast<long>(comp.basis.size());
    SmithResult snf = smith_normal_form(comp.relation_matrix);
    const long diaglen = static_cast<long>(snf.diag.size());
    std::vector<long> torsion_rows, free_rows;
    for (long i = 0; i < nb; ++i) {
        if (i < diaglen && snf.diag[i] >= 2)
            torsion_rows.push_back(i);
        else if (i >= diaglen || snf.diag[i] == 0)
            free_rows.push_back(i);
    }
    std::vector<Int> factors;
    for (long i : torsion_rows) factors.push_back(snf.diag[i]);
    comp.group = AbelianGroup::from_cyclic_orders(static_cast<long>(free_rows.size()), factors);
    std::vector<long> selected = torsion_rows;
    selected.insert(selected.end(), free_rows.begin(), free_rows.end());
    comp.to_canon = IntMat(static_cast<long>(selected.size()), nb);
    comp.from_canon = IntMat(nb, static_cast<long>(selected.size()));
    for (size_t s = 0; s < selected.size(); ++s)
        for (long j = 0; j < nb; ++j) {
            comp.to_canon.at(static_cast<long>(s), j) = snf.u.at(selected[s], j);
            comp.from_canon.at(j, static_cast<long>(s)) = snf.u_inv.at(j, selected[s]);
        }
    return comp;
}

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::shared_ptr<const GradedComponent> cached_component(const RingPresentation& p, long k) {
    static std::unordered_map<std::string, std::shared_ptr<const GradedComponent>> cache;
    const std::string key = presentation_signature(p) + "#" + std::to_string(k);
    {
        std::lock_guard<std::mutex> lk(cache_mutex());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto value = std::make_shared<const GradedComponent>(compute_component(p, k));
    std::lock_guard<std::mutex> lk(cache_mutex());
    auto [it, inserted] = cache.emplace(key, value);
    return it->second;
}

std::vector<Int> poly_to_coords(const GradedComponent& comp, const IntPolynomial& f) {
    std::map<Monomial, long> index;
    for (size_t i = 0; i < comp.basis.size(); ++i) index[comp.basis[i]] = static_cast<long>(i);
    std::vector<Int> w(comp.basis.size(), Int(0));
    for (const auto& [c, m] : f.terms) {
        auto it = index.find(m);
        if (it == index.end()) throw std::logic_error("monomial outside component basis");
        w[it->second] = c;
    }
    return w;
}

RingClass make_class(const RingPresentation& p, const GradedComponent& comp,
                     const std::vector<Int>& monomial_coords) {
    RingClass cls;
    cls.ring = &p;
    cls.degree = comp.degree;
    cls.coords = reduce_coords(comp.group, mat_vec(comp.to_canon, monomial_coords));
    return cls;
}

// Ideal-span membership machinery shared by ideal_member and the
// finite-presentation scan; caches one Smith factorization per degree.
struct SpanContext {
    std::vector<Monomial> basis;
    IntMat u;
    std::vector<Int> diag;
};

std::shared_ptr<const SpanContext> span_context(const RingPresentation& p, long d) {
    static std::unordered_map<std::string, std::shared_ptr<const SpanContext>> cache;
    const std::string key = presentation_signature(p) + "#span#" + std::to_string(d);
    {
        std::lock_guard<std::mutex> lk(cache_mutex());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto ctx = std::make_shared<SpanContext>();
    ctx->basis = monomials_of_degree(p, d);
    IntMat m = relation_columns(p, d, ctx->basis);
    SmithResult snf = smith_normal_form(m);
    ctx->u = snf.u;
    ctx->diag = snf.diag;
    std::lock_guard<std::mutex> lk(cache_mutex());
    auto [it, inserted] = cache.emplace(key, std::shared_ptr<const SpanContext>(ctx));
    return it->second;
}

bool span_member(const RingPresentation& p, const IntPolynomial& f) {
    if (f.is_zero()) return true;
    long d = p.poly_degree(f);
    auto ctx = span_context(p, d);
    std::map<Monomial, long> index;
    for (size_t i = 0; i < ctx->basis.size(); ++i) index[ctx->basis[i]] = static_cast<long>(i);
    std::vector<Int> b(ctx->basis.size(), Int(0));
    for (const auto& [c, m] : f.terms) {
        auto it = index.find(m);
        if (it == index.end()) throw std::logic_error("monomial outside span basis");
        b[it->second] = c;
    }
    std::vector<Int> c = mat_vec(ctx->u, b);
    const long diaglen = static_cast<long>(ctx->diag.size());
    for (long i = 0; i < static_cast<long>(c.size()); ++i) {
        if (i < diaglen && ctx->diag[i] != 0) {
            if (c[i] % ctx->diag[i] != 0) return false;
        } else if (c[i] != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

void IntPolynomial::normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return b.second < a.second; });
    std::vector<std::pair<Int, Monomial>> out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().second == t.second)
            out.back().first += t.first;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return t.first == 0; }),
              out.end());
    terms = std::move(out);
}

IntPolynomial poly_from_terms(std::vector<std::pair<Int, Monomial>> terms) {
    IntPolynomial f;
    f.terms = std::move(terms);
    f.normalize();
    return f;
}

IntPolynomial poly_monomial(const Monomial& m, const Int& coeff) {
    return poly_from_terms({{coeff, m}});
}

IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b) {
    auto terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    return poly_from_terms(std::move(terms));
}

IntPolynomial poly_scale(const IntPolynomial& a, const Int& c) {
    std::vector<std::pair<Int, Monomial>> terms;
    for (const auto& [k, m] : a.terms) terms.emplace_back(k * c, m);
    return poly_from_terms(std::move(terms));
}

long RingPresentation::gen_index(const std::string& gname) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == gname) return static_cast<long>(i);
    return -1;
}

long RingPresentation::monomial_degree(const Monomial& m) const {
    long d = 0;
    for (size_t i = 0; i < generators.size(); ++i) d += m.exps[i] * generators[i].degree;
    return d;
}

long RingPresentation::poly_degree(const IntPolynomial& f) const {
    long d = -1;
    for (const auto& [c, m] : f.terms) d = std::max(d, monomial_degree(m));
    return d;
}

bool RingPresentation::poly_homogeneous(const IntPolynomial& f) const {
    for (const auto& [c, m] : f.terms)
        if (monomial_degree(m) != monomial_degree(f.terms.front().second)) return false;
    return true;
}

std::string RingPresentation::monomial_string(const Monomial& m) const {
    std::string out;
    for (size_t i = 0; i < generators.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += generators[i].name;
        if (m.exps[i] > 1) out += '^' + std::to_string(m.exps[i]);
    }
    return out.empty() ? "1" : out;
}

std::string RingPresentation::poly_string(const IntPolynomial& f) const {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t t = 0; t < f.terms.size(); ++t) {
        Int c = f.terms[t].first;
        const bool neg = c < 0;
        Int ab = neg ? Int(-c) : c;
        if (t == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const std::string ms = monomial_string(f.terms[t].second);
        if (ab != 1)
            out += ab.str() + (ms == "1" ? "" : "*" + ms);
        else
            out += ms;
    }
    return out;
}

std::optional<std::string> RingPresentation::validate() const {
    if (top_degree < 1) return "top degree must be positive";
    for (size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].degree < 1)
            return "generator " + generators[i].name + " has non-positive degree";
        for (size_t j = i + 1; j < generators.size(); ++j)
            if (generators[i].name == generators[j].name)
                return "duplicate generator name " + generators[i].name;
    }
    for (const auto& r : relations) {
        for (const auto& [c, m] : r.terms)
            if (m.exps.size() != generators.size())
                return "relation monomial with wrong arity";
        if (r.is_zero()) return "zero relation";
        if (!poly_homogeneous(r)) return "relation " + poly_string(r) + " is not homogeneous";
        long d = poly_degree(r);
        if (d < 1 || d > 2 * top_degree)
            return "relation " + poly_string(r) + " has degree outside 1..2*top";
    }
    return std::nullopt;
}

bool operator==(const RingPresentation& a, const RingPresentation& b) {
    return a.generators == b.generators && a.relations == b.relations &&
           a.top_degree == b.top_degree && a.sign_rule == b.sign_rule;
}

std::vector<Monomial> monomials_of_degree(const RingPresentation& p, long degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    Monomial cur = p.unit_monomial();
    monomials_rec(p, 0, degree, cur, out);
    return out;
}

int koszul_sign(const RingPresentation& p, const Monomial& a, const Monomial& b) {
    long swaps = 0;
    for (size_t i = 0; i < p.generators.size(); ++i) {
        if (p.generators[i].degree % 2 == 0 || b.exps[i] == 0) continue;
        for (size_t j = i + 1; j < p.generators.size(); ++j)
            if (p.generators[j].degree % 2 != 0) swaps += b.exps[i] * a.exps[j];
    }
    return swaps % 2 == 0 ? 1 : -1;
}

IntPolynomial poly_mul(const RingPresentation& p, const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<std::pair<Int, Monomial>> terms;
    for (const auto& [ca, ma] : a.terms)
        for (const auto& [cb, mb] : b.terms) {
            Monomial m = ma;
            for (size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
            int sign = p.sign_rule == SignRule::graded_commutative ? koszul_sign(p, ma, mb) : 1;
            terms.emplace_back(ca * cb * sign, std::move(m));
        }
    return poly_from_terms(std::move(terms));
}

GradedComponent component(const RingPresentation& p, long k) {
    if (k < 0 || k > p.top_degree)
        throw std::out_of_range("component degree " + std::to_string(k) + " outside 0.." +
                                std::to_string(p.top_degree));
    return *cached_component(p, k);
}

std::vector<long> hilbert_vector(const RingPresentation& p) {
    std::vector<long> ranks(p.top_degree + 1, 0);
    for (long k = 0; k <= p.top_degree; ++k) ranks[k] = component(p, k).group.rank();
    return ranks;
}

std::vector<GradedComponent> graded_table(const RingPresentation& p) {
    std::vector<GradedComponent> table(p.top_degree + 1);
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k <= p.top_degree; ++k) table[k] = component(p, k);
    return table;
}

std::vector<GradedComponent> graded_table_serial(const RingPresentation& p) {
    std::vector<GradedComponent> table(p.top_degree + 1);
    for (long k = 0; k <= p.top_degree; ++k) table[k] = compute_component(p, k);
    return table;
}

std::string graded_table_json(const RingPresentation& p) {
    std::ostringstream os;
    os << "[";
    for (long k = 0; k <= p.top_degree; ++k) {
        GradedComponent comp = component(p, k);
        if (k) os << ", ";
        os << "{\"degree\": " << k << ", \"group\": \"" << comp.group.to_string()
           << "\", \"generators\": [";
        for (long j = 0; j < comp.group.coord_count(); ++j) {
            std::vector<std::pair<Int, Monomial>> terms;
            for (long i = 0; i < comp.from_canon.rows; ++i)
                if (comp.from_canon.at(i, j) != 0)
                    terms.emplace_back(comp.from_canon.at(i, j), comp.basis[i]);
            if (j) os << ", ";
            os << '"' << p.poly_string(poly_from_terms(std::move(terms))) << '"';
        }
        os << "]}";
    }
    os << "]";
    return os.str();
}

bool RingClass::is_zero() const {
    for (const Int& c : coords)
        if (c != 0) return false;
    return true;
}

RingClass zero_class(const RingPresentation& p, long degree) {
    RingClass cls;
    cls.ring = &p;
    cls.degree = degree;
    if (degree >= 0 && degree <= p.top_degree)
        cls.coords.assign(component(p, degree).group.coord_count(), Int(0));
    return cls;
}

RingClass unit_class(const RingPresentation& p) {
    return class_of_poly(p, poly_monomial(p.unit_monomial()));
}

RingClass generator_class(const RingPresentation& p, long gen_idx) {
    Monomial m = p.unit_monomial();
    m.exps[gen_idx] = 1;
    return class_of_poly(p, poly_monomial(m));
}

RingClass class_of_poly(const RingPresentation& p, const IntPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has no degree");
    if (!p.poly_homogeneous(f))
        throw std::invalid_argument("polynomial " + p.poly_string(f) + " is not homogeneous");
    long d = p.poly_degree(f);
    if (d > p.top_degree) return zero_class(p, d);
    GradedComponent comp = component(p, d);
    return make_class(p, comp, poly_to_coords(comp, f));
}

RingClass product(const RingClass& a, const RingClass& b) {
    if (a.ring == nullptr || b.ring == nullptr)
        throw std::invalid_argument("class without a presentation");
    if (a.ring != b.ring && !(*a.ring == *b.ring))
        throw std::invalid_argument("product of classes from different presentations");
    const RingPresentation& p = *a.ring;
    long k = a.degree + b.degree;
    if (k > p.top_degree) return zero_class(p, k);
    GradedComponent ca = component(p, a.degree);
    GradedComponent cb = component(p, b.degree);
    GradedComponent ck = component(p, k);
    std::vector<Int> va = mat_vec(ca.from_canon, a.coords);
    std::vector<Int> vb = mat_vec(cb.from_canon, b.coords);
    std::vector<std::pair<Int, Monomial>> terms;
    for (size_t i = 0; i < va.size(); ++i) {
        if (va[i] == 0) continue;
        for (size_t j = 0; j < vb.size(); ++j) {
            if (vb[j] == 0) continue;
            Monomial m = ca.basis[i];
            for (size_t t = 0; t < m.exps.size(); ++t) m.exps[t] += cb.basis[j].exps[t];
            int sign = p.sign_rule == SignRule::graded_commutative
                           ? koszul_sign(p, ca.basis[i], cb.basis[j])
                           : 1;
            terms.emplace_back(va[i] * vb[j] * sign, std::move(m));
        }
    }
    return make_class(p, ck, poly_to_coords(ck, poly_from_terms(std::move(terms))));
}

RingClass class_add(const RingClass& a, const RingClass& b) {
    if (a.degree != b.degree) throw std::invalid_argument("adding classes of different degrees");
    RingClass out = a;
    for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
    if (a.ring && a.degree >= 0 && a.degree <= a.ring->top_degree)
        out.coords = reduce_coords(component(*a.ring, a.degree).group, out.coords);
    return out;
}

RingClass class_scale(const RingClass& a, const Int& c) {
    RingClass out = a;
    for (auto& x : out.coords) x *= c;
    if (a.ring && a.degree >= 0 && a.degree <= a.ring->top_degree)
        out.coords = reduce_coords(component(*a.ring, a.degree).group, out.coords);
    return out;
}

IntMat multiplication_matrix(const RingClass& c, long k) {
    const RingPresentation& p = *c.ring;
    GradedComponent src = component(p, k);
    long kt = k + c.degree;
    const long ncols = src.group.coord_count();
    if (kt > p.top_degree) return IntMat(0, ncols);
    GradedComponent dst = component(p, kt);
    IntMat f(dst.group.coord_count(), ncols);
    for (long j = 0; j < ncols; ++j) {
        RingClass e = zero_class(p, k);
        e.coords[j] = 1;
        RingClass prod = product(e, c);
        for (long i = 0; i < f.rows; ++i) f.at(i, j) = prod.coords[i];
    }
    return f;
}

HomReport ring_hom_check(const RingPresentation& src, const RingPresentation& dst,
                         const std::map<std::string, IntPolynomial>& images) {
    std::vector<RingClass> gen_images;
    for (const auto& g : src.generators) {
        auto it = images.find(g.name);
        if (it == images.end())
            throw std::invalid_argument("missing image for generator " + g.name);
        const IntPolynomial& f = it->second;
        if (f.is_zero()) {
            gen_images.push_back(zero_class(dst, g.degree));
            continue;
        }
        if (!dst.poly_homogeneous(f))
            throw std::invalid_argument("image of " + g.name + " is not homogeneous");
        if (dst.poly_degree(f) != g.degree)
            throw std::invalid_argument("image of " + g.name + " does not preserve degree");
        gen_images.push_back(class_of_poly(dst, f));
    }
    auto map_monomial = [&](const Monomial& m) {
        RingClass acc = unit_class(dst);
        for (size_t i = 0; i < src.generators.size(); ++i)
            for (long e = 0; e < m.exps[i]; ++e) acc = product(acc, gen_images[i]);
        return acc;
    };
    auto map_poly = [&](const IntPolynomial& f, long degree) {
        RingClass acc = zero_class(dst, degree);
        for (const auto& [c, m] : f.terms) acc = class_add(acc, class_scale(map_monomial(m), c));
        return acc;
    };
    HomReport report;
    report.well_defined = true;
    for (const auto& r : src.relations)
        if (!map_poly(r, src.poly_degree(r)).is_zero()) {
            report.well_defined = false;
            break;
        }
    if (!report.well_defined) return report;
    const long min_top = std::min(src.top_degree, dst.top_degree);
    report.injective.assign(min_top + 1, 0);
    report.surjective.assign(min_top + 1, 0);
    for (long k = 0; k <= min_top; ++k) {
        GradedComponent cs = component(src, k);
        GradedComponent cd = component(dst, k);
        IntMat f(cd.group.coord_count(), cs.group.coord_count());
        for (long j = 0; j < f.cols; ++j) {
            std::vector<std::pair<Int, Monomial>> lift;
            for (long i = 0; i < cs.from_canon.rows; ++i)
                if (cs.from_canon.at(i, j) != 0)
                    lift.emplace_back(cs.from_canon.at(i, j), cs.basis[i]);
            RingClass img = map_poly(poly_from_terms(std::move(lift)), k);
            for (long i = 0; i < f.rows; ++i) f.at(i, j) = img.coords[i];
        }
        report.injective[k] = map_injective(cs.group, cd.group, f) ? 1 : 0;
        report.surjective[k] = map_surjective(cd.group, f) ? 1 : 0;
    }
    return report;
}

bool ideal_member(const IntPolynomial& f, const RingPresentation& p) {
    if (f.is_zero()) return true;
    if (!p.poly_homogeneous(f))
        throw std::invalid_argument("ideal membership needs a homogeneous polynomial");
    if (p.poly_degree(f) > 2 * p.top_degree)
        throw std::invalid_argument("ideal membership degree above 2*top");
    return span_member(p, f);
}

std::vector<Monomial> finite_generating_set(const RingPresentation& p, long scan_from,
                                            long scan_to) {
    if (scan_from != p.top_degree + 1 || scan_to < scan_from)
        throw std::invalid_argument("invalid scan range");
    RingPresentation working = p;
    std::vector<Monomial> added;
    for (long d = scan_from; d <= scan_to; ++d)
        for (const Monomial& m : monomials_of_degree(working, d))
            if (!span_member(working, poly_monomial(m))) {
                added.push_back(m);
                working.relations.push_back(poly_monomial(m));
            }
    return added;
}

DualityPairing duality_pairing(const RingPresentation& p, long k) {
    GradedComponent top = component(p, p.top_degree);
    if (!(top.group == AbelianGroup::free_group(1)))
        throw std::domain_error("top component is not infinite cyclic");
    GradedComponent ca = component(p, k);
    GradedComponent cb = component(p, p.top_degree - k);
    const long ta = static_cast<long>(ca.group.invariant_factors().size());
    const long tb = static_cast<long>(cb.group.invariant_factors().size());
    DualityPairing out;
    out.matrix = IntMat(ca.group.rank(), cb.group.rank());
    for (long i = 0; i < out.matrix.rows; ++i)
        for (long j = 0; j < out.matrix.cols; ++j) {
            RingClass a = zero_class(p, k);
            a.coords[ta + i] = 1;
            RingClass b = zero_class(p, p.top_degree - k);
            b.coords[tb + j] = 1;
            out.matrix.at(i, j) = product(a, b).coords[0];
        }
    Int det = out.matrix.rows == out.matrix.cols ? determinant(out.matrix) : Int(0);
    out.unimodular = out.matrix.rows == out.matrix.cols && (det == 1 || det == -1);
    return out;
}

}  // namespace gcoh
