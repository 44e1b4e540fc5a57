#include "gcoh/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include "gcoh/catalog.hpp"

namespace gcoh {

namespace {

const char* kind_word(DslErrorKind k) {
    switch (k) {
        case DslErrorKind::lexical: return "lexical error";
        case DslErrorKind::syntactic: return "syntax error";
        case DslErrorKind::unresolved_name: return "unresolved name";
        case DslErrorKind::non_homogeneous: return "non-homogeneous relation";
    }
    return "error";
}

std::string format_message(DslErrorKind kind, SourcePos pos, const std::string& message) {
    std::ostringstream os;
    os << kind_word(kind) << " at line " << pos.line << ", column " << pos.column << ": "
       << message;
    return os.str();
}

}  // namespace

DslError::DslError(DslErrorKind kind, SourcePos pos, const std::string& message)
    : std::runtime_error(format_message(kind, pos, message)), kind_(kind), pos_(pos) {}

namespace {

enum class Tok {
    ident,
    number,
    string,
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    colon,
    semicolon,
    comma,
    caret,
    star,
    plus,
    minus,
    end
};

struct Token {
    Tok kind = Tok::end;
    std::string text;  // ident name or string body
    Int value = 0;     // number
    SourcePos pos;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    SourcePos pos;
    size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(c);
            ++i;
            continue;
        }
        Token t;
        t.pos = pos;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                name.push_back(text[i]);
                advance(text[i]);
                ++i;
            }
            t.kind = Tok::ident;
            t.text = std::move(name);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                digits.push_back(text[i]);
                advance(text[i]);
                ++i;
            }
            t.kind = Tok::number;
            t.value = Int(digits);
        } else if (c == '"') {
            advance(c);
            ++i;
            std::string body;
            bool closed = false;
            while (i < text.size()) {
                char d = text[i];
                if (d == '"') {
                    advance(d);
                    ++i;
                    closed = true;
                    break;
                }
                if (d == '\n') break;
                body.push_back(d);
                advance(d);
                ++i;
            }
            if (!closed) throw DslError(DslErrorKind::lexical, t.pos, "unterminated string");
            t.kind = Tok::string;
            t.text = std::move(body);
        } else {
            switch (c) {
                case '{': t.kind = Tok::lbrace; break;
                case '}': t.kind = Tok::rbrace; break;
                case '[': t.kind = Tok::lbracket; break;
                case ']': t.kind = Tok::rbracket; break;
                case ':': t.kind = Tok::colon; break;
                case ';': t.kind = Tok::semicolon; break;
                case ',': t.kind = Tok::comma; break;
                case '^': t.kind = Tok::caret; break;
                case '*': t.kind = Tok::star; break;
                case '+': t.kind = Tok::plus; break;
                case '-': t.kind = Tok::minus; break;
                default:
                    throw DslError(DslErrorKind::lexical, t.pos,
                                   std::string("unexpected character '") + c + "'");
            }
            advance(c);
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token eof;
    eof.pos = pos;
    out.push_back(std::move(eof));
    return out;
}

// A polynomial before generator names are resolved.
struct RawFactor {
    std::string name;
    long exp = 1;
    SourcePos pos;
};

struct RawTerm {
    Int coeff = 1;
    std::vector<RawFactor> factors;
    SourcePos pos;
};

using RawPoly = std::vector<RawTerm>;

struct PendingBundle {
    BundleDecl decl;
    RawPoly euler;
};

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    // Parsed declarations, before cross-name resolution.
    DslDocument doc;
    std::vector<PendingBundle> pending_bundles;

    IntPolynomial resolve_poly(const RawPoly& raw, const RingPresentation& ring) {
        std::vector<std::pair<Int, Monomial>> terms;
        for (const RawTerm& t : raw) {
            Monomial m;
            m.exps.assign(ring.generators.size(), 0);
            for (const RawFactor& f : t.factors) {
                long idx = ring.gen_index(f.name);
                if (idx < 0)
                    throw DslError(DslErrorKind::unresolved_name, f.pos,
                                   "unknown generator '" + f.name + "'");
                m.exps[static_cast<size_t>(idx)] += f.exp;
            }
            terms.emplace_back(t.coeff, std::move(m));
        }
        return poly_from_terms(std::move(terms));
    }

    void parse() {
        while (!at(Tok::end)) {
            const Token& t = peek();
            if (t.kind != Tok::ident)
                throw DslError(DslErrorKind::syntactic, t.pos,
                               "expected a ring, bundle, problem or expect declaration");
            if (t.text == "ring")
                parse_ring();
            else if (t.text == "bundle")
                parse_bundle();
            else if (t.text == "problem")
                parse_problem();
            else if (t.text == "expect")
                parse_expect();
            else
                throw DslError(DslErrorKind::syntactic, t.pos,
                               "unknown declaration '" + t.text + "'");
        }
    }

private:
    std::vector<Token> toks_;
    size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    const Token& get() { return toks_[i_++]; }
    bool at(Tok k) const { return peek().kind == k; }

    const Token& expect(Tok k, const char* what) {
        if (!at(k)) throw DslError(DslErrorKind::syntactic, peek().pos,
                                   std::string("expected ") + what);
        return get();
    }

    bool at_keyword(const char* word) const {
        return peek().kind == Tok::ident && peek().text == word;
    }

    void expect_keyword(const char* word) {
        if (!at_keyword(word))
            throw DslError(DslErrorKind::syntactic, peek().pos,
                           std::string("expected '") + word + "'");
        get();
    }

    long small_number(const char* what) {
        const Token& t = expect(Tok::number, what);
        if (t.value > Int(1000000000))
            throw DslError(DslErrorKind::syntactic, t.pos, std::string(what) + " too large");
        return t.value.convert_to<long>();
    }

    // poly := ["-"] term (("+" | "-") term)*
    RawPoly parse_poly() {
        RawPoly poly;
        Int sign = 1;
        if (at(Tok::minus)) {
            get();
            sign = -1;
        }
        while (true) {
            poly.push_back(parse_term(sign));
            if (at(Tok::plus)) {
                get();
                sign = 1;
            } else if (at(Tok::minus)) {
                get();
                sign = -1;
            } else {
                break;
            }
        }
        return poly;
    }

    // term := number | number "*" factors | factors
    RawTerm parse_term(const Int& sign) {
        RawTerm term;
        term.pos = peek().pos;
        if (at(Tok::number)) {
            term.coeff = get().value;
            if (at(Tok::star)) {
                get();
                term.factors = parse_factors();
            }
        } else {
            term.factors = parse_factors();
        }
        term.coeff *= sign;
        return term;
    }

    // factors := ident ["^" number] ("*" ident ["^" number])*
    std::vector<RawFactor> parse_factors() {
        std::vector<RawFactor> factors;
        while (true) {
            RawFactor f;
            f.pos = peek().pos;
            f.name = expect(Tok::ident, "a generator name").text;
            if (at(Tok::caret)) {
                get();
                const Token& e = expect(Tok::number, "an exponent");
                if (e.value > Int(1000000))
                    throw DslError(DslErrorKind::syntactic, e.pos, "exponent too large");
                f.exp = e.value.convert_to<long>();
            }
            factors.push_back(std::move(f));
            if (!at(Tok::star)) break;
            get();
        }
        return factors;
    }

    void parse_ring() {
        const Token& kw = get();  // "ring"
        RingPresentation ring;
        ring.name = expect(Tok::ident, "a ring name").text;
        expect(Tok::lbrace, "'{'");
        while (at_keyword("gen")) {
            get();
            GeneratorSpec g;
            g.name = expect(Tok::ident, "a generator name").text;
            expect(Tok::colon, "':'");
            g.degree = small_number("a generator degree");
            expect(Tok::semicolon, "';'");
            ring.generators.push_back(std::move(g));
        }
        if (ring.generators.empty())
            throw DslError(DslErrorKind::syntactic, kw.pos,
                           "ring '" + ring.name + "' declares no generators");
        while (at_keyword("rel")) {
            get();
            SourcePos rel_pos = peek().pos;
            RawPoly raw = parse_poly();
            expect(Tok::semicolon, "';'");
            IntPolynomial rel = resolve_poly(raw, ring);
            if (!ring.poly_homogeneous(rel))
                throw DslError(DslErrorKind::non_homogeneous, rel_pos,
                               "relation " + ring.poly_string(rel) + " is not homogeneous");
            ring.relations.push_back(std::move(rel));
        }
        expect_keyword("top");
        ring.top_degree = small_number("a top degree");
        expect(Tok::semicolon, "';'");
        expect(Tok::rbrace, "'}'");
        if (auto err = ring.validate())
            throw DslError(DslErrorKind::syntactic, kw.pos, *err);
        doc.rings.push_back(std::move(ring));
    }

    void parse_bundle() {
        const Token& kw = get();  // "bundle"
        PendingBundle b;
        b.decl.pos = kw.pos;
        b.decl.name = expect(Tok::ident, "a bundle name").text;
        expect(Tok::lbrace, "'{'");
        expect_keyword("base");
        b.decl.base = expect(Tok::ident, "a ring name").text;
        expect(Tok::semicolon, "';'");
        expect_keyword("fiber");
        const Token& s = expect(Tok::ident, "'S'");
        if (s.text != "S")
            throw DslError(DslErrorKind::syntactic, s.pos, "expected 'S'");
        if (at(Tok::caret)) get();  // both "S 2" and "S^2" are accepted
        b.decl.fiber_dim = small_number("a fiber dimension");
        expect(Tok::semicolon, "';'");
        expect_keyword("euler");
        b.euler = parse_poly();
        expect(Tok::semicolon, "';'");
        expect(Tok::rbrace, "'}'");
        pending_bundles.push_back(std::move(b));
    }

    void parse_problem() {
        const Token& kw = get();  // "problem"
        ProblemDecl p;
        p.pos = kw.pos;
        p.name = expect(Tok::ident, "a problem name").text;
        expect(Tok::lbrace, "'{'");
        expect_keyword("n");
        p.problem.n = small_number("a value of n");
        p.problem.dim = 3 * (p.problem.n - 3);
        expect(Tok::semicolon, "';'");
        expect_keyword("betti");
        for (long v : parse_number_list()) p.problem.betti.push_back(v);
        expect(Tok::semicolon, "';'");
        expect_keyword("mod2");
        expect(Tok::lbrace, "'{'");
        if (!at(Tok::rbrace)) {
            while (true) {
                long k = small_number("a degree");
                expect(Tok::colon, "':'");
                long v = small_number("a dimension");
                p.problem.mod2_dims[k] = v;
                if (!at(Tok::comma)) break;
                get();
            }
        }
        expect(Tok::rbrace, "'}'");
        expect(Tok::semicolon, "';'");
        expect_keyword("sphere_target");
        p.sphere_target_name = expect(Tok::ident, "a ring name").text;
        expect(Tok::semicolon, "';'");
        expect_keyword("so3_vanish");
        p.problem.so3_vanishing = parse_number_list();
        expect(Tok::semicolon, "';'");
        expect_keyword("candidates");
        expect(Tok::lbracket, "'['");
        if (!at(Tok::rbracket)) {
            while (true) {
                const Token& g = expect(Tok::string, "a quoted group");
                auto parsed = AbelianGroup::parse(g.text);
                if (!parsed)
                    throw DslError(DslErrorKind::syntactic, g.pos,
                                   "invalid group '" + g.text + "'");
                p.problem.candidates.push_back(*parsed);
                if (!at(Tok::comma)) break;
                get();
            }
        }
        expect(Tok::rbracket, "']'");
        expect(Tok::semicolon, "';'");
        expect(Tok::rbrace, "'}'");
        doc.problems.push_back(std::move(p));
    }

    void parse_expect() {
        const Token& kw = get();  // "expect"
        ExpectDecl e;
        e.pos = kw.pos;
        e.target = expect(Tok::ident, "a target name").text;
        expect(Tok::lbrace, "'{'");
        if (!at(Tok::rbrace)) {
            while (true) {
                long k = small_number("a degree");
                expect(Tok::colon, "':'");
                const Token& g = expect(Tok::string, "a quoted group");
                auto parsed = AbelianGroup::parse(g.text);
                if (!parsed)
                    throw DslError(DslErrorKind::syntactic, g.pos,
                                   "invalid group '" + g.text + "'");
                e.groups[k] = *parsed;
                if (!at(Tok::comma)) break;
                get();
            }
        }
        expect(Tok::rbrace, "'}'");
        doc.expects.push_back(std::move(e));
    }

    std::vector<long> parse_number_list() {
        std::vector<long> out;
        expect(Tok::lbracket, "'['");
        if (!at(Tok::rbracket)) {
            while (true) {
                out.push_back(small_number("a list entry"));
                if (!at(Tok::comma)) break;
                get();
            }
        }
        expect(Tok::rbracket, "']'");
        return out;
    }
};

void check_unique_names(const DslDocument& doc, const DslDocument* context) {
    std::set<std::string> names;
    std::set<std::string> targets;
    if (context) {
        for (const auto& r : context->rings) names.insert(r.name);
        for (const auto& b : context->bundles) names.insert(b.name);
        for (const auto& p : context->problems) names.insert(p.name);
        for (const auto& e : context->expects) targets.insert(e.target);
    }
    auto add = [&](const std::string& name, SourcePos pos) {
        if (!names.insert(name).second)
            throw DslError(DslErrorKind::syntactic, pos, "duplicate name '" + name + "'");
    };
    for (const auto& r : doc.rings) add(r.name, SourcePos{});
    for (const auto& b : doc.bundles) add(b.name, b.pos);
    for (const auto& p : doc.problems) add(p.name, p.pos);
    for (const auto& e : doc.expects)
        if (!targets.insert(e.target).second)
            throw DslError(DslErrorKind::syntactic, e.pos,
                           "duplicate expect for '" + e.target + "'");
}

void resolve_expects(const DslDocument& doc, const DslDocument* context) {
    auto ring_of = [&](const std::string& n) {
        const RingPresentation* r = doc.find_ring(n);
        if (!r && context) r = context->find_ring(n);
        return r;
    };
    auto problem_of = [&](const std::string& n) {
        const ProblemDecl* p = doc.find_problem(n);
        if (!p && context) p = context->find_problem(n);
        return p;
    };
    for (const auto& e : doc.expects) {
        long max_degree = -1;
        if (const RingPresentation* r = ring_of(e.target)) {
            max_degree = r->top_degree;
        } else if (const ProblemDecl* p = problem_of(e.target)) {
            max_degree = p->problem.dim;
        } else {
            throw DslError(DslErrorKind::unresolved_name, e.pos,
                           "expect target '" + e.target + "' is not a ring or problem");
        }
        for (const auto& [k, g] : e.groups) {
            (void)g;
            if (k < 0 || k > max_degree)
                throw DslError(DslErrorKind::syntactic, e.pos,
                               "expect degree " + std::to_string(k) + " outside range of '" +
                                   e.target + "'");
        }
    }
}

}  // namespace

const RingPresentation* DslDocument::find_ring(const std::string& name) const {
    for (const auto& r : rings)
        if (r.name == name) return &r;
    return nullptr;
}

const BundleDecl* DslDocument::find_bundle(const std::string& name) const {
    for (const auto& b : bundles)
        if (b.name == name) return &b;
    return nullptr;
}

const ProblemDecl* DslDocument::find_problem(const std::string& name) const {
    for (const auto& p : problems)
        if (p.name == name) return &p;
    return nullptr;
}

const ExpectDecl* DslDocument::find_expect(const std::string& target) const {
    for (const auto& e : expects)
        if (e.target == target) return &e;
    return nullptr;
}

DslDocument parse_document(const std::string& text, const DslDocument* context) {
    Parser parser(text);
    parser.parse();
    DslDocument doc = std::move(parser.doc);

    // Second pass: resolve names declared anywhere in the document (or, as a
    // fallback, in the context document).
    auto ring_of = [&](const std::string& n) {
        const RingPresentation* r = doc.find_ring(n);
        if (!r && context) r = context->find_ring(n);
        return r;
    };
    for (auto& pb : parser.pending_bundles) {
        const RingPresentation* ring = ring_of(pb.decl.base);
        if (!ring)
            throw DslError(DslErrorKind::unresolved_name, pb.decl.pos,
                           "unknown ring '" + pb.decl.base + "'");
        pb.decl.euler = parser.resolve_poly(pb.euler, *ring);
        if (!pb.decl.euler.is_zero() && !ring->poly_homogeneous(pb.decl.euler))
            throw DslError(DslErrorKind::non_homogeneous, pb.decl.pos,
                           "euler class " + ring->poly_string(pb.decl.euler) +
                               " is not homogeneous");
        doc.bundles.push_back(std::move(pb.decl));
    }
    for (auto& p : doc.problems) {
        const RingPresentation* ring = ring_of(p.sphere_target_name);
        if (!ring)
            throw DslError(DslErrorKind::unresolved_name, p.pos,
                           "unknown ring '" + p.sphere_target_name + "'");
        p.problem.sphere_target.clear();
        for (const auto& comp : graded_table(*ring))
            p.problem.sphere_target.push_back(comp.group);
    }
    check_unique_names(doc, context);
    resolve_expects(doc, context);
    return doc;
}

std::string print_document(const DslDocument& doc) {
    std::ostringstream os;
    for (const auto& r : doc.rings) {
        os << "ring " << r.name << " {\n";
        for (const auto& g : r.generators) os << "  gen " << g.name << ":" << g.degree << ";\n";
        for (const auto& rel : r.relations) os << "  rel " << r.poly_string(rel) << ";\n";
        os << "  top " << r.top_degree << ";\n}\n\n";
    }
    for (const auto& b : doc.bundles) {
        const RingPresentation* ring = doc.find_ring(b.base);
        if (!ring)
            throw std::invalid_argument("print_document: bundle '" + b.name +
                                        "' references missing ring '" + b.base + "'");
        os << "bundle " << b.name << " {\n";
        os << "  base " << b.base << ";\n";
        os << "  fiber S " << b.fiber_dim << ";\n";
        os << "  euler " << ring->poly_string(b.euler) << ";\n}\n\n";
    }
    for (const auto& p : doc.problems) {
        os << "problem " << p.name << " {\n";
        os << "  n " << p.problem.n << ";\n";
        os << "  betti [";
        for (size_t i = 0; i < p.problem.betti.size(); ++i)
            os << (i ? ", " : "") << p.problem.betti[i];
        os << "];\n  mod2 {";
        bool first = true;
        for (const auto& [k, v] : p.problem.mod2_dims) {
            os << (first ? "" : ", ") << k << ":" << v;
            first = false;
        }
        os << "};\n  sphere_target " << p.sphere_target_name << ";\n  so3_vanish [";
        for (size_t i = 0; i < p.problem.so3_vanishing.size(); ++i)
            os << (i ? ", " : "") << p.problem.so3_vanishing[i];
        os << "];\n  candidates [";
        for (size_t i = 0; i < p.problem.candidates.size(); ++i)
            os << (i ? ", " : "") << '"' << p.problem.candidates[i].to_string() << '"';
        os << "];\n}\n\n";
    }
    for (const auto& e : doc.expects) {
        os << "expect " << e.target << " {\n";
        size_t i = 0;
        for (const auto& [k, g] : e.groups) {
            os << "  " << k << ": \"" << g.to_string() << '"';
            os << (++i < e.groups.size() ? ",\n" : "\n");
        }
        os << "}\n\n";
    }
    return os.str();
}

void merge_documents(DslDocument& doc, const DslDocument& extra) {
    for (const auto& r : extra.rings) doc.rings.push_back(r);
    for (const auto& b : extra.bundles) doc.bundles.push_back(b);
    for (const auto& p : extra.problems) doc.problems.push_back(p);
    for (const auto& e : extra.expects) doc.expects.push_back(e);
    check_unique_names(doc, nullptr);
}

namespace {

IntPolynomial gen_power_poly(const RingPresentation& ring, long index, long exp, const Int& c) {
    Monomial m;
    m.exps.assign(ring.generators.size(), 0);
    m.exps[static_cast<size_t>(index)] = exp;
    return poly_from_terms({{c, m}});
}

DslDocument build_builtin() {
    DslDocument doc;
    doc.rings.push_back(*get_space("G~_8_3").presentation);    // G83
    doc.rings.push_back(*get_space("G~_10_3").presentation);   // G103
    doc.rings.push_back(*get_space("W8_2_1").presentation);    // W8_2_1
    doc.rings.push_back(*get_space("W10_2_1").presentation);   // W10_2_1
    doc.rings.push_back(instantiate_family("w21", 3));         // W21_3
    for (long n = 2; n <= 6; ++n) doc.rings.push_back(instantiate_family("odd_g2", n));
    for (long n = 2; n <= 6; ++n) doc.rings.push_back(instantiate_family("lai_even", n));

    // Circle bundles V_{2n+1,2} -> G~_{2n+1,2} with Euler class x2.
    for (long n = 2; n <= 6; ++n) {
        BundleDecl b;
        b.name = "V" + std::to_string(2 * n + 1) + "_2";
        b.base = "OddG2_" + std::to_string(n);
        b.fiber_dim = 1;
        b.euler = gen_power_poly(*doc.find_ring(b.base), 0, 1, Int(1));
        doc.bundles.push_back(std::move(b));
    }
    // Sphere bundles W^{2n}_{2,1} -> G~_{2n,2} with Euler class
    // Omega = 2*kappa - Omega_t^{n-1}.
    for (long n = 3; n <= 5; ++n) {
        BundleDecl b;
        b.name = "W" + std::to_string(2 * n) + "_bundle";
        b.base = "LaiEven" + std::to_string(n);
        b.fiber_dim = 2 * n - 3;
        const RingPresentation& lai = *doc.find_ring(b.base);
        b.euler = poly_add(gen_power_poly(lai, 1, 1, Int(2)),
                           gen_power_poly(lai, 0, n - 1, Int(-1)));
        doc.bundles.push_back(std::move(b));
    }

    for (long n : {8L, 10L}) {
        ProblemDecl p;
        p.name = (n == 8) ? "g83" : "g103";
        p.sphere_target_name = (n == 8) ? "W8_2_1" : "W10_2_1";
        p.problem = grassmann_problem(n);
        doc.problems.push_back(std::move(p));
    }

    // Expected tables: ring tables for the catalog spaces, solved tables for
    // the problems.
    auto expect_table = [&](const std::string& target, const std::vector<AbelianGroup>& groups) {
        ExpectDecl e;
        e.target = target;
        for (size_t k = 0; k < groups.size(); ++k) e.groups[static_cast<long>(k)] = groups[k];
        doc.expects.push_back(std::move(e));
    };
    expect_table("G83", get_space("G~_8_3").integral_groups);
    expect_table("G103", get_space("G~_10_3").integral_groups);
    expect_table("W8_2_1", get_space("W8_2_1").integral_groups);
    expect_table("W10_2_1", get_space("W10_2_1").integral_groups);
    expect_table("g83", get_space("G~_8_3").integral_groups);
    expect_table("g103", get_space("G~_10_3").integral_groups);
    return doc;
}

}  // namespace

const DslDocument& builtin_document() {
    static const DslDocument doc = build_builtin();
    return doc;
}

}  // namespace gcoh
