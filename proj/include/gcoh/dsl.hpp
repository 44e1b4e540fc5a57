#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcoh/graded_ring.hpp"
#include "gcoh/solver.hpp"

namespace gcoh {

struct SourcePos {
    long line = 1;
    long column = 1;
};

enum class DslErrorKind { lexical, syntactic, unresolved_name, non_homogeneous };

// Parse failure with its classification and source position; what() carries
// the position as "<class> at line L, column C: <message>".
class DslError : public std::runtime_error {
public:
    DslError(DslErrorKind kind, SourcePos pos, const std::string& message);
    DslErrorKind kind() const { return kind_; }
    SourcePos where() const { return pos_; }

private:
    DslErrorKind kind_;
    SourcePos pos_;
};

// "bundle <name> { base <ring>; fiber S <m>; euler <poly>; }", with the
// Euler polynomial resolved over the base ring's generators.
struct BundleDecl {
    std::string name;
    std::string base;
    long fiber_dim = 0;
    IntPolynomial euler;
    SourcePos pos;
};

// "problem <name> { n ...; betti [...]; mod2 {...}; sphere_target <ring>;
// so3_vanish [...]; candidates [...]; }".  The named sphere target ring is
// evaluated into problem.sphere_target during resolution.
struct ProblemDecl {
    std::string name;
    std::string sphere_target_name;
    TorsionProblem problem;
    SourcePos pos;
};

// "expect <target> { degree: "group", ... }": expected graded groups for a
// ring's table or a problem's solved cohomology.
struct ExpectDecl {
    std::string target;
    std::map<long, AbelianGroup> groups;
    SourcePos pos;
};

struct DslDocument {
    std::vector<RingPresentation> rings;
    std::vector<BundleDecl> bundles;
    std::vector<ProblemDecl> problems;
    std::vector<ExpectDecl> expects;

    const RingPresentation* find_ring(const std::string& name) const;
    const BundleDecl* find_bundle(const std::string& name) const;
    const ProblemDecl* find_problem(const std::string& name) const;
    const ExpectDecl* find_expect(const std::string& target) const;
};

// Parse a complete document.  Names may be referenced before they are
// declared; resolution runs in a second pass over the whole text.  When a
// context document is given, names not declared in the text resolve against
// it (and clashes with it are rejected), so extra files can build on the
// built-in catalog.
DslDocument parse_document(const std::string& text, const DslDocument* context = nullptr);

// Canonical text form; parsing it reproduces the document.
std::string print_document(const DslDocument& doc);

// Catalog rings, the standard sphere bundles and search problems, and the
// expected tables.
const DslDocument& builtin_document();

// Append every declaration of extra to doc; clashing names raise DslError.
void merge_documents(DslDocument& doc, const DslDocument& extra);

}  // namespace gcoh
