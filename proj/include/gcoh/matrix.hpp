#pragma once
// Exact integer linear algebra: matrices over Z with arbitrary precision,
// Smith normal form with recorded unimodular transforms, and the standard
// derived solvers (kernel, column span, linear systems, determinant).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gcoh {

using Int = boost::multiprecision::cpp_int;

struct IntMat {
    long rows = 0;
    long cols = 0;
    std::vector<Int> a;  // row-major, size rows*cols

    IntMat() = default;
    IntMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    IntMat(long r, long c, std::vector<Int> entries);

    Int& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(long n);
    static IntMat from_rows(const std::vector<std::vector<Int>>& rows_in);

    IntMat transposed() const;
    bool operator==(const IntMat&) const = default;
    std::string to_string() const;
};

IntMat mat_mul(const IntMat& x, const IntMat& y);
IntMat hstack(const IntMat& x, const IntMat& y);  // [x | y], equal row counts

// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Int determinant(IntMat m);

// U * m * V = D with U, V unimodular; D diagonal, entries non-negative with
// d_i | d_{i+1}.  diag has length min(rows, cols), zeros included.  The
// pivoting rule (smallest-magnitude nonzero entry, ties broken by lowest row
// then lowest column) makes the whole result deterministic.
struct SmithResult {
    std::vector<Int> diag;
    IntMat d;      // rows x cols diagonal form
    IntMat u;      // rows x rows
    IntMat u_inv;  // inverse of u, maintained alongside
    IntMat v;      // cols x cols
    IntMat v_inv;
};
SmithResult smith_normal_form(const IntMat& m);

// Basis of the integer kernel {x : m x = 0}; columns of the result.
IntMat kernel_basis(const IntMat& m);

// Basis of the lattice spanned by the columns of m; columns of the result.
IntMat column_span_basis(const IntMat& m);

// One integer solution of m x = b, if any.
std::optional<std::vector<Int>> solve_integer(const IntMat& m, const std::vector<Int>& b);

}  // namespace gcoh
