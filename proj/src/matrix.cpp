#include "gcoh/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace gcoh {

IntMat::IntMat(long r, long c, std::vector<Int> entries) : rows(r), cols(c), a(std::move(entries)) {
    if (a.size() != static_cast<size_t>(r) * c) throw std::invalid_argument("IntMat: entry count mismatch");
}

IntMat IntMat::identity(long n) {
    IntMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(const std::vector<std::vector<Int>>& rows_in) {
    long r = static_cast<long>(rows_in.size());
    long c = r ? static_cast<long>(rows_in[0].size()) : 0;
    IntMat m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows_in[i].size()) != c) throw std::invalid_argument("IntMat: ragged rows");
        for (long j = 0; j < c; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols, rows);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < rows; ++i) {
        os << (i ? " [" : "[");
        for (long j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMat mat_mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMat z(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            const Int& xv = x.at(i, k);
            if (xv == 0) continue;
            for (long j = 0; j < y.cols; ++j) z.at(i, j) += xv * y.at(k, j);
        }
    return z;
}

IntMat hstack(const IntMat& x, const IntMat& y) {
    if (x.rows != y.rows) throw std::invalid_argument("hstack: row mismatch");
    IntMat z(x.rows, x.cols + y.cols);
    for (long i = 0; i < x.rows; ++i) {
        for (long j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
        for (long j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
    }
    return z;
}

Int determinant(IntMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: not square");
    long n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

namespace {

struct SnfWork {
    IntMat m, u, u_inv, v, v_inv;

    void row_swap(long i, long j) {
        if (i == j) return;
        for (long c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
        for (long c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
        for (long r = 0; r < u_inv.rows; ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }
    void col_swap(long i, long j) {
        if (i == j) return;
        for (long r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
        for (long r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
        for (long c = 0; c < v_inv.cols; ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }
    // row i -= q * row t
    void row_sub(long i, long t, const Int& q) {
        if (q == 0) return;
        for (long c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(t, c);
        for (long c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(t, c);
        for (long r = 0; r < u_inv.rows; ++r) u_inv.at(r, t) += q * u_inv.at(r, i);
    }
    // col j -= q * col t
    void col_sub(long j, long t, const Int& q) {
        if (q == 0) return;
        for (long r = 0; r < m.rows; ++r) m.at(r, j) -= q * m.at(r, t);
        for (long r = 0; r < v.rows; ++r) v.at(r, j) -= q * v.at(r, t);
        for (long c = 0; c < v_inv.cols; ++c) v_inv.at(t, c) += q * v_inv.at(j, c);
    }
    void row_negate(long i) {
        for (long c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
        for (long c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
        for (long r = 0; r < u_inv.rows; ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }

    // smallest |entry| != 0 in the submatrix starting at (t,t); ties: lowest
    // row, then lowest column
    bool find_pivot(long t, long& pr, long& pc) const {
        bool found = false;
        Int best = 0;
        for (long i = t; i < m.rows; ++i)
            for (long j = t; j < m.cols; ++j) {
                const Int& e = m.at(i, j);
                if (e == 0) continue;
                Int mag = abs(e);
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pr = i;
                    pc = j;
                }
            }
        return found;
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMat& input) {
    SnfWork w{input, IntMat::identity(input.rows), IntMat::identity(input.rows),
              IntMat::identity(input.cols), IntMat::identity(input.cols)};
    long n = std::min(input.rows, input.cols);
    for (long t = 0; t < n; ++t) {
        for (;;) {
            long pr = 0, pc = 0;
            if (!w.find_pivot(t, pr, pc)) break;
            w.row_swap(t, pr);
            w.col_swap(t, pc);
            bool clean = true;
            for (long i = t + 1; i < w.m.rows; ++i) {
                if (w.m.at(i, t) == 0) continue;
                w.row_sub(i, t, w.m.at(i, t) / w.m.at(t, t));
                if (w.m.at(i, t) != 0) clean = false;  // remainder smaller than pivot
            }
            for (long j = t + 1; j < w.m.cols; ++j) {
                if (w.m.at(t, j) == 0) continue;
                w.col_sub(j, t, w.m.at(t, j) / w.m.at(t, t));
                if (w.m.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility: pivot must divide every remaining entry
            bool fixed = false;
            for (long i = t + 1; i < w.m.rows && !fixed; ++i)
                for (long j = t + 1; j < w.m.cols && !fixed; ++j)
                    if (w.m.at(i, j) % w.m.at(t, t) != 0) {
                        w.row_sub(t, i, Int(-1));  // row t += row i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (w.m.at(t, t) < 0) w.row_negate(t);
    }
    SmithResult r;
    r.diag.reserve(n);
    for (long t = 0; t < n; ++t) r.diag.push_back(w.m.at(t, t));
    r.d = std::move(w.m);
    r.u = std::move(w.u);
    r.u_inv = std::move(w.u_inv);
    r.v = std::move(w.v);
    r.v_inv = std::move(w.v_inv);
    return r;
}

IntMat kernel_basis(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    std::vector<long> free_cols;
    for (long j = 0; j < m.cols; ++j)
        if (j >= static_cast<long>(s.diag.size()) || s.diag[j] == 0) free_cols.push_back(j);
    IntMat k(m.cols, static_cast<long>(free_cols.size()));
    for (long out = 0; out < k.cols; ++out)
        for (long i = 0; i < m.cols; ++i) k.at(i, out) = s.v.at(i, free_cols[out]);
    return k;
}

IntMat column_span_basis(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    std::vector<long> nz;
    for (long j = 0; j < static_cast<long>(s.diag.size()); ++j)
        if (s.diag[j] != 0) nz.push_back(j);
    IntMat b(m.rows, static_cast<long>(nz.size()));
    for (long out = 0; out < b.cols; ++out)
        for (long i = 0; i < m.rows; ++i) b.at(i, out) = s.diag[nz[out]] * s.u_inv.at(i, nz[out]);
    return b;
}

std::optional<std::vector<Int>> solve_integer(const IntMat& m, const std::vector<Int>& b) {
    if (static_cast<long>(b.size()) != m.rows) throw std::invalid_argument("solve_integer: rhs size");
    SmithResult s = smith_normal_form(m);
    // m = u_inv d v_inv, so solve d y = u b and set x = v y.
    std::vector<Int> ub(m.rows, 0);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.rows; ++j)
            if (s.u.at(i, j) != 0) ub[i] += s.u.at(i, j) * b[j];
    std::vector<Int> y(m.cols, 0);
    for (long i = 0; i < m.rows; ++i) {
        Int di = (i < static_cast<long>(s.diag.size())) ? s.diag[i] : Int(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            if (i < m.cols) y[i] = ub[i] / di;
        }
    }
    std::vector<Int> x(m.cols, 0);
    for (long i = 0; i < m.cols; ++i)
        for (long j = 0; j < m.cols; ++j)
            if (s.v.at(i, j) != 0 && y[j] != 0) x[i] += s.v.at(i, j) * y[j];
    return x;
}

}  // namespace gcoh
