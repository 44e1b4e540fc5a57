#include "gcoh/abelian.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gcoh {

/* ---------------- basic group type ---------------- */

AbelianGroup AbelianGroup::free_group(long rank) {
    AbelianGroup g;
    if (rank < 0) throw std::invalid_argument("free_group: negative rank");
    g.rank_ = rank;
    return g;
}

AbelianGroup AbelianGroup::cyclic(const Int& n) {
    Int m = abs(n);
    if (m == 0) return free_group(1);
    AbelianGroup g;
    if (m >= 2) g.factors_.push_back(m);
    return g;
}

std::vector<std::pair<Int, long>> prime_factorization(Int n);

AbelianGroup AbelianGroup::from_cyclic_orders(long rank, const std::vector<Int>& orders) {
    // split each order into prime powers, then rebuild the divisor chain
    std::map<Int, std::vector<long>> powers;  // prime -> exponents (one per cyclic piece)
    long extra_rank = 0;
    for (const Int& o : orders) {
        Int m = abs(o);
        if (m == 0) {
            ++extra_rank;
            continue;
        }
        if (m == 1) continue;
        for (auto& [p, e] : prime_factorization(m)) powers[p].push_back(e);
    }
    for (auto& [p, es] : powers) std::sort(es.begin(), es.end(), std::greater<long>());
    std::vector<Int> factors;
    for (size_t i = 0;; ++i) {
        Int d = 1;
        for (auto& [p, es] : powers)
            if (i < es.size()) d *= pow(p, static_cast<unsigned>(es[i]));
        if (d == 1) break;
        factors.push_back(d);
    }
    std::reverse(factors.begin(), factors.end());  // ascending divisor chain
    AbelianGroup g;
    g.rank_ = rank + extra_rank;
    g.factors_ = std::move(factors);
    return g;
}

Int AbelianGroup::torsion_order() const {
    Int t = 1;
    for (const Int& d : factors_) t *= d;
    return t;
}

Int AbelianGroup::order() const {
    if (rank_ != 0) throw std::domain_error("order: group is infinite");
    return torsion_order();
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& other) const {
    std::vector<Int> orders = factors_;
    orders.insert(orders.end(), other.factors_.begin(), other.factors_.end());
    return from_cyclic_orders(rank_ + other.rank_, orders);
}

AbelianGroup AbelianGroup::torsion_part() const {
    AbelianGroup g;
    g.factors_ = factors_;
    return g;
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) os << " ⊕ ";
        first = false;
    };
    if (rank_ == 1) {
        sep();
        os << "Z";
    } else if (rank_ > 1) {
        sep();
        os << "Z^" << rank_;
    }
    for (const Int& d : factors_) {
        sep();
        os << "Z_" << d;
    }
    return os.str();
}

std::optional<AbelianGroup> AbelianGroup::parse(std::string_view s) {
    // split on "⊕" or "+", trim, read tokens 0 | Z | Z^r | Z_d
    std::vector<std::string> tokens;
    std::string cur;
    for (size_t i = 0; i < s.size();) {
        if (s.compare(i, 3, "⊕") == 0) {
            tokens.push_back(cur);
            cur.clear();
            i += 3;
        } else if (s[i] == '+') {
            tokens.push_back(cur);
            cur.clear();
            ++i;
        } else {
            cur += s[i];
            ++i;
        }
    }
    tokens.push_back(cur);
    long rank = 0;
    std::vector<Int> orders;
    bool any = false;
    for (std::string& tok : tokens) {
        size_t b = tok.find_first_not_of(" \t");
        if (b == std::string::npos) return std::nullopt;
        size_t e = tok.find_last_not_of(" \t");
        std::string t = tok.substr(b, e - b + 1);
        any = true;
        if (t == "0") continue;
        if (t == "Z") {
            ++rank;
            continue;
        }
        auto numeric = [](const std::string& x) {
            return !x.empty() && x.find_first_not_of("0123456789") == std::string::npos;
        };
        if (t.size() > 2 && t[0] == 'Z' && t[1] == '^' && numeric(t.substr(2))) {
            rank += std::stol(t.substr(2));
            continue;
        }
        if (t.size() > 2 && t[0] == 'Z' && t[1] == '_' && numeric(t.substr(2))) {
            orders.push_back(Int(t.substr(2)));
            continue;
        }
        return std::nullopt;
    }
    if (!any) return std::nullopt;
    return from_cyclic_orders(rank, orders);
}

std::string AbelianGroup::to_json() const {
    std::ostringstream os;
    os << "{\"rank\": " << rank_ << ", \"torsion\": [";
    for (size_t i = 0; i < factors_.size(); ++i) os << (i ? ", " : "") << factors_[i];
    os << "]}";
    return os.str();
}

bool AbelianGroup::operator<(const AbelianGroup& o) const {
    if (rank_ != o.rank_) return rank_ < o.rank_;
    if (factors_.size() != o.factors_.size()) return factors_.size() < o.factors_.size();
    return factors_ < o.factors_;
}

/* ---------------- cokernel and UCT functors ---------------- */

AbelianGroup cokernel(const IntMat& relations) {
    SmithResult s = smith_normal_form(relations);
    std::vector<Int> orders;
    long killed = 0;
    for (const Int& d : s.diag)
        if (d != 0) {
            ++killed;
            if (d >= 2) orders.push_back(d);
        }
    return AbelianGroup::from_cyclic_orders(relations.rows - killed, orders);
}

long tensor_z2_dim(const AbelianGroup& g) { return g.rank() + tor_z2_dim(g); }

long tor_z2_dim(const AbelianGroup& g) {
    long n = 0;
    for (const Int& d : g.invariant_factors())
        if (d % 2 == 0) ++n;
    return n;
}

/* ---------------- prime decomposition helpers ---------------- */

std::vector<std::pair<Int, long>> prime_factorization(Int n) {
    std::vector<std::pair<Int, long>> out;
    n = abs(n);
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        long e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

namespace {

// exponents of p in the invariant factors (nonzero ones only), ascending
std::vector<long> p_exponents(const AbelianGroup& g, const Int& p) {
    std::vector<long> es;
    for (const Int& d : g.invariant_factors()) {
        long e = 0;
        Int m = d;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) es.push_back(e);
    }
    return es;
}

std::vector<Int> primes_of(const AbelianGroup& g) {
    std::vector<Int> ps;
    for (const Int& d : g.invariant_factors())
        for (auto& [p, e] : prime_factorization(d))
            if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    return ps;
}

/* ---------------- explicit finite group machinery ----------------
   A finite abelian group given by cyclic factor orders; elements are
   mixed-radix indices into the product. All groups handled here are tiny
   (bounded by the defensive cap below). */

constexpr long kFiniteCap = 20000;

struct Fin {
    std::vector<long> orders;
    long size = 1;

    explicit Fin(std::vector<long> ords) : orders(std::move(ords)) {
        for (long o : orders) {
            size *= o;
            if (size > kFiniteCap) throw std::runtime_error("finite enumeration cap exceeded");
        }
    }
    std::vector<long> decode(long x) const {
        std::vector<long> v(orders.size());
        for (size_t i = 0; i < orders.size(); ++i) {
            v[i] = x % orders[i];
            x /= orders[i];
        }
        return v;
    }
    long encode(const std::vector<long>& v) const {
        long x = 0;
        for (size_t i = orders.size(); i-- > 0;) x = x * orders[i] + v[i];
        return x;
    }
    long add(long a, long b) const {
        std::vector<long> u = decode(a), v = decode(b);
        for (size_t i = 0; i < orders.size(); ++i) u[i] = (u[i] + v[i]) % orders[i];
        return encode(u);
    }
    long smul(const Int& k, long a) const {
        std::vector<long> u = decode(a);
        for (size_t i = 0; i < orders.size(); ++i) {
            long ki = static_cast<long>(k % orders[i]);
            if (ki < 0) ki += orders[i];
            u[i] = static_cast<long>((static_cast<long long>(ki) * u[i]) % orders[i]);
        }
        return encode(u);
    }
};

using Mask = std::vector<char>;  // subgroup as indicator over element indices

// every subgroup of fin, as indicator masks (deterministic order)
const std::vector<Mask>& all_subgroups(const Fin& fin) {
    static std::map<std::vector<long>, std::vector<Mask>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(fin.orders);
        if (it != cache.end()) return it->second;
    }
    std::vector<Mask> out;
    std::set<Mask> seen;
    Mask zero(fin.size, 0);
    zero[0] = 1;
    out.push_back(zero);
    seen.insert(zero);
    for (size_t head = 0; head < out.size(); ++head) {
        Mask s = out[head];  // copy: out grows
        for (long e = 1; e < fin.size; ++e) {
            if (s[e]) continue;
            // <S, e> = union of cosets S + k*e  (S already a subgroup)
            Mask t = s;
            long m = e;
            while (m != 0) {
                for (long x = 0; x < fin.size; ++x)
                    if (s[x]) t[fin.add(x, m)] = 1;
                m = fin.add(m, e);
            }
            if (seen.insert(t).second) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    std::lock_guard<std::mutex> lk(mtx);
    return cache.emplace(fin.orders, std::move(out)).first->second;
}

long mask_count(const Mask& m) { return static_cast<long>(std::count(m.begin(), m.end(), 1)); }

// isomorphism type from the p^j-torsion counts L_j: the increments of
// log_p L_j give the conjugate partition of the type
AbelianGroup type_from_counts(const std::vector<std::pair<Int, std::vector<long>>>& per_prime) {
    std::vector<Int> orders;
    for (auto& [p, counts] : per_prime) {
        std::vector<long> logs;  // log_p of each count
        for (long c : counts) {
            long lg = 0;
            long v = c;
            while (v > 1) {
                if (v % static_cast<long>(p) != 0) throw std::logic_error("torsion count not a p-power");
                v /= static_cast<long>(p);
                ++lg;
            }
            logs.push_back(lg);
        }
        std::vector<long> conj;  // conj[j-1] = #{i : e_i >= j}
        for (size_t j = 1; j < logs.size(); ++j) conj.push_back(logs[j] - logs[j - 1]);
        for (size_t j = 0; j < conj.size(); ++j) {
            long here = conj[j] - (j + 1 < conj.size() ? conj[j + 1] : 0);
            for (long c = 0; c < here; ++c) orders.push_back(pow(Int(p), static_cast<unsigned>(j + 1)));
        }
    }
    return AbelianGroup::from_cyclic_orders(0, orders);
}

AbelianGroup subgroup_iso_type(const Fin& fin, const Mask& sub) {
    long n = mask_count(sub);
    std::vector<std::pair<Int, std::vector<long>>> per_prime;
    for (auto& [p, e] : prime_factorization(Int(n))) {
        (void)e;
        std::vector<long> counts{1};
        Int pj = 1;
        for (;;) {
            pj *= p;
            long c = 0;
            for (long x = 0; x < fin.size; ++x)
                if (sub[x] && fin.smul(pj, x) == 0) ++c;
            if (c == counts.back()) break;
            counts.push_back(c);
        }
        per_prime.emplace_back(p, counts);
    }
    return type_from_counts(per_prime);
}

AbelianGroup quotient_iso_type(const Fin& fin, const Mask& sub) {
    long ns = mask_count(sub);
    long n = fin.size / ns;
    std::vector<std::pair<Int, std::vector<long>>> per_prime;
    for (auto& [p, e] : prime_factorization(Int(n))) {
        (void)e;
        std::vector<long> counts{1};
        Int pj = 1;
        for (;;) {
            pj *= p;
            long c = 0;
            for (long x = 0; x < fin.size; ++x)
                if (sub[fin.smul(pj, x)]) ++c;
            c /= ns;
            if (c == counts.back()) break;
            counts.push_back(c);
        }
        per_prime.emplace_back(p, counts);
    }
    return type_from_counts(per_prime);
}

/* ---------------- local extension decision ----------------
   Decides: does Z^a (+) Q' admit a subgroup H with quotient iso to R and
   torsion part iso to P, where Q', P, R are p-groups given by exponent
   partitions? Reduced to the finite group Gbar = (Z_{p^K})^a (+) Q' with
   K = max exponent of Q', R; subgroups of Gbar correspond to the relevant
   subgroups of Z^a (+) Q'. */

std::string encode_exps(const std::vector<long>& v) {
    std::string s;
    for (long e : v) s += std::to_string(e) + ",";
    return s;
}

AbelianGroup group_of_p_exps(const Int& p, const std::vector<long>& exps) {
    std::vector<Int> orders;
    for (long e : exps) orders.push_back(pow(p, static_cast<unsigned>(e)));
    return AbelianGroup::from_cyclic_orders(0, orders);
}

bool p_local_extension(long a, const Int& p, const std::vector<long>& P, const std::vector<long>& Q,
                       const std::vector<long>& R) {
    static std::map<std::string, bool> cache;
    static std::mutex mtx;
    std::ostringstream key;
    key << p << "|" << a << "|" << encode_exps(P) << "|" << encode_exps(Q) << "|" << encode_exps(R);
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(key.str());
        if (it != cache.end()) return it->second;
    }
    long K = 0;
    for (long e : Q) K = std::max(K, e);
    for (long e : R) K = std::max(K, e);
    long free_coords = (K > 0) ? a : 0;
    std::vector<long> orders;
    long pl = static_cast<long>(p);
    long pK = 1;
    for (long i = 0; i < K; ++i) pK *= pl;
    for (long i = 0; i < free_coords; ++i) orders.push_back(pK);
    for (long e : Q) {
        long o = 1;
        for (long i = 0; i < e; ++i) o *= pl;
        orders.push_back(o);
    }
    Fin fin(orders);
    AbelianGroup want_quot = group_of_p_exps(p, R);
    AbelianGroup want_tors = group_of_p_exps(p, P);
    Int rsize = want_quot.torsion_order();
    bool ok = false;
    if (rsize <= fin.size && Int(fin.size) % rsize == 0) {
        long target = static_cast<long>(Int(fin.size) / rsize);
        for (const Mask& sub : all_subgroups(fin)) {
            if (mask_count(sub) != target) continue;
            if (quotient_iso_type(fin, sub) != want_quot) continue;
            // intersection with the Q part: elements supported on Q coordinates
            Mask inter(fin.size, 0);
            for (long x = 0; x < fin.size; ++x) {
                if (!sub[x]) continue;
                std::vector<long> v = fin.decode(x);
                bool qonly = true;
                for (long i = 0; i < free_coords; ++i)
                    if (v[i] != 0) qonly = false;
                if (qonly) inter[x] = 1;
            }
            if (subgroup_iso_type(fin, inter) == want_tors) {
                ok = true;
                break;
            }
        }
    }
    std::lock_guard<std::mutex> lk(mtx);
    cache[key.str()] = ok;
    return ok;
}

}  // namespace

bool exists_extension(const AbelianGroup& sub, const AbelianGroup& total, const AbelianGroup& quot) {
    if (total.rank() != sub.rank() + quot.rank()) return false;
    std::vector<Int> primes;
    for (const AbelianGroup* g : {&sub, &total, &quot})
        for (const Int& p : primes_of(*g))
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    for (const Int& p : primes)
        if (!p_local_extension(sub.rank(), p, p_exponents(sub, p), p_exponents(total, p),
                               p_exponents(quot, p)))
            return false;
    return true;
}

std::vector<AbelianGroup> subgroup_types(const AbelianGroup& g) {
    if (!g.is_finite()) throw std::domain_error("subgroup_types: group must be finite");
    std::vector<AbelianGroup> acc{AbelianGroup()};
    for (const Int& p : primes_of(g)) {
        std::vector<long> exps = p_exponents(g, p);
        std::vector<Int> orders;
        for (long e : exps) orders.push_back(pow(p, static_cast<unsigned>(e)));
        std::vector<long> lorders;
        for (const Int& o : orders) lorders.push_back(static_cast<long>(o));
        Fin fin(lorders);
        std::set<AbelianGroup> ptypes;
        for (const Mask& sub : all_subgroups(fin)) ptypes.insert(subgroup_iso_type(fin, sub));
        std::vector<AbelianGroup> next;
        for (const AbelianGroup& base : acc)
            for (const AbelianGroup& t : ptypes) next.push_back(base.direct_sum(t));
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{1};
    for (auto& [p, e] : prime_factorization(n)) {
        std::vector<Int> next;
        Int pk = 1;
        for (long i = 0; i <= e; ++i) {
            for (const Int& d : out) next.push_back(d * pk);
            pk *= p;
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
void partitions_of(long e, long maxpart, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (e == 0) {
        out.push_back(cur);
        return;
    }
    for (long k = std::min(e, maxpart); k >= 1; --k) {
        cur.push_back(k);
        partitions_of(e - k, k, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<AbelianGroup> finite_types_of_order(const Int& n) {
    if (n <= 0) throw std::invalid_argument("finite_types_of_order: order must be positive");
    std::vector<AbelianGroup> acc{AbelianGroup()};
    for (auto& [p, e] : prime_factorization(n)) {
        std::vector<std::vector<long>> parts;
        std::vector<long> cur;
        partitions_of(e, e, cur, parts);
        std::vector<AbelianGroup> next;
        for (const AbelianGroup& base : acc)
            for (const std::vector<long>& part : parts) {
                std::vector<Int> orders;
                for (long k : part) orders.push_back(pow(Int(p), static_cast<unsigned>(k)));
                next.push_back(base.direct_sum(AbelianGroup::from_cyclic_orders(0, orders)));
            }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

bool exists_hom_with(const AbelianGroup& g, const AbelianGroup& h, const AbelianGroup& kernel,
                     const AbelianGroup& cokernel_type) {
    long rm = g.rank() - kernel.rank();
    if (rm < 0) return false;
    if (h.rank() != rm + cokernel_type.rank()) return false;
    // the image M is a subgroup of h and a quotient of g with kernel of the
    // stated type; its torsion embeds in h's torsion
    for (const AbelianGroup& t : subgroup_types(h.torsion_part())) {
        AbelianGroup m = AbelianGroup::free_group(rm).direct_sum(t);
        if (exists_extension(kernel, g, m) && exists_extension(m, h, cokernel_type)) return true;
    }
    return false;
}

/* ---------------- maps in canonical coordinates ---------------- */

IntMat presentation_matrix(const AbelianGroup& g) {
    long t = static_cast<long>(g.invariant_factors().size());
    IntMat m(g.coord_count(), t);
    for (long i = 0; i < t; ++i) m.at(i, i) = g.invariant_factors()[i];
    return m;
}

AbelianGroup map_kernel_type(const AbelianGroup& a, const AbelianGroup& b, const IntMat& f) {
    long na = a.coord_count(), nb = b.coord_count();
    if (f.rows != nb || f.cols != na) throw std::invalid_argument("map_kernel_type: shape mismatch");
    IntMat la = presentation_matrix(a), lb = presentation_matrix(b);
    // lattice {x : f x lies in col(lb)} = projection of ker[f | -lb]
    IntMat neg_lb = lb;
    for (Int& e : neg_lb.a) e = -e;
    IntMat big = hstack(f, neg_lb);
    IntMat ker = kernel_basis(big);
    IntMat proj(na, ker.cols);
    for (long i = 0; i < na; ++i)
        for (long j = 0; j < ker.cols; ++j) proj.at(i, j) = ker.at(i, j);
    IntMat basis = column_span_basis(proj);  // free basis of the lattice
    // express col(la) in that basis; quotient is the kernel's type
    IntMat y(basis.cols, la.cols);
    for (long j = 0; j < la.cols; ++j) {
        std::vector<Int> rhs(na);
        for (long i = 0; i < na; ++i) rhs[i] = la.at(i, j);
        auto sol = solve_integer(basis, rhs);
        if (!sol) throw std::logic_error("map_kernel_type: relations escape the kernel lattice");
        for (long i = 0; i < y.rows; ++i) y.at(i, j) = (*sol)[i];
    }
    return cokernel(y);
}

AbelianGroup map_cokernel_type(const AbelianGroup& b, const IntMat& f) {
    if (f.rows != b.coord_count()) throw std::invalid_argument("map_cokernel_type: shape mismatch");
    return cokernel(hstack(f, presentation_matrix(b)));
}

bool map_injective(const AbelianGroup& a, const AbelianGroup& b, const IntMat& f) {
    return map_kernel_type(a, b, f).is_trivial();
}

bool map_surjective(const AbelianGroup& b, const IntMat& f) {
    return map_cokernel_type(b, f).is_trivial();
}

}  // namespace gcoh
