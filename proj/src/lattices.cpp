#include "wfl/lattices.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace wfl {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// row_dst -= q * row_src
void axpy_row(IntVec& dst, const IntVec& src, long long q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < dst.size(); ++j)
        dst[j] = checked_add(dst[j], -checked_mul(q, src[j]));
}

void negate_row(IntVec& r) {
    for (auto& x : r) x = -x;
}

IntMat identity(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void check_width(const IntMat& m, int ncols) {
    for (const auto& r : m)
        if (static_cast<int>(r.size()) != ncols) throw AmbientMismatch("generator of wrong length");
}

// Rows x with x * B = 0.
IntMat left_kernel(const IntMat& b, int ncols) {
    SmithResult s = smith_form(b, ncols);
    int rank = 0;
    for (long long d : s.diagonal)
        if (d != 0) ++rank;
    IntMat out;
    for (std::size_t i = rank; i < b.size(); ++i) out.push_back(s.U[i]);
    return out;
}

}  // namespace

IntMat hermite_rows(int ncols, IntMat m) {
    check_width(m, ncols);
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < m.size(); ++c) {
        while (true) {
            std::size_t best = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (best == m.size() || std::llabs(m[i][c]) < std::llabs(m[best][c])))
                    best = i;
            if (best == m.size()) break;
            std::swap(m[r], m[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                axpy_row(m[i], m[r], floor_div(m[i][c], m[r][c]));
                if (m[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (r >= m.size() || m[r][c] == 0) continue;
        if (m[r][c] < 0) negate_row(m[r]);
        for (std::size_t i = 0; i < r; ++i) axpy_row(m[i], m[r], floor_div(m[i][c], m[r][c]));
        ++r;
    }
    m.resize(r);
    return m;
}

IntLattice::IntLattice(int ambient_rank, const IntMat& generators)
    : n_(ambient_rank), rows_(hermite_rows(ambient_rank, generators)) {
    if (ambient_rank < 0) throw DomainError("negative ambient rank");
}

IntLattice IntLattice::full(int n) { return IntLattice(n, identity(n)); }

bool IntLattice::contains(const IntVec& v0) const {
    if (static_cast<int>(v0.size()) != n_) throw AmbientMismatch("vector of wrong length");
    IntVec v = v0;
    for (const auto& row : rows_) {
        int p = 0;
        while (row[p] == 0) ++p;
        for (int j = 0; j < p; ++j)
            if (v[j] != 0) return false;
        if (v[p] % row[p] != 0) return false;
        axpy_row(v, row, v[p] / row[p]);
    }
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

bool IntLattice::contains(const IntLattice& other) const {
    if (other.n_ != n_) throw AmbientMismatch("lattices in different ambients");
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [this](const IntVec& v) { return contains(v); });
}

IntLattice hermite_form(const IntLattice& L) { return L; }

SmithResult smith_form(const IntMat& m, int ncols) {
    check_width(m, ncols);
    const int rows = static_cast<int>(m.size());
    SmithResult s{identity(rows), m, identity(ncols), identity(ncols), {}};
    IntMat& D = s.D;

    auto col_axpy = [&](int dst, int src, long long q) {  // col dst -= q col src
        if (q == 0) return;
        for (int i = 0; i < rows; ++i) D[i][dst] = checked_add(D[i][dst], -checked_mul(q, D[i][src]));
        for (int i = 0; i < ncols; ++i)
            s.V[i][dst] = checked_add(s.V[i][dst], -checked_mul(q, s.V[i][src]));
        axpy_row(s.V_inv[src], s.V_inv[dst], -q);
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(D[i][a], D[i][b]);
        for (int i = 0; i < ncols; ++i) std::swap(s.V[i][a], s.V[i][b]);
        std::swap(s.V_inv[a], s.V_inv[b]);
    };
    auto row_axpy = [&](int dst, int src, long long q) {
        axpy_row(D[dst], D[src], q);
        axpy_row(s.U[dst], s.U[src], q);
    };
    auto row_swap = [&](int a, int b) {
        std::swap(D[a], D[b]);
        std::swap(s.U[a], s.U[b]);
    };

    const int lim = std::min(rows, ncols);
    for (int t = 0; t < lim; ++t) {
        while (true) {
            int bi = -1, bj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < ncols; ++j)
                    if (D[i][j] != 0 && (bi < 0 || std::llabs(D[i][j]) < std::llabs(D[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) break;
            row_swap(t, bi);
            col_swap(t, bj);
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                row_axpy(i, t, floor_div(D[i][t], D[t][t]));
                if (D[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < ncols; ++j) {
                col_axpy(j, t, floor_div(D[t][j], D[t][t]));
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = t + 1; i < rows && bad < 0; ++i)
                for (int j = t + 1; j < ncols; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_axpy(t, bad, -1);
        }
        if (D[t][t] < 0) {
            negate_row(D[t]);
            negate_row(s.U[t]);
        }
    }
    for (int t = 0; t < lim; ++t) s.diagonal.push_back(D[t][t]);
    return s;
}

IntMat mat_mul(const IntMat& a, const IntMat& b, int inner, int ncols) {
    IntMat out(a.size(), IntVec(ncols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < ncols; ++j)
                out[i][j] = checked_add(out[i][j], checked_mul(a[i][k], b[k][j]));
        }
    return out;
}

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch("lattice sum across ambients");
    IntMat g = a.basis();
    g.insert(g.end(), b.basis().begin(), b.basis().end());
    return IntLattice(a.ambient_rank(), g);
}

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b) {
    const int n = a.ambient_rank();
    if (n != b.ambient_rank()) throw AmbientMismatch("lattice intersection across ambients");
    // Rows (x, x) for x in a and (y, 0) for y in b; rows of the HNF with a
    // vanishing left half carry a basis of the intersection in the right half.
    IntMat z;
    for (const auto& r : a.basis()) {
        IntVec v(r);
        v.insert(v.end(), r.begin(), r.end());
        z.push_back(v);
    }
    for (const auto& r : b.basis()) {
        IntVec v(r);
        v.resize(2 * n, 0);
        z.push_back(v);
    }
    IntMat h = hermite_rows(2 * n, z);
    IntMat out;
    for (const auto& r : h)
        if (std::all_of(r.begin(), r.begin() + n, [](long long x) { return x == 0; }))
            out.emplace_back(r.begin() + n, r.end());
    return IntLattice(n, out);
}

IntLattice saturation(const IntLattice& L) {
    if (L.rank() == 0) return L;
    SmithResult s = smith_form(L.basis(), L.ambient_rank());
    IntMat rows(s.V_inv.begin(), s.V_inv.begin() + L.rank());
    return IntLattice(L.ambient_rank(), rows);
}

IntLattice orthogonal_lattice(const IntLattice& L) {
    const int n = L.ambient_rank();
    if (L.rank() == 0) return IntLattice::full(n);
    SmithResult s = smith_form(L.basis(), n);
    IntMat out;
    for (int j = L.rank(); j < n; ++j) {
        IntVec v(n);
        for (int i = 0; i < n; ++i) v[i] = s.V[i][j];
        out.push_back(v);
    }
    return IntLattice(n, out);
}

BigInt saturation_index(const IntLattice& L) {
    if (L.rank() == 0) return 1;
    SmithResult s = smith_form(L.basis(), L.ambient_rank());
    BigInt p = 1;
    for (long long d : s.diagonal) p *= d;
    return p;
}

Rational lattice_index(const IntLattice& L1, const IntLattice& L2) {
    if (L1.ambient_rank() != L2.ambient_rank()) throw AmbientMismatch("index across ambients");
    if (!(saturation(L1) == saturation(L2)))
        throw NotCommensurable("lattices span different rational subspaces");
    return Rational(saturation_index(L2), saturation_index(L1));
}

FiniteAbelianGroup::FiniteAbelianGroup(const std::vector<long long>& cyclic_orders) {
    const int k = static_cast<int>(cyclic_orders.size());
    IntMat d(k, IntVec(k, 0));
    for (int i = 0; i < k; ++i) {
        if (cyclic_orders[i] <= 0) throw DomainError("cyclic order must be positive");
        d[i][i] = cyclic_orders[i];
    }
    for (long long x : smith_form(d, k).diagonal)
        if (x > 1) f_.push_back(x);
}

BigInt FiniteAbelianGroup::order() const {
    BigInt p = 1;
    for (long long d : f_) p *= d;
    return p;
}

DiagSubgroup DiagSubgroup::from_elements(int n, long long e, const IntMat& exponents) {
    if (e <= 0) throw DomainError("exponent must be positive");
    check_width(exponents, n);
    const int k = static_cast<int>(exponents.size());
    // chi with chi . a_j = 0 mod e for all j: left kernel of [A; e I], projected.
    IntMat b(n + k, IntVec(k, 0));
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) b[i][j] = exponents[j][i];
        b[n + j][j] = e;
    }
    IntMat chars;
    for (const auto& r : left_kernel(b, k)) chars.emplace_back(r.begin(), r.begin() + n);
    return DiagSubgroup(IntLattice(n, chars));
}

DiagSubgroup diag_intersect(const DiagSubgroup& a, const DiagSubgroup& b) {
    return DiagSubgroup(lattice_sum(a.vanishing_chars(), b.vanishing_chars()));
}

DiagSubgroup diag_product(const DiagSubgroup& a, const DiagSubgroup& b) {
    return DiagSubgroup(lattice_intersect(a.vanishing_chars(), b.vanishing_chars()));
}

DiagSubgroup diag_identity_component(const DiagSubgroup& d) {
    return DiagSubgroup(saturation(d.vanishing_chars()));
}

FiniteAbelianGroup diag_component_group(const DiagSubgroup& d) {
    const IntLattice& k = d.vanishing_chars();
    if (k.rank() == 0) return FiniteAbelianGroup();
    std::vector<long long> orders;
    for (long long x : smith_form(k.basis(), k.ambient_rank()).diagonal)
        if (x > 1) orders.push_back(x);
    return FiniteAbelianGroup(orders);
}

Rational diag_index(const DiagSubgroup& d1, const DiagSubgroup& d2) {
    if (d1.ambient_rank() != d2.ambient_rank()) throw AmbientMismatch("index across ambients");
    const IntLattice& k1 = d1.vanishing_chars();
    const IntLattice& k2 = d2.vanishing_chars();
    if (!(saturation(k1) == saturation(k2)))
        throw NotCommensurable("subgroups have different identity components");
    return Rational(saturation_index(k1), saturation_index(k2));
}

bool arthur_product_check(const DiagSubgroup& h, const DiagSubgroup& s, const DiagSubgroup& s0) {
    if (!s.contains(h)) throw InclusionViolation("H-center not contained in S-center");
    if (!s.contains(s0)) throw InclusionViolation("identity component not contained in S-center");
    return s == diag_product(h, s0);
}

}  // namespace wfl
