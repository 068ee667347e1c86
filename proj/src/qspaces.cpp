#include "wfl/qspaces.hpp"

#include <algorithm>

namespace wfl {

QMat rref(int ncols, QMat m) {
    for (const auto& r : m)
        if (static_cast<int>(r.size()) != ncols) throw DomainError("vector of wrong length");
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Rational piv = m[r][c];
        for (auto& x : m[r]) x /= piv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (int j = c; j < ncols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

Rational determinant(QMat m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

QSubspace::QSubspace(int ambient_dim, const QMat& spanning) : n_(ambient_dim), basis_(rref(ambient_dim, spanning)) {}

QSubspace QSubspace::full(int n) {
    QMat id(n, QVec(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    return QSubspace(n, id);
}

bool QSubspace::contains(const QVec& v) const {
    QMat m = basis_;
    m.push_back(v);
    return static_cast<int>(rref(n_, m).size()) == dim();
}

bool QSubspace::contains(const QSubspace& s) const {
    if (s.n_ != n_) throw DomainError("subspaces in different ambients");
    return std::all_of(s.basis_.begin(), s.basis_.end(), [this](const QVec& v) { return contains(v); });
}

QSubspace subspace_sum(const QSubspace& a, const QSubspace& b) {
    QMat m = a.basis();
    m.insert(m.end(), b.basis().begin(), b.basis().end());
    return QSubspace(a.ambient_dim(), m);
}

QForm::QForm(QMat gram) : gram_(std::move(gram)) {
    const std::size_t n = gram_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (gram_[i].size() != n) throw DomainError("gram matrix not square");
        for (std::size_t j = 0; j < n; ++j)
            if (gram_[i][j] != gram_[j][i]) throw DomainError("gram matrix not symmetric");
    }
    for (std::size_t k = 1; k <= n; ++k) {
        QMat minor(k, QVec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = gram_[i][j];
        if (determinant(minor) <= 0) throw DomainError("form is not positive definite");
    }
}

QForm QForm::euclidean(int n) {
    QMat id(n, QVec(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    return QForm(id);
}

Rational QForm::operator()(const QVec& u, const QVec& v) const {
    Rational s = 0;
    for (std::size_t i = 0; i < gram_.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < gram_.size(); ++j) s += u[i] * gram_[i][j] * v[j];
    }
    return s;
}

Rational gram_determinant(const QMat& vectors, const QForm& form) {
    const std::size_t k = vectors.size();
    QMat g(k, QVec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g[i][j] = form(vectors[i], vectors[j]);
    return determinant(g);
}

QSubspace relative_space(const QSubspace& big, const QSubspace& small, const QForm& form) {
    if (!big.contains(small)) throw NotNested("subspace not contained in the larger space");
    const int kb = big.dim(), ks = small.dim();
    // coefficients c with (sum c_i b_i) orthogonal to every s_j
    QMat eq(ks, QVec(kb));
    for (int j = 0; j < ks; ++j)
        for (int i = 0; i < kb; ++i) eq[j][i] = form(big.basis()[i], small.basis()[j]);
    QMat red = rref(kb, eq);
    std::vector<int> pivots;
    for (const auto& row : red) {
        int p = 0;
        while (row[p] == 0) ++p;
        pivots.push_back(p);
    }
    QMat out;
    for (int f = 0; f < kb; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        QVec c(kb, 0);
        c[f] = 1;
        for (std::size_t r = 0; r < red.size(); ++r) c[pivots[r]] = -red[r][f];
        QVec v(big.ambient_dim(), 0);
        for (int i = 0; i < kb; ++i)
            for (int t = 0; t < big.ambient_dim(); ++t) v[t] += c[i] * big.basis()[i][t];
        out.push_back(v);
    }
    return QSubspace(big.ambient_dim(), out);
}

DSquared d_coefficient(const QSubspace& aM, const QSubspace& aL, const QSubspace& aR, const QForm& form) {
    if (!aR.contains(aM) || !aR.contains(aL)) throw NotNested("d-coefficient inputs not inside aR");
    if (aM.dim() + aL.dim() != aR.dim()) return {0};
    QMat both = aM.basis();
    both.insert(both.end(), aL.basis().begin(), aL.basis().end());
    if (static_cast<int>(rref(aR.ambient_dim(), both).size()) != aR.dim()) return {0};
    Rational num = gram_determinant(both, form);
    Rational den = gram_determinant(aM.basis(), form) * gram_determinant(aL.basis(), form);
    return {num / den};
}

}  // namespace wfl
