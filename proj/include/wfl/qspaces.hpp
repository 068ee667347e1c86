#pragma once

#include "wfl/rational.hpp"

#include <vector>

namespace wfl {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

struct NotNested : DomainError {
    using DomainError::DomainError;
};

QMat rref(int ncols, QMat rows);
Rational determinant(QMat m);

// Subspace of Q^n with a basis in reduced row-echelon form.
class QSubspace {
public:
    QSubspace() = default;
    QSubspace(int ambient_dim, const QMat& spanning);

    static QSubspace zero(int n) { return QSubspace(n, {}); }
    static QSubspace full(int n);

    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const QMat& basis() const { return basis_; }

    bool contains(const QVec& v) const;
    bool contains(const QSubspace& s) const;

    friend bool operator==(const QSubspace&, const QSubspace&) = default;
    friend bool operator<(const QSubspace& a, const QSubspace& b) {
        return a.n_ != b.n_ ? a.n_ < b.n_ : a.basis_ < b.basis_;
    }

private:
    int n_ = 0;
    QMat basis_;
};

QSubspace subspace_sum(const QSubspace& a, const QSubspace& b);

class QForm {
public:
    explicit QForm(QMat gram);  // throws DomainError unless symmetric positive definite
    static QForm euclidean(int n);

    int dim() const { return static_cast<int>(gram_.size()); }
    const QMat& gram() const { return gram_; }
    Rational operator()(const QVec& u, const QVec& v) const;

private:
    QMat gram_;
};

struct DSquared {
    Rational value;
    bool nonzero() const { return value != 0; }
    friend bool operator==(const DSquared&, const DSquared&) = default;
};

Rational gram_determinant(const QMat& vectors, const QForm& form);

// Orthogonal complement of `small` inside `big`.
QSubspace relative_space(const QSubspace& big, const QSubspace& small, const QForm& form);

// Square of the volume ratio of aM (+) aL -> aR, or 0 when the sum is not a
// direct decomposition of aR.
DSquared d_coefficient(const QSubspace& aM, const QSubspace& aL, const QSubspace& aR,
                       const QForm& form);

}  // namespace wfl
