#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wfl/qspaces.hpp"

#include <random>

using namespace wfl;

namespace {

QMat gram_schmidt(const QMat& vs) {
    QMat out;
    for (const auto& v : vs) {
        QVec w = v;
        for (const auto& u : out) {
            Rational uu = 0, uv = 0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                uu += u[i] * u[i];
                uv += u[i] * v[i];
            }
            for (std::size_t i = 0; i < u.size(); ++i) w[i] -= uv / uu * u[i];
        }
        out.push_back(w);
    }
    return out;
}

Rational sqnorm(const QVec& v) {
    Rational s = 0;
    for (const auto& x : v) s += x * x;
    return s;
}

// Squared determinant of the sum map written in orthogonal bases.
Rational d_squared_oracle(const QMat& m, const QMat& l, const QMat& r) {
    QMat om = gram_schmidt(m), ol = gram_schmidt(l), orr = gram_schmidt(r);
    QMat coords;
    for (const auto* side : {&om, &ol})
        for (const auto& v : *side) {
            QVec c;
            for (const auto& b : orr) {
                Rational dot = 0;
                for (std::size_t i = 0; i < b.size(); ++i) dot += v[i] * b[i];
                c.push_back(dot / sqnorm(b));
            }
            coords.push_back(c);
        }
    Rational det = determinant(coords);
    Rational s = det * det;
    for (const auto& b : orr) s *= sqnorm(b);
    for (const auto& v : om) s /= sqnorm(v);
    for (const auto& v : ol) s /= sqnorm(v);
    return s;
}

}  // namespace

TEST_CASE("relative space examples") {
    QForm e2 = QForm::euclidean(2), e3 = QForm::euclidean(3);
    QSubspace diag(2, {{1, 1}});
    CHECK(relative_space(QSubspace::full(2), diag, e2) == QSubspace(2, {{1, -1}}));
    CHECK(relative_space(diag, diag, e2).dim() == 0);
    QSubspace plane = relative_space(QSubspace::full(3), QSubspace(3, {{1, 1, 1}}), e3);
    CHECK(plane == QSubspace(3, {{1, -1, 0}, {0, 1, -1}}));
    CHECK_THROWS_AS(relative_space(diag, QSubspace(2, {{1, 0}}), e2), NotNested);
}

TEST_CASE("d coefficient examples") {
    QForm e2 = QForm::euclidean(2);
    QSubspace full = QSubspace::full(2);
    CHECK(d_coefficient(QSubspace::zero(2), full, full, e2).value == 1);
    CHECK(d_coefficient(QSubspace(2, {{1, 0}}), full, full, e2).value == 0);
    CHECK(d_coefficient(QSubspace(2, {{1, 1}}), QSubspace(2, {{1, -1}}), full, e2).value == 1);
    CHECK(d_coefficient(QSubspace(2, {{1, 1}}), QSubspace(2, {{1, 1}}), full, e2).value == 0);
    // angle of 45 degrees: d = sin(45)
    CHECK(d_coefficient(QSubspace(2, {{1, 0}}), QSubspace(2, {{1, 1}}), full, e2).value == Rational(1, 2));
    CHECK_THROWS_AS(d_coefficient(QSubspace(2, {{1, 0}}), full, QSubspace(2, {{1, 1}}), e2), NotNested);
}

TEST_CASE("form validation") {
    CHECK_THROWS_AS(QForm(QMat{{1, 0}, {0, -1}}), DomainError);
    CHECK_THROWS_AS(QForm(QMat{{1, 2}, {0, 1}}), DomainError);
    CHECK_NOTHROW(QForm(QMat{{2, 1}, {1, 2}}));
}

TEST_CASE("d coefficient: symmetry and Gram-Schmidt oracle") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> d(-3, 3);
    QForm e4 = QForm::euclidean(4);
    int nonzero = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int dm = trial % 3, dl = (trial / 3) % 3;
        auto rnd = [&](int k) {
            QMat m(k, QVec(4));
            for (auto& r : m)
                for (auto& x : r) x = d(rng);
            return m;
        };
        QMat m = rnd(dm), l = rnd(dl);
        QSubspace sm(4, m), sl(4, l);
        QSubspace sr = subspace_sum(sm, sl);
        DSquared a = d_coefficient(sm, sl, sr, e4), b = d_coefficient(sl, sm, sr, e4);
        CHECK(a == b);
        bool direct = sm.dim() + sl.dim() == sr.dim();
        CHECK(a.nonzero() == direct);
        if (direct) {
            ++nonzero;
            CHECK(a.value == d_squared_oracle(sm.basis(), sl.basis(), sr.basis()));
            CHECK(a.value > 0);
            CHECK(a.value <= 1);
        }
    }
    CHECK(nonzero > 100);
}
