#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "dgt/matrix.hpp"

using namespace dgt;

namespace {

Matrix from_rows(FieldSpec f, const std::vector<std::vector<long>>& rows) {
    Matrix m(f, static_cast<int>(rows.size()),
             rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = Scalar(f, rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("rank, kernel and solve on a known rational matrix") {
    FieldSpec q = FieldSpec::rationals();
    Matrix m = from_rows(q, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(m.rank() == 2);
    Matrix k = m.kernel();
    CHECK(k.cols() == 1);
    // every kernel column really is annihilated
    for (int c = 0; c < k.cols(); ++c) {
        Vec img = m.apply(k.column_vec(c));
        for (const auto& s : img) CHECK(s.is_zero());
    }
    Vec b = {Scalar(q, 6), Scalar(q, 12), Scalar(q, 2)};
    auto x = m.solve(b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
    Vec unsolvable = {Scalar(q, 1), Scalar(q, 0), Scalar(q, 0)};
    CHECK_FALSE(m.solve(unsolvable).has_value());
}

TEST_CASE("inverse exists exactly when the matrix is regular") {
    FieldSpec q = FieldSpec::rationals();
    Matrix m = from_rows(q, {{2, 1}, {7, 4}});
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK((m * *inv) == Matrix::identity(q, 2));
    CHECK((*inv * m) == Matrix::identity(q, 2));
    Matrix sing = from_rows(q, {{1, 2}, {2, 4}});
    CHECK_FALSE(sing.inverse().has_value());
}

TEST_CASE("fraction growth stays exact") {
    // Hilbert-style matrix: floating point misjudges this rank immediately
    FieldSpec q = FieldSpec::rationals();
    int n = 7;
    Matrix h(q, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h.at(i, j) = Scalar::one(q) / Scalar(q, i + j + 1);
    CHECK(h.rank() == n);
    auto inv = h.inverse();
    REQUIRE(inv.has_value());
    CHECK((h * *inv) == Matrix::identity(q, n));
}

// Independent oracle over F2: enumerate all vectors of the domain.
namespace {

int brute_kernel_dim(const Matrix& m) {
    int n = m.cols();
    FieldSpec f = m.field();
    long count = 0;
    for (long mask = 0; mask < (1L << n); ++mask) {
        Vec v(n, Scalar::zero(f));
        for (int j = 0; j < n; ++j)
            if (mask & (1L << j)) v[j] = Scalar::one(f);
        Vec img = m.apply(v);
        bool zero = true;
        for (const auto& s : img)
            if (!s.is_zero()) zero = false;
        if (zero) ++count;
    }
    int dim = 0;
    while ((1L << dim) < count) ++dim;
    CHECK((1L << dim) == count);  // solution sets of linear systems are subspaces
    return dim;
}

int brute_image_dim(const Matrix& m) {
    int n = m.cols();
    FieldSpec f = m.field();
    std::set<std::vector<bool>> image;
    for (long mask = 0; mask < (1L << n); ++mask) {
        Vec v(n, Scalar::zero(f));
        for (int j = 0; j < n; ++j)
            if (mask & (1L << j)) v[j] = Scalar::one(f);
        Vec img = m.apply(v);
        std::vector<bool> bits;
        for (const auto& s : img) bits.push_back(!s.is_zero());
        image.insert(bits);
    }
    int dim = 0;
    while ((1L << dim) < static_cast<long>(image.size())) ++dim;
    CHECK((1L << dim) == static_cast<long>(image.size()));
    return dim;
}

}  // namespace

TEST_CASE("F2 brute-force oracle agrees on randomized two-step complexes") {
    FieldSpec f2 = FieldSpec::prime(2);
    std::mt19937 rng(20260826);
    int runs = 0;
    while (runs < 110) {
        // dims n0 -> n1 -> n2 with total at most 8
        int n0 = 1 + static_cast<int>(rng() % 3);
        int n1 = 1 + static_cast<int>(rng() % 3);
        int n2 = 1 + static_cast<int>(rng() % 2);
        if (n0 + n1 + n2 > 8) continue;
        Matrix b(f2, n2, n1);
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < n1; ++j) b.at(i, j) = Scalar(f2, rng() % 2);
        // a has columns drawn from ker(b), so b*a = 0 and d^2 = 0 holds
        Matrix kb = b.kernel();
        Matrix a(f2, n1, n0);
        for (int j = 0; j < n0; ++j) {
            Vec col(n1, Scalar::zero(f2));
            for (int c = 0; c < kb.cols(); ++c)
                if (rng() % 2)
                    for (int i = 0; i < n1; ++i) col[i] += kb.at(i, c);
            a.set_column(j, col);
        }
        Matrix prod = b * a;
        REQUIRE(prod.is_zero());

        CHECK(a.kernel().cols() == brute_kernel_dim(a));
        CHECK(b.kernel().cols() == brute_kernel_dim(b));
        CHECK(a.rank() == brute_image_dim(a));
        CHECK(b.rank() == brute_image_dim(b));
        // homology at the middle spot: dim ker(b) - dim im(a)
        int middle = b.kernel().cols() - a.rank();
        int brute_middle = brute_kernel_dim(b) - brute_image_dim(a);
        CHECK(middle == brute_middle);
        ++runs;
    }
    CHECK(runs >= 100);
}
