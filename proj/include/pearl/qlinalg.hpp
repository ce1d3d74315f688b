// Small dense linear algebra over Q and over Z (via Q with integrality checks).
#pragma once

#include "pearl/novikov.hpp"

#include <optional>
#include <vector>

namespace pearl::qla {

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}
    Rational& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

std::size_t rank(Matrix m);
std::optional<std::vector<Rational>> solve(const Matrix& A, const std::vector<Rational>& b);
std::optional<Matrix> inverse(const Matrix& A);

bool is_integral(const Rational& q);
// Inverse exists over Z (or over Z2 when mod2 is set, entries read mod 2).
bool invertible_over(const Matrix& A, bool mod2);

}  // namespace pearl::qla
