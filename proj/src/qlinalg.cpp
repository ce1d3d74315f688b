#include "pearl/qlinalg.hpp"

#include "pearl/gf2.hpp"

#include <stdexcept>

namespace pearl::qla {

namespace {

// Gauss-Jordan on an augmented matrix; returns pivot columns.
std::vector<std::size_t> eliminate(Matrix& m, std::size_t ncols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m.at(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(p, k), m.at(r, k));
        Rational inv = 1 / m.at(r, c);
        for (std::size_t k = 0; k < m.cols; ++k) m.at(r, k) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational f = m.at(i, c);
            for (std::size_t k = 0; k < m.cols; ++k) m.at(i, k) -= f * m.at(r, k);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::size_t rank(Matrix m) { return eliminate(m, m.cols).size(); }

std::optional<std::vector<Rational>> solve(const Matrix& A, const std::vector<Rational>& b) {
    if (b.size() != A.rows) throw std::invalid_argument("qla::solve: size mismatch");
    Matrix aug(A.rows, A.cols + 1);
    for (std::size_t r = 0; r < A.rows; ++r) {
        for (std::size_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[r];
    }
    auto piv = eliminate(aug, A.cols);
    for (std::size_t r = piv.size(); r < A.rows; ++r)
        if (aug.at(r, A.cols) != 0) return std::nullopt;
    std::vector<Rational> x(A.cols, Rational(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, A.cols);
    return x;
}

std::optional<Matrix> inverse(const Matrix& A) {
    if (A.rows != A.cols) return std::nullopt;
    const std::size_t n = A.rows;
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, n + r) = 1;
    }
    if (eliminate(aug, n).size() != n) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

bool invertible_over(const Matrix& A, bool mod2) {
    if (A.rows != A.cols) return false;
    if (mod2) {
        gf2::BitMatrix m(A.rows, A.cols);
        for (std::size_t r = 0; r < A.rows; ++r)
            for (std::size_t c = 0; c < A.cols; ++c) {
                if (!is_integral(A.at(r, c))) return false;
                Int v = boost::multiprecision::numerator(A.at(r, c)) % 2;
                if (v != 0) m.set(r, c);
            }
        return gf2::inverse(m).has_value();
    }
    auto inv = inverse(A);
    if (!inv) return false;
    for (const auto& q : inv->a)
        if (!is_integral(q)) return false;
    return true;
}

}  // namespace pearl::qla
