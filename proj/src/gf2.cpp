#include "pearl/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pearl::gf2 {

bool BitVec::any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.n_ != n_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < w_.size(); ++k) {
        std::uint64_t w = w_[k];
        while (w) {
            out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    std::uint64_t* a = row(dst);
    const std::uint64_t* b = row(src);
    for (std::size_t k = 0; k < stride_; ++k) a[k] ^= b[k];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + stride_, row(b));
}

BitVec BitMatrix::row_vec(std::size_t r) const {
    BitVec v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) v.set(c);
    return v;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r);
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("BitMatrix shape mismatch");
    BitMatrix p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k)
            if (get(r, k)) {
                std::uint64_t* a = p.row(r);
                const std::uint64_t* b = o.row(k);
                for (std::size_t w = 0; w < p.stride_; ++w) a[w] ^= b[w];
            }
    return p;
}

BitVec BitMatrix::apply(const BitVec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("BitMatrix apply size mismatch");
    BitVec y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const std::uint64_t* a = row(r);
        for (std::size_t w = 0; w < stride_; ++w) acc ^= a[w] & x.words()[w];
        if (std::popcount(acc) & 1) y.set(r);
    }
    return y;
}

bool BitMatrix::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> rref_serial(BitMatrix& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::vector<std::size_t> rref_parallel(BitMatrix& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    const long long rows = static_cast<long long>(m.rows());
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const std::size_t pr = r;
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < rows; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (ui != pr && m.get(ui, c)) m.xor_row(ui, pr);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

namespace {

bool want_parallel(const BitMatrix& m, Exec ex) {
    if (ex == Exec::Serial) return false;
    if (ex == Exec::Parallel) return true;
    return max_threads() > 1 && m.rows() * m.stride() >= 4096;
}

}  // namespace

std::vector<std::size_t> rref(BitMatrix& m, Exec ex) {
    return want_parallel(m, ex) ? rref_parallel(m) : rref_serial(m);
}

std::size_t rank(const BitMatrix& m, Exec ex) {
    BitMatrix w = m;
    return rref(w, ex).size();
}

std::optional<BitVec> solve(const BitMatrix& A, const BitVec& b, Exec ex) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve: size mismatch");
    BitMatrix aug(A.rows(), A.cols() + 1);
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t c = 0; c < A.cols(); ++c)
            if (A.get(r, c)) aug.set(r, c);
        if (b.get(r)) aug.set(r, A.cols());
    }
    auto piv = rref(aug, ex);
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
    BitVec x(A.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        if (aug.get(i, A.cols())) x.set(piv[i]);
    return x;
}

std::vector<BitVec> nullspace(const BitMatrix& A, Exec ex) {
    BitMatrix w = A;
    auto piv = rref(w, ex);
    std::vector<bool> is_piv(A.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<BitVec> out;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_piv[f]) continue;
        BitVec v(A.cols());
        v.set(f);
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (w.get(i, f)) v.set(piv[i]);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<BitMatrix> inverse(const BitMatrix& A, Exec ex) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = A.rows();
    BitMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            if (A.get(r, c)) aug.set(r, c);
        aug.set(r, n + r);
    }
    auto piv = rref(aug, ex);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
    BitMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (aug.get(r, n + c)) inv.set(r, c);
    return inv;
}

BitVec Span::reduce(BitVec v) const {
    for (const auto& [p, r] : rows_)
        if (v.get(p)) v ^= r;
    return v;
}

bool Span::insert(BitVec v) {
    if (v.size() != n_) throw std::invalid_argument("Span: size mismatch");
    v = reduce(std::move(v));
    auto ones = v.ones();
    if (ones.empty()) return false;
    const std::size_t p = ones.front();
    for (auto& [q, r] : rows_)
        if (r.get(p)) r ^= v;
    rows_.emplace_back(p, std::move(v));
    return true;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void apply_thread_env() {
    const char* v = std::getenv("PEARL_THREADS");
    if (!v) return;
    try {
        int n = std::stoi(v);
        if (n <= 0) return;
#ifdef _OPENMP
        omp_set_num_threads(n);
#endif
    } catch (const std::exception&) {
    }
}

}  // namespace pearl::gf2
