// Dense GF(2) linear algebra. Every kernel has a serial reference and an
// OpenMP variant; both perform the same pivot sequence and return identical bits.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace pearl::gf2 {

enum class Exec { Serial, Parallel, Auto };

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    bool any() const;
    std::size_t count() const;
    BitVec& operator^=(const BitVec& o);
    std::vector<std::size_t> ones() const;

    const std::vector<std::uint64_t>& words() const { return w_; }
    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), d_(rows * stride_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const {
        return (d_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v = true) {
        auto& w = d_[r * stride_ + (c >> 6)];
        if (v) w |= (std::uint64_t{1} << (c & 63));
        else w &= ~(std::uint64_t{1} << (c & 63));
    }
    void flip(std::size_t r, std::size_t c) {
        d_[r * stride_ + (c >> 6)] ^= (std::uint64_t{1} << (c & 63));
    }
    std::uint64_t* row(std::size_t r) { return d_.data() + r * stride_; }
    const std::uint64_t* row(std::size_t r) const { return d_.data() + r * stride_; }
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    BitVec row_vec(std::size_t r) const;
    BitMatrix transposed() const;
    BitMatrix operator*(const BitMatrix& o) const;
    BitVec apply(const BitVec& x) const;  // this * x
    bool is_zero() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> d_;
};

// Reduced row echelon form in place; columns are scanned left to right, so
// earlier columns are preferred as pivots. Returns the pivot columns.
std::vector<std::size_t> rref(BitMatrix& m, Exec ex = Exec::Auto);
std::vector<std::size_t> rref_serial(BitMatrix& m);
std::vector<std::size_t> rref_parallel(BitMatrix& m);

std::size_t rank(const BitMatrix& m, Exec ex = Exec::Auto);

// Some x with A x = b (free variables set to zero), or nullopt.
std::optional<BitVec> solve(const BitMatrix& A, const BitVec& b, Exec ex = Exec::Auto);

// Basis of {x : A x = 0}, one vector per non-pivot column.
std::vector<BitVec> nullspace(const BitMatrix& A, Exec ex = Exec::Auto);

// Inverse of a square matrix, or nullopt when singular.
std::optional<BitMatrix> inverse(const BitMatrix& A, Exec ex = Exec::Auto);

// Incrementally built span; vectors are kept reduced by their lowest set bit.
class Span {
public:
    explicit Span(std::size_t n) : n_(n) {}
    // Inserts v; returns false when v already lies in the span.
    bool insert(BitVec v);
    BitVec reduce(BitVec v) const;
    bool contains(const BitVec& v) const { return !reduce(v).any(); }
    std::size_t dim() const { return rows_.size(); }

private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, BitVec>> rows_;  // (pivot, vector)
};

// Number of OpenMP threads the parallel kernels will use.
int max_threads();
// Cap taken from PEARL_THREADS; invalid or missing values leave the default.
void apply_thread_env();

}  // namespace pearl::gf2
