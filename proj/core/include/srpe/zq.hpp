#pragma once
/* zq.hpp - exact dense linear algebra over Z_q.
 *
 * Every public-parameter, ciphertext and target matrix in the scheme is a
 * ZqMatrix: residues are stored canonically in [0, q).  Key material and
 * trapdoors are signed IntMatrix values (see intmat.hpp); the mixed products
 * reduce the signed side into [0, q) first.  All products accumulate in
 * unsigned 128-bit arithmetic, so moduli up to 2^63 stay exact.
 */

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <srpe/intmat.hpp>

namespace srpe {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Prime modulus q together with its bit length ceil(log2 q).
struct Modulus {
    u64 q = 2;
    unsigned bit_length = 1;

    Modulus() = default;
    explicit Modulus(u64 q_);

    bool operator==(const Modulus&) const = default;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(u64 n);
/// Smallest prime >= n (n >= 2).
u64 next_prime_u64(u64 n);

inline u64 mod_add(u64 a, u64 b, u64 q) {
    u64 s = a + b;
    return (s >= q || s < a) ? s - q : s;
}
inline u64 mod_sub(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + (q - b); }
inline u64 mod_mul(u64 a, u64 b, u64 q) { return static_cast<u64>((u128)a * b % q); }
u64 mod_pow(u64 base, u64 exp, u64 q);
/// Inverse of a mod q for prime q; throws if a == 0 mod q.
u64 mod_inv(u64 a, u64 q);
/// Reduce a signed value into [0, q).
inline u64 mod_from_int(std::int64_t v, u64 q) {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    return r < 0 ? static_cast<u64>(r + static_cast<std::int64_t>(q)) : static_cast<u64>(r);
}
/// Signed representative in (-q/2, q/2].
inline std::int64_t center_lift(u64 r, u64 q) {
    return r > q / 2 ? static_cast<std::int64_t>(r) - static_cast<std::int64_t>(q)
                     : static_cast<std::int64_t>(r);
}

class ZqMatrix;

/// Vector of residues in [0, q).
struct ZqVector {
    Modulus mod;
    std::vector<u64> entries;

    ZqVector() = default;
    ZqVector(std::size_t len, Modulus m) : mod(m), entries(len, 0) {}

    std::size_t size() const { return entries.size(); }
    u64& operator[](std::size_t i) { return entries[i]; }
    u64 operator[](std::size_t i) const { return entries[i]; }

    bool operator==(const ZqVector&) const = default;

    ZqMatrix as_column() const;
};

/// Dense row-major matrix of residues in [0, q).
class ZqMatrix {
public:
    ZqMatrix() = default;
    ZqMatrix(std::size_t rows, std::size_t cols, Modulus mod)
        : rows_(rows), cols_(cols), mod_(mod), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Modulus& mod() const { return mod_; }
    u64 q() const { return mod_.q; }

    u64& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    u64 at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    u64& operator()(std::size_t r, std::size_t c) { return at(r, c); }
    u64 operator()(std::size_t r, std::size_t c) const { return at(r, c); }

    const std::vector<u64>& data() const { return data_; }
    std::vector<u64>& data() { return data_; }

    bool operator==(const ZqMatrix&) const = default;

    static ZqMatrix identity(std::size_t n, Modulus mod);
    static ZqMatrix zero(std::size_t rows, std::size_t cols, Modulus mod) {
        return ZqMatrix(rows, cols, mod);
    }

    ZqVector column(std::size_t c) const;
    ZqVector row_vec(std::size_t r) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Modulus mod_;
    std::vector<u64> data_;
};

// --- arithmetic -----------------------------------------------------------

ZqMatrix mat_mul(const ZqMatrix& a, const ZqMatrix& b);
ZqVector mat_vec(const ZqMatrix& a, const ZqVector& v);
/// a^T * v without materializing the transpose.
ZqVector mat_transpose_vec(const ZqMatrix& a, const ZqVector& v);
ZqMatrix mat_add(const ZqMatrix& a, const ZqMatrix& b);
ZqMatrix mat_sub(const ZqMatrix& a, const ZqMatrix& b);
ZqMatrix scalar_mul(u64 c, const ZqMatrix& a);
ZqMatrix transpose(const ZqMatrix& a);
ZqMatrix concat_cols(std::span<const ZqMatrix> parts);
ZqMatrix concat_cols(const ZqMatrix& a, const ZqMatrix& b);

ZqVector vec_add(const ZqVector& a, const ZqVector& b);
ZqVector vec_sub(const ZqVector& a, const ZqVector& b);
ZqVector stack(const ZqVector& a, const ZqVector& b);
ZqVector stack(const ZqVector& a, const ZqVector& b, const ZqVector& c);

// --- mixed Zq x signed-integer products -----------------------------------

ZqMatrix mat_mul(const ZqMatrix& a, const IntMatrix& b);
ZqVector mat_vec(const ZqMatrix& a, const IntVector& v);
/// z^T * v for signed z (rows(z) == v.size()); result has cols(z) entries.
ZqVector int_transpose_vec(const IntMatrix& z, const ZqVector& v);
ZqMatrix reduce_mod(const IntMatrix& a, Modulus mod);

// --- solving / rank over the field Z_q (q prime) ---------------------------

/// Rank of a over Z_q by Gaussian elimination.
std::size_t rank(const ZqMatrix& a);
/// Determinant of a square matrix over Z_q.
u64 determinant(const ZqMatrix& a);

/// Cached row reduction of a full-row-rank matrix A, for repeated
/// particular-solution solves A x = u (mod q).
class ZqSolver {
public:
    explicit ZqSolver(const ZqMatrix& a);
    /// Some x in [0,q)^cols with A x = u; throws if u is not in the image.
    ZqVector solve(const ZqVector& u) const;
    /// Column-wise solve for a matrix right-hand side.
    ZqMatrix solve(const ZqMatrix& u) const;
    std::size_t rank() const { return pivot_cols_.size(); }

private:
    ZqMatrix rref_;                     // reduced row echelon form of A
    std::vector<std::size_t> pivot_cols_;
    std::vector<std::vector<u64>> ops_; // row operations applied to A, acting on u
    std::size_t n_rows_;
};

}  // namespace srpe
