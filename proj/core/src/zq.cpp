#include <srpe/zq.hpp>

#include <algorithm>
#include <bit>

namespace srpe {

Modulus::Modulus(u64 q_) : q(q_) {
    if (q < 2) throw std::invalid_argument("Modulus: q must be >= 2");
    bit_length = 64 - static_cast<unsigned>(std::countl_zero(q - 1));
    if (q == 2) bit_length = 1;
}

u64 mod_pow(u64 base, u64 exp, u64 q) {
    u64 r = 1 % q;
    base %= q;
    while (exp) {
        if (exp & 1) r = mod_mul(r, base, q);
        base = mod_mul(base, base, q);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // witness set exact for all n < 3.3 * 10^24
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mod_mul(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

u64 next_prime_u64(u64 n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

u64 mod_inv(u64 a, u64 q) {
    a %= q;
    if (a == 0) throw std::invalid_argument("mod_inv: zero is not invertible");
    // extended Euclid on (q, a); q prime so gcd is 1
    i64 t0 = 0, t1 = 1;
    i64 r0 = static_cast<i64>(q), r1 = static_cast<i64>(a);
    while (r1 != 0) {
        i64 quo = r0 / r1;
        i64 tmp = r0 - quo * r1; r0 = r1; r1 = tmp;
        tmp = t0 - quo * t1; t0 = t1; t1 = tmp;
    }
    if (r0 != 1) throw std::invalid_argument("mod_inv: not invertible (q not prime?)");
    return mod_from_int(t0, q);
}

ZqMatrix ZqVector::as_column() const {
    ZqMatrix m(size(), 1, mod);
    for (std::size_t i = 0; i < size(); ++i) m.at(i, 0) = entries[i];
    return m;
}

ZqMatrix ZqMatrix::identity(std::size_t n, Modulus mod) {
    ZqMatrix m(n, n, mod);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % mod.q;
    return m;
}

ZqVector ZqMatrix::column(std::size_t c) const {
    ZqVector v(rows_, mod_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

ZqVector ZqMatrix::row_vec(std::size_t r) const {
    ZqVector v(cols_, mod_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

namespace {

void require_same_modulus(const Modulus& a, const Modulus& b, const char* op) {
    if (a.q != b.q) throw std::invalid_argument(std::string(op) + ": modulus mismatch");
}

}  // namespace

ZqMatrix mat_mul(const ZqMatrix& a, const ZqMatrix& b) {
    require_same_modulus(a.mod(), b.mod(), "mat_mul");
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    const u64 q = a.q();
    ZqMatrix out(a.rows(), b.cols(), a.mod());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            u128 acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += (u128)a.at(i, k) * b.at(k, j);
            out.at(i, j) = static_cast<u64>(acc % q);
        }
    }
    return out;
}

ZqVector mat_vec(const ZqMatrix& a, const ZqVector& v) {
    require_same_modulus(a.mod(), v.mod, "mat_vec");
    if (a.cols() != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    const u64 q = a.q();
    ZqVector out(a.rows(), a.mod());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        u128 acc = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc += (u128)a.at(i, k) * v[k];
        out[i] = static_cast<u64>(acc % q);
    }
    return out;
}

ZqVector mat_transpose_vec(const ZqMatrix& a, const ZqVector& v) {
    require_same_modulus(a.mod(), v.mod, "mat_transpose_vec");
    if (a.rows() != v.size()) throw std::invalid_argument("mat_transpose_vec: dimension mismatch");
    const u64 q = a.q();
    ZqVector out(a.cols(), a.mod());
    std::vector<u128> acc(a.cols(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            acc[c] += (u128)a.at(r, c) * v[r];
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] = static_cast<u64>(acc[c] % q);
    return out;
}

ZqMatrix mat_add(const ZqMatrix& a, const ZqMatrix& b) {
    require_same_modulus(a.mod(), b.mod(), "mat_add");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("mat_add: dimension mismatch");
    ZqMatrix out(a.rows(), a.cols(), a.mod());
    for (std::size_t i = 0; i < a.data().size(); ++i)
        out.data()[i] = mod_add(a.data()[i], b.data()[i], a.q());
    return out;
}

ZqMatrix mat_sub(const ZqMatrix& a, const ZqMatrix& b) {
    require_same_modulus(a.mod(), b.mod(), "mat_sub");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("mat_sub: dimension mismatch");
    ZqMatrix out(a.rows(), a.cols(), a.mod());
    for (std::size_t i = 0; i < a.data().size(); ++i)
        out.data()[i] = mod_sub(a.data()[i], b.data()[i], a.q());
    return out;
}

ZqMatrix scalar_mul(u64 c, const ZqMatrix& a) {
    ZqMatrix out(a.rows(), a.cols(), a.mod());
    c %= a.q();
    for (std::size_t i = 0; i < a.data().size(); ++i)
        out.data()[i] = mod_mul(c, a.data()[i], a.q());
    return out;
}

ZqMatrix transpose(const ZqMatrix& a) {
    ZqMatrix out(a.cols(), a.rows(), a.mod());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out.at(c, r) = a.at(r, c);
    return out;
}

ZqMatrix concat_cols(std::span<const ZqMatrix> parts) {
    if (parts.empty()) throw std::invalid_argument("concat_cols: empty input");
    const std::size_t rows = parts[0].rows();
    std::size_t cols = 0;
    for (const auto& p : parts) {
        require_same_modulus(parts[0].mod(), p.mod(), "concat_cols");
        if (p.rows() != rows) throw std::invalid_argument("concat_cols: row mismatch");
        cols += p.cols();
    }
    ZqMatrix out(rows, cols, parts[0].mod());
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < p.cols(); ++c)
                out.at(r, off + c) = p.at(r, c);
        off += p.cols();
    }
    return out;
}

ZqMatrix concat_cols(const ZqMatrix& a, const ZqMatrix& b) {
    const ZqMatrix parts[] = {a, b};
    return concat_cols(std::span<const ZqMatrix>(parts, 2));
}

ZqVector vec_add(const ZqVector& a, const ZqVector& b) {
    require_same_modulus(a.mod, b.mod, "vec_add");
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
    ZqVector out(a.size(), a.mod);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_add(a[i], b[i], a.mod.q);
    return out;
}

ZqVector vec_sub(const ZqVector& a, const ZqVector& b) {
    require_same_modulus(a.mod, b.mod, "vec_sub");
    if (a.size() != b.size()) throw std::invalid_argument("vec_sub: length mismatch");
    ZqVector out(a.size(), a.mod);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_sub(a[i], b[i], a.mod.q);
    return out;
}

ZqVector stack(const ZqVector& a, const ZqVector& b) {
    require_same_modulus(a.mod, b.mod, "stack");
    ZqVector out(a.size() + b.size(), a.mod);
    std::copy(a.entries.begin(), a.entries.end(), out.entries.begin());
    std::copy(b.entries.begin(), b.entries.end(), out.entries.begin() + a.size());
    return out;
}

ZqVector stack(const ZqVector& a, const ZqVector& b, const ZqVector& c) {
    return stack(stack(a, b), c);
}

ZqMatrix mat_mul(const ZqMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul(int): dimension mismatch");
    const u64 q = a.q();
    ZqMatrix out(a.rows(), b.cols(), a.mod());
    // reduce the signed factor once
    std::vector<u64> br(b.rows() * b.cols());
    for (std::size_t i = 0; i < br.size(); ++i) br[i] = mod_from_int(b.data()[i], q);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            u128 acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += (u128)a.at(i, k) * br[k * b.cols() + j];
            out.at(i, j) = static_cast<u64>(acc % q);
        }
    }
    return out;
}

ZqVector mat_vec(const ZqMatrix& a, const IntVector& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("mat_vec(int): dimension mismatch");
    const u64 q = a.q();
    ZqVector out(a.rows(), a.mod());
    std::vector<u64> vr(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) vr[i] = mod_from_int(v[i], q);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        u128 acc = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc += (u128)a.at(i, k) * vr[k];
        out[i] = static_cast<u64>(acc % q);
    }
    return out;
}

ZqVector int_transpose_vec(const IntMatrix& z, const ZqVector& v) {
    if (z.rows() != v.size()) throw std::invalid_argument("int_transpose_vec: dimension mismatch");
    const u64 q = v.mod.q;
    ZqVector out(z.cols(), v.mod);
    std::vector<u128> acc(z.cols(), 0);
    for (std::size_t r = 0; r < z.rows(); ++r) {
        for (std::size_t c = 0; c < z.cols(); ++c)
            acc[c] += (u128)mod_from_int(z.at(r, c), q) * v[r];
    }
    for (std::size_t c = 0; c < z.cols(); ++c) out[c] = static_cast<u64>(acc[c] % q);
    return out;
}

ZqMatrix reduce_mod(const IntMatrix& a, Modulus mod) {
    ZqMatrix out(a.rows(), a.cols(), mod);
    for (std::size_t i = 0; i < a.data().size(); ++i)
        out.data()[i] = mod_from_int(a.data()[i], mod.q);
    return out;
}

// --- elimination ------------------------------------------------------------

std::size_t rank(const ZqMatrix& a) {
    ZqMatrix w = a;
    const u64 q = a.q();
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
        std::size_t piv = r;
        while (piv < w.rows() && w.at(piv, c) == 0) ++piv;
        if (piv == w.rows()) continue;
        for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w.at(r, j), w.at(piv, j));
        u64 inv = mod_inv(w.at(r, c), q);
        for (std::size_t j = c; j < w.cols(); ++j) w.at(r, j) = mod_mul(w.at(r, j), inv, q);
        for (std::size_t i = 0; i < w.rows(); ++i) {
            if (i == r || w.at(i, c) == 0) continue;
            u64 f = w.at(i, c);
            for (std::size_t j = c; j < w.cols(); ++j)
                w.at(i, j) = mod_sub(w.at(i, j), mod_mul(f, w.at(r, j), q), q);
        }
        ++r;
    }
    return r;
}

u64 determinant(const ZqMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
    ZqMatrix w = a;
    const u64 q = a.q();
    u64 det = 1 % q;
    for (std::size_t c = 0; c < w.cols(); ++c) {
        std::size_t piv = c;
        while (piv < w.rows() && w.at(piv, c) == 0) ++piv;
        if (piv == w.rows()) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w.at(c, j), w.at(piv, j));
            det = mod_sub(0, det, q);
        }
        det = mod_mul(det, w.at(c, c), q);
        u64 inv = mod_inv(w.at(c, c), q);
        for (std::size_t i = c + 1; i < w.rows(); ++i) {
            if (w.at(i, c) == 0) continue;
            u64 f = mod_mul(w.at(i, c), inv, q);
            for (std::size_t j = c; j < w.cols(); ++j)
                w.at(i, j) = mod_sub(w.at(i, j), mod_mul(f, w.at(c, j), q), q);
        }
    }
    return det;
}

ZqSolver::ZqSolver(const ZqMatrix& a) : rref_(a), n_rows_(a.rows()) {
    const u64 q = a.q();
    std::size_t r = 0;
    for (std::size_t c = 0; c < rref_.cols() && r < rref_.rows(); ++c) {
        std::size_t piv = r;
        while (piv < rref_.rows() && rref_.at(piv, c) == 0) ++piv;
        if (piv == rref_.rows()) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < rref_.cols(); ++j) std::swap(rref_.at(r, j), rref_.at(piv, j));
            ops_.push_back({0, r, piv});
        }
        u64 inv = mod_inv(rref_.at(r, c), q);
        for (std::size_t j = 0; j < rref_.cols(); ++j)
            rref_.at(r, j) = mod_mul(rref_.at(r, j), inv, q);
        ops_.push_back({1, r, inv});
        for (std::size_t i = 0; i < rref_.rows(); ++i) {
            if (i == r || rref_.at(i, c) == 0) continue;
            u64 f = rref_.at(i, c);
            for (std::size_t j = 0; j < rref_.cols(); ++j)
                rref_.at(i, j) = mod_sub(rref_.at(i, j), mod_mul(f, rref_.at(r, j), q), q);
            ops_.push_back({2, i, r, f});
        }
        pivot_cols_.push_back(c);
        ++r;
    }
}

ZqVector ZqSolver::solve(const ZqVector& u) const {
    if (u.size() != n_rows_) throw std::invalid_argument("ZqSolver: rhs length mismatch");
    const u64 q = rref_.q();
    ZqVector b = u;
    for (const auto& op : ops_) {
        switch (op[0]) {
            case 0: std::swap(b[op[1]], b[op[2]]); break;
            case 1: b[op[1]] = mod_mul(b[op[1]], op[2], q); break;
            default: b[op[1]] = mod_sub(b[op[1]], mod_mul(op[3], b[op[2]], q), q); break;
        }
    }
    // consistency: zero rows of the rref must see zero rhs
    for (std::size_t r = pivot_cols_.size(); r < n_rows_; ++r)
        if (b[r] != 0) throw std::invalid_argument("ZqSolver: rhs not in image");
    ZqVector x(rref_.cols(), rref_.mod());
    for (std::size_t r = 0; r < pivot_cols_.size(); ++r) x[pivot_cols_[r]] = b[r];
    return x;
}

ZqMatrix ZqSolver::solve(const ZqMatrix& u) const {
    ZqMatrix x(rref_.cols(), u.cols(), rref_.mod());
    for (std::size_t c = 0; c < u.cols(); ++c) {
        ZqVector xc = solve(u.column(c));
        for (std::size_t r = 0; r < x.rows(); ++r) x.at(r, c) = xc[r];
    }
    return x;
}

// --- intmat -----------------------------------------------------------------

IntMatrix int_mat_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("int_mat_mul: dimension mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            i128 acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += (i128)a.at(i, k) * b.at(k, j);
            out.at(i, j) = static_cast<i64>(acc);
        }
    return out;
}

IntVector int_mat_vec(const IntMatrix& a, const IntVector& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("int_mat_vec: dimension mismatch");
    IntVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        i128 acc = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc += (i128)a.at(i, k) * v[k];
        out[i] = static_cast<i64>(acc);
    }
    return out;
}

IntVector int_transpose_vec_int(const IntMatrix& a, const IntVector& v) {
    if (a.rows() != v.size()) throw std::invalid_argument("int_transpose_vec_int: dimension mismatch");
    IntVector out(a.cols());
    std::vector<i128> acc(a.cols(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            acc[c] += (i128)a.at(r, c) * v[r];
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] = static_cast<i64>(acc[c]);
    return out;
}

IntVector int_stack(const IntVector& a, const IntVector& b) {
    IntVector out(a.size() + b.size());
    std::copy(a.entries.begin(), a.entries.end(), out.entries.begin());
    std::copy(b.entries.begin(), b.entries.end(), out.entries.begin() + a.size());
    return out;
}

IntVector int_vec_add(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("int_vec_add: length mismatch");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

}  // namespace srpe
