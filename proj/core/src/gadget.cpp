#include <srpe/gadget.hpp>

namespace srpe {

ZqMatrix gadget_matrix(std::size_t n, std::size_t m, Modulus mod) {
    const std::size_t k = mod.bit_length;
    if (m < n * k) throw std::invalid_argument("gadget_matrix: m < n * ceil(log2 q)");
    ZqMatrix g(n, m, mod);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < k; ++j)
            g.at(r, r * k + j) = (u64{1} << j) % mod.q;
    return g;
}

IntMatrix gadget_inverse(const ZqMatrix& u, std::size_t m) {
    const std::size_t n = u.rows();
    const std::size_t k = u.mod().bit_length;
    if (m < n * k) throw std::invalid_argument("gadget_inverse: m < n * ceil(log2 q)");
    IntMatrix x(m, u.cols());
    for (std::size_t c = 0; c < u.cols(); ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            u64 v = u.at(r, c);
            for (std::size_t j = 0; j < k; ++j)
                x.at(r * k + j, c) = static_cast<i64>((v >> j) & 1);
        }
    }
    return x;
}

IntMatrix gadget_basis(std::size_t n, std::size_t m, Modulus mod) {
    const std::size_t k = mod.bit_length;
    if (m < n * k) throw std::invalid_argument("gadget_basis: m < n * ceil(log2 q)");
    IntMatrix t(m, m);
    for (std::size_t b = 0; b < n; ++b) {
        const std::size_t off = b * k;
        for (std::size_t j = 0; j + 1 < k; ++j) {
            t.at(off + j, off + j) = 2;
            t.at(off + j + 1, off + j) = -1;
        }
        // last column of each block: binary expansion of q, or 2*e_{k-1}
        // when q is exactly 2^k (its expansion needs k+1 bits)
        if ((mod.q & (mod.q - 1)) == 0) {
            t.at(off + k - 1, off + k - 1) = 2;
        } else {
            for (std::size_t j = 0; j < k; ++j)
                t.at(off + j, off + k - 1) = static_cast<i64>((mod.q >> j) & 1);
        }
    }
    // padded coordinates contribute unit vectors
    for (std::size_t j = n * k; j < m; ++j) t.at(j, j) = 1;
    return t;
}

}  // namespace srpe
