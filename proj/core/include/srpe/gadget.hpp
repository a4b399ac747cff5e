#pragma once
/* gadget.hpp - the base-2 primitive matrix G, its binary-decomposition
 * inverse operator, and the public short basis of its kernel lattice.
 *
 * G = I_n (x) (1, 2, 4, ..., 2^(k-1)) with k = ceil(log2 q), zero-padded on
 * the right to n x m.  gadget_inverse(U) bit-decomposes each entry of U, so
 * G * gadget_inverse(U) = U holds exactly; padded coordinates decompose to
 * zero rows.
 */

#include <srpe/zq.hpp>

namespace srpe {

/// Padded primitive matrix G in Z_q^{n x m}; requires m >= n * ceil(log2 q).
ZqMatrix gadget_matrix(std::size_t n, std::size_t m, Modulus mod);

/// X in {0,1}^{m x cols(u)} with gadget_matrix(n, m, q) * X = u; deterministic.
IntMatrix gadget_inverse(const ZqMatrix& u, std::size_t m);

/// Basis T_G of the kernel lattice of G, with Gram-Schmidt norm <= sqrt(5).
/// Block-bidiagonal (2, -1) columns plus the binary expansion of q per block,
/// identity on the padded coordinates.
IntMatrix gadget_basis(std::size_t n, std::size_t m, Modulus mod);

}  // namespace srpe
