#pragma once
/* frd.hpp - full-rank difference map on Z_q^n.
 *
 * Vectors are read as polynomials of degree < n and mapped to their
 * multiplication matrix modulo a fixed monic irreducible f(X) of degree n
 * over the field Z_q.  The map is Z_q-linear, and H(v) is invertible for
 * every v != 0 because Z_q[X]/(f) is a field, so differences of distinct
 * inputs are always invertible.  Requires q prime.
 */

#include <srpe/zq.hpp>

namespace srpe {

/// Monic irreducible polynomial over Z_q, stored low-degree-first with the
/// leading 1 included (size == degree + 1).
struct FrdPoly {
    Modulus mod;
    std::vector<u64> coeffs;

    std::size_t degree() const { return coeffs.size() - 1; }
    bool operator==(const FrdPoly&) const = default;
};

/// Deterministic search for a monic irreducible f of the given degree:
/// candidates X^n + (low coefficients counting up in base q), first hit wins.
FrdPoly find_irreducible(std::size_t degree, Modulus mod);

/// Rabin irreducibility test for a monic polynomial over Z_q (q prime).
bool is_irreducible(const FrdPoly& f);

/// The multiplication-by-v matrix modulo f; columns are v * X^j mod f.
ZqMatrix frd_map(const ZqVector& v, const FrdPoly& f);

}  // namespace srpe
