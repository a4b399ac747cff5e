#pragma once
/* afv_pe.hpp - inner-product predicate encryption in the
 * Agrawal-Freeman-Vaikuntanathan style, with the gadget-matrix variant.
 *
 * A key for predicate vector x decrypts a ciphertext bound to attribute y
 * exactly when <x, y> = 0 over Z_q.  Standalone building block: the
 * revocable scheme in srpe.hpp recombines the same pieces rather than
 * wrapping this module.
 */

#include <optional>

#include <srpe/encode.hpp>
#include <srpe/trapdoor.hpp>

namespace srpe {

struct PeParams {
    std::size_t n = 0, ell = 0, kappa = 0, m = 0;
    Modulus mod;
    GaussParam gauss;    // preimage sampling parameter s
    NoiseParam noise;    // B-bounded chi
};

struct PePublicParams {
    PeParams params;
    ZqMatrix a;                  // n x m
    std::vector<ZqMatrix> a_i;   // ell matrices, n x m each
    ZqMatrix v;                  // n x kappa
};

/// Either the direct preimage Z with [A | A_x] Z = V, or a delegated
/// kernel basis for [A | A_x] from which such a Z can be re-sampled.
struct PeSecretKey {
    ZqVector x;                       // predicate vector
    std::optional<IntMatrix> z;       // 2m x kappa
    std::optional<IntMatrix> basis;   // 2m x 2m kernel basis of [A | A_x]
};

struct PeCiphertext {
    ZqVector c;                  // kappa
    ZqVector c0;                 // m
    std::vector<ZqVector> c_i;   // ell vectors, m each
};

struct PeMasterSecret {
    GTrapdoor trap;
};

/// Randomness of one encryption, retained by the white-box tests.
struct PeEncTrace {
    ZqVector s;
    IntVector e, e1;
    std::vector<IntMatrix> r_i;  // sign matrices, m x m
};

std::pair<PePublicParams, PeMasterSecret> pe_setup(const PeParams& params, Rng& rng);

/// A_x = sum_i A_i G^{-1}(x_i G).
ZqMatrix pe_attr_matrix(const PePublicParams& pp, const ZqVector& x);

PeSecretKey pe_keygen(const PePublicParams& pp, const PeMasterSecret& msk, const ZqVector& x,
                      Rng& rng);
/// Basis-form key via the delegated kernel basis of [A | A_x].
PeSecretKey pe_keygen_basis(const PePublicParams& pp, const PeMasterSecret& msk,
                            const ZqVector& x, Rng& rng);
/// Re-sample the preimage Z from a basis-form key.
IntMatrix pe_key_from_basis(const PePublicParams& pp, const PeSecretKey& sk, Rng& rng);

PeCiphertext pe_enc(const PePublicParams& pp, const ZqVector& y, int message, Rng& rng,
                    PeEncTrace* trace = nullptr, NoiseMode mode = NoiseMode::Normal);

std::optional<int> pe_dec(const PePublicParams& pp, const PeSecretKey& sk,
                          const PeCiphertext& ct);

}  // namespace srpe
