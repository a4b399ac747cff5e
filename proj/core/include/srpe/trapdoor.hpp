#pragma once
/* trapdoor.hpp - trapdoor generation and coset preimage sampling.
 *
 * trap_gen follows the gadget-trapdoor construction: A = [Abar | G - Abar*R]
 * with a narrow Gaussian R, and the kernel-lattice basis
 *
 *     T_A = [ R*T_G | I - R*K ]      K = G^{-1}(Abar)
 *           [  T_G  |   -K    ]
 *
 * materialized explicitly (columns ordered so the Gram-Schmidt tail
 * degenerates to unit vectors).  One Klein sampler then serves SamplePre,
 * SampleLeft, SampleBasisLeft outputs and SampleRight uniformly.  Every
 * preimage is re-verified in exact arithmetic before it is returned.
 */

#include <srpe/gadget.hpp>
#include <srpe/gauss.hpp>
#include <srpe/zq.hpp>

namespace srpe {

/// Public matrix with trapdoor material enabling coset preimage sampling.
/// Immutable after generation; concurrent sampling needs per-thread Rng.
class GTrapdoor {
public:
    GTrapdoor(ZqMatrix a, IntMatrix r, IntMatrix basis);

    const ZqMatrix& a() const { return a_; }
    const IntMatrix& r() const { return r_; }
    const GsBasis& basis() const { return basis_; }
    const ZqSolver& solver() const { return solver_; }

private:
    ZqMatrix a_;
    IntMatrix r_;
    GsBasis basis_;
    ZqSolver solver_;
};

/// Gaussian parameter for the trapdoor matrix R entries.  Large enough that
/// zero columns of R (which would leave gadget columns of A constant) are
/// vanishingly rare even at test dimensions, small enough that the measured
/// Gram-Schmidt norm of T_A stays under 3 sqrt(n log2 q).
inline constexpr double kTrapdoorEntryParam = 1.7;

/// A statistically close to uniform over Z_q^{n x m} together with a short
/// basis of its kernel lattice.  Requires m >= 2 n ceil(log2 q).
GTrapdoor trap_gen(std::size_t n, Modulus mod, std::size_t m, Rng& rng);

/// Short e with F e = u (mod q), statistically close to D over the coset.
/// Shared backend for the sampling algorithms below.
IntVector coset_sample(const ZqSolver& solver, const GsBasis& basis, const ZqVector& u,
                       const GaussParam& p, Rng& rng, const ZqMatrix& f_check);

IntVector sample_pre(const GTrapdoor& trap, const ZqVector& u, const GaussParam& p, Rng& rng);
IntMatrix sample_pre(const GTrapdoor& trap, const ZqMatrix& u, const GaussParam& p, Rng& rng);

/// Basis of the kernel lattice of [A | M] whose Gram-Schmidt norm equals the
/// one of the input trapdoor: [ T_A | W ; 0 | I ] with A W = -M (mod q).
GsBasis sample_basis_left(const GTrapdoor& trap, const ZqMatrix& m_ext, const GaussParam& p,
                          Rng& rng);

/// Preimage sampling for F = [A | M]: the right block is drawn free from
/// D_{Z,s}, the left block solves the residual coset through the trapdoor.
/// M may have any column count; the result has m + cols(M) rows.
IntVector sample_left(const GTrapdoor& trap, const ZqMatrix& m_ext, const ZqVector& u,
                      const GaussParam& p, Rng& rng);
IntMatrix sample_left(const GTrapdoor& trap, const ZqMatrix& m_ext, const ZqMatrix& u,
                      const GaussParam& p, Rng& rng);

/// Preimage sampling for F = [A | A R + G] through the public gadget
/// trapdoor; exercised by its own tests only (the scheme itself never
/// calls it).
IntVector sample_right(const ZqMatrix& a, const IntMatrix& r, const ZqMatrix& g,
                       const IntMatrix& t_g, const ZqVector& u, const GaussParam& p, Rng& rng);

/// Preimage sampling with an explicit kernel basis of f (basis-form keys).
IntVector sample_pre_with_basis(const ZqMatrix& f, const GsBasis& basis, const ZqVector& u,
                                const GaussParam& p, Rng& rng);
IntMatrix sample_pre_with_basis(const ZqMatrix& f, const GsBasis& basis, const ZqMatrix& u,
                                const GaussParam& p, Rng& rng);

}  // namespace srpe
