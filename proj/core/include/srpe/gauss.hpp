#pragma once
/* gauss.hpp - discrete Gaussians over Z and over lattice cosets.
 *
 * sample_z draws from D_{Z,s,c} (density proportional to
 * exp(-pi (x-c)^2 / s^2)) by rejection over the tail-cut window, so no
 * output ever falls outside [c - tail_cut*s, c + tail_cut*s].  sample_d is
 * Klein's randomized nearest-plane walk over a basis: Gram-Schmidt data is
 * kept in extended precision, the returned point is assembled from integer
 * basis columns, so lattice membership is exact by construction.
 */

#include <vector>

#include <srpe/intmat.hpp>
#include <srpe/rng.hpp>

namespace srpe {

struct GaussParam {
    double s = 1.0;         // Gaussian parameter in the rho_s convention
    double tail_cut = 6.0;  // window half-width in units of s

    GaussParam() = default;
    explicit GaussParam(double s_, double tail_cut_ = 6.0);
};

/// B-bounded noise distribution chi: D_{Z,sigma} resampled until |x| <= B.
struct NoiseParam {
    std::int64_t bound = 1;  // B
    double sigma = 1.0;      // Gaussian parameter of the underlying D_{Z,sigma}

    NoiseParam() = default;
    NoiseParam(std::int64_t bound_, double sigma_);
};

std::int64_t sample_z(const GaussParam& p, double center, Rng& rng);
std::int64_t sample_chi(const NoiseParam& p, Rng& rng);

/// Test hook threaded through the encryptors: Zero and Max replace every
/// chi draw by 0 or by +-B, for white-box checks and error-budget probing.
enum class NoiseMode { Normal, Zero, Max };

IntVector sample_chi_vector(std::size_t len, const NoiseParam& p, Rng& rng,
                            NoiseMode mode = NoiseMode::Normal);

/// An integer basis with its Gram-Schmidt data, precomputed once so that
/// repeated Klein walks cost O(dim^2) each.  Besides the orthogonalized
/// vectors, the projection coefficients mu[i][j] = <b_i, gs_j> / |gs_j|^2
/// are cached: the sampler walks in coefficient space and never touches
/// the basis vectors until the final integer assembly.  Immutable after
/// construction.
class GsBasis {
public:
    explicit GsBasis(IntMatrix basis);

    const IntMatrix& basis() const { return basis_; }
    std::size_t dim() const { return basis_.rows(); }
    /// Norm of the longest Gram-Schmidt vector.
    double gs_norm() const { return gs_norm_; }
    bool singular() const { return singular_; }

    /// Coordinate-major slice: entry i of row k is the k-th coordinate of
    /// the i-th Gram-Schmidt vector.
    const double* gs_coord_row(std::size_t k) const { return gst_.data() + k * dim(); }
    const double* mu_row(std::size_t i) const { return mu_.data() + i * dim(); }
    long double gs_norm_sq(std::size_t i) const { return gs_norm_sq_[i]; }

private:
    IntMatrix basis_;                // columns span the lattice
    // orthogonalization runs in extended precision; the cached constants
    // below are stored rounded (the walk re-promotes them when accumulating)
    std::vector<double> gst_;        // transposed Gram-Schmidt vectors
    std::vector<double> mu_;         // row i = projections of b_i onto gs_j, j < i
    std::vector<long double> gs_norm_sq_;
    double gs_norm_ = 0.0;
    bool singular_ = false;
};

/// Practical stand-in for the omega(sqrt(log dim)) smoothing slack; callers
/// sampling with s below gs_norm() * this factor get a stderr warning.
double smoothing_slack(std::size_t dim);

/// Klein's randomized nearest-plane: a point of the lattice spanned by the
/// basis columns, distributed statistically close to D_{Lambda,s,center}.
/// Throws on a singular basis; warns (once per call site semantics are the
/// caller's concern) when s is below the quality threshold.
IntVector sample_d(const GsBasis& basis, const GaussParam& p,
                   const std::vector<double>& center, Rng& rng);

}  // namespace srpe
