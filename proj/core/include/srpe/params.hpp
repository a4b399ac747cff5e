#pragma once
/* params.hpp - global scheme parameters and the named profiles.
 *
 * Profiles carry correctness-testing parameters only: the moduli are sized
 * by a measured error budget (see tools/profile_probe), NOT by a hardness
 * analysis.  NO SECURITY CLAIM is attached to any profile.
 */

#include <string>

#include <srpe/frd.hpp>
#include <srpe/gauss.hpp>

namespace srpe {

struct SysParams {
    std::string profile_name;
    std::size_t n = 0;          // lattice dimension
    std::size_t max_users = 0;  // N
    std::size_t ell = 0;        // predicate/attribute vector length
    std::size_t kappa = 0;      // encoding dimension
    Modulus mod;                // prime q
    std::size_t m = 0;          // 2 n ceil(log2 q)
    double s = 0;               // preimage sampling parameter
    i64 noise_bound = 0;        // B
    double noise_sigma = 0;     // parameter of the underlying D_{Z,sigma}
    double tail_cut = 6.0;
    double omega_const = 0;     // measured slack constant in the error budget
    FrdPoly frd;                // fixed irreducible polynomial of degree n

    std::size_t gadget_width() const { return n * mod.bit_length; }
    GaussParam gauss() const { return GaussParam(s, tail_cut); }
    NoiseParam noise() const { return NoiseParam(noise_bound, noise_sigma); }

    /// Symbolic error budget s * ell * m^2 * B * omega_const; the headroom
    /// invariant requires it below q/5.
    double error_budget() const;
};

/// Explicit parameters for the "custom" profile.
struct CustomProfile {
    std::size_t n, max_users, ell, kappa;
    u64 q;
    double s;
    i64 noise_bound;
    double noise_sigma;
    double omega_const;
    double tail_cut = 6.0;
};

/// Named profiles "toy" and "small"; "custom" must go through sys_custom.
/// Throws on unknown names and on headroom violations.
SysParams sys(const std::string& profile);
SysParams sys_custom(const CustomProfile& spec);

/// Validates every SysParams invariant; throws with a description on failure.
void validate(const SysParams& params);

}  // namespace srpe
