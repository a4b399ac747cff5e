#pragma once
/* rng.hpp - seedable deterministic randomness.
 *
 * A fixed 64-bit Mersenne Twister keeps transcripts byte-identical across
 * platforms for a given seed.  Production callers seed from the OS; the
 * SRPE_SEED environment variable (hex) switches every tool into the
 * deterministic mode.  One Rng per thread of execution; handles are not
 * shareable concurrently.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace srpe {

class Rng {
public:
    /// OS-entropy seeded.
    Rng();
    /// Deterministic stream.
    explicit Rng(std::uint64_t seed);
    /// Deterministic stream mixing a seed with a domain label, so distinct
    /// tools started from the same SRPE_SEED draw unrelated streams.
    Rng(std::uint64_t seed, const std::string& domain);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform residue in [0, q) by rejection (no modulo bias).
    std::uint64_t uniform_mod(std::uint64_t q);
    /// Uniform in [lo, hi] inclusive.
    std::int64_t uniform_range(std::int64_t lo, std::int64_t hi);
    /// Uniform double in [0, 1).
    double uniform_unit();
    /// Uniform sign in {-1, +1}.
    int sign();

private:
    std::mt19937_64 engine_;
};

/// Parse the SRPE_SEED environment variable (hex digits, optional 0x
/// prefix); std::nullopt when unset or empty.
std::optional<std::uint64_t> seed_from_env();

/// SRPE_SEED-aware constructor used by the tools: deterministic when the
/// variable is set, OS entropy otherwise.
Rng make_rng(const std::string& domain);

}  // namespace srpe
