#pragma once
/* encode.hpp - bit encoding into Z_q^kappa and rounding decoder, plus the
 * injective packing of byte labels into Z_q^n used for identities and times.
 */

#include <optional>
#include <string>

#include <srpe/zq.hpp>

namespace srpe {

/// encode(b) = (b, 0, ..., 0) of length kappa.
IntVector encode_message(int bit, std::size_t kappa);

/// Per-coordinate rounding: 1 iff the canonical representative lies in
/// [ceil(q/4), floor(3q/4)), else 0 (lower boundary inclusive, upper
/// exclusive).  Returns the bit M' if the rounded vector equals
/// encode(M'), std::nullopt otherwise.
std::optional<int> round_decode(const ZqVector& d);

/// Maximum label length accepted by encode_label for the given (n, q):
/// one byte of the n*floor(log2 q) bit capacity is reserved for the
/// length sentinel that makes the packing injective.
std::size_t max_label_bytes(std::size_t n, Modulus mod);

/// Injective little-endian base-q digit packing of a byte label into
/// Z_q^n.  A 0x01 sentinel byte is appended above the most significant
/// label byte, so labels with trailing zero bytes stay distinguishable.
/// Throws if the label exceeds max_label_bytes.
ZqVector encode_label(const std::string& label, std::size_t n, Modulus mod);

/// Inverse of encode_label; throws if v is not a valid encoding.
std::string decode_label(const ZqVector& v);

}  // namespace srpe
