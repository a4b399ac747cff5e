#pragma once
/* wire.hpp - versioned binary serialization, bit-exact across platforms.
 *
 * Every object is one record:
 *   header: magic "SRPE" | version u16 LE | object tag u8 | q u64 LE
 *           | rows u32 LE | cols u32 LE
 *   body:   residue matrices store entries row-major, ceil(bit_length/8)
 *           bytes little-endian each; signed integer matrices store 8-byte
 *           two's-complement little-endian entries.
 * Composite objects reuse the same header (rows = cols = 0) and start their
 * body with a flags byte; bit 0 marks SECRET material, which the server-side
 * tools refuse to read.  Nested matrices appear as full records.
 * Ciphertext bodies start with the epoch counter and time label so a server
 * can route them without parsing the components.
 */

#include <cstdint>
#include <filesystem>
#include <vector>

#include <srpe/afv_pe.hpp>
#include <srpe/srpe.hpp>

namespace srpe::wire {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::uint8_t kFlagSecret = 0x01;

enum class Tag : std::uint8_t {
    ZqMat = 0x01,
    IntMat = 0x02,
    Params = 0x03,
    Pp = 0x10,
    Msk = 0x11,
    Sk = 0x12,
    Token = 0x13,
    Uk = 0x14,
    Tk = 0x15,
    Ct = 0x16,
    Pct = 0x17,
    PePp = 0x20,
    PeMsk = 0x21,
    PeSk = 0x22,
    PeCt = 0x23,
    Trapdoor = 0x30,
};

const char* tag_name(Tag tag);
bool tag_is_secret(Tag tag);

/// Tag and flags of a serialized record without decoding the body.
struct RecordInfo {
    Tag tag;
    std::uint8_t flags = 0;
};
RecordInfo inspect(const Bytes& bytes);
RecordInfo inspect_file(const std::filesystem::path& path);

Bytes serialize(const ZqMatrix& m);
Bytes serialize(const IntMatrix& m, u64 q_context);
Bytes serialize(const SysParams& p);
Bytes serialize(const SrpePublicParams& pp);
Bytes serialize(const MasterSecret& msk, const SysParams& p);
Bytes serialize(const UserSecretKey& sk, const SysParams& p);
Bytes serialize(const TokenSet& tok, const SysParams& p);
Bytes serialize(const UpdateKey& uk, const SysParams& p);
Bytes serialize(const TransformKey& tk, const SysParams& p);
/// One record holding >= 1 single-bit ciphertexts of a common epoch (the
/// multi-bit form is the CLI's per-bit demo convenience).
Bytes serialize(const std::vector<Ciphertext>& cts, const SysParams& p);
Bytes serialize(const std::vector<PartialCiphertext>& pcts, const SysParams& p);
Bytes serialize_pe(const PePublicParams& pp);
Bytes serialize_pe(const PeSecretKey& sk, const PeParams& p);
Bytes serialize_pe(const PeCiphertext& ct, const PeParams& p);

ZqMatrix parse_zq_matrix(const Bytes& b);
IntMatrix parse_int_matrix(const Bytes& b);
SysParams parse_params(const Bytes& b);
SrpePublicParams parse_pp(const Bytes& b);
MasterSecret parse_msk(const Bytes& b);
UserSecretKey parse_sk(const Bytes& b);
TokenSet parse_token(const Bytes& b);
UpdateKey parse_uk(const Bytes& b);
TransformKey parse_tk(const Bytes& b);
std::vector<Ciphertext> parse_ct(const Bytes& b);
std::vector<PartialCiphertext> parse_pct(const Bytes& b);
PePublicParams parse_pe_pp(const Bytes& b);
PeSecretKey parse_pe_sk(const Bytes& b);
PeCiphertext parse_pe_ct(const Bytes& b, const PeParams& p);

void write_file(const std::filesystem::path& path, const Bytes& bytes);
Bytes read_file(const std::filesystem::path& path);

}  // namespace srpe::wire
