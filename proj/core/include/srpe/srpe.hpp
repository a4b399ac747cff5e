#pragma once
/* srpe.hpp - server-aided revocable predicate encryption.
 *
 * Four parties: the KGC issues per-user keys and tokens plus per-epoch
 * update keys; an untrusted server combines token and update key into a
 * transform key and partially decrypts; senders encrypt under an attribute
 * vector and a time period; recipients finish decryption with their key.
 * A single secret vector s ties all six ciphertext component families
 * together - transformability depends on that sharing.
 *
 * Note on the partial ciphertext: the transformed component c_bar lives in
 * Z_q^m.  The transform-key blocks are 2m x m, so Z^T applied to a
 * 2m-vector has m coordinates, and decryption consumes the stacked
 * 3m-vector [c_2 | c_{2,x} | c_bar] against the 3m x kappa user key.
 */

#include <optional>

#include <srpe/cs_tree.hpp>
#include <srpe/encode.hpp>
#include <srpe/params.hpp>
#include <srpe/trapdoor.hpp>

namespace srpe {

/// Epochs order revocations ("revoked from epoch 3 on"); the opaque label
/// is what gets bound into the lattice via the full-rank difference map.
struct TimePeriod {
    std::uint64_t epoch = 0;
    std::string label;

    bool operator==(const TimePeriod&) const = default;
};

struct SrpePublicParams {
    SysParams params;
    ZqMatrix a, b, c, d;         // n x m each
    std::vector<ZqMatrix> a_i;   // ell matrices
    std::vector<ZqMatrix> b_i;   // ell matrices
    ZqMatrix v;                  // n x kappa
};

struct MasterSecret {
    GTrapdoor trap_a;
    GTrapdoor trap_b;
};

struct UserSecretKey {
    std::string id;
    ZqVector x;
    IntMatrix z;  // 3m x kappa with [B | B_x | D_id] Z = V
};

struct TokenEntry {
    std::size_t node = 0;
    IntMatrix z1;  // 2m x m with [A | A_x] Z1 = D_id - U_node
};

struct TokenSet {
    std::string id;
    ZqVector x;
    std::vector<TokenEntry> entries;  // one per node of Path(id)
};

struct UpdateKeyEntry {
    std::size_t node = 0;
    IntMatrix z2;  // 2m x m with [A | C_t] Z2 = U_node
};

struct UpdateKey {
    TimePeriod t;
    std::vector<UpdateKeyEntry> entries;  // one per cover node
};

/// Combination the server derives for one (id, epoch); carries the
/// predicate vector from the token because Transform needs it to fold the
/// attribute components.
struct TransformKey {
    std::string id;
    ZqVector x;
    TimePeriod t;
    IntMatrix z1, z2;  // [A | A_x] Z1 + [A | C_t] Z2 = D_id
};

struct Ciphertext {
    TimePeriod t;  // in the clear; the server picks uk_t by it
    ZqVector c;                   // kappa
    ZqVector c1;                  // m
    std::vector<ZqVector> c1_i;   // ell vectors of length m
    ZqVector c1_0;                // m
    ZqVector c2;                  // m
    std::vector<ZqVector> c2_i;   // ell vectors of length m
};

struct PartialCiphertext {
    ZqVector c;                   // kappa
    ZqVector c2;                  // m
    std::vector<ZqVector> c2_i;   // ell vectors of length m
    ZqVector c_bar;               // m
};

/// Randomness of one encryption, retained by white-box tests.
struct EncTrace {
    ZqVector s;
    IntVector e, e1, e2;
    std::vector<IntMatrix> r_i, s_i;  // sign matrices, m x m each
    IntMatrix r_bar;
};

struct SetupResult {
    SrpePublicParams pp;
    MasterSecret msk;
    RevocationList rl;       // initially empty
    BinaryTreeState tree;    // fresh, >= N leaves
};

// --- encodings --------------------------------------------------------------

ZqVector encode_id(const SrpePublicParams& pp, const std::string& id);
ZqVector encode_time(const SrpePublicParams& pp, const TimePeriod& t);

/// D_id = D + H(id) G.
ZqMatrix id_matrix(const SrpePublicParams& pp, const std::string& id);
/// C_t = C + H(t) G.
ZqMatrix time_matrix(const SrpePublicParams& pp, const TimePeriod& t);
/// A_x = sum_i A_i G^{-1}(x_i G), and the B-side analogue.
ZqMatrix attr_matrix_a(const SrpePublicParams& pp, const ZqVector& x);
ZqMatrix attr_matrix_b(const SrpePublicParams& pp, const ZqVector& x);

// --- the scheme algorithms ----------------------------------------------------

SetupResult setup(const SysParams& params, Rng& rng);

UserSecretKey user_kg(const SrpePublicParams& pp, const MasterSecret& msk,
                      const std::string& id, const ZqVector& x, Rng& rng);

/// Registers the id on its leaf on first use, lazily drawing the node
/// matrices along the path (write-once).
TokenSet token(const SrpePublicParams& pp, const MasterSecret& msk, const std::string& id,
               const ZqVector& x, BinaryTreeState& tree, Rng& rng);

UpdateKey upd_kg(const SrpePublicParams& pp, const MasterSecret& msk, const TimePeriod& t,
                 const RevocationList& rl, BinaryTreeState& tree, Rng& rng);

/// nullopt when the token's path misses the cover (the user is revoked).
/// Ties (impossible with honest inputs) break to the lowest node index.
std::optional<TransformKey> tran_kg(const TokenSet& tok, const UpdateKey& uk);

Ciphertext enc(const SrpePublicParams& pp, const ZqVector& y, const TimePeriod& t, int message,
               Rng& rng, EncTrace* trace = nullptr, NoiseMode mode = NoiseMode::Normal);

/// Throws when tk.t != ct.t.
PartialCiphertext transform(const SrpePublicParams& pp, const Ciphertext& ct,
                            const TransformKey& tk);

std::optional<int> dec(const SrpePublicParams& pp, const UserSecretKey& sk,
                       const PartialCiphertext& pct);

struct DecResult {
    std::optional<int> message;
    ZqVector d;           // the rounding input
    i64 error_inf = 0;    // max |d - floor(q/2) encode(M)| lifted, when decoded
};

DecResult dec_detailed(const SrpePublicParams& pp, const UserSecretKey& sk,
                       const PartialCiphertext& pct);

/// Appends (leaf(id), t.epoch); idempotent; unknown id is an error.
void revoke(const std::string& id, const TimePeriod& t, RevocationList& rl,
            const BinaryTreeState& tree);

}  // namespace srpe
