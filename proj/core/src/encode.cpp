#include <srpe/encode.hpp>

namespace srpe {

IntVector encode_message(int bit, std::size_t kappa) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("encode_message: bit must be 0 or 1");
    IntVector v(kappa);
    if (kappa > 0) v[0] = bit;
    return v;
}

std::optional<int> round_decode(const ZqVector& d) {
    const u64 q = d.mod.q;
    const u64 lo = (q + 3) / 4;      // ceil(q/4)
    const u64 hi = (3 * (u128)q) / 4;  // floor(3q/4)
    for (std::size_t i = 1; i < d.size(); ++i) {
        u64 x = d[i];
        if (x >= lo && x < hi) return std::nullopt;  // coordinate rounds to 1
    }
    if (d.size() == 0) return std::nullopt;
    u64 x0 = d[0];
    return (x0 >= lo && x0 < hi) ? 1 : 0;
}

namespace {

// minimal little-endian multiprecision helpers on 32-bit limbs
using Limbs = std::vector<std::uint32_t>;

void limbs_trim(Limbs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a = a * mul + add, with mul, add < 2^64
void limbs_mul_add(Limbs& a, u64 mul, u64 add) {
    u128 carry = add;
    for (auto& limb : a) {
        u128 cur = (u128)limb * mul + carry;
        limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
    }
    while (carry) {
        a.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
        carry >>= 32;
    }
}

// returns a mod div and sets a = a / div
u64 limbs_divmod(Limbs& a, u64 div) {
    u128 rem = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        u128 cur = (rem << 32) | a[i];
        a[i] = static_cast<std::uint32_t>(cur / div);
        rem = cur % div;
    }
    limbs_trim(a);
    return static_cast<u64>(rem);
}

bool limbs_zero(const Limbs& a) { return a.empty(); }

}  // namespace

std::size_t max_label_bytes(std::size_t n, Modulus mod) {
    // floor(log2 q) usable bits per digit; one byte reserved for the length
    std::size_t floor_bits =
        (mod.q & (mod.q - 1)) == 0 ? mod.bit_length : mod.bit_length - 1;
    std::size_t capacity_bits = n * floor_bits;
    if (capacity_bits < 16) return 0;
    return std::min<std::size_t>(capacity_bits / 8 - 1, 255);
}

ZqVector encode_label(const std::string& label, std::size_t n, Modulus mod) {
    const std::size_t cap = max_label_bytes(n, mod);
    if (label.size() > cap)
        throw std::invalid_argument("encode_label: label too long for this parameter set");
    // L = len * 256^cap + sum label[i] * 256^i; the length byte at the top
    // keeps labels with trailing zero bytes distinguishable, and the empty
    // label encodes to zero.
    Limbs big;
    limbs_mul_add(big, 1, label.size());
    for (std::size_t i = cap; i-- > 0;) {
        u64 byte = i < label.size() ? static_cast<unsigned char>(label[i]) : 0;
        limbs_mul_add(big, 256, byte);
    }
    ZqVector v(n, mod);
    for (std::size_t i = 0; i < n; ++i) v[i] = limbs_divmod(big, mod.q);
    if (!limbs_zero(big))
        throw std::invalid_argument("encode_label: label too long for this parameter set");
    return v;
}

std::string decode_label(const ZqVector& v) {
    const std::size_t cap = max_label_bytes(v.size(), v.mod);
    Limbs big;
    for (std::size_t i = v.size(); i-- > 0;) limbs_mul_add(big, v.mod.q, v[i]);
    std::string bytes;
    for (std::size_t i = 0; i < cap; ++i)
        bytes.push_back(static_cast<char>(limbs_divmod(big, 256)));
    u64 len = limbs_divmod(big, 256);
    if (!limbs_zero(big) || len > cap)
        throw std::invalid_argument("decode_label: not a label encoding");
    for (std::size_t i = len; i < cap; ++i)
        if (bytes[i] != 0) throw std::invalid_argument("decode_label: not a label encoding");
    bytes.resize(len);
    return bytes;
}

}  // namespace srpe
