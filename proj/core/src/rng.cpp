#include <srpe/rng.hpp>

#include <cstdlib>
#include <stdexcept>

namespace srpe {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

Rng::Rng() {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    engine_.seed(seq);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng::Rng(std::uint64_t seed, const std::string& domain) {
    std::uint64_t x = seed ^ fnv1a(domain);
    std::seed_seq seq{splitmix64(x), splitmix64(x), splitmix64(x), splitmix64(x)};
    engine_.seed(seq);
}

std::uint64_t Rng::uniform_mod(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("uniform_mod: q == 0");
    if ((q & (q - 1)) == 0) return next_u64() & (q - 1);
    // multiply-shift rejection: division-free and bias-free
    unsigned __int128 m = (unsigned __int128)next_u64() * q;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < q) {
        const std::uint64_t threshold = (0 - q) % q;
        while (lo < threshold) {
            m = (unsigned __int128)next_u64() * q;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t Rng::uniform_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_range: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
    return lo + static_cast<std::int64_t>(uniform_mod(span));
}

double Rng::uniform_unit() {
    return (next_u64() >> 11) * 0x1.0p-53;
}

int Rng::sign() { return (next_u64() & 1) ? 1 : -1; }

std::optional<std::uint64_t> seed_from_env() {
    const char* v = std::getenv("SRPE_SEED");
    if (v == nullptr || *v == '\0') return std::nullopt;
    std::string s(v);
    std::size_t pos = 0;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) pos = 2;
    std::uint64_t out = 0;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        unsigned d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = 10 + c - 'a';
        else if (c >= 'A' && c <= 'F') d = 10 + c - 'A';
        else throw std::invalid_argument("SRPE_SEED: not a hex string");
        out = (out << 4) | d;
    }
    return out;
}

Rng make_rng(const std::string& domain) {
    if (auto seed = seed_from_env()) return Rng(*seed, domain);
    return Rng();
}

}  // namespace srpe
