#include <srpe/frd.hpp>

#include <algorithm>

namespace srpe {

namespace {

using Poly = std::vector<u64>;  // low-degree-first, not necessarily normalized

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u64 q) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = mod_add(out[i + j], mod_mul(a[i], b[j], q), q);
    }
    return out;
}

// remainder of a modulo monic f
Poly poly_mod(Poly a, const Poly& f, u64 q) {
    const std::size_t n = f.size() - 1;
    while (a.size() > n) {
        u64 lead = a.back();
        std::size_t shift = a.size() - 1 - n;
        if (lead != 0)
            for (std::size_t j = 0; j <= n; ++j)
                a[shift + j] = mod_sub(a[shift + j], mod_mul(lead, f[j], q), q);
        a.pop_back();
    }
    trim(a);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 q) {
    return poly_mod(poly_mul(a, b, q), f, q);
}

Poly poly_powmod(Poly base, u64 exp, const Poly& f, u64 q) {
    Poly r = {1};
    while (exp) {
        if (exp & 1) r = poly_mulmod(r, base, f, q);
        base = poly_mulmod(base, base, f, q);
        exp >>= 1;
    }
    return r;
}

Poly poly_sub(Poly a, const Poly& b, u64 q) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod_sub(a[i], b[i], q);
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, u64 q) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // normalize divisor to monic for poly_mod
        u64 inv = mod_inv(b.back(), q);
        Poly bm = b;
        for (auto& c : bm) c = mod_mul(c, inv, q);
        Poly r = poly_mod(a, bm, q);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// g(h) mod f by Horner's rule over Z_q[X]/(f)
Poly poly_compose(const Poly& g, const Poly& h, const Poly& f, u64 q) {
    Poly acc;
    for (std::size_t i = g.size(); i-- > 0;) {
        acc = poly_mulmod(acc, h, f, q);
        if (g[i] != 0) {
            if (acc.empty()) acc = {g[i]};
            else acc[0] = mod_add(acc[0], g[i], q);
        }
    }
    return acc;
}

}  // namespace

bool is_irreducible(const FrdPoly& fp) {
    const u64 q = fp.mod.q;
    if (!is_prime_u64(q)) throw std::invalid_argument("is_irreducible: q not prime");
    const std::size_t n = fp.degree();
    const Poly& f = fp.coeffs;
    if (n == 0) return false;
    if (n == 1) return true;
    // Rabin: X^{q^n} == X mod f, and gcd(X^{q^{n/p}} - X, f) = 1 for primes p | n.
    // Frobenius powers are iterated by composition with X^q mod f.
    Poly xq = poly_powmod({0, 1}, q, f, q);
    std::vector<Poly> frob(n + 1);  // frob[j] = X^{q^j} mod f
    frob[0] = {0, 1};
    for (std::size_t j = 1; j <= n; ++j) frob[j] = poly_compose(frob[j - 1], xq, f, q);
    if (poly_sub(frob[n], {0, 1}, q) != Poly{}) return false;
    std::size_t rem = n;
    for (std::size_t p = 2; p * p <= rem; ++p) {
        if (rem % p) continue;
        Poly d = poly_sub(frob[n / p], {0, 1}, q);
        Poly g = poly_gcd(f, d, q);
        if (g.size() != 1) return false;
        while (rem % p == 0) rem /= p;
    }
    if (rem > 1) {
        Poly d = poly_sub(frob[n / rem], {0, 1}, q);
        Poly g = poly_gcd(f, d, q);
        if (g.size() != 1) return false;
    }
    return true;
}

FrdPoly find_irreducible(std::size_t degree, Modulus mod) {
    if (!is_prime_u64(mod.q)) throw std::invalid_argument("find_irreducible: q not prime");
    if (degree == 0) throw std::invalid_argument("find_irreducible: degree must be >= 1");
    // enumerate the low coefficients as a counter in a small base, so all
    // positions vary early (binomials X^n - a have no irreducible member at
    // all for some (n, q), e.g. 4 | n with q = 3 mod 4)
    const u64 base = std::min<u64>(mod.q, 256);
    for (u64 counter = 1;; ++counter) {
        FrdPoly f;
        f.mod = mod;
        f.coeffs.assign(degree + 1, 0);
        f.coeffs[degree] = 1;
        u64 c = counter;
        for (std::size_t i = 0; i < degree && c; ++i) {
            f.coeffs[i] = c % base;
            c /= base;
        }
        if (c) throw std::runtime_error("find_irreducible: search space exhausted");
        if (is_irreducible(f)) return f;
    }
}

ZqMatrix frd_map(const ZqVector& v, const FrdPoly& f) {
    const u64 q = f.mod.q;
    if (!is_prime_u64(q)) throw std::invalid_argument("frd_map: q not prime");
    if (v.mod.q != q) throw std::invalid_argument("frd_map: modulus mismatch");
    const std::size_t n = f.degree();
    if (v.size() != n) throw std::invalid_argument("frd_map: vector length != degree");
    ZqMatrix h(n, n, f.mod);
    Poly cur(v.entries.begin(), v.entries.end());
    trim(cur);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < cur.size(); ++i) h.at(i, j) = cur[i];
        if (j + 1 < n) cur = poly_mulmod(cur, {0, 1}, f.coeffs, q);
    }
    return h;
}

}  // namespace srpe
