#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <srpe/encode.hpp>
#include <srpe/frd.hpp>
#include <srpe/gadget.hpp>
#include <srpe/rng.hpp>

#include "test_util.hpp"

using namespace srpe;
using namespace srpe::testutil;

TEST_CASE("mat_mul identity and zero") {
    Modulus mod(17);
    Rng rng(1);
    ZqMatrix m(3, 4, mod);
    for (auto& e : m.data()) e = rng.uniform_mod(mod.q);
    CHECK(mat_mul(ZqMatrix::identity(3, mod), m) == m);
    CHECK(mat_mul(m, ZqMatrix::zero(4, 2, mod)) == ZqMatrix::zero(3, 2, mod));
}

TEST_CASE("mat_mul 2x2 over q=7") {
    Modulus mod(7);
    auto a = mat(2, 2, {1, 2, 3, 4}, mod);
    auto b = mat(2, 2, {5, 6, 0, 1}, mod);
    CHECK(mat_mul(a, b) == mat(2, 2, {5, 1, 1, 1}, mod));
}

TEST_CASE("mat_mul rejects mismatches") {
    Modulus mod(17);
    CHECK_THROWS_AS(mat_mul(ZqMatrix(2, 3, mod), ZqMatrix(2, 3, mod)), std::invalid_argument);
    CHECK_THROWS_AS(mat_mul(ZqMatrix(2, 3, mod), ZqMatrix(3, 2, Modulus(19))),
                    std::invalid_argument);
}

TEST_CASE("mat_mul matches a wide-integer reference near 2^32") {
    // independent oracle: per-term mulmod with reduction after every add
    Modulus mod(4294967291ull);  // largest prime below 2^32
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        ZqMatrix a(8, 8, mod), b(8, 8, mod);
        for (auto& e : a.data()) e = rng.uniform_mod(mod.q);
        for (auto& e : b.data()) e = rng.uniform_mod(mod.q);
        ZqMatrix want(8, 8, mod);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                u64 acc = 0;
                for (std::size_t k = 0; k < 8; ++k)
                    acc = mod_add(acc, mod_mul(a.at(i, k), b.at(k, j), mod.q), mod.q);
                want.at(i, j) = acc;
            }
        CHECK(mat_mul(a, b) == want);
    }
}

TEST_CASE("concat_cols shapes and placement") {
    Modulus mod(17);
    Rng rng(2);
    ZqMatrix a(4, 2, mod), b(4, 3, mod), c(4, 1, mod);
    for (auto* m : {&a, &b, &c})
        for (auto& e : m->data()) e = rng.uniform_mod(mod.q);

    ZqMatrix ab = concat_cols(a, b);
    CHECK(ab.rows() == 4);
    CHECK(ab.cols() == 5);

    const ZqMatrix parts[] = {a, b, c};
    ZqMatrix abc = concat_cols(std::span<const ZqMatrix>(parts, 3));
    CHECK(abc.cols() == 6);
    // positional preservation, every entry indexed back to its source
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t j = 0; j < 2; ++j) CHECK(abc.at(r, j) == a.at(r, j));
        for (std::size_t j = 0; j < 3; ++j) CHECK(abc.at(r, 2 + j) == b.at(r, j));
        CHECK(abc.at(r, 5) == c.at(r, 0));
    }

    const ZqMatrix single[] = {a};
    CHECK(concat_cols(std::span<const ZqMatrix>(single, 1)) == a);
    CHECK_THROWS_AS(concat_cols(a, ZqMatrix(3, 2, mod)), std::invalid_argument);
}

TEST_CASE("gadget matrix base case and rank") {
    CHECK(gadget_matrix(1, 3, Modulus(8)) == mat(1, 3, {1, 2, 4}, Modulus(8)));
    for (u64 q : {5ull, 17ull, 8191ull}) {
        Modulus mod(q);
        for (std::size_t n : {1u, 2u, 3u}) {
            std::size_t m = 2 * n * mod.bit_length;
            CHECK(rank(gadget_matrix(n, m, mod)) == n);
        }
    }
    CHECK_THROWS_AS(gadget_matrix(2, 3, Modulus(17)), std::invalid_argument);
}

TEST_CASE("gadget_inverse binary decomposition") {
    Modulus mod8(8);
    ZqMatrix u = mat(1, 1, {5}, mod8);
    IntMatrix x = gadget_inverse(u, 3);
    CHECK(x.rows() == 3);
    CHECK(x.at(0, 0) == 1);
    CHECK(x.at(1, 0) == 0);
    CHECK(x.at(2, 0) == 1);

    ZqMatrix zero(2, 4, Modulus(17));
    IntMatrix xz = gadget_inverse(zero, 2 * 2 * Modulus(17).bit_length);
    for (i64 e : xz.data()) CHECK(e == 0);
}

TEST_CASE("G * G^{-1}(U) = U with binary entries, randomized") {
    Modulus mod(12289);
    const std::size_t n = 2, m = 2 * n * mod.bit_length;
    ZqMatrix g = gadget_matrix(n, m, mod);
    Rng rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        ZqMatrix u(n, 3, mod);
        for (auto& e : u.data()) e = rng.uniform_mod(mod.q);
        IntMatrix x = gadget_inverse(u, m);
        for (i64 e : x.data()) CHECK((e == 0 || e == 1));
        CHECK(mat_mul(g, x) == u);
    }
}

TEST_CASE("gadget_basis spans the kernel with Gram-Schmidt norm <= sqrt(5)") {
    for (u64 q : {5ull, 7ull, 8ull, 17ull, 12289ull, 1073741827ull}) {
        Modulus mod(q);
        for (std::size_t n : {1u, 2u}) {
            std::size_t m = 2 * n * mod.bit_length;
            ZqMatrix g = gadget_matrix(n, m, mod);
            IntMatrix t = gadget_basis(n, m, mod);
            ZqMatrix prod = mat_mul(g, t);
            CHECK(prod == ZqMatrix::zero(n, m, mod));
            CHECK(gs_max_norm(t) <= std::sqrt(5.0) + 1e-9);
        }
    }
}

TEST_CASE("gadget_basis determinant is +-q^n on small instances") {
    for (u64 q : {5ull, 7ull}) {
        Modulus mod(q);
        for (std::size_t n : {1u, 2u}) {
            std::size_t m = n * mod.bit_length;  // unpadded square case
            IntMatrix t = gadget_basis(n, m, mod);
            __int128 det = det_bareiss(t);
            __int128 want = 1;
            for (std::size_t i = 0; i < n; ++i) want *= static_cast<__int128>(q);
            CHECK((det == want || det == -want));
        }
    }
}

TEST_CASE("frd_map zero, linearity, and exhaustive invertible differences") {
    Modulus mod(5);
    FrdPoly f = find_irreducible(2, mod);
    CHECK(is_irreducible(f));

    CHECK(frd_map(vec({0, 0}, mod), f) == ZqMatrix::zero(2, 2, mod));

    // all 25 vectors over Z_5^2; every difference of distinct pairs invertible
    std::vector<ZqVector> all;
    for (u64 a = 0; a < 5; ++a)
        for (u64 b = 0; b < 5; ++b) all.push_back(vec({a, b}, mod));
    for (const auto& a : all)
        for (const auto& b : all) {
            if (a == b) continue;
            ZqMatrix diff = mat_sub(frd_map(a, f), frd_map(b, f));
            CHECK(determinant(diff) != 0);
            // linearity: H(a) - H(b) = H(a - b)
            CHECK(diff == frd_map(vec_sub(a, b), f));
        }
}

TEST_CASE("frd rejects composite moduli") {
    CHECK_THROWS_AS(find_irreducible(2, Modulus(8)), std::invalid_argument);
    FrdPoly f = find_irreducible(2, Modulus(5));
    f.mod = Modulus(8);
    CHECK_THROWS_AS(frd_map(ZqVector(2, Modulus(8)), f), std::invalid_argument);
}

TEST_CASE("irreducibility test agrees with trial division over F_5") {
    // brute-force oracle: monic f of degree d is irreducible iff no monic
    // divisor of degree 1..d/2 divides it (checked by polynomial long
    // division over Z_5 written out directly here)
    Modulus mod(5);
    const u64 q = 5;
    auto poly_divides = [&](const std::vector<u64>& div, std::vector<u64> f) {
        while (f.size() >= div.size()) {
            u64 fac = mod_mul(f.back(), mod_inv(div.back(), q), q);
            std::size_t shift = f.size() - div.size();
            for (std::size_t i = 0; i < div.size(); ++i)
                f[shift + i] = mod_sub(f[shift + i], mod_mul(fac, div[i], q), q);
            while (!f.empty() && f.back() == 0) f.pop_back();
        }
        return f.empty();
    };
    auto brute_irreducible = [&](const std::vector<u64>& f) {
        std::size_t d = f.size() - 1;
        for (std::size_t dd = 1; dd <= d / 2; ++dd) {
            u64 count = 1;
            for (std::size_t i = 0; i < dd; ++i) count *= q;
            for (u64 idx = 0; idx < count; ++idx) {
                std::vector<u64> div(dd + 1, 0);
                div[dd] = 1;
                u64 c = idx;
                for (std::size_t i = 0; i < dd; ++i) {
                    div[i] = c % q;
                    c /= q;
                }
                if (poly_divides(div, f)) return false;
            }
        }
        return true;
    };
    for (std::size_t deg : {2u, 3u, 4u}) {
        u64 count = 1;
        for (std::size_t i = 0; i < deg; ++i) count *= q;
        for (u64 idx = 0; idx < count; ++idx) {
            FrdPoly f;
            f.mod = mod;
            f.coeffs.assign(deg + 1, 0);
            f.coeffs[deg] = 1;
            u64 c = idx;
            for (std::size_t i = 0; i < deg; ++i) {
                f.coeffs[i] = c % q;
                c /= q;
            }
            CHECK(is_irreducible(f) == brute_irreducible(f.coeffs));
        }
    }
}

TEST_CASE("irreducible search finds degree-n polynomials for scheme-sized fields") {
    for (u64 q : {12289ull, 1073741827ull}) {
        Modulus mod(q);
        FrdPoly f = find_irreducible(8, mod);
        CHECK(f.degree() == 8);
        CHECK(is_irreducible(f));
    }
}

TEST_CASE("encode_message") {
    IntVector e0 = encode_message(0, 16);
    IntVector e1 = encode_message(1, 16);
    CHECK(e0.size() == 16);
    CHECK(e1.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) CHECK(e0[i] == 0);
    CHECK(e1[0] == 1);
    for (std::size_t i = 1; i < 16; ++i) CHECK(e1[i] == 0);
    CHECK_THROWS_AS(encode_message(2, 16), std::invalid_argument);
}

TEST_CASE("round_decode noiseless and zero") {
    Modulus mod(1073741827ull);
    const std::size_t kappa = 16;
    ZqVector one(kappa, mod);
    one[0] = mod.q / 2;
    CHECK(round_decode(one) == 1);
    CHECK(round_decode(ZqVector(kappa, mod)) == 0);
}

TEST_CASE("round_decode boundary rule") {
    Modulus mod(7);
    // representative in [ceil(q/4), floor(3q/4)) = [2, 5) decodes to 1
    ZqVector v(8, mod);
    for (u64 x : {2ull, 3ull, 4ull}) {
        v[0] = x;
        CHECK(round_decode(v) == 1);
    }
    for (u64 x : {0ull, 1ull, 5ull, 6ull}) {
        v[0] = x;
        CHECK(round_decode(v) == 0);
    }
}

TEST_CASE("round_decode recovers bits under noise below q/5") {
    Modulus mod(1000003);
    const std::size_t kappa = 16;
    const i64 bound = static_cast<i64>(mod.q / 5) - 1;
    Rng rng(4);
    for (int trial = 0; trial < 1000; ++trial) {
        int bit = static_cast<int>(rng.next_u64() & 1);
        ZqVector d(kappa, mod);
        for (std::size_t i = 0; i < kappa; ++i) {
            i64 e = rng.uniform_range(-bound, bound);
            u64 base = (i == 0 && bit) ? mod.q / 2 : 0;
            d[i] = mod_add(base, mod_from_int(e, mod.q), mod.q);
        }
        CHECK(round_decode(d) == bit);
    }
}

TEST_CASE("round_decode rejects uniform noise") {
    Modulus mod(1073741827ull);
    const std::size_t kappa = 16;
    Rng rng(5);
    const int trials = 20000;
    int bot = 0;
    for (int i = 0; i < trials; ++i) {
        ZqVector d(kappa, mod);
        for (auto& e : d.entries) e = rng.uniform_mod(mod.q);
        if (!round_decode(d)) ++bot;
    }
    double rate = static_cast<double>(bot) / trials;
    CHECK(rate >= 1.0 - std::exp2(-(static_cast<double>(kappa) - 1)) - 0.01);
}

TEST_CASE("label packing is injective and round-trips") {
    Modulus mod(257);
    const std::size_t n = 4;
    CHECK(encode_label("", n, mod) == ZqVector(n, mod));
    CHECK(decode_label(encode_label("", n, mod)) == "");

    // exhaustive over all 2-byte labels
    std::set<std::vector<u64>> seen;
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < 256; ++b) {
            std::string label{static_cast<char>(a), static_cast<char>(b)};
            ZqVector v = encode_label(label, n, mod);
            CHECK(seen.insert(v.entries).second);
            CHECK(decode_label(v) == label);
        }

    // trailing zero bytes stay distinguishable
    CHECK(encode_label(std::string("\0", 1), n, mod) != encode_label("", n, mod));
    CHECK(encode_label(std::string("a\0", 2), n, mod) != encode_label("a", n, mod));

    CHECK_THROWS_AS(encode_label(std::string(100, 'x'), n, mod), std::invalid_argument);
}

TEST_CASE("center_lift representative") {
    Modulus mod(7);
    CHECK(center_lift(0, 7) == 0);
    CHECK(center_lift(3, 7) == 3);
    CHECK(center_lift(4, 7) == -3);
    CHECK(center_lift(6, 7) == -1);
}
