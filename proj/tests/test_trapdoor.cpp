#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include <srpe/trapdoor.hpp>

#include "test_util.hpp"

using namespace srpe;
using namespace srpe::testutil;

namespace {

// unit-scale instance used across this suite
struct Instance {
    Modulus mod{12289};
    std::size_t n = 2;
    std::size_t m = 2 * 2 * Modulus(12289).bit_length;
    GaussParam gauss{55.0};
};

ZqVector random_target(std::size_t n, Modulus mod, Rng& rng) {
    ZqVector u(n, mod);
    for (auto& e : u.entries) e = rng.uniform_mod(mod.q);
    return u;
}

bool is_zero(const ZqMatrix& m) {
    for (u64 e : m.data())
        if (e != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("trap_gen produces a kernel basis of full rational rank") {
    Instance in;
    Rng rng(1);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    CHECK(trap.a().rows() == in.n);
    CHECK(trap.a().cols() == in.m);
    CHECK(is_zero(mat_mul(trap.a(), trap.basis().basis())));
    // det(T_A) = +-q^n, so full rank persists modulo any other prime
    Modulus probe(2147483647ull);
    CHECK(rank(reduce_mod(trap.basis().basis(), probe)) == in.m);
}

TEST_CASE("trap_gen basis quality stays under the pinned constant") {
    Instance in;
    Rng rng(2);
    const double bound =
        3.0 * std::sqrt(static_cast<double>(in.n) * std::log2(static_cast<double>(in.mod.q)));
    for (int trial = 0; trial < 5; ++trial) {
        GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
        double measured = gs_max_norm(trap.basis().basis());
        CHECK(measured <= bound);
        // the sampler's own cache agrees with the independent measurement
        CHECK(trap.basis().gs_norm() == doctest::Approx(measured).epsilon(1e-9));
    }
}

TEST_CASE("trap_gen output matrix entries look uniform (small q)") {
    Modulus mod(17);
    const std::size_t n = 2, m = 2 * n * mod.bit_length;
    Rng rng(3);
    std::map<u64, std::size_t> hist;
    std::size_t total = 0;
    std::vector<ZqMatrix> seen;
    for (int trial = 0; trial < 100; ++trial) {
        GTrapdoor trap = trap_gen(n, mod, m, rng);
        for (u64 e : trap.a().data()) {
            ++hist[e];
            ++total;
        }
        seen.push_back(trap.a());
    }
    CHECK(chi2_uniform(hist, mod.q, total) > 0.01);
    // collision sanity over the same 100 runs
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (std::size_t j = i + 1; j < seen.size(); ++j) CHECK(!(seen[i] == seen[j]));
}

TEST_CASE("trap_gen rejects undersized m") {
    Modulus mod(12289);
    Rng r4(4);
    CHECK_THROWS_AS(trap_gen(2, mod, 2 * 2 * mod.bit_length - 1, r4), std::invalid_argument);
}

TEST_CASE("sample_pre solves random cosets with bounded norms") {
    Instance in;
    Rng rng(5);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    int norm_ok = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        ZqVector u = random_target(in.n, in.mod, rng);
        IntVector e = sample_pre(trap, u, in.gauss, rng);
        // coset correctness, exact, every draw
        ZqVector chk = mat_vec(trap.a(), e);
        CHECK(chk == u);
        if (e.norm2() <= in.gauss.s * std::sqrt(static_cast<double>(in.m))) ++norm_ok;
    }
    CHECK(norm_ok >= 999);
}

TEST_CASE("sample_pre with zero target returns a kernel vector") {
    Instance in;
    Rng rng(6);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    ZqVector zero(in.n, in.mod);
    IntVector e = sample_pre(trap, zero, in.gauss, rng);
    CHECK(mat_vec(trap.a(), e) == zero);
}

TEST_CASE("sample_pre matrix targets are handled column-wise") {
    Instance in;
    Rng rng(7);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    ZqMatrix u(in.n, 3, in.mod);
    for (auto& e : u.data()) e = rng.uniform_mod(in.mod.q);
    IntMatrix e = sample_pre(trap, u, in.gauss, rng);
    CHECK(e.rows() == in.m);
    CHECK(e.cols() == 3);
    CHECK(mat_mul(trap.a(), e) == u);
}

TEST_CASE("sample_pre empirical pmf matches enumeration on a 1-D lattice") {
    // hand-built instance: A = [1] over Z_5, kernel lattice 5Z
    Modulus mod(5);
    ZqMatrix a(1, 1, mod);
    a.at(0, 0) = 1;
    IntMatrix basis(1, 1);
    basis.at(0, 0) = 5;
    GTrapdoor trap(a, IntMatrix(), basis);
    Rng rng(8);
    GaussParam p(12.0);
    ZqVector u(1, mod);
    u[0] = 2;
    const int n = 50000;
    std::map<i64, std::size_t> hist;
    for (int i = 0; i < n; ++i) {
        IntVector e = sample_pre(trap, u, p, rng);
        CHECK(mod_from_int(e[0], 5) == 2);
        ++hist[e[0]];
    }
    std::vector<double> obs, expd;
    double norm = 0;
    for (i64 j = -20; j <= 20; ++j) {
        double v = static_cast<double>(2 + 5 * j);
        norm += std::exp(-M_PI * v * v / (p.s * p.s));
    }
    for (i64 j = -20; j <= 20; ++j) {
        double v = static_cast<double>(2 + 5 * j);
        auto it = hist.find(2 + 5 * j);
        obs.push_back(it == hist.end() ? 0.0 : static_cast<double>(it->second));
        expd.push_back(n * std::exp(-M_PI * v * v / (p.s * p.s)) / norm);
    }
    CHECK(chi2_gof(obs, expd) > 0.01);
}

TEST_CASE("sample_basis_left extends the trapdoor without quality loss") {
    Instance in;
    Rng rng(9);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    ZqMatrix ext(in.n, in.m, in.mod);
    for (auto& e : ext.data()) e = rng.uniform_mod(in.mod.q);
    GsBasis t_f = sample_basis_left(trap, ext, in.gauss, rng);
    ZqMatrix f = concat_cols(trap.a(), ext);
    CHECK(is_zero(mat_mul(f, t_f.basis())));
    CHECK(gs_max_norm(t_f.basis()) <= gs_max_norm(trap.basis().basis()) + 1e-6);
    Modulus probe(2147483647ull);
    CHECK(rank(reduce_mod(t_f.basis(), probe)) == 2 * in.m);
    CHECK_THROWS_AS(sample_basis_left(trap, ZqMatrix(in.n + 1, in.m, in.mod), in.gauss, rng),
                    std::invalid_argument);
}

TEST_CASE("sample_left satisfies the concatenated relation") {
    Instance in;
    Rng rng(10);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    ZqMatrix ext(in.n, in.m, in.mod);
    for (auto& e : ext.data()) e = rng.uniform_mod(in.mod.q);
    ZqMatrix f = concat_cols(trap.a(), ext);
    for (int trial = 0; trial < 200; ++trial) {
        ZqVector u = random_target(in.n, in.mod, rng);
        IntVector z = sample_left(trap, ext, u, in.gauss, rng);
        CHECK(z.size() == 2 * in.m);
        CHECK(mat_vec(f, z) == u);
    }
}

TEST_CASE("sample_left with M = A and zero target") {
    Instance in;
    Rng rng(11);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    ZqVector zero(in.n, in.mod);
    IntVector z = sample_left(trap, trap.a(), zero, in.gauss, rng);
    // [A | A] z = A (z1 + z2) = 0
    IntVector sum(in.m);
    for (std::size_t i = 0; i < in.m; ++i) sum[i] = z[i] + z[in.m + i];
    CHECK(mat_vec(trap.a(), sum) == zero);
}

TEST_CASE("sample_left right-half marginal matches D_{Z,s}") {
    Instance in;
    Rng rng(12);
    GTrapdoor trap = trap_gen(in.n, in.mod, in.m, rng);
    ZqMatrix ext(in.n, in.m, in.mod);
    for (auto& e : ext.data()) e = rng.uniform_mod(in.mod.q);
    std::map<i64, std::size_t> hist;
    std::size_t total = 0;
    for (int trial = 0; trial < 300; ++trial) {
        ZqVector u = random_target(in.n, in.mod, rng);
        IntVector z = sample_left(trap, ext, u, in.gauss, rng);
        for (std::size_t i = in.m; i < 2 * in.m; ++i) {
            ++hist[z[i]];
            ++total;
        }
    }
    const double s = in.gauss.s;
    const i64 win = static_cast<i64>(s * 4);
    std::vector<double> obs, expd;
    double norm = 0;
    for (i64 x = -win; x <= win; ++x) norm += std::exp(-M_PI * x * x / (s * s));
    double tail_obs = 0;
    for (const auto& [v, c] : hist)
        if (v < -win || v > win) tail_obs += static_cast<double>(c);
    for (i64 x = -win; x <= win; ++x) {
        auto it = hist.find(x);
        obs.push_back(it == hist.end() ? 0.0 : static_cast<double>(it->second));
        expd.push_back(static_cast<double>(total) * std::exp(-M_PI * x * x / (s * s)) / norm);
    }
    obs.back() += tail_obs;  // fold the (negligible) tail into the last bin
    CHECK(chi2_gof(obs, expd) > 0.01);
}

TEST_CASE("sample_right solves cosets of [A | AR + G]") {
    Modulus mod(257);
    const std::size_t n = 2, m = 2 * n * mod.bit_length;
    Rng rng(13);
    ZqMatrix a(n, m, mod);
    for (auto& e : a.data()) e = rng.uniform_mod(mod.q);
    ZqMatrix g = gadget_matrix(n, m, mod);
    IntMatrix t_g = gadget_basis(n, m, mod);
    GaussParam p(40.0);

    IntMatrix r(m, m);
    for (auto& e : r.data()) e = rng.sign();
    ZqMatrix f = concat_cols(a, mat_add(mat_mul(a, r), g));
    int norm_ok = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        ZqVector u = random_target(n, mod, rng);
        IntVector z = sample_right(a, r, g, t_g, u, p, rng);
        CHECK(mat_vec(f, z) == u);
        if (z.norm2() <= p.s * std::sqrt(static_cast<double>(2 * m))) ++norm_ok;
    }
    CHECK(norm_ok >= 999);
}

TEST_CASE("sample_right degenerates to [A | G] at R = 0") {
    Modulus mod(257);
    const std::size_t n = 2, m = 2 * n * mod.bit_length;
    Rng rng(14);
    ZqMatrix a(n, m, mod);
    for (auto& e : a.data()) e = rng.uniform_mod(mod.q);
    ZqMatrix g = gadget_matrix(n, m, mod);
    IntMatrix t_g = gadget_basis(n, m, mod);
    IntMatrix r(m, m);  // zero
    ZqMatrix f = concat_cols(a, g);
    ZqVector u = random_target(n, mod, rng);
    IntVector z = sample_right(a, r, g, t_g, u, GaussParam(40.0), rng);
    CHECK(mat_vec(f, z) == u);
}
