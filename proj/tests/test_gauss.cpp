#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include <srpe/gauss.hpp>

#include "test_util.hpp"

using namespace srpe;
using namespace srpe::testutil;

TEST_CASE("sample_z degenerates to the center as s -> 0") {
    Rng rng(1);
    GaussParam p(0.01);
    for (int i = 0; i < 100; ++i) CHECK(sample_z(p, 7.0, rng) == 7);
}

TEST_CASE("sample_z mean and variance at s=4") {
    Rng rng(2);
    GaussParam p(4.0);
    const int n = 100000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        double x = static_cast<double>(sample_z(p, 0.0, rng));
        sum += x;
        sumsq += x * x;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean) <= 0.05);
    // D_{Z,s} variance ~ s^2 / (2 pi) for s well above smoothing
    double want = 16.0 / (2.0 * M_PI);
    CHECK(std::fabs(var - want) <= 0.05 * want);
}

TEST_CASE("sample_z stays inside the tail cut") {
    Rng rng(3);
    GaussParam p(2.5, 6.0);
    const double center = 0.3;
    for (int i = 0; i < 200000; ++i) {
        auto x = static_cast<double>(sample_z(p, center, rng));
        CHECK(std::fabs(x - center) <= p.tail_cut * p.s);
    }
}

TEST_CASE("sample_z histogram matches the discrete Gaussian pmf") {
    Rng rng(4);
    GaussParam p(3.0);
    const int n = 200000;
    std::map<i64, std::size_t> hist;
    for (int i = 0; i < n; ++i) ++hist[sample_z(p, 0.0, rng)];
    const i64 lo = -20, hi = 20;
    std::vector<double> obs, expd;
    double norm = 0;
    for (i64 x = lo; x <= hi; ++x) norm += std::exp(-M_PI * x * x / (p.s * p.s));
    for (i64 x = lo; x <= hi; ++x) {
        auto it = hist.find(x);
        obs.push_back(it == hist.end() ? 0.0 : static_cast<double>(it->second));
        expd.push_back(n * std::exp(-M_PI * x * x / (p.s * p.s)) / norm);
    }
    CHECK(chi2_gof(obs, expd) > 0.01);
}

TEST_CASE("sample_chi is hard-bounded and matches the truncated pmf") {
    Rng rng(5);
    NoiseParam noise(2, 1.5);  // aggressive truncation so the bound bites
    std::map<i64, std::size_t> hist;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        i64 x = sample_chi(noise, rng);
        REQUIRE(x >= -noise.bound);
        REQUIRE(x <= noise.bound);
        ++hist[x];
    }
    std::vector<double> obs, expd;
    double norm = 0;
    for (i64 x = -noise.bound; x <= noise.bound; ++x)
        norm += std::exp(-M_PI * x * x / (noise.sigma * noise.sigma));
    for (i64 x = -noise.bound; x <= noise.bound; ++x) {
        obs.push_back(static_cast<double>(hist[x]));
        expd.push_back(n * std::exp(-M_PI * x * x / (noise.sigma * noise.sigma)) / norm);
    }
    CHECK(chi2_gof(obs, expd) > 0.01);
}

TEST_CASE("sample_chi with B=0 is identically zero") {
    Rng rng(6);
    NoiseParam noise;
    noise.bound = 0;
    noise.sigma = 3.0;
    for (int i = 0; i < 1000; ++i) CHECK(sample_chi(noise, rng) == 0);
}

TEST_CASE("chi vector noise modes") {
    Rng rng(7);
    NoiseParam noise(3, 0.5);
    IntVector z = sample_chi_vector(64, noise, rng, NoiseMode::Zero);
    for (auto v : z.entries) CHECK(v == 0);
    IntVector m = sample_chi_vector(64, noise, rng, NoiseMode::Max);
    for (auto v : m.entries) CHECK(std::abs(v) == 3);
}

TEST_CASE("sample_d on q*I concentrates on zero for small s") {
    IntMatrix basis = IntMatrix::identity(4);
    for (auto& e : basis.data()) e *= 97;
    GsBasis gs(std::move(basis));
    Rng rng(8);
    GaussParam p(3.0);  // far below the 97 spacing
    std::vector<double> center(4, 0.0);
    for (int i = 0; i < 200; ++i) {
        IntVector v = sample_d(gs, p, center, rng);
        for (auto e : v.entries) CHECK(e == 0);
    }
}

TEST_CASE("sample_d outputs lie in the lattice (exact rational solve)") {
    // non-trivial triangular basis; Cramer's rule in 128-bit integers gives
    // the exact coordinates, which must all be integers
    IntMatrix basis(3, 3);
    i64 vals[3][3] = {{2, 1, 4}, {0, 3, 1}, {0, 0, 5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) basis.at(i, j) = vals[i][j];
    GsBasis gs(basis);
    Rng rng(9);
    GaussParam p(40.0);
    std::vector<double> center{1.5, -2.25, 10.0};
    __int128 det = det_bareiss(basis);
    REQUIRE(det != 0);
    for (int trial = 0; trial < 500; ++trial) {
        IntVector v = sample_d(gs, p, center, rng);
        for (int i = 0; i < 3; ++i) {
            IntMatrix replaced = basis;
            for (int r = 0; r < 3; ++r) replaced.at(r, i) = v[r];
            CHECK(det_bareiss(replaced) % det == 0);
        }
    }
}

TEST_CASE("sample_d rejects singular bases") {
    IntMatrix basis(2, 2);
    basis.at(0, 0) = 1;
    basis.at(0, 1) = 2;
    basis.at(1, 0) = 2;
    basis.at(1, 1) = 4;
    GsBasis gs(basis);
    CHECK(gs.singular());
    Rng rng(10);
    CHECK_THROWS_AS(sample_d(gs, GaussParam(5.0), {0.0, 0.0}, rng), std::invalid_argument);
}

TEST_CASE("sample_d on 3Z matches the enumerated pmf") {
    IntMatrix basis(1, 1);
    basis.at(0, 0) = 3;
    GsBasis gs(basis);
    Rng rng(11);
    GaussParam p(6.0);
    const int n = 50000;
    std::map<i64, std::size_t> hist;
    for (int i = 0; i < n; ++i) ++hist[sample_d(gs, p, {0.0}, rng)[0]];
    std::vector<double> obs, expd;
    double norm = 0;
    for (i64 j = -14; j <= 14; ++j) norm += std::exp(-M_PI * 9.0 * j * j / 36.0);
    for (i64 j = -14; j <= 14; ++j) {
        auto it = hist.find(3 * j);
        obs.push_back(it == hist.end() ? 0.0 : static_cast<double>(it->second));
        expd.push_back(n * std::exp(-M_PI * 9.0 * j * j / 36.0) / norm);
    }
    CHECK(chi2_gof(obs, expd) > 0.01);
}

TEST_CASE("identical seeds give identical streams") {
    Rng a(42), b(42);
    GaussParam p(5.0);
    for (int i = 0; i < 1000; ++i) CHECK(sample_z(p, 0.25, a) == sample_z(p, 0.25, b));
    Rng c(42, "domain-1"), d(42, "domain-1"), e(42, "domain-2");
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        u64 x = c.next_u64(), y = d.next_u64(), z = e.next_u64();
        all_equal = all_equal && (x == y);
        any_diff = any_diff || (x != z);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(GaussParam(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussParam(1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseParam(-1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseParam(2, 0.0), std::invalid_argument);
}
