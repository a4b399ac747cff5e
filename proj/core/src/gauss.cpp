#include <srpe/gauss.hpp>

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace srpe {

GaussParam::GaussParam(double s_, double tail_cut_) : s(s_), tail_cut(tail_cut_) {
    if (s <= 0) throw std::invalid_argument("GaussParam: s must be positive");
    if (tail_cut < 6.0) throw std::invalid_argument("GaussParam: tail_cut must be >= 6");
}

NoiseParam::NoiseParam(std::int64_t bound_, double sigma_) : bound(bound_), sigma(sigma_) {
    if (bound < 0) throw std::invalid_argument("NoiseParam: bound must be >= 0");
    if (sigma <= 0) throw std::invalid_argument("NoiseParam: sigma must be positive");
}

std::int64_t sample_z(const GaussParam& p, double center, Rng& rng) {
    // degenerate concentration: the window holds a single candidate
    if (p.s < 0.05) return static_cast<std::int64_t>(std::llround(center));
    // proposal window: 8 true standard deviations (= 8 s / sqrt(2 pi)), but
    // never beyond the configured tail cut; the mass outside is < 2^-48
    const double half = std::min(p.tail_cut, 8.0 / std::sqrt(2.0 * M_PI)) * p.s;
    const auto lo = static_cast<std::int64_t>(std::ceil(center - half));
    const auto hi = static_cast<std::int64_t>(std::floor(center + half));
    if (lo > hi) return static_cast<std::int64_t>(std::llround(center));
    const double inv_s2 = 1.0 / (p.s * p.s);
    for (;;) {
        std::int64_t x = rng.uniform_range(lo, hi);
        double d = static_cast<double>(x) - center;
        double accept = std::exp(-M_PI * d * d * inv_s2);
        if (rng.uniform_unit() < accept) return x;
    }
}

std::int64_t sample_chi(const NoiseParam& p, Rng& rng) {
    if (p.bound == 0) return 0;
    GaussParam g(p.sigma);
    for (;;) {
        std::int64_t x = sample_z(g, 0.0, rng);
        if (x <= p.bound && x >= -p.bound) return x;
    }
}

IntVector sample_chi_vector(std::size_t len, const NoiseParam& p, Rng& rng, NoiseMode mode) {
    IntVector v(len);
    switch (mode) {
        case NoiseMode::Zero:
            break;
        case NoiseMode::Max:
            for (auto& e : v.entries) e = p.bound * rng.sign();
            break;
        case NoiseMode::Normal:
            for (auto& e : v.entries) e = sample_chi(p, rng);
            break;
    }
    return v;
}

namespace {

// --- double-double accumulation ----------------------------------------------
// The sampler's coefficient vector is kept as (hi, lo) pairs of doubles; the
// update t -= c * row uses an error-free product (Dekker split) and a Knuth
// two-sum, so the accumulated value carries ~106 mantissa bits.  Element
// updates are independent, which lets the compiler vectorize the loop; the
// arch=haswell clone picks up AVX2 where the CPU has it.
__attribute__((target_clones("default,arch=haswell"))) void dd_axpy(
    double* __restrict thi, double* __restrict tlo, double c, const double* __restrict row,
    std::size_t len) {
    constexpr double splitter = 134217729.0;  // 2^27 + 1
    const double c_tmp = c * splitter;
    const double c_hi = c_tmp - (c_tmp - c);
    const double c_lo = c - c_hi;
    for (std::size_t j = 0; j < len; ++j) {
        const double b = row[j];
        const double p = c * b;
        const double b_tmp = b * splitter;
        const double b_hi = b_tmp - (b_tmp - b);
        const double b_lo = b - b_hi;
        const double e_p = ((c_hi * b_hi - p) + c_hi * b_lo + c_lo * b_hi) + c_lo * b_lo;
        const double a = thi[j];
        const double s = a + p;
        const double ap = s - p;
        const double bp = s - ap;
        const double err = (a - ap) + (p - bp);
        thi[j] = s;
        tlo[j] += err + e_p;
    }
}

// dot product with four independent accumulators; the x87 add latency chain
// otherwise dominates the sampler
long double dot4(const long double* a, const long double* b, std::size_t n) {
    long double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

void axpy4(long double* y, long double c, const long double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        y[i] -= c * x[i];
        y[i + 1] -= c * x[i + 1];
        y[i + 2] -= c * x[i + 2];
        y[i + 3] -= c * x[i + 3];
    }
    for (; i < n; ++i) y[i] -= c * x[i];
}

}  // namespace

GsBasis::GsBasis(IntMatrix basis) : basis_(std::move(basis)) {
    const std::size_t nrows = basis_.rows();
    const std::size_t ncols = basis_.cols();
    if (nrows != ncols) throw std::invalid_argument("GsBasis: basis must be square");
    gst_.assign(ncols * nrows, 0.0);
    mu_.assign(ncols * nrows, 0.0);
    gs_norm_sq_.assign(ncols, 0.0L);
    // modified Gram-Schmidt in extended precision; work rows then rounded
    std::vector<long double> work(ncols * nrows, 0.0L);
    for (std::size_t j = 0; j < ncols; ++j) {
        long double* v = work.data() + j * nrows;
        for (std::size_t r = 0; r < nrows; ++r) v[r] = static_cast<long double>(basis_.at(r, j));
        double* mu_j = mu_.data() + j * nrows;
        for (std::size_t i = 0; i < j; ++i) {
            const long double* gi = work.data() + i * nrows;
            const long double coef = dot4(v, gi, nrows) / gs_norm_sq_[i];
            mu_j[i] = static_cast<double>(coef);
            axpy4(v, coef, gi, nrows);
        }
        long double nsq = dot4(v, v, nrows);
        gs_norm_sq_[j] = nsq;
        if (nsq <= 0) { singular_ = true; return; }
        gs_norm_ = std::max(gs_norm_, static_cast<double>(std::sqrt(nsq)));
        for (std::size_t r = 0; r < nrows; ++r)
            gst_[r * ncols + j] = static_cast<double>(v[r]);
    }
}

double smoothing_slack(std::size_t dim) {
    // eta_eps(Z) proxy at eps = 2^-36
    return std::sqrt(std::log(2.0 * static_cast<double>(std::max<std::size_t>(dim, 1)) *
                              (1.0 + std::exp2(36))) / M_PI);
}

IntVector sample_d(const GsBasis& basis, const GaussParam& p,
                   const std::vector<double>& center, Rng& rng) {
    if (basis.singular()) throw std::invalid_argument("sample_d: singular basis");
    const std::size_t dim = basis.dim();
    if (center.size() != dim) throw std::invalid_argument("sample_d: center length mismatch");
    if (p.s < basis.gs_norm() * smoothing_slack(dim)) {
        std::cerr << "srpe: warning: sample_d called with s below the quality threshold ("
                  << p.s << " < " << basis.gs_norm() * smoothing_slack(dim) << ")\n";
    }
    // walk in Gram-Schmidt coordinates: project the center once, then each
    // chosen coefficient z_i shifts the remaining coordinates by z_i * mu.
    // The projection runs coordinate-major and skips zero coordinates, so
    // the sparse centers handed over by coset solves cost O(n_nonzero * dim).
    std::vector<double> thi(dim, 0.0), tlo(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
        if (center[k] == 0.0) continue;
        dd_axpy(thi.data(), tlo.data(), center[k], basis.gs_coord_row(k), dim);
    }
    for (std::size_t i = 0; i < dim; ++i) {
        const long double v =
            (static_cast<long double>(thi[i]) + static_cast<long double>(tlo[i])) /
            basis.gs_norm_sq(i);
        thi[i] = static_cast<double>(v);
        tlo[i] = static_cast<double>(v - static_cast<long double>(thi[i]));
    }
    std::vector<i64> z(dim);
    for (std::size_t i = dim; i-- > 0;) {
        const double si = p.s / static_cast<double>(std::sqrt(basis.gs_norm_sq(i)));
        z[i] = sample_z(GaussParam(si, p.tail_cut), thi[i] + tlo[i], rng);
        if (z[i] != 0 && i != 0)
            dd_axpy(thi.data(), tlo.data(), -static_cast<double>(z[i]), basis.mu_row(i), i);
    }
    IntVector out(dim);
    const IntMatrix& b = basis.basis();
    for (std::size_t r = 0; r < dim; ++r) {
        i64 acc = 0;
        for (std::size_t i = 0; i < dim; ++i) acc += z[i] * b.at(r, i);
        out[r] = acc;
    }
    return out;
}

}  // namespace srpe
