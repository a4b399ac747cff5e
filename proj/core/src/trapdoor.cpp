#include <srpe/trapdoor.hpp>

#include <stdexcept>

namespace srpe {

GTrapdoor::GTrapdoor(ZqMatrix a, IntMatrix r, IntMatrix basis)
    : a_(std::move(a)), r_(std::move(r)), basis_(std::move(basis)), solver_(a_) {
    if (basis_.singular()) throw std::runtime_error("GTrapdoor: singular basis");
}

GTrapdoor trap_gen(std::size_t n, Modulus mod, std::size_t m, Rng& rng) {
    const std::size_t k = mod.bit_length;
    const std::size_t w = n * k;
    if (m < 2 * w) throw std::invalid_argument("trap_gen: m < 2 n ceil(log2 q)");
    const std::size_t mb = m - w;  // width of the uniform block

    ZqMatrix abar(n, mb, mod);
    for (auto& e : abar.data()) e = rng.uniform_mod(mod.q);

    GaussParam rp(kTrapdoorEntryParam);
    IntMatrix r(mb, w);
    for (auto& e : r.data()) e = sample_z(rp, 0.0, rng);

    // A = [Abar | G - Abar R] with the unpadded n x w gadget
    ZqMatrix g = gadget_matrix(n, w, mod);
    ZqMatrix a = concat_cols(abar, mat_sub(g, mat_mul(abar, r)));

    // kernel basis; gadget-sourced columns first so the trailing block
    // Gram-Schmidt-reduces to unit vectors
    IntMatrix t_g = gadget_basis(n, w, mod);
    IntMatrix kdec = gadget_inverse(abar, w);  // w x mb, binary
    IntMatrix rt = int_mat_mul(r, t_g);        // mb x w
    IntMatrix rk = int_mat_mul(r, kdec);       // mb x mb
    IntMatrix basis(m, m);
    for (std::size_t i = 0; i < mb; ++i)
        for (std::size_t j = 0; j < w; ++j)
            basis.at(i, j) = rt.at(i, j);
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j)
            basis.at(mb + i, j) = t_g.at(i, j);
    for (std::size_t i = 0; i < mb; ++i)
        for (std::size_t j = 0; j < mb; ++j)
            basis.at(i, w + j) = (i == j ? 1 : 0) - rk.at(i, j);
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < mb; ++j)
            basis.at(mb + i, w + j) = -kdec.at(i, j);

    return GTrapdoor(std::move(a), std::move(r), std::move(basis));
}

IntVector coset_sample(const ZqSolver& solver, const GsBasis& basis, const ZqVector& u,
                       const GaussParam& p, Rng& rng, const ZqMatrix& f_check) {
    const ZqVector t = solver.solve(u);
    const std::size_t dim = basis.dim();
    std::vector<double> center(dim);
    for (std::size_t i = 0; i < dim; ++i) center[i] = -static_cast<double>(t[i]);
    std::vector<u64> reduced(dim);
    for (int attempt = 0; attempt < 4; ++attempt) {
        IntVector v = sample_d(basis, p, center, rng);
        IntVector e(dim);
        for (std::size_t i = 0; i < dim; ++i) e[i] = static_cast<i64>(t[i]) + v[i];
        // exact coset verification before anything is returned
        bool ok = true;
        const u64 q = u.mod.q;
        for (std::size_t i = 0; i < dim; ++i) reduced[i] = mod_from_int(e[i], q);
        for (std::size_t r = 0; r < f_check.rows() && ok; ++r) {
            u128 acc = 0;
            for (std::size_t c = 0; c < f_check.cols(); ++c)
                acc += (u128)f_check.at(r, c) * reduced[c];
            ok = static_cast<u64>(acc % q) == u[r];
        }
        if (ok) return e;
    }
    throw std::runtime_error("coset_sample: verification failed repeatedly");
}

IntVector sample_pre(const GTrapdoor& trap, const ZqVector& u, const GaussParam& p, Rng& rng) {
    return coset_sample(trap.solver(), trap.basis(), u, p, rng, trap.a());
}

IntMatrix sample_pre(const GTrapdoor& trap, const ZqMatrix& u, const GaussParam& p, Rng& rng) {
    IntMatrix out(trap.a().cols(), u.cols());
    for (std::size_t c = 0; c < u.cols(); ++c)
        out.set_column(c, sample_pre(trap, u.column(c), p, rng));
    return out;
}

GsBasis sample_basis_left(const GTrapdoor& trap, const ZqMatrix& m_ext, const GaussParam& p,
                          Rng& rng) {
    const std::size_t m = trap.a().cols();
    if (m_ext.rows() != trap.a().rows())
        throw std::invalid_argument("sample_basis_left: row mismatch");
    const std::size_t ext = m_ext.cols();
    // W with A W = -M (mod q)
    ZqMatrix neg_m = mat_sub(ZqMatrix::zero(m_ext.rows(), ext, m_ext.mod()), m_ext);
    IntMatrix w = sample_pre(trap, neg_m, p, rng);
    IntMatrix basis(m + ext, m + ext);
    const IntMatrix& t_a = trap.basis().basis();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            basis.at(i, j) = t_a.at(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < ext; ++j)
            basis.at(i, m + j) = w.at(i, j);
    for (std::size_t j = 0; j < ext; ++j) basis.at(m + j, m + j) = 1;
    return GsBasis(std::move(basis));
}

IntVector sample_left(const GTrapdoor& trap, const ZqMatrix& m_ext, const ZqVector& u,
                      const GaussParam& p, Rng& rng) {
    if (m_ext.rows() != trap.a().rows())
        throw std::invalid_argument("sample_left: row mismatch");
    if (u.size() != trap.a().rows()) throw std::invalid_argument("sample_left: target length");
    const std::size_t ext = m_ext.cols();
    IntVector z2(ext);
    for (std::size_t i = 0; i < ext; ++i) z2[i] = sample_z(p, 0.0, rng);
    // residual coset u - M z2 for the trapdoor block
    const u64 q = u.mod.q;
    std::vector<u64> z2r(ext);
    for (std::size_t i = 0; i < ext; ++i) z2r[i] = mod_from_int(z2[i], q);
    ZqVector residual(u.size(), u.mod);
    for (std::size_t r = 0; r < m_ext.rows(); ++r) {
        u128 acc = 0;
        for (std::size_t c = 0; c < ext; ++c) acc += (u128)m_ext.at(r, c) * z2r[c];
        residual[r] = mod_sub(u[r], static_cast<u64>(acc % q), q);
    }
    IntVector z1 = sample_pre(trap, residual, p, rng);
    return int_stack(z1, z2);
}

IntMatrix sample_left(const GTrapdoor& trap, const ZqMatrix& m_ext, const ZqMatrix& u,
                      const GaussParam& p, Rng& rng) {
    IntMatrix out(trap.a().cols() + m_ext.cols(), u.cols());
    for (std::size_t c = 0; c < u.cols(); ++c)
        out.set_column(c, sample_left(trap, m_ext, u.column(c), p, rng));
    return out;
}

IntVector sample_right(const ZqMatrix& a, const IntMatrix& r, const ZqMatrix& g,
                       const IntMatrix& t_g, const ZqVector& u, const GaussParam& p, Rng& rng) {
    const std::size_t m = a.cols();
    if (r.rows() != m || r.cols() != m) throw std::invalid_argument("sample_right: R must be m x m");
    if (g.rows() != a.rows() || g.cols() != m)
        throw std::invalid_argument("sample_right: G dimension mismatch");
    // F = [A | A R + G]
    ZqMatrix ar = mat_mul(a, r);
    ZqMatrix f = concat_cols(a, mat_add(ar, g));
    // kernel basis of F from the gadget trapdoor:
    //  [ I + R*Kg | -R*T_G ]      Kg = G^{-1}(A)
    //  [   -Kg    |  T_G   ]
    IntMatrix kg = gadget_inverse(a, m);
    IntMatrix rkg = int_mat_mul(r, kg);
    IntMatrix rtg = int_mat_mul(r, t_g);
    IntMatrix basis(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            basis.at(i, j) = -rtg.at(i, j);
            basis.at(m + i, j) = t_g.at(i, j);
            basis.at(i, m + j) = (i == j ? 1 : 0) + rkg.at(i, j);
            basis.at(m + i, m + j) = -kg.at(i, j);
        }
    GsBasis gs(std::move(basis));
    ZqSolver solver(f);
    return coset_sample(solver, gs, u, p, rng, f);
}

IntVector sample_pre_with_basis(const ZqMatrix& f, const GsBasis& basis, const ZqVector& u,
                                const GaussParam& p, Rng& rng) {
    ZqSolver solver(f);
    return coset_sample(solver, basis, u, p, rng, f);
}

IntMatrix sample_pre_with_basis(const ZqMatrix& f, const GsBasis& basis, const ZqMatrix& u,
                                const GaussParam& p, Rng& rng) {
    ZqSolver solver(f);
    IntMatrix out(f.cols(), u.cols());
    for (std::size_t c = 0; c < u.cols(); ++c)
        out.set_column(c, coset_sample(solver, basis, u.column(c), p, rng, f));
    return out;
}

}  // namespace srpe
