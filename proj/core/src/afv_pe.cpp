#include <srpe/afv_pe.hpp>

#include <srpe/gadget.hpp>

namespace srpe {

namespace {

ZqMatrix uniform_matrix(std::size_t rows, std::size_t cols, Modulus mod, Rng& rng) {
    ZqMatrix m(rows, cols, mod);
    for (auto& e : m.data()) e = rng.uniform_mod(mod.q);
    return m;
}

IntMatrix sign_matrix(std::size_t dim, Rng& rng) {
    IntMatrix m(dim, dim);
    for (auto& e : m.data()) e = rng.sign();
    return m;
}

ZqVector add_int(const ZqVector& a, const IntVector& b) {
    ZqVector out(a.size(), a.mod);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = mod_add(a[i], mod_from_int(b[i], a.mod.q), a.mod.q);
    return out;
}

}  // namespace

std::pair<PePublicParams, PeMasterSecret> pe_setup(const PeParams& params, Rng& rng) {
    GTrapdoor trap = trap_gen(params.n, params.mod, params.m, rng);
    PePublicParams pp;
    pp.params = params;
    pp.a = trap.a();
    pp.a_i.reserve(params.ell);
    for (std::size_t i = 0; i < params.ell; ++i)
        pp.a_i.push_back(uniform_matrix(params.n, params.m, params.mod, rng));
    pp.v = uniform_matrix(params.n, params.kappa, params.mod, rng);
    return {std::move(pp), PeMasterSecret{std::move(trap)}};
}

ZqMatrix pe_attr_matrix(const PePublicParams& pp, const ZqVector& x) {
    const auto& prm = pp.params;
    if (x.size() != prm.ell) throw std::invalid_argument("pe_attr_matrix: predicate length");
    ZqMatrix g = gadget_matrix(prm.n, prm.m, prm.mod);
    ZqMatrix acc = ZqMatrix::zero(prm.n, prm.m, prm.mod);
    for (std::size_t i = 0; i < prm.ell; ++i) {
        IntMatrix dec = gadget_inverse(scalar_mul(x[i], g), prm.m);
        acc = mat_add(acc, mat_mul(pp.a_i[i], dec));
    }
    return acc;
}

PeSecretKey pe_keygen(const PePublicParams& pp, const PeMasterSecret& msk, const ZqVector& x,
                      Rng& rng) {
    ZqMatrix a_x = pe_attr_matrix(pp, x);
    PeSecretKey sk;
    sk.x = x;
    sk.z = sample_left(msk.trap, a_x, pp.v, pp.params.gauss, rng);
    return sk;
}

PeSecretKey pe_keygen_basis(const PePublicParams& pp, const PeMasterSecret& msk,
                            const ZqVector& x, Rng& rng) {
    ZqMatrix a_x = pe_attr_matrix(pp, x);
    GsBasis basis = sample_basis_left(msk.trap, a_x, pp.params.gauss, rng);
    PeSecretKey sk;
    sk.x = x;
    sk.basis = basis.basis();
    return sk;
}

IntMatrix pe_key_from_basis(const PePublicParams& pp, const PeSecretKey& sk, Rng& rng) {
    if (!sk.basis) throw std::invalid_argument("pe_key_from_basis: key has no basis");
    ZqMatrix f = concat_cols(pp.a, pe_attr_matrix(pp, sk.x));
    GsBasis basis(*sk.basis);
    return sample_pre_with_basis(f, basis, pp.v, pp.params.gauss, rng);
}

PeCiphertext pe_enc(const PePublicParams& pp, const ZqVector& y, int message, Rng& rng,
                    PeEncTrace* trace, NoiseMode mode) {
    const auto& prm = pp.params;
    if (y.size() != prm.ell) throw std::invalid_argument("pe_enc: attribute length");
    if (message != 0 && message != 1) throw std::invalid_argument("pe_enc: message must be a bit");
    const u64 q = prm.mod.q;

    ZqVector s(prm.n, prm.mod);
    for (auto& e : s.entries) e = rng.uniform_mod(q);
    IntVector e = sample_chi_vector(prm.kappa, prm.noise, rng, mode);
    IntVector e1 = sample_chi_vector(prm.m, prm.noise, rng, mode);

    PeCiphertext ct;
    // c = V^T s + e + encode(M) * floor(q/2)
    ct.c = add_int(mat_transpose_vec(pp.v, s), e);
    ct.c[0] = mod_add(ct.c[0], message ? q / 2 : 0, q);
    // c_0 = A^T s + e_1
    ct.c0 = add_int(mat_transpose_vec(pp.a, s), e1);
    // c_i = (A_i + y_i G)^T s + R_i^T e_1
    ZqMatrix g = gadget_matrix(prm.n, prm.m, prm.mod);
    ct.c_i.reserve(prm.ell);
    std::vector<IntMatrix> signs;
    for (std::size_t i = 0; i < prm.ell; ++i) {
        IntMatrix r_i = sign_matrix(prm.m, rng);
        ZqMatrix a_yi = mat_add(pp.a_i[i], scalar_mul(y[i], g));
        ZqVector base = mat_transpose_vec(a_yi, s);
        IntVector noise_i = int_transpose_vec_int(r_i, e1);
        ct.c_i.push_back(add_int(base, noise_i));
        if (trace) signs.push_back(std::move(r_i));
    }
    if (trace) {
        trace->s = std::move(s);
        trace->e = std::move(e);
        trace->e1 = std::move(e1);
        trace->r_i = std::move(signs);
    }
    return ct;
}

std::optional<int> pe_dec(const PePublicParams& pp, const PeSecretKey& sk,
                          const PeCiphertext& ct) {
    const auto& prm = pp.params;
    if (!sk.z) throw std::invalid_argument("pe_dec: key holds no preimage (basis form)");
    // c_x = sum_i (G^{-1}(x_i G))^T c_i
    ZqMatrix g = gadget_matrix(prm.n, prm.m, prm.mod);
    ZqVector c_x(prm.m, prm.mod);
    for (std::size_t i = 0; i < prm.ell; ++i) {
        IntMatrix dec = gadget_inverse(scalar_mul(sk.x[i], g), prm.m);
        c_x = vec_add(c_x, int_transpose_vec(dec, ct.c_i[i]));
    }
    ZqVector d = vec_sub(ct.c, int_transpose_vec(*sk.z, stack(ct.c0, c_x)));
    return round_decode(d);
}

}  // namespace srpe
