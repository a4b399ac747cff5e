#include <srpe/srpe.hpp>

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

ZqMatrix attr_matrix(const SysParams& prm, const std::vector<ZqMatrix>& parts,
                     const ZqVector& x) {
    if (x.size() != prm.ell) throw std::invalid_argument("attr_matrix: predicate length != ell");
    ZqMatrix g = gadget_matrix(prm.n, prm.m, prm.mod);
    ZqMatrix acc = ZqMatrix::zero(prm.n, prm.m, prm.mod);
    for (std::size_t i = 0; i < prm.ell; ++i) {
        IntMatrix dec = gadget_inverse(scalar_mul(x[i], g), prm.m);
        acc = mat_add(acc, mat_mul(parts[i], dec));
    }
    return acc;
}

/// sum_i (G^{-1}(x_i G))^T c_i, the attribute folding used by Transform/Dec.
ZqVector fold_attr(const SysParams& prm, const ZqVector& x, const std::vector<ZqVector>& c_i) {
    ZqMatrix g = gadget_matrix(prm.n, prm.m, prm.mod);
    ZqVector out(prm.m, prm.mod);
    for (std::size_t i = 0; i < prm.ell; ++i) {
        IntMatrix dec = gadget_inverse(scalar_mul(x[i], g), prm.m);
        out = vec_add(out, int_transpose_vec(dec, c_i[i]));
    }
    return out;
}

void lazily_define_node(const SrpePublicParams& pp, BinaryTreeState& tree, std::size_t node,
                        Rng& rng) {
    if (!tree.has_node_matrix(node))
        tree.store_node_matrix(node, uniform_matrix(pp.params.n, pp.params.m, pp.params.mod, rng));
}

}  // namespace

ZqVector encode_id(const SrpePublicParams& pp, const std::string& id) {
    return encode_label(id, pp.params.n, pp.params.mod);
}

ZqVector encode_time(const SrpePublicParams& pp, const TimePeriod& t) {
    return encode_label(t.label, pp.params.n, pp.params.mod);
}

ZqMatrix id_matrix(const SrpePublicParams& pp, const std::string& id) {
    ZqMatrix h = frd_map(encode_id(pp, id), pp.params.frd);
    ZqMatrix g = gadget_matrix(pp.params.n, pp.params.m, pp.params.mod);
    return mat_add(pp.d, mat_mul(h, g));
}

ZqMatrix time_matrix(const SrpePublicParams& pp, const TimePeriod& t) {
    ZqMatrix h = frd_map(encode_time(pp, t), pp.params.frd);
    ZqMatrix g = gadget_matrix(pp.params.n, pp.params.m, pp.params.mod);
    return mat_add(pp.c, mat_mul(h, g));
}

ZqMatrix attr_matrix_a(const SrpePublicParams& pp, const ZqVector& x) {
    return attr_matrix(pp.params, pp.a_i, x);
}

ZqMatrix attr_matrix_b(const SrpePublicParams& pp, const ZqVector& x) {
    return attr_matrix(pp.params, pp.b_i, x);
}

SetupResult setup(const SysParams& params, Rng& rng) {
    validate(params);
    GTrapdoor trap_a = trap_gen(params.n, params.mod, params.m, rng);
    GTrapdoor trap_b = trap_gen(params.n, params.mod, params.m, rng);
    SrpePublicParams pp;
    pp.params = params;
    pp.a = trap_a.a();
    pp.b = trap_b.a();
    pp.c = uniform_matrix(params.n, params.m, params.mod, rng);
    pp.d = uniform_matrix(params.n, params.m, params.mod, rng);
    pp.a_i.reserve(params.ell);
    pp.b_i.reserve(params.ell);
    for (std::size_t i = 0; i < params.ell; ++i)
        pp.a_i.push_back(uniform_matrix(params.n, params.m, params.mod, rng));
    for (std::size_t i = 0; i < params.ell; ++i)
        pp.b_i.push_back(uniform_matrix(params.n, params.m, params.mod, rng));
    pp.v = uniform_matrix(params.n, params.kappa, params.mod, rng);
    return SetupResult{std::move(pp),
                       MasterSecret{std::move(trap_a), std::move(trap_b)},
                       RevocationList{},
                       BinaryTreeState(params.max_users)};
}

UserSecretKey user_kg(const SrpePublicParams& pp, const MasterSecret& msk,
                      const std::string& id, const ZqVector& x, Rng& rng) {
    ZqMatrix b_x = attr_matrix_b(pp, x);
    ZqMatrix d_id = id_matrix(pp, id);
    // the extension block is the 2m-column concatenation [B_x | D_id]
    IntMatrix z = sample_left(msk.trap_b, concat_cols(b_x, d_id), pp.v, pp.params.gauss(), rng);
    return UserSecretKey{id, x, std::move(z)};
}

TokenSet token(const SrpePublicParams& pp, const MasterSecret& msk, const std::string& id,
               const ZqVector& x, BinaryTreeState& tree, Rng& rng) {
    std::size_t leaf;
    if (auto existing = tree.leaf_of(id)) leaf = *existing;
    else leaf = tree.assign_leaf(id);
    ZqMatrix a_x = attr_matrix_a(pp, x);
    ZqMatrix d_id = id_matrix(pp, id);
    TokenSet tok;
    tok.id = id;
    tok.x = x;
    for (std::size_t node : tree.path(leaf)) {
        lazily_define_node(pp, tree, node, rng);
        ZqMatrix target = mat_sub(d_id, tree.node_matrix(node));
        IntMatrix z1 = sample_left(msk.trap_a, a_x, target, pp.params.gauss(), rng);
        tok.entries.push_back(TokenEntry{node, std::move(z1)});
    }
    return tok;
}

UpdateKey upd_kg(const SrpePublicParams& pp, const MasterSecret& msk, const TimePeriod& t,
                 const RevocationList& rl, BinaryTreeState& tree, Rng& rng) {
    ZqMatrix c_t = time_matrix(pp, t);
    UpdateKey uk;
    uk.t = t;
    for (std::size_t node : ku_nodes(tree, rl, t.epoch)) {
        // a cover node no tokenized path ever touched gets its matrix here
        lazily_define_node(pp, tree, node, rng);
        IntMatrix z2 = sample_left(msk.trap_a, c_t, tree.node_matrix(node), pp.params.gauss(), rng);
        uk.entries.push_back(UpdateKeyEntry{node, std::move(z2)});
    }
    return uk;
}

std::optional<TransformKey> tran_kg(const TokenSet& tok, const UpdateKey& uk) {
    const TokenEntry* best_tok = nullptr;
    const UpdateKeyEntry* best_uk = nullptr;
    for (const auto& te : tok.entries)
        for (const auto& ue : uk.entries)
            if (te.node == ue.node && (!best_tok || te.node < best_tok->node)) {
                best_tok = &te;
                best_uk = &ue;
            }
    if (!best_tok) return std::nullopt;
    return TransformKey{tok.id, tok.x, uk.t, best_tok->z1, best_uk->z2};
}

Ciphertext enc(const SrpePublicParams& pp, const ZqVector& y, const TimePeriod& t, int message,
               Rng& rng, EncTrace* trace, NoiseMode mode) {
    const auto& prm = pp.params;
    if (y.size() != prm.ell) throw std::invalid_argument("enc: attribute length != ell");
    if (message != 0 && message != 1) throw std::invalid_argument("enc: message must be a bit");
    const u64 q = prm.mod.q;
    const NoiseParam noise = prm.noise();

    // one secret vector shared by all component families
    ZqVector s(prm.n, prm.mod);
    for (auto& e : s.entries) e = rng.uniform_mod(q);
    IntVector e = sample_chi_vector(prm.kappa, noise, rng, mode);
    IntVector e1 = sample_chi_vector(prm.m, noise, rng, mode);
    IntVector e2 = sample_chi_vector(prm.m, noise, rng, mode);
    IntMatrix r_bar = sign_matrix(prm.m, rng);

    ZqMatrix g = gadget_matrix(prm.n, prm.m, prm.mod);
    Ciphertext ct;
    ct.t = t;
    ct.c = add_int(mat_transpose_vec(pp.v, s), e);
    ct.c[0] = mod_add(ct.c[0], message ? q / 2 : 0, q);
    ct.c1 = add_int(mat_transpose_vec(pp.a, s), e1);
    ct.c2 = add_int(mat_transpose_vec(pp.b, s), e2);
    ct.c1_0 = add_int(mat_transpose_vec(time_matrix(pp, t), s),
                      int_transpose_vec_int(r_bar, e1));
    std::vector<IntMatrix> r_list, s_list;
    for (std::size_t i = 0; i < prm.ell; ++i) {
        IntMatrix r_i = sign_matrix(prm.m, rng);
        ZqMatrix a_yi = mat_add(pp.a_i[i], scalar_mul(y[i], g));
        ct.c1_i.push_back(add_int(mat_transpose_vec(a_yi, s), int_transpose_vec_int(r_i, e1)));
        if (trace) r_list.push_back(std::move(r_i));
    }
    for (std::size_t i = 0; i < prm.ell; ++i) {
        IntMatrix s_i = sign_matrix(prm.m, rng);
        ZqMatrix b_yi = mat_add(pp.b_i[i], scalar_mul(y[i], g));
        ct.c2_i.push_back(add_int(mat_transpose_vec(b_yi, s), int_transpose_vec_int(s_i, e2)));
        if (trace) s_list.push_back(std::move(s_i));
    }
    if (trace) {
        trace->s = std::move(s);
        trace->e = std::move(e);
        trace->e1 = std::move(e1);
        trace->e2 = std::move(e2);
        trace->r_i = std::move(r_list);
        trace->s_i = std::move(s_list);
        trace->r_bar = std::move(r_bar);
    }
    return ct;
}

PartialCiphertext transform(const SrpePublicParams& pp, const Ciphertext& ct,
                            const TransformKey& tk) {
    if (!(tk.t == ct.t)) throw std::invalid_argument("transform: key/ciphertext epoch mismatch");
    const auto& prm = pp.params;
    ZqVector c1_x = fold_attr(prm, tk.x, ct.c1_i);
    ZqVector c_bar = vec_add(int_transpose_vec(tk.z1, stack(ct.c1, c1_x)),
                             int_transpose_vec(tk.z2, stack(ct.c1, ct.c1_0)));
    return PartialCiphertext{ct.c, ct.c2, ct.c2_i, std::move(c_bar)};
}

DecResult dec_detailed(const SrpePublicParams& pp, const UserSecretKey& sk,
                       const PartialCiphertext& pct) {
    const auto& prm = pp.params;
    ZqVector c2_x = fold_attr(prm, sk.x, pct.c2_i);
    ZqVector d = vec_sub(pct.c, int_transpose_vec(sk.z, stack(pct.c2, c2_x, pct.c_bar)));
    DecResult out;
    out.message = round_decode(d);
    out.d = d;
    if (out.message) {
        const u64 q = prm.mod.q;
        u64 half = q / 2;
        for (std::size_t i = 0; i < d.size(); ++i) {
            u64 expect = (i == 0 && *out.message == 1) ? half : 0;
            i64 dev = center_lift(mod_sub(d[i], expect, q), q);
            out.error_inf = std::max<i64>(out.error_inf, dev < 0 ? -dev : dev);
        }
    }
    return out;
}

std::optional<int> dec(const SrpePublicParams& pp, const UserSecretKey& sk,
                       const PartialCiphertext& pct) {
    return dec_detailed(pp, sk, pct).message;
}

void revoke(const std::string& id, const TimePeriod& t, RevocationList& rl,
            const BinaryTreeState& tree) {
    auto leaf = tree.leaf_of(id);
    if (!leaf) throw std::invalid_argument("revoke: unknown id");
    rl.add(*leaf, t.epoch);
}

}  // namespace srpe
