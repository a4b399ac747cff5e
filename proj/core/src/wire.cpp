#include <srpe/wire.hpp>

#include <bit>
#include <cstring>
#include <fstream>

namespace srpe::wire {

namespace {

constexpr char kMagic[4] = {'S', 'R', 'P', 'E'};

class Writer {
public:
    Bytes out;

    void u8(std::uint8_t v) { out.push_back(v); }
    void u16(std::uint16_t v) {
        for (int i = 0; i < 2; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void i64v(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        out.insert(out.end(), s.begin(), s.end());
    }
    void header(Tag tag, std::uint64_t q, std::uint32_t rows, std::uint32_t cols) {
        out.insert(out.end(), kMagic, kMagic + 4);
        u16(kVersion);
        u8(static_cast<std::uint8_t>(tag));
        u64(q);
        u32(rows);
        u32(cols);
    }
};

class Reader {
public:
    explicit Reader(const Bytes& b) : data_(b.data()), size_(b.size()) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        const auto* p = take(2);
        return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    }
    std::uint32_t u32() {
        const auto* p = take(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
        return v;
    }
    std::uint64_t u64() {
        const auto* p = take(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
        return v;
    }
    std::int64_t i64v() { return static_cast<std::int64_t>(u64()); }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        std::uint32_t len = u32();
        const auto* p = take(len);
        return std::string(reinterpret_cast<const char*>(p), len);
    }
    const std::uint8_t* take(std::size_t n) {
        if (pos_ + n > size_) throw std::runtime_error("wire: truncated record");
        const std::uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }
    bool done() const { return pos_ == size_; }

    struct Header {
        Tag tag;
        std::uint64_t q;
        std::uint32_t rows, cols;
    };

    Header header(Tag expected) {
        Header h = header_any();
        if (h.tag != expected)
            throw std::runtime_error(std::string("wire: expected ") + tag_name(expected) +
                                     " record, found " + tag_name(h.tag));
        return h;
    }

    Header header_any() {
        const auto* p = take(4);
        if (std::memcmp(p, kMagic, 4) != 0) throw std::runtime_error("wire: bad magic");
        std::uint16_t ver = u16();
        if (ver != kVersion) throw std::runtime_error("wire: unsupported version");
        Header h;
        h.tag = static_cast<Tag>(u8());
        h.q = u64();
        h.rows = u32();
        h.cols = u32();
        return h;
    }

private:
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

std::size_t entry_bytes(const Modulus& mod) { return (mod.bit_length + 7) / 8; }

void put_zq_matrix(Writer& w, const ZqMatrix& m) {
    w.header(Tag::ZqMat, m.q(), static_cast<std::uint32_t>(m.rows()),
             static_cast<std::uint32_t>(m.cols()));
    const std::size_t width = entry_bytes(m.mod());
    for (u64 e : m.data())
        for (std::size_t i = 0; i < width; ++i) w.u8(static_cast<std::uint8_t>(e >> (8 * i)));
}

ZqMatrix get_zq_matrix(Reader& r) {
    auto h = r.header(Tag::ZqMat);
    Modulus mod(h.q);
    ZqMatrix m(h.rows, h.cols, mod);
    const std::size_t width = entry_bytes(mod);
    for (auto& e : m.data()) {
        const std::uint8_t* p = r.take(width);
        u64 v = 0;
        for (std::size_t i = width; i-- > 0;) v = (v << 8) | p[i];
        if (v >= mod.q) throw std::runtime_error("wire: residue out of range");
        e = v;
    }
    return m;
}

void put_zq_vector(Writer& w, const ZqVector& v) { put_zq_matrix(w, v.as_column()); }

ZqVector get_zq_vector(Reader& r) {
    ZqMatrix m = get_zq_matrix(r);
    if (m.cols() != 1) throw std::runtime_error("wire: expected a column vector");
    return m.column(0);
}

void put_int_matrix(Writer& w, const IntMatrix& m, u64 q_context) {
    w.header(Tag::IntMat, q_context, static_cast<std::uint32_t>(m.rows()),
             static_cast<std::uint32_t>(m.cols()));
    for (i64 e : m.data()) w.i64v(e);
}

IntMatrix get_int_matrix(Reader& r) {
    auto h = r.header(Tag::IntMat);
    IntMatrix m(h.rows, h.cols);
    for (auto& e : m.data()) e = r.i64v();
    return m;
}

void put_params(Writer& w, const SysParams& p) {
    w.header(Tag::Params, p.mod.q, 0, 0);
    w.u8(0);  // flags
    w.u64(p.n);
    w.u64(p.max_users);
    w.u64(p.ell);
    w.u64(p.kappa);
    w.u64(p.m);
    w.f64(p.s);
    w.i64v(p.noise_bound);
    w.f64(p.noise_sigma);
    w.f64(p.tail_cut);
    w.f64(p.omega_const);
    w.u32(static_cast<std::uint32_t>(p.frd.coeffs.size()));
    for (u64 c : p.frd.coeffs) w.u64(c);
    w.str(p.profile_name);
}

SysParams get_params(Reader& r) {
    auto h = r.header(Tag::Params);
    r.u8();  // flags
    SysParams p;
    p.mod = Modulus(h.q);
    p.n = r.u64();
    p.max_users = r.u64();
    p.ell = r.u64();
    p.kappa = r.u64();
    p.m = r.u64();
    p.s = r.f64();
    p.noise_bound = r.i64v();
    p.noise_sigma = r.f64();
    p.tail_cut = r.f64();
    p.omega_const = r.f64();
    std::uint32_t deg = r.u32();
    p.frd.mod = p.mod;
    p.frd.coeffs.resize(deg);
    for (auto& c : p.frd.coeffs) c = r.u64();
    p.profile_name = r.str();
    validate(p);
    return p;
}

void put_time(Writer& w, const TimePeriod& t) {
    w.u64(t.epoch);
    w.str(t.label);
}

TimePeriod get_time(Reader& r) {
    TimePeriod t;
    t.epoch = r.u64();
    t.label = r.str();
    return t;
}

void put_trapdoor(Writer& w, const GTrapdoor& trap, u64 q) {
    w.header(Tag::Trapdoor, q, 0, 0);
    w.u8(kFlagSecret);
    put_zq_matrix(w, trap.a());
    put_int_matrix(w, trap.r(), q);
    put_int_matrix(w, trap.basis().basis(), q);
}

GTrapdoor get_trapdoor(Reader& r) {
    r.header(Tag::Trapdoor);
    r.u8();
    ZqMatrix a = get_zq_matrix(r);
    IntMatrix rr = get_int_matrix(r);
    IntMatrix basis = get_int_matrix(r);
    return GTrapdoor(std::move(a), std::move(rr), std::move(basis));
}

}  // namespace

const char* tag_name(Tag tag) {
    switch (tag) {
        case Tag::ZqMat: return "ZQ-MATRIX";
        case Tag::IntMat: return "INT-MATRIX";
        case Tag::Params: return "PARAMS";
        case Tag::Pp: return "PP";
        case Tag::Msk: return "MSK";
        case Tag::Sk: return "SK";
        case Tag::Token: return "TOKEN";
        case Tag::Uk: return "UK";
        case Tag::Tk: return "TK";
        case Tag::Ct: return "CT";
        case Tag::Pct: return "PCT";
        case Tag::PePp: return "PE-PP";
        case Tag::PeMsk: return "PE-MSK";
        case Tag::PeSk: return "PE-SK";
        case Tag::PeCt: return "PE-CT";
        case Tag::Trapdoor: return "TRAPDOOR";
    }
    return "UNKNOWN";
}

bool tag_is_secret(Tag tag) {
    return tag == Tag::Msk || tag == Tag::Sk || tag == Tag::PeMsk || tag == Tag::Trapdoor;
}

RecordInfo inspect(const Bytes& bytes) {
    Reader r(bytes);
    auto h = r.header_any();
    RecordInfo info{h.tag, 0};
    switch (h.tag) {
        case Tag::ZqMat:
        case Tag::IntMat:
            break;
        default:
            info.flags = r.u8();
    }
    return info;
}

RecordInfo inspect_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("wire: cannot open " + path.string());
    Bytes head(22);
    in.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));
    return inspect(head);
}

Bytes serialize(const ZqMatrix& m) {
    Writer w;
    put_zq_matrix(w, m);
    return std::move(w.out);
}

Bytes serialize(const IntMatrix& m, u64 q_context) {
    Writer w;
    put_int_matrix(w, m, q_context);
    return std::move(w.out);
}

Bytes serialize(const SysParams& p) {
    Writer w;
    put_params(w, p);
    return std::move(w.out);
}

Bytes serialize(const SrpePublicParams& pp) {
    Writer w;
    w.header(Tag::Pp, pp.params.mod.q, 0, 0);
    w.u8(0);
    put_params(w, pp.params);
    put_zq_matrix(w, pp.a);
    put_zq_matrix(w, pp.b);
    put_zq_matrix(w, pp.c);
    put_zq_matrix(w, pp.d);
    for (const auto& m : pp.a_i) put_zq_matrix(w, m);
    for (const auto& m : pp.b_i) put_zq_matrix(w, m);
    put_zq_matrix(w, pp.v);
    return std::move(w.out);
}

Bytes serialize(const MasterSecret& msk, const SysParams& p) {
    Writer w;
    w.header(Tag::Msk, p.mod.q, 0, 0);
    w.u8(kFlagSecret);
    put_trapdoor(w, msk.trap_a, p.mod.q);
    put_trapdoor(w, msk.trap_b, p.mod.q);
    return std::move(w.out);
}

Bytes serialize(const UserSecretKey& sk, const SysParams& p) {
    Writer w;
    w.header(Tag::Sk, p.mod.q, 0, 0);
    w.u8(kFlagSecret);
    w.str(sk.id);
    put_zq_vector(w, sk.x);
    put_int_matrix(w, sk.z, p.mod.q);
    return std::move(w.out);
}

Bytes serialize(const TokenSet& tok, const SysParams& p) {
    Writer w;
    w.header(Tag::Token, p.mod.q, 0, 0);
    w.u8(0);
    w.str(tok.id);
    put_zq_vector(w, tok.x);
    w.u32(static_cast<std::uint32_t>(tok.entries.size()));
    for (const auto& e : tok.entries) {
        w.u64(e.node);
        put_int_matrix(w, e.z1, p.mod.q);
    }
    return std::move(w.out);
}

Bytes serialize(const UpdateKey& uk, const SysParams& p) {
    Writer w;
    w.header(Tag::Uk, p.mod.q, 0, 0);
    w.u8(0);
    put_time(w, uk.t);
    w.u32(static_cast<std::uint32_t>(uk.entries.size()));
    for (const auto& e : uk.entries) {
        w.u64(e.node);
        put_int_matrix(w, e.z2, p.mod.q);
    }
    return std::move(w.out);
}

Bytes serialize(const TransformKey& tk, const SysParams& p) {
    Writer w;
    w.header(Tag::Tk, p.mod.q, 0, 0);
    w.u8(0);
    w.str(tk.id);
    put_zq_vector(w, tk.x);
    put_time(w, tk.t);
    put_int_matrix(w, tk.z1, p.mod.q);
    put_int_matrix(w, tk.z2, p.mod.q);
    return std::move(w.out);
}

Bytes serialize(const std::vector<Ciphertext>& cts, const SysParams& p) {
    if (cts.empty()) throw std::invalid_argument("serialize: empty ciphertext bundle");
    Writer w;
    w.header(Tag::Ct, p.mod.q, 0, 0);
    w.u8(0);
    put_time(w, cts.front().t);
    w.u32(static_cast<std::uint32_t>(cts.size()));
    for (const auto& ct : cts) {
        if (!(ct.t == cts.front().t))
            throw std::invalid_argument("serialize: mixed epochs in a ciphertext bundle");
        put_zq_vector(w, ct.c);
        put_zq_vector(w, ct.c1);
        w.u32(static_cast<std::uint32_t>(ct.c1_i.size()));
        for (const auto& v : ct.c1_i) put_zq_vector(w, v);
        put_zq_vector(w, ct.c1_0);
        put_zq_vector(w, ct.c2);
        w.u32(static_cast<std::uint32_t>(ct.c2_i.size()));
        for (const auto& v : ct.c2_i) put_zq_vector(w, v);
    }
    return std::move(w.out);
}

Bytes serialize(const std::vector<PartialCiphertext>& pcts, const SysParams& p) {
    if (pcts.empty()) throw std::invalid_argument("serialize: empty partial-ciphertext bundle");
    Writer w;
    w.header(Tag::Pct, p.mod.q, 0, 0);
    w.u8(0);
    w.u32(static_cast<std::uint32_t>(pcts.size()));
    for (const auto& pct : pcts) {
        put_zq_vector(w, pct.c);
        put_zq_vector(w, pct.c2);
        w.u32(static_cast<std::uint32_t>(pct.c2_i.size()));
        for (const auto& v : pct.c2_i) put_zq_vector(w, v);
        put_zq_vector(w, pct.c_bar);
    }
    return std::move(w.out);
}

Bytes serialize_pe(const PePublicParams& pp) {
    Writer w;
    w.header(Tag::PePp, pp.params.mod.q, 0, 0);
    w.u8(0);
    w.u64(pp.params.n);
    w.u64(pp.params.ell);
    w.u64(pp.params.kappa);
    w.u64(pp.params.m);
    w.f64(pp.params.gauss.s);
    w.f64(pp.params.gauss.tail_cut);
    w.i64v(pp.params.noise.bound);
    w.f64(pp.params.noise.sigma);
    put_zq_matrix(w, pp.a);
    for (const auto& m : pp.a_i) put_zq_matrix(w, m);
    put_zq_matrix(w, pp.v);
    return std::move(w.out);
}

Bytes serialize_pe(const PeSecretKey& sk, const PeParams& p) {
    Writer w;
    w.header(Tag::PeSk, p.mod.q, 0, 0);
    w.u8(kFlagSecret);
    put_zq_vector(w, sk.x);
    w.u8(sk.z ? 1 : 0);
    if (sk.z) put_int_matrix(w, *sk.z, p.mod.q);
    w.u8(sk.basis ? 1 : 0);
    if (sk.basis) put_int_matrix(w, *sk.basis, p.mod.q);
    return std::move(w.out);
}

Bytes serialize_pe(const PeCiphertext& ct, const PeParams& p) {
    Writer w;
    w.header(Tag::PeCt, p.mod.q, 0, 0);
    w.u8(0);
    put_zq_vector(w, ct.c);
    put_zq_vector(w, ct.c0);
    w.u32(static_cast<std::uint32_t>(ct.c_i.size()));
    for (const auto& v : ct.c_i) put_zq_vector(w, v);
    return std::move(w.out);
}

ZqMatrix parse_zq_matrix(const Bytes& b) {
    Reader r(b);
    return get_zq_matrix(r);
}

IntMatrix parse_int_matrix(const Bytes& b) {
    Reader r(b);
    return get_int_matrix(r);
}

SysParams parse_params(const Bytes& b) {
    Reader r(b);
    return get_params(r);
}

SrpePublicParams parse_pp(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Pp);
    r.u8();
    SrpePublicParams pp;
    pp.params = get_params(r);
    pp.a = get_zq_matrix(r);
    pp.b = get_zq_matrix(r);
    pp.c = get_zq_matrix(r);
    pp.d = get_zq_matrix(r);
    for (std::size_t i = 0; i < pp.params.ell; ++i) pp.a_i.push_back(get_zq_matrix(r));
    for (std::size_t i = 0; i < pp.params.ell; ++i) pp.b_i.push_back(get_zq_matrix(r));
    pp.v = get_zq_matrix(r);
    return pp;
}

MasterSecret parse_msk(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Msk);
    r.u8();
    GTrapdoor ta = get_trapdoor(r);
    GTrapdoor tb = get_trapdoor(r);
    return MasterSecret{std::move(ta), std::move(tb)};
}

UserSecretKey parse_sk(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Sk);
    r.u8();
    UserSecretKey sk;
    sk.id = r.str();
    sk.x = get_zq_vector(r);
    sk.z = get_int_matrix(r);
    return sk;
}

TokenSet parse_token(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Token);
    r.u8();
    TokenSet tok;
    tok.id = r.str();
    tok.x = get_zq_vector(r);
    std::uint32_t count = r.u32();
    for (std::uint32_t i = 0; i < count; ++i) {
        TokenEntry e;
        e.node = r.u64();
        e.z1 = get_int_matrix(r);
        tok.entries.push_back(std::move(e));
    }
    return tok;
}

UpdateKey parse_uk(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Uk);
    r.u8();
    UpdateKey uk;
    uk.t = get_time(r);
    std::uint32_t count = r.u32();
    for (std::uint32_t i = 0; i < count; ++i) {
        UpdateKeyEntry e;
        e.node = r.u64();
        e.z2 = get_int_matrix(r);
        uk.entries.push_back(std::move(e));
    }
    return uk;
}

TransformKey parse_tk(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Tk);
    r.u8();
    TransformKey tk;
    tk.id = r.str();
    tk.x = get_zq_vector(r);
    tk.t = get_time(r);
    tk.z1 = get_int_matrix(r);
    tk.z2 = get_int_matrix(r);
    return tk;
}

std::vector<Ciphertext> parse_ct(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Ct);
    r.u8();
    TimePeriod t = get_time(r);
    std::uint32_t count = r.u32();
    std::vector<Ciphertext> cts;
    for (std::uint32_t i = 0; i < count; ++i) {
        Ciphertext ct;
        ct.t = t;
        ct.c = get_zq_vector(r);
        ct.c1 = get_zq_vector(r);
        std::uint32_t ell = r.u32();
        for (std::uint32_t j = 0; j < ell; ++j) ct.c1_i.push_back(get_zq_vector(r));
        ct.c1_0 = get_zq_vector(r);
        ct.c2 = get_zq_vector(r);
        ell = r.u32();
        for (std::uint32_t j = 0; j < ell; ++j) ct.c2_i.push_back(get_zq_vector(r));
        cts.push_back(std::move(ct));
    }
    return cts;
}

std::vector<PartialCiphertext> parse_pct(const Bytes& b) {
    Reader r(b);
    r.header(Tag::Pct);
    r.u8();
    std::uint32_t count = r.u32();
    std::vector<PartialCiphertext> pcts;
    for (std::uint32_t i = 0; i < count; ++i) {
        PartialCiphertext pct;
        pct.c = get_zq_vector(r);
        pct.c2 = get_zq_vector(r);
        std::uint32_t ell = r.u32();
        for (std::uint32_t j = 0; j < ell; ++j) pct.c2_i.push_back(get_zq_vector(r));
        pct.c_bar = get_zq_vector(r);
        pcts.push_back(std::move(pct));
    }
    return pcts;
}

PePublicParams parse_pe_pp(const Bytes& b) {
    Reader r(b);
    auto h = r.header(Tag::PePp);
    r.u8();
    PePublicParams pp;
    pp.params.mod = Modulus(h.q);
    pp.params.n = r.u64();
    pp.params.ell = r.u64();
    pp.params.kappa = r.u64();
    pp.params.m = r.u64();
    double s = r.f64();
    double tail = r.f64();
    pp.params.gauss = GaussParam(s, tail);
    i64 bound = r.i64v();
    double sigma = r.f64();
    pp.params.noise = NoiseParam(bound, sigma);
    pp.a = get_zq_matrix(r);
    for (std::size_t i = 0; i < pp.params.ell; ++i) pp.a_i.push_back(get_zq_matrix(r));
    pp.v = get_zq_matrix(r);
    return pp;
}

PeSecretKey parse_pe_sk(const Bytes& b) {
    Reader r(b);
    r.header(Tag::PeSk);
    r.u8();
    PeSecretKey sk;
    sk.x = get_zq_vector(r);
    if (r.u8()) sk.z = get_int_matrix(r);
    if (r.u8()) sk.basis = get_int_matrix(r);
    return sk;
}

PeCiphertext parse_pe_ct(const Bytes& b, const PeParams&) {
    Reader r(b);
    r.header(Tag::PeCt);
    r.u8();
    PeCiphertext ct;
    ct.c = get_zq_vector(r);
    ct.c0 = get_zq_vector(r);
    std::uint32_t ell = r.u32();
    for (std::uint32_t j = 0; j < ell; ++j) ct.c_i.push_back(get_zq_vector(r));
    return ct;
}

void write_file(const std::filesystem::path& path, const Bytes& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("wire: cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("wire: short write to " + path.string());
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("wire: cannot open " + path.string());
    in.seekg(0, std::ios::end);
    std::streamsize size = in.tellg();
    in.seekg(0, std::ios::beg);
    Bytes bytes(static_cast<std::size_t>(size));
    in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (in.gcount() != size) throw std::runtime_error("wire: short read from " + path.string());
    return bytes;
}

}  // namespace srpe::wire
