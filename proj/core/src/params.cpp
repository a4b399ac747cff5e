#include <srpe/params.hpp>

namespace srpe {

double SysParams::error_budget() const {
    return s * static_cast<double>(ell) * static_cast<double>(m) * static_cast<double>(m) *
           static_cast<double>(noise_bound) * omega_const;
}

namespace {

SysParams assemble(const std::string& name, const CustomProfile& spec) {
    SysParams p;
    p.profile_name = name;
    p.n = spec.n;
    p.max_users = spec.max_users;
    p.ell = spec.ell;
    p.kappa = spec.kappa;
    p.mod = Modulus(spec.q);
    p.m = 2 * spec.n * p.mod.bit_length;
    p.s = spec.s;
    p.noise_bound = spec.noise_bound;
    p.noise_sigma = spec.noise_sigma;
    p.tail_cut = spec.tail_cut;
    p.omega_const = spec.omega_const;
    p.frd = find_irreducible(spec.n, p.mod);
    validate(p);
    return p;
}

}  // namespace

void validate(const SysParams& p) {
    if (p.n < 1 || p.ell < 1 || p.max_users < 1)
        throw std::invalid_argument("SysParams: n, ell, N must all be >= 1");
    if (p.kappa < 8) throw std::invalid_argument("SysParams: kappa must be >= 8");
    if (!is_prime_u64(p.mod.q)) throw std::invalid_argument("SysParams: q must be prime");
    if (p.m != 2 * p.n * p.mod.bit_length)
        throw std::invalid_argument("SysParams: m != 2 n ceil(log2 q)");
    if (p.s <= 0 || p.noise_bound < 1 || p.noise_sigma <= 0 || p.omega_const <= 0)
        throw std::invalid_argument("SysParams: s, B, sigma, omega_const must be positive");
    if (p.tail_cut < 6.0) throw std::invalid_argument("SysParams: tail_cut must be >= 6");
    if (p.frd.degree() != p.n || p.frd.mod.q != p.mod.q)
        throw std::invalid_argument("SysParams: FRD polynomial does not match (n, q)");
    if (!(p.error_budget() < static_cast<double>(p.mod.q) / 5.0))
        throw std::invalid_argument(
            "SysParams: headroom violated, s*ell*m^2*B*omega_const must stay below q/5");
}

SysParams sys(const std::string& profile) {
    // q, s and omega_const come from the error-budget probe
    // (tools/profile_probe); see README for the sizing procedure.
    if (profile == "toy") {
        CustomProfile spec{
            .n = 8,
            .max_users = 8,
            .ell = 4,
            .kappa = 16,
            .q = 1073741827ull,  // next prime above 2^30
            .s = 100.0,
            .noise_bound = 3,
            .noise_sigma = 0.5,
            .omega_const = 0.001,
        };
        return assemble(profile, spec);
    }
    if (profile == "small") {
        CustomProfile spec{
            .n = 16,
            .max_users = 64,
            .ell = 8,
            .kappa = 24,
            .q = 8589934609ull,  // next prime above 2^33
            .s = 160.0,
            .noise_bound = 4,
            .noise_sigma = 0.7,
            .omega_const = 0.001,
        };
        return assemble(profile, spec);
    }
    if (profile == "custom")
        throw std::invalid_argument("sys: the custom profile needs explicit parameters");
    throw std::invalid_argument("sys: unknown profile '" + profile + "'");
}

SysParams sys_custom(const CustomProfile& spec) { return assemble("custom", spec); }

}  // namespace srpe
