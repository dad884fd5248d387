#ifndef DFREUD_POLYNOMIALS_HPP
#define DFREUD_POLYNOMIALS_HPP

// Monic orthogonal polynomials in coefficient form, the ladder functions A_n, B_n, their
// compatibility conditions, the second order ODE in z and its biconfluent Heun limit.

#include "dfreud/errors.hpp"
#include "dfreud/hankel.hpp"
#include "dfreud/moments.hpp"
#include "dfreud/numeric_context.hpp"
#include "dfreud/numerics.hpp"
#include "dfreud/real.hpp"
#include "dfreud/recurrence.hpp"

#include <vector>

namespace dfreud {

struct MonicPolynomial {
    int n;
    std::vector<Real> coeffs;  // coeffs[k] multiplies z^k; coeffs[n] = 1
};

/// A residual together with the size of the largest term that entered it.
struct Residual {
    Real value;
    Real scale;
    Real relative() const { return scale.is_zero() ? abs(value) : abs(value) / scale; }
};

/// P_0 = 1, P_1 = z, P_{k+1} = z P_k - beta_k P_{k-1} for k < n_max.
inline std::vector<MonicPolynomial> build_polynomials(const std::vector<Real>& betas, int n_max)
{
    if (n_max < 0 || (n_max >= 2 && static_cast<std::size_t>(n_max) > betas.size()))
        throw std::invalid_argument("build_polynomials: betas must cover 1 .. n_max-1");
    const Precision p = betas.size() > 1 ? betas[1].precision() : Precision{128};
    std::vector<MonicPolynomial> out;
    out.push_back({0, {Real(1L, p)}});
    if (n_max >= 1)
        out.push_back({1, {Real(0L, p), Real(1L, p)}});
    for (int k = 1; k < n_max; ++k) {
        const auto& pk = out[static_cast<std::size_t>(k)].coeffs;
        const auto& pkm = out[static_cast<std::size_t>(k - 1)].coeffs;
        std::vector<Real> c(static_cast<std::size_t>(k) + 2, Real(0L, p));
        for (std::size_t i = 0; i < pk.size(); ++i)
            c[i + 1] = pk[i];
        const Real& b = betas[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < pkm.size(); ++i)
            if (!pkm[i].is_zero())
                c[i] -= b * pkm[i];
        out.push_back({k + 1, std::move(c)});
    }
    return out;
}

inline std::vector<MonicPolynomial> build_polynomials(const BetaSequence& seq, int n_max)
{
    return build_polynomials(seq.betas, n_max);
}

/// P, P' or P'' at z by Horner on the (differentiated) coefficient vector.
inline Real eval_poly(const MonicPolynomial& P, const Real& z, int derivative_order = 0)
{
    if (derivative_order < 0 || derivative_order > 2)
        throw std::invalid_argument("eval_poly: derivative order must be 0, 1 or 2");
    const auto& c = P.coeffs;
    Real acc(0L, z.precision());
    for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(derivative_order);) {
        long factor = 1;
        for (int d = 0; d < derivative_order; ++d)
            factor *= static_cast<long>(k) - d;
        acc = acc * z + c[k] * factor;
    }
    return acc;
}

namespace detail {

inline void pole_guard(const Real& denom, const char* what)
{
    const Real tol = Real::pow10(-(denom.precision().decimal_digits() / 2), denom.precision());
    if (abs(denom) < tol)
        throw PoleError(std::string(what) + ": evaluation point at a pole");
}

inline const Real& beta_at(const std::vector<Real>& b, int k)
{
    if (k < 0 || static_cast<std::size_t>(k) >= b.size())
        throw std::out_of_range("beta index " + std::to_string(k) + " not covered");
    return b[static_cast<std::size_t>(k)];
}

}  // namespace detail

struct LadderPair {
    Real A_n;
    Real B_n;
    Real v0_prime;
};

/// A_n(z) = 4Ns z^2 + 4Ns(beta_{n+1} + beta_n) + 2N(1-s).
inline Real ladder_A(int n, const Real& z, const WeightParams& params, const std::vector<Real>& betas)
{
    const WeightParams w = params.at(z.precision());
    return 4 * w.bigN * w.s * (z * z + detail::beta_at(betas, n + 1) + detail::beta_at(betas, n)) +
           2 * w.bigN * (1 - w.s);
}

/// B_n(z) = 4Ns beta_n z + alpha Delta_n / z.
inline Real ladder_B(int n, const Real& z, const WeightParams& params, const std::vector<Real>& betas)
{
    const WeightParams w = params.at(z.precision());
    Real b = 4 * w.bigN * w.s * detail::beta_at(betas, n) * z;
    if (parity_delta(n) == 1 && !w.alpha.is_zero()) {
        detail::pole_guard(z, "B_n");
        b += w.alpha / z;
    }
    return b;
}

/// v_0'(z) = 4Ns z^3 + 2N(1-s) z.
inline Real v0_prime(const Real& z, const WeightParams& params)
{
    const WeightParams w = params.at(z.precision());
    return 4 * w.bigN * w.s * z * z * z + 2 * w.bigN * (1 - w.s) * z;
}

inline LadderPair ladder_pair(int n, const Real& z, const WeightParams& params, const std::vector<Real>& betas)
{
    return {ladder_A(n, z, params, betas), ladder_B(n, z, params, betas), v0_prime(z, params)};
}

/// A_n - [v0'/z + (B_n + B_{n+1})/z - alpha/z^2].
inline Residual ladder_identity_residual(int n, const Real& z, const WeightParams& params,
                                         const std::vector<Real>& betas)
{
    detail::pole_guard(z, "ladder identity");
    const WeightParams w = params.at(z.precision());
    const Real a = ladder_A(n, z, params, betas);
    const Real t1 = v0_prime(z, params) / z;
    const Real t2 = (ladder_B(n, z, params, betas) + ladder_B(n + 1, z, params, betas)) / z;
    const Real t3 = w.alpha / (z * z);
    return {a - (t1 + t2 - t3), max(max(abs(a), abs(t1)), max(abs(t2), abs(t3)))};
}

/// P_n'(z) - [beta_n A_n(z) P_{n-1}(z) - B_n(z) P_n(z)].
inline Residual lowering_residual(int n, const Real& z, const WeightParams& params, const std::vector<Real>& betas,
                                  const std::vector<MonicPolynomial>& polys)
{
    const Precision p = z.precision();
    if (n == 0)
        return {eval_poly(polys.at(0), z, 1), Real(1L, p)};
    const auto& pn = polys.at(static_cast<std::size_t>(n));
    const auto& pm = polys.at(static_cast<std::size_t>(n - 1));
    const Real lhs = eval_poly(pn, z, 1);
    const Real t1 = detail::beta_at(betas, n) * ladder_A(n, z, params, betas) * eval_poly(pm, z);
    const Real t2 = ladder_B(n, z, params, betas) * eval_poly(pn, z);
    return {lhs - (t1 - t2), max(abs(lhs), max(abs(t1), abs(t2)))};
}

struct CompatibilityResiduals {
    Residual s1;
    Residual s2;
    Residual s2_prime;
};

/// (S1) B_{n+1} + B_n = z A_n - v0' + alpha/z
/// (S2) 1 + z(B_{n+1} - B_n) = beta_{n+1} A_{n+1} - beta_n A_{n-1}
/// (S2') B_n^2 + (v0' - alpha/z) B_n + sum_{j<n} A_j = beta_n A_n A_{n-1}
/// betas must cover 0 .. n+2.
inline CompatibilityResiduals compatibility_residuals(int n, const Real& z, const WeightParams& params,
                                                      const std::vector<Real>& betas)
{
    if (n < 1)
        throw std::invalid_argument("compatibility_residuals: n must be >= 1");
    detail::pole_guard(z, "compatibility");
    const WeightParams w = params.at(z.precision());
    const Real bn = ladder_B(n, z, params, betas);
    const Real bn1 = ladder_B(n + 1, z, params, betas);
    const Real an = ladder_A(n, z, params, betas);
    const Real anm = ladder_A(n - 1, z, params, betas);
    const Real an1 = ladder_A(n + 1, z, params, betas);
    const Real v0p = v0_prime(z, params);
    const Real az = w.alpha / z;

    const Real s1_lhs = bn1 + bn;
    const Real s1_rhs = z * an - v0p + az;
    Residual s1{s1_lhs - s1_rhs, max(max(abs(bn1), abs(bn)), max(abs(z * an), max(abs(v0p), abs(az))))};

    const Real s2_lhs = 1 + z * (bn1 - bn);
    const Real t_up = detail::beta_at(betas, n + 1) * an1;
    const Real t_dn = detail::beta_at(betas, n) * anm;
    Residual s2{s2_lhs - (t_up - t_dn), max(max(abs(z * bn1), abs(z * bn)), max(abs(t_up), abs(t_dn)))};

    Real sum_a(0L, z.precision());
    for (int j = 0; j < n; ++j)
        sum_a += ladder_A(j, z, params, betas);
    const Real q1 = bn * bn;
    const Real q2 = (v0p - az) * bn;
    const Real rhs = detail::beta_at(betas, n) * an * anm;
    Residual s2p{q1 + q2 + sum_a - rhs, max(max(abs(q1), abs(q2)), max(abs(sum_a), abs(rhs)))};
    return {s1, s2, s2p};
}

/// Coefficient identities of (S2'): the z^2 terms give the dP_I and the z^0 terms give
/// sum_{j<n}(beta_{j+1} + beta_j) = 4Ns beta_n (beta_{n+1}+beta_n+k)(beta_n+beta_{n-1}+k)
///                                  + alpha beta_n (1 - 2 Delta_n) - k (n + alpha Delta_n), k = (1-s)/(2s).
struct SumRuleResiduals {
    Residual z2_coefficient;
    Residual z0_coefficient;
};

inline SumRuleResiduals sum_rule_residuals(int n, const WeightParams& params, const std::vector<Real>& betas)
{
    const Precision p = detail::beta_at(betas, n).precision();
    const WeightParams w = params.at(p);
    if (w.s_is_zero())
        throw DomainError("sum_rule_residuals: s = 0");
    const Real k = (1 - w.s) / (2 * w.s);
    const Real& bm = detail::beta_at(betas, n - 1);
    const Real& b = detail::beta_at(betas, n);
    const Real& bp = detail::beta_at(betas, n + 1);
    const int dn = parity_delta(n);
    const Real num = dn ? Real(n, p) + w.alpha : Real(n, p);

    const Real l2 = b * (bp + b + bm + k);
    const Real r2 = num / (4 * w.bigN * w.s);

    Real sum(0L, p);
    for (int j = 0; j < n; ++j)
        sum += detail::beta_at(betas, j + 1) + detail::beta_at(betas, j);
    const Real t1 = 4 * w.bigN * w.s * b * (bp + b + k) * (b + bm + k);
    const Real t2 = w.alpha * b * (1 - 2 * dn);
    const Real t3 = k * num;
    return {{l2 - r2, max(abs(l2), abs(r2))},
            {sum - (t1 + t2 - t3), max(abs(sum), max(abs(t1), max(abs(t2), abs(t3))))}};
}

struct OdeCoefficients {
    Real R_n;
    Real Q_n;
};

/// R_n(z) = -4Ns z^3 - 2N(1-s) z + alpha/z - 2z/(z^2 + k + beta_n + beta_{n+1}),
/// Q_n(z) = 4Ns beta_n [1 + alpha(-1)^n] + 16N^2 s^2 beta_n [k + beta_n + beta_{n-1}][k + beta_n + beta_{n+1}]
///          - alpha[1-(-1)^n][N(1-s) + 1/(2z^2)] - (8Ns beta_n z^2 + alpha[1-(-1)^n])/(z^2 + k + beta_n + beta_{n+1})
///          + 4nNs z^2,   k = (1-s)/(2s).
inline OdeCoefficients ode_coefficients(int n, const Real& z, const WeightParams& params,
                                        const std::vector<Real>& betas)
{
    const Precision p = z.precision();
    const WeightParams w = params.at(p);
    if (w.s_is_zero())
        throw DomainError("ode_coefficients: s = 0");
    const Real k = (1 - w.s) / (2 * w.s);
    const Real& bm = detail::beta_at(betas, n - 1);
    const Real& b = detail::beta_at(betas, n);
    const Real& bp = detail::beta_at(betas, n + 1);
    const Real z2 = z * z;
    const Real denom = z2 + k + b + bp;
    detail::pole_guard(denom, "R_n");
    const bool needs_z = !w.alpha.is_zero();
    if (needs_z)
        detail::pole_guard(z, "R_n");
    const Real ns = w.bigN * w.s;
    const long sign = n % 2 == 0 ? 1 : -1;
    const Real odd_alpha = w.alpha * (1 - sign);  // alpha [1 - (-1)^n]

    Real R = -4 * ns * z2 * z - 2 * w.bigN * (1 - w.s) * z - 2 * z / denom;
    if (needs_z)
        R += w.alpha / z;
    Real Q = 4 * ns * b * (1 + w.alpha * sign) + 16 * ns * ns * b * (k + b + bm) * (k + b + bp) -
             (8 * ns * b * z2 + odd_alpha) / denom + 4 * n * ns * z2;
    if (!odd_alpha.is_zero())
        Q -= odd_alpha * (w.bigN * (1 - w.s) + 1 / (2 * z2));
    return {std::move(R), std::move(Q)};
}

/// |P'' + R P' + Q P| relative to the largest of the three terms.
inline Residual pn_ode_residual(int n, const Real& z, const WeightParams& params, const std::vector<Real>& betas,
                                const std::vector<MonicPolynomial>& polys)
{
    const auto& P = polys.at(static_cast<std::size_t>(n));
    const OdeCoefficients oc = ode_coefficients(n, z, params, betas);
    const Real t0 = eval_poly(P, z, 2);
    const Real t1 = oc.R_n * eval_poly(P, z, 1);
    const Real t2 = oc.Q_n * eval_poly(P, z, 0);
    return {t0 + t1 + t2, max(abs(t0), max(abs(t1), abs(t2)))};
}

/// Parameters of u'' + (gamma/x + delta + x) u' + (eta - rho/x) u = 0 reached from the large-n
/// equation P'' - [4Ns z^3 + 2N(1-s) z - alpha/z] P' + [4 (Ns)^{1/3} n / 3]^{3/2} P = 0 via x = sqrt(2) z^2.
struct HeunParameters {
    Real kappa;    // (Ns)^{1/3} n
    Real gamma_h;  // -(1 + alpha)/2
    Real delta_h;  // sqrt(2) N (1-s)/2
    Real eta_h;    // 0
    Real rho_h;    // -(sqrt(6)/9) kappa^{3/2}
    Real q_tilde;  // [4 kappa / 3]^{3/2}
    Real bigN, s, alpha;

    /// R~(z) = -[4Ns z^3 + 2N(1-s) z - alpha/z].
    Real r_tilde(const Real& z) const
    {
        detail::pole_guard(z, "R~");
        return -(4 * bigN * s * z * z * z + 2 * bigN * (1 - s) * z - alpha / z);
    }
};

inline HeunParameters heun_parameters(const Real& alpha_in, const Real& bigN_in, const Real& s_in, int n,
                                      Precision prec)
{
    const Real alpha = alpha_in.with_precision(prec);
    const Real bigN = bigN_in.with_precision(prec);
    const Real s = s_in.with_precision(prec);
    const Real ns = bigN * s;
    if (!(ns > 0))
        throw DomainError("heun_parameters: N s must be positive");
    const Real kappa = cbrt(ns) * n;
    const Real k32 = kappa * sqrt(kappa);
    const Real two(2L, prec);
    return {kappa,
            -(1 + alpha) / 2,
            sqrt(two) * bigN * (1 - s) / 2,
            Real(0L, prec),
            -sqrt(Real(6L, prec)) / 9 * k32,
            pow(4 * kappa / 3, Real::ratio(3, 2, prec)),
            bigN,
            s,
            alpha};
}

/// Large-n operator P'' + R~ P' + Q~ P at z for given P, P', P''.
inline Real heun_limit_operator(const HeunParameters& hp, const Real& z, const Real& P, const Real& dP,
                                const Real& d2P)
{
    return d2P + hp.r_tilde(z) * dP + hp.q_tilde * P;
}

/// The same operator written in x = sqrt(2) z^2 for P(z) = u(x), divided by 4 sqrt(2) x:
/// u'' + [(1+alpha)/(2x) - N(1-s)/sqrt(2) - N s x] u' + q~/(4 sqrt(2) x) u.
/// In the notation of the Heun form this reads u'' + (-gamma/x - delta - Ns x) u' - (rho/x) u.
inline Real heun_limit_operator_in_x(const HeunParameters& hp, const Real& x, const Real& u, const Real& du,
                                     const Real& d2u)
{
    detail::pole_guard(x, "heun x");
    return d2u + (-hp.gamma_h / x - hp.delta_h - hp.bigN * hp.s * x) * du - hp.rho_h / x * u;
}

/// Normalised Gram matrix G_jk = int P_j P_k w dx / sqrt(h_j h_k), 0 <= j, k <= n_max, by quadrature.
inline std::vector<std::vector<Real>> orthogonality_check(int n_max, const WeightParams& params,
                                                          const NumericContext& ctx)
{
    if (n_max < 0)
        throw std::invalid_argument("orthogonality_check: n_max must be >= 0");
    const BetaSequence seq = beta_from_moments(params, std::max(n_max, 1), ctx);
    const auto polys = build_polynomials(seq.betas, n_max);
    const Precision p = ctx.precision();
    const std::size_t m = static_cast<std::size_t>(n_max) + 1;

    // Pairs with j + k even; the others vanish by parity.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j; k < m; k += 2)
            pairs.emplace_back(j, k);

    const WeightParams w = params.at(Precision::from_digits(ctx.digits() + NumericContext::guard_digits + 10));
    const Real expo = (w.alpha - 1) / 2;
    auto integrand = [&](const Real& y, std::vector<Real>& out) {
        const Real base = exp(expo * log(y) - w.bigN * (y + w.s * (y * y - y)));
        const Real x = sqrt(y);
        std::vector<Real> pv;
        pv.reserve(m);
        for (std::size_t j = 0; j < m; ++j)
            pv.push_back(eval_poly(polys[j], x));
        for (std::size_t i = 0; i < pairs.size(); ++i)
            out[i] = base * pv[pairs[i].first] * pv[pairs[i].second];
    };
    const auto vals = integrate_semi_infinite_many(integrand, pairs.size(), ctx);

    std::vector<Real> h;
    h.reserve(m);
    h.push_back(seq.h.at(0));
    for (std::size_t j = 1; j < m; ++j)
        h.push_back(h.back() * seq.betas[j]);

    std::vector<std::vector<Real>> g(m, std::vector<Real>(m, Real(0L, p)));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [j, k] = pairs[i];
        g[j][k] = vals[i] / sqrt(h[j] * h[k]);
        g[k][j] = g[j][k];
    }
    return g;
}

}  // namespace dfreud

#endif  // DFREUD_POLYNOMIALS_HPP
