#ifndef DFREUD_DETASYMPT_HPP
#define DFREUD_DETASYMPT_HPP

// log D_n(s): the exact s-derivative in terms of beta_n, beta_n', the coefficients of its
// large-N expansion A(s) N^2 + B(s) N + C(s) + D(s)/N (as printed and as re-derived), their
// integrals over s in [0, 1], and the large-n expansions of log D_n(1)/D_n(0), log D_n(0), log D_n(1).

#include "dfreud/errors.hpp"
#include "dfreud/hankel.hpp"
#include "dfreud/moments.hpp"
#include "dfreud/numeric_context.hpp"
#include "dfreud/numerics.hpp"
#include "dfreud/real.hpp"
#include "dfreud/recurrence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace dfreud {

// ---------------------------------------------------------------------------
// Exact derivative of log D_n in s

/// d/ds log D_n from beta_{n-1}, beta_n, beta_{n+1}:
///   [N(s^2-1)(n+a D) - 2sn(n+a)]/(8s^2) + (1+s)(n+a D)^2/(32 s^2 beta)
///   + [N^2(1-s^2)^2 + 2Ns(1+s)^2(n+2a-3a D) - 4s^2]/(8s^2(1+s)) beta
///   + N^2(1-s^2)/(2s) beta^2 + N^2(1+s) beta^3/2 - 2s/(1+s) (s beta'^2/beta + beta'),
/// with D = Delta_n, a = alpha and beta' from the differential-difference relation.
inline Real logdet_derivative_exact_from(int n, const std::vector<Real>& betas, const WeightParams& params)
{
    if (n < 1 || static_cast<std::size_t>(n) + 1 >= betas.size())
        throw std::invalid_argument("logdet_derivative_exact: need beta_{n-1} .. beta_{n+1}");
    const auto un = static_cast<std::size_t>(n);
    const Real& b = betas[un];
    const Precision p = b.precision();
    const WeightParams w = params.at(p);
    if (w.s_is_zero())
        throw DomainError("logdet_derivative_exact: s = 0");
    const Real& s = w.s;
    const Real& a = w.alpha;
    const Real& nn = w.bigN;
    const int dn = parity_delta(n);
    const Real num = dn ? Real(n, p) + a : Real(n, p);
    const Real bp = beta_prime(n, {betas[un - 1], b, betas[un + 1]}, params);
    const Real s2 = s * s;
    const Real sp1 = 1 + s;
    const Real oms2 = 1 - s2;

    const Real t1 = (nn * (s2 - 1) * num - 2 * s * n * (a + n)) / (8 * s2);
    const Real t2 = sp1 * num * num / (32 * s2 * b);
    const Real t3 = (nn * nn * oms2 * oms2 + 2 * nn * s * sp1 * sp1 * (n + 2 * a - 3 * a * dn) - 4 * s2) /
                    (8 * s2 * sp1) * b;
    const Real t4 = nn * nn * oms2 / (2 * s) * b * b;
    const Real t5 = nn * nn * sp1 * b * b * b / 2;
    const Real t6 = 2 * s / sp1 * (s * bp * bp / b + bp);
    return t1 + t2 + t3 + t4 + t5 - t6;
}

inline Real logdet_derivative_exact(int n, const WeightParams& params, const NumericContext& ctx)
{
    if (params.s_is_zero())
        throw DomainError("logdet_derivative_exact: s = 0");
    const BetaSequence seq = beta_from_moments(params, n + 1, ctx);
    return logdet_derivative_exact_from(n, seq.betas, params);
}

/// N(1+s)/(2s) sum_{j<n}(beta_{j+1} + beta_j) - n^2/(4s) - n alpha/(4s).
inline Real logdet_derivative_sum(int n, const std::vector<Real>& betas, const WeightParams& params)
{
    if (n < 1 || static_cast<std::size_t>(n) >= betas.size())
        throw std::invalid_argument("logdet_derivative_sum: need beta_0 .. beta_n");
    const Precision p = betas[static_cast<std::size_t>(n)].precision();
    const WeightParams w = params.at(p);
    if (w.s_is_zero())
        throw DomainError("logdet_derivative_sum: s = 0");
    Real sum(0L, p);
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
        sum += betas[j + 1] + betas[j];
    return w.bigN * (1 + w.s) / (2 * w.s) * sum - Real(n, p) * (n + w.alpha) / (4 * w.s);
}

/// log D_n(s) from the Hankel route.
inline Real logdet_hankel(int n, const WeightParams& params, const NumericContext& ctx)
{
    return h_sequence(params, n, ctx).logdet;
}

/// Central difference of s -> log D_n(s); s must stay inside (0, 1] over the stencil.
inline Real logdet_derivative_fd(int n, const WeightParams& params, const NumericContext& ctx)
{
    auto f = [&](const Real& s) {
        const WeightParams w(s.with_precision(Precision{WeightParams::storage_bits}), params.alpha, params.bigN);
        return logdet_hankel(n, w, ctx);
    };
    return central_difference(f, params.s.with_precision(ctx.precision()), 1, ctx);
}

// ---------------------------------------------------------------------------
// Coefficients of the large-N expansion at n = rN

struct ExpansionCoefficients {
    Real A_s;
    Real B_s;
    Real C_s;
    Real D_s;
};

/// Coefficient functions in their transcribed closed form, with g read as g(s).
struct AppendixBCoefficients {
    Real A_s, B_s, C_s, D_s;
    Real g, g_tilde, f;
    std::array<Real, 5> c;  // c_0 .. c_4
    std::array<Real, 3> d;  // d_0 .. d_2 (even n) or the hatted d_0 .. d_2 (odd n)
    bool odd;

    ExpansionCoefficients coefficients() const { return {A_s, B_s, C_s, D_s}; }
};

namespace detail {

/// One monomial coef * s^i r^j alpha^k of a transcribed polynomial.
struct Monomial {
    long coef;
    int i, j, k;
};

inline Real eval_monomials(std::initializer_list<Monomial> terms, const Real& s, const Real& r, const Real& alpha)
{
    Real acc(0L, s.precision());
    for (const auto& m : terms)
        acc += pow(s, static_cast<long>(m.i)) * pow(r, static_cast<long>(m.j)) * pow(alpha, static_cast<long>(m.k)) *
               m.coef;
    return acc;
}

inline void singular_guard(const Real& v, const char* what)
{
    if (abs(v) < Real::pow10(-(v.precision().decimal_digits() / 2), v.precision()))
        throw SingularCoefficient(std::string("appendix coefficients: vanishing ") + what);
}

}  // namespace detail

inline AppendixBCoefficients appendix_b_coefficients(const Real& s_in, const Real& r_in, const Real& alpha_in,
                                                     bool odd, Precision prec)
{
    const Real s = s_in.with_precision(prec);
    const Real r = r_in.with_precision(prec);
    const Real alpha = alpha_in.with_precision(prec);
    if (!(s > 0) || s > 1)
        throw DomainError("appendix_b_coefficients: s must lie in (0, 1]");
    const Real g2 = 1 - 2 * s + 12 * r * s + s * s;
    if (!(g2 > 0))
        throw DomainError("appendix_b_coefficients: g(s)^2 <= 0");
    const Real g = sqrt(g2);
    const Real gt = s - 1 + g;
    const Real f = 1 - 2 * s - 4 * r * s + s * s;
    const Real bracket = 1 + 2 * g - 2 * s * (1 - 6 * r + g) + s * s;
    detail::singular_guard(gt, "g~(s)");
    detail::singular_guard(bracket, "1+2g-2s(1-6r+g)+s^2");
    if (odd)
        detail::singular_guard(f, "f(s)");

    const Real s2 = s * s;
    const Real s3 = s2 * s;
    const Real gt2 = gt * gt;
    const Real gt3 = gt2 * gt;

    const Real A = 3 * r * r * (1 + s) / (8 * s * gt) - r * (1 + 2 * r * s - s2) / (8 * s2) +
                   (1 + s) * (1 - 2 * s + 2 * r * s + s2) * gt / (96 * s3) + (1 - s2) * gt2 / (288 * s3) +
                   (1 + s) * gt3 / (3456 * s3);

    const Real b0 = alpha / (6 * s2 * g * gt2) *
                    (1 - g + s * (6 * r - 1) * (2 * g - 3) + s2 * (2 + (6 * r - 18 * r * r) * (g - 4)) +
                     s3 * (6 * r - 2) * (g - 1) + s3 * s * (g + 12 * r - 3) + s3 * s2);
    const Real B = odd ? b0 : -b0;

    using detail::eval_monomials;
    std::array<Real, 5> c{
        (1 + s) / (6 * s * g * gt2 * bracket),
        eval_monomials({{-1, 0, 0, 0}, {6, 1, 0, 0}, {-3, 1, 1, 0}, {-15, 2, 0, 0}, {12, 2, 1, 0},
                        {72, 2, 2, 0}, {20, 3, 0, 0}, {-18, 3, 1, 0}, {-144, 3, 2, 0}, {-432, 3, 3, 0},
                        {-15, 4, 0, 0}, {12, 4, 1, 0}, {72, 4, 2, 0}, {6, 5, 0, 0}, {-3, 5, 1, 0}, {-1, 6, 0, 0}},
                       s, r, alpha),
        g * eval_monomials({{1, 0, 0, 0}, {-5, 1, 0, 0}, {-3, 1, 1, 0}, {10, 2, 0, 0}, {9, 2, 1, 0},
                            {-36, 2, 2, 0}, {-10, 3, 0, 0}, {-9, 3, 1, 0}, {36, 3, 2, 0}, {5, 4, 0, 0},
                            {3, 4, 1, 0}, {-1, 5, 0, 0}},
                           s, r, alpha),
        g * eval_monomials({{-3, 0, 0, 2}, {15, 1, 0, 2}, {-27, 1, 1, 2}, {-30, 2, 0, 2}, {81, 2, 1, 2},
                            {108, 2, 2, 2}, {30, 3, 0, 2}, {-81, 3, 1, 2}, {-108, 3, 2, 2}, {-15, 4, 0, 2},
                            {27, 4, 1, 2}, {3, 5, 0, 2}},
                           s, r, alpha),
        eval_monomials({{3, 0, 0, 2}, {-18, 1, 0, 2}, {45, 1, 1, 2}, {45, 2, 0, 2}, {-180, 2, 1, 2},
                        {-60, 3, 0, 2}, {270, 3, 1, 2}, {-1296, 3, 3, 2}, {45, 4, 0, 2}, {-180, 4, 1, 2},
                        {-18, 5, 0, 2}, {45, 5, 1, 2}, {3, 6, 0, 2}},
                       s, r, alpha)};
    const Real C = c[0] * (c[1] + c[2] + c[3] + c[4]);

    std::array<Real, 3> d;
    if (!odd) {
        d = {-(1 + s) * alpha / (g * gt2 * bracket * bracket * bracket),
             g * eval_monomials({{-3, 0, 0, 0}, {15, 1, 0, 0}, {-15, 1, 1, 0}, {-30, 2, 0, 0}, {45, 2, 1, 0},
                                 {-36, 2, 2, 0}, {30, 3, 0, 0}, {-45, 3, 1, 0}, {36, 3, 2, 0}, {-15, 4, 0, 0},
                                 {15, 4, 1, 0}, {3, 5, 0, 0}, {-1, 0, 0, 2}, {5, 1, 0, 2}, {-15, 1, 1, 2},
                                 {-10, 2, 0, 2}, {45, 2, 1, 2}, {36, 2, 2, 2}, {10, 3, 0, 2}, {-45, 3, 1, 2},
                                 {-36, 3, 2, 2}, {-5, 4, 0, 2}, {15, 4, 1, 2}, {1, 5, 0, 2}},
                                s, r, alpha),
             eval_monomials({{3, 0, 0, 0},    {-18, 1, 0, 0},  {33, 1, 1, 0},   {45, 2, 0, 0},   {-132, 2, 1, 0},
                             {72, 2, 2, 0},   {-60, 3, 0, 0},  {198, 3, 1, 0},  {-144, 3, 2, 0}, {-2160, 3, 3, 0},
                             {45, 4, 0, 0},   {-132, 4, 1, 0}, {72, 4, 2, 0},   {-18, 5, 0, 0},  {33, 5, 1, 0},
                             {3, 6, 0, 0},    {1, 0, 0, 2},    {-6, 1, 0, 2},   {21, 1, 1, 2},   {15, 2, 0, 2},
                             {-84, 2, 1, 2},  {36, 2, 2, 2},   {-20, 3, 0, 2},  {126, 3, 1, 2},  {-72, 3, 2, 2},
                             {-864, 3, 3, 2}, {15, 4, 0, 2},   {-84, 4, 1, 2},  {36, 4, 2, 2},   {-6, 5, 0, 2},
                             {21, 5, 1, 2},   {1, 6, 0, 2}},
                            s, r, alpha)};
    } else {
        const Real g5 = g2 * g2 * g;
        d = {alpha / (4 * f * f * g5),
             g * eval_monomials({{1, 0, 0, 0},   {-4, 1, 0, 0},  {56, 1, 1, 0},   {5, 2, 0, 0},    {-112, 2, 1, 0},
                                 {272, 2, 2, 0}, {-5, 4, 0, 0},  {112, 4, 1, 0},  {-272, 4, 2, 0}, {4, 5, 0, 0},
                                 {-56, 5, 1, 0}, {-1, 6, 0, 0},  {-1, 0, 0, 2},   {4, 1, 0, 2},    {-24, 1, 1, 2},
                                 {-5, 2, 0, 2},  {48, 2, 1, 2},  {-144, 2, 2, 2}, {5, 4, 0, 2},    {-48, 4, 1, 2},
                                 {144, 4, 2, 2}, {-4, 5, 0, 2},  {24, 5, 1, 2},   {1, 6, 0, 2}},
                                s, r, alpha),
             eval_monomials({{-2, 0, 0, 0},   {10, 1, 0, 0},   {-64, 1, 1, 0},  {-18, 2, 0, 0},  {192, 2, 1, 0},
                             {-544, 2, 2, 0}, {10, 3, 0, 0},   {-128, 3, 1, 0}, {544, 3, 2, 0},  {-768, 3, 3, 0},
                             {10, 4, 0, 0},   {-128, 4, 1, 0}, {544, 4, 2, 0},  {-768, 4, 3, 0}, {-18, 5, 0, 0},
                             {192, 5, 1, 0},  {-544, 5, 2, 0}, {10, 6, 0, 0},   {-64, 6, 1, 0},  {-2, 7, 0, 0},
                             {1, 0, 0, 2},    {-5, 1, 0, 2},   {32, 1, 1, 2},   {9, 2, 0, 2},    {-96, 2, 1, 2},
                             {272, 2, 2, 2},  {-5, 3, 0, 2},   {64, 3, 1, 2},   {-272, 3, 2, 2}, {384, 3, 3, 2},
                             {-5, 4, 0, 2},   {64, 4, 1, 2},   {-272, 4, 2, 2}, {384, 4, 3, 2},  {9, 5, 0, 2},
                             {-96, 5, 1, 2},  {272, 5, 2, 2},  {-5, 6, 0, 2},   {32, 6, 1, 2},   {1, 7, 0, 2}},
                            s, r, alpha)};
    }
    const Real D = d[0] * (d[1] + d[2]);
    return {A, B, C, D, g, gt, f, std::move(c), std::move(d), odd};
}

namespace detail {

/// Truncated series in h = 1/N and t = n/N - r, stored for k + j <= order (k: power of h, j: power of t).
class HtSeries {
public:
    HtSeries(int order, Precision p) : order_(order), c_(static_cast<std::size_t>((order + 1) * (order + 1)), Real(0L, p)) {}

    int order() const { return order_; }
    Real& at(int k, int j) { return c_[static_cast<std::size_t>(k * (order_ + 1) + j)]; }
    const Real& at(int k, int j) const { return c_[static_cast<std::size_t>(k * (order_ + 1) + j)]; }

    HtSeries& operator+=(const HtSeries& o)
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] += o.c_[i];
        return *this;
    }

    friend HtSeries operator*(const HtSeries& a, const HtSeries& b)
    {
        HtSeries r(a.order_, a.c_[0].precision());
        const int m = a.order_;
        for (int k1 = 0; k1 <= m; ++k1)
            for (int j1 = 0; k1 + j1 <= m; ++j1) {
                const Real& x = a.at(k1, j1);
                if (x.is_zero())
                    continue;
                for (int k2 = 0; k1 + j1 + k2 <= m; ++k2)
                    for (int j2 = 0; k1 + j1 + k2 + j2 <= m; ++j2)
                        if (!b.at(k2, j2).is_zero())
                            r.at(k1 + k2, j1 + j2) += x * b.at(k2, j2);
            }
        return r;
    }

    /// t -> t + sign * h.
    HtSeries shifted(int sign) const
    {
        HtSeries r(order_, c_[0].precision());
        for (int k = 0; k <= order_; ++k)
            for (int j = 0; k + j <= order_; ++j) {
                const Real& x = at(k, j);
                if (x.is_zero())
                    continue;
                long binom = 1;
                for (int i = j; i >= 0; --i) {
                    // term t^i h^{j-i} with coefficient C(j, i) sign^{j-i}
                    const long sg = ((j - i) % 2 != 0 && sign < 0) ? -1 : 1;
                    r.at(k + j - i, i) += x * (binom * sg);
                    binom = binom * i / (j - i + 1);
                }
            }
        return r;
    }

private:
    int order_;
    std::vector<Real> c_;
};

using Jet = std::vector<Real>;  // Taylor coefficients in t

inline Jet jet_mul(const Jet& a, const Jet& b)
{
    Jet r(a.size(), Real(0L, a[0].precision()));
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t i = 0; i <= j; ++i)
            r[j] += a[i] * b[j - i];
    return r;
}

inline Jet jet_inv(const Jet& a)
{
    Jet r(a.size(), Real(0L, a[0].precision()));
    r[0] = 1 / a[0];
    for (std::size_t j = 1; j < a.size(); ++j) {
        Real acc(0L, a[0].precision());
        for (std::size_t i = 1; i <= j; ++i)
            acc += a[i] * r[j - i];
        r[j] = -acc / a[0];
    }
    return r;
}

inline Jet jet_sqrt(const Jet& a)
{
    Jet r(a.size(), Real(0L, a[0].precision()));
    r[0] = sqrt(a[0]);
    for (std::size_t j = 1; j < a.size(); ++j) {
        Real acc = a[j];
        for (std::size_t i = 1; i < j; ++i)
            acc -= r[i] * r[j - i];
        r[j] = acc / (2 * r[0]);
    }
    return r;
}

struct ParitySplit {
    HtSeries even;  // beta_n for even n as a series in h and t
    HtSeries odd;
    Real kappa;
};

/// Solves, order by order in h, the pair of recursions for the even- and odd-index branches
///   E [O(t+h) + E + O(t-h) + k] = (r + t)/(4s),   O [E(t+h) + O + E(t-h) + k] = (r + t + alpha h)/(4s),
/// k = (1-s)/(2s), starting from the common root a0 = (s - 1 + g)/(12 s), g^2 = 1 - 2s + 12(r+t)s + s^2.
inline ParitySplit solve_parity_split(const Real& s, const Real& r, const Real& alpha, int order)
{
    const Precision p = s.precision();
    const std::size_t m = static_cast<std::size_t>(order) + 1;
    const Real kappa = (1 - s) / (2 * s);

    Jet g2(m, Real(0L, p));
    g2[0] = 1 - 2 * s + 12 * r * s + s * s;
    if (m > 1)
        g2[1] = 12 * s;
    const Jet g = jet_sqrt(g2);
    Jet a0(m, Real(0L, p));
    for (std::size_t j = 0; j < m; ++j)
        a0[j] = g[j] / (12 * s);
    a0[0] += (s - 1) / (12 * s);

    HtSeries e(order, p);
    HtSeries o(order, p);
    for (int j = 0; j <= order; ++j) {
        e.at(0, j) = a0[static_cast<std::size_t>(j)];
        o.at(0, j) = a0[static_cast<std::size_t>(j)];
    }
    HtSeries x(order, p);  // r + t
    x.at(0, 0) = r;
    if (order >= 1)
        x.at(0, 1) = Real(1L, p);
    HtSeries kap(order, p);
    kap.at(0, 0) = kappa;

    auto residual = [&](const HtSeries& self, const HtSeries& other, bool with_alpha) {
        HtSeries inner = other.shifted(1);
        inner += self;
        inner += other.shifted(-1);
        inner += kap;
        HtSeries res = self * inner;
        for (int j = 0; j <= order; ++j)
            res.at(0, j) -= x.at(0, j) / (4 * s);
        if (with_alpha && order >= 1)
            res.at(1, 0) -= alpha / (4 * s);
        return res;
    };

    // Linear system at each order: [[4a0+k, 2a0], [2a0, 4a0+k]] (e_k, o_k) = -(res_E, res_O).
    Jet diag(m, Real(0L, p));
    Jet off(m, Real(0L, p));
    for (std::size_t j = 0; j < m; ++j) {
        diag[j] = 4 * a0[j];
        off[j] = 2 * a0[j];
    }
    diag[0] += kappa;
    Jet det = jet_mul(diag, diag);
    const Jet off2 = jet_mul(off, off);
    for (std::size_t j = 0; j < m; ++j)
        det[j] -= off2[j];
    const Jet det_inv = jet_inv(det);

    for (int k = 1; k <= order; ++k) {
        const HtSeries re = residual(e, o, false);
        const HtSeries ro = residual(o, e, true);
        Jet rhs_e(m, Real(0L, p));
        Jet rhs_o(m, Real(0L, p));
        for (int j = 0; k + j <= order; ++j) {
            rhs_e[static_cast<std::size_t>(j)] = -re.at(k, j);
            rhs_o[static_cast<std::size_t>(j)] = -ro.at(k, j);
        }
        Jet ue = jet_mul(diag, rhs_e);
        Jet uo = jet_mul(diag, rhs_o);
        const Jet ve = jet_mul(off, rhs_o);
        const Jet vo = jet_mul(off, rhs_e);
        for (std::size_t j = 0; j < m; ++j) {
            ue[j] -= ve[j];
            uo[j] -= vo[j];
        }
        const Jet ek = jet_mul(det_inv, ue);
        const Jet ok = jet_mul(det_inv, uo);
        for (int j = 0; k + j <= order; ++j) {
            e.at(k, j) = ek[static_cast<std::size_t>(j)];
            o.at(k, j) = ok[static_cast<std::size_t>(j)];
        }
    }
    return {std::move(e), std::move(o), kappa};
}

}  // namespace detail

/// A(s) .. D(s) obtained by inserting the parity-split large-N solution of the recursion into the
/// product form of d/ds log D_n:
///   2N^2(1+s) b (b_{n+1} + b + k)(b + b_{n-1} + k) + N(1+s)/(2s) alpha b (1 - 2 Delta_n)
///   - N(1-s^2)/(4s^2) (n + alpha Delta_n) - n(n + alpha)/(4s),   n = rN.
inline ExpansionCoefficients derived_expansion_coefficients(const Real& s_in, const Real& r_in,
                                                            const Real& alpha_in, bool odd, Precision prec)
{
    const Real s = s_in.with_precision(prec);
    const Real r = r_in.with_precision(prec);
    const Real alpha = alpha_in.with_precision(prec);
    if (!(s > 0) || s > 1)
        throw DomainError("derived_expansion_coefficients: s must lie in (0, 1]");
    if (!(1 - 2 * s + 12 * r * s + s * s > 0))
        throw DomainError("derived_expansion_coefficients: g(s)^2 <= 0");
    constexpr int order = 3;
    const detail::ParitySplit ps = detail::solve_parity_split(s, r, alpha, order);
    const detail::HtSeries& b = odd ? ps.odd : ps.even;
    const detail::HtSeries& other = odd ? ps.even : ps.odd;
    detail::HtSeries kap(order, prec);
    kap.at(0, 0) = ps.kappa;

    detail::HtSeries up = other.shifted(1);
    up += b;
    up += kap;
    detail::HtSeries dn = other.shifted(-1);
    dn += b;
    dn += kap;
    const detail::HtSeries prod = b * up * dn;
    const Real lead = 2 * (1 + s);
    const Real sp = (1 + s) / (2 * s) * alpha * (odd ? -1 : 1);
    const int delta = odd ? 1 : 0;

    return {lead * prod.at(0, 0) - (1 - s * s) * r / (4 * s * s) - r * r / (4 * s),
            lead * prod.at(1, 0) + sp * b.at(0, 0) - (1 - s * s) * alpha * delta / (4 * s * s) - r * alpha / (4 * s),
            lead * prod.at(2, 0) + sp * b.at(1, 0), lead * prod.at(3, 0) + sp * b.at(2, 0)};
}

enum class CoefficientSource { appendix, derived };

inline const char* to_string(CoefficientSource c) { return c == CoefficientSource::appendix ? "appendix" : "derived"; }

inline ExpansionCoefficients expansion_coefficients(CoefficientSource src, const Real& s, const Real& r,
                                                    const Real& alpha, bool odd, Precision prec)
{
    if (src == CoefficientSource::appendix)
        return appendix_b_coefficients(s, r, alpha, odd, prec).coefficients();
    return derived_expansion_coefficients(s, r, alpha, odd, prec);
}

/// int_0^1 of A, B, C, D (components with include[i] false are skipped and left empty).
/// Both sources cancel like s^-3 near s = 0, so each node is evaluated with extra precision
/// proportional to -log10 s. The printed B(s) is not integrable at s = 0.
inline std::array<std::optional<Real>, 4> coefficient_integrals(CoefficientSource src, const Real& r,
                                                                const Real& alpha, bool odd,
                                                                const NumericContext& ctx,
                                                                std::array<bool, 4> include = {true, true, true,
                                                                                               true})
{
    const int base_digits = ctx.digits() + NumericContext::guard_digits + 10;
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < 4; ++i)
        if (include[i])
            slots.push_back(i);
    auto f = [&](const Real& s, std::vector<Real>& out) {
        const long lost = std::max(0L, -s.log10_floor());
        const Precision wp = Precision::from_digits(base_digits + 3 * static_cast<int>(lost) + 10);
        const ExpansionCoefficients ec = expansion_coefficients(src, s, r, alpha, odd, wp);
        const std::array<const Real*, 4> all{&ec.A_s, &ec.B_s, &ec.C_s, &ec.D_s};
        const Precision back = Precision::from_digits(base_digits);
        for (std::size_t k = 0; k < slots.size(); ++k)
            out[k] = all[slots[k]]->with_precision(back);
    };
    std::array<std::optional<Real>, 4> result;
    if (slots.empty())
        return result;
    auto v = integrate_unit_interval_many(f, slots.size(), ctx);
    for (std::size_t k = 0; k < slots.size(); ++k)
        result[slots[k]] = std::move(v[k]);
    return result;
}

/// Closed forms of the integrals:
///   r^2(3 - 2 log 3 - 2 log r)/8,  -r alpha(-1 + log 3 + log r)/4,
///   (3 alpha^2 - 1) log 2/12 - alpha^2 log 3/4,  alpha(alpha^2 +- 3)/(48 r) (+ for even n).
/// `as_printed` flips the sign of the second for even n, as transcribed; the exact Hankel data
/// and the integral of the re-derived B(s) both give the same sign for the two parities.
inline std::array<Real, 4> coefficient_integrals_closed_form(const Real& r_in, const Real& alpha_in, bool odd,
                                                             Precision p, bool as_printed = false)
{
    const Real r = r_in.with_precision(p);
    const Real a = alpha_in.with_precision(p);
    const Real l2 = Real::log2(p);
    const Real l3 = log(Real(3L, p));
    const Real lr = log(r);
    const int sg = odd ? -1 : 1;
    const int b_sign = (as_printed && !odd) ? 1 : -1;
    return {r * r * (3 - 2 * l3 - 2 * lr) / 8, r * a * (-1 + l3 + lr) / 4 * b_sign,
            (3 * a * a - 1) * l2 / 12 - a * a * l3 / 4, a * (a * a + 3 * sg) / (48 * r)};
}

// ---------------------------------------------------------------------------
// Large-n expansions

enum class LogDetQuantity { ratio_10, D0, D1 };

inline const char* to_string(LogDetQuantity q)
{
    switch (q) {
    case LogDetQuantity::ratio_10: return "ratio_10";
    case LogDetQuantity::D0: return "D0";
    case LogDetQuantity::D1: return "D1";
    }
    return "unknown";
}

struct LogDetExpansion {
    LogDetQuantity quantity;
    int n;
    Real r;
    Real alpha;
    bool odd;
    // value = n2 n^2 + n1 n + log_n log n + constant + inv_n / n
    Real n2, n1, log_n, constant, inv_n;
    Real value;
};

/// log G(3/2) + log G(1/2) - log G((alpha+3)/2) - log G((alpha+1)/2).
inline Real barnes_block(const Real& alpha, const NumericContext& ctx)
{
    const Precision p = ctx.precision();
    const Real a = alpha.with_precision(p);
    return barnes_g_log(Real::ratio(3, 2, p), ctx) + barnes_g_log(Real::ratio(1, 2, p), ctx) -
           barnes_g_log((a + 3) / 2, ctx) - barnes_g_log((a + 1) / 2, ctx);
}

/// ratio_10: log D_n(1)/D_n(0); D0: log D_n(0) with N = n/r; D1: log D_n(1), the sum of the two.
/// Each is carried through its 1/n term. For even n the linear coefficient of ratio_10 (and so of D1)
/// is taken equal to the odd one; `as_printed` restores the printed even-n sign instead.
inline LogDetExpansion logdet_expansion(LogDetQuantity q, int n, const Real& r_in, const Real& alpha_in,
                                        const NumericContext& ctx, bool as_printed = false)
{
    if (n < 1)
        throw std::invalid_argument("logdet_expansion: n must be >= 1");
    const Precision p = ctx.precision();
    const Real r = r_in.with_precision(p);
    const Real a = alpha_in.with_precision(p);
    if (!(r > 0) || r > 1)
        throw DomainError("logdet_expansion: r must lie in (0, 1]");
    const bool odd = parity_delta(n) == 1;
    const int sg = odd ? -1 : 1;
    const Real l2 = Real::log2(p);
    const Real l3 = log(Real(3L, p));
    const Real lr = log(r);
    const Real l2pi = log(2 * Real::pi(p));
    const Real zero(0L, p);

    Real n2 = zero, n1 = zero, logn = zero, cst = zero, inv = zero;
    switch (q) {
    case LogDetQuantity::ratio_10:
        n2 = (3 - 2 * l3 - 2 * lr) / 8;
        n1 = a * (-1 + l3 + lr) / 4 * ((as_printed && !odd) ? 1 : -1);
        cst = (3 * a * a - 1) * l2 / 12 - a * a * l3 / 4;
        inv = a * (a * a + 3 * sg) / 48;
        break;
    case LogDetQuantity::D0:
        n2 = (2 * lr - 2 * l2 - 3) / 4;
        n1 = l2pi - a * (1 + l2 - lr) / 2;
        logn = (3 * a * a - 1) / 12;
        cst = -log(Constants::glaisher_A(p)) + (1 + 6 * a * l2pi - 3 * a * a * l2) / 12 + barnes_block(a, ctx);
        inv = odd ? (a * a * a - 2 * a) / 12 : (a * a * a + a) / 12;
        break;
    case LogDetQuantity::D1:
        n2 = (2 * lr - log(Real(144L, p)) - 3) / 8;
        n1 = (odd || !as_printed) ? (a * lr + 4 * l2pi - a - a * log(Real(12L, p))) / 4
                                  : (3 * a * lr + 4 * l2pi - a * (3 + log(Real::ratio(4, 3, p)))) / 4;
        logn = (3 * a * a - 1) / 12;
        cst = (1 - l2 + 6 * a * l2pi - 3 * a * a * l3) / 12 - log(Constants::glaisher_A(p)) + barnes_block(a, ctx);
        inv = odd ? a * (5 * a * a - 11) / 48 : a * (5 * a * a + 7) / 48;
        break;
    }
    const Real nn(n, p);
    Real value = n2 * nn * nn + n1 * nn + logn * log(nn) + cst + inv / nn;
    return {q, n, r, a, odd, n2, n1, logn, cst, inv, std::move(value)};
}

}  // namespace dfreud

#endif  // DFREUD_DETASYMPT_HPP
