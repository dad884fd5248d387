// Command-line front end: tables of moments, recurrence coefficients, Hankel norms, polynomial
// residuals, log-determinant expansions, the sensitivity experiment and the verification suites.
//
// Exit codes: 0 success / all checks pass, 1 a check or a computation failed, 2 usage or I/O error.

#include "dfreud/asymptotics.hpp"
#include "dfreud/detasympt.hpp"
#include "dfreud/hankel.hpp"
#include "dfreud/moments.hpp"
#include "dfreud/polynomials.hpp"
#include "dfreud/recurrence.hpp"
#include "dfreud/report.hpp"
#include "dfreud/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace dfreud;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string s = "0.5";
    std::string alpha = "0";
    std::string bigN = "1";
    int digits = 50;
    std::string format = "csv";
    std::string out;

    WeightParams params() const { return WeightParams::parse(s, alpha, bigN); }
    int out_digits() const { return std::min(digits, 50); }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void add_common(CLI::App* sub, Common& c, int default_digits)
{
    c.digits = default_digits;
    sub->add_option("--s", c.s, "deformation parameter s in [0, 1]")->capture_default_str();
    sub->add_option("--alpha", c.alpha, "exponent alpha > -1")->capture_default_str();
    sub->add_option("--N", c.bigN, "scale N > 0")->capture_default_str();
    sub->add_option("--digits", c.digits, "decimal working precision")->capture_default_str()->check(
        CLI::Range(30, 100000));
    sub->add_option("--format", c.format, "csv or json")->capture_default_str()->check(
        CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "output file (default stdout)");
}

void write_text(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f)
        throw IoError("write to '" + path + "' failed");
}

std::string csv_field(const std::string& v)
{
    if (v.find_first_of(",\"\n") == std::string::npos)
        return v;
    std::string q = "\"";
    for (char ch : v)
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

void emit(const Table& t, const Common& c)
{
    std::ostringstream os;
    if (c.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : t.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i)
                obj[t.columns[i]] = r[i];
            rows.push_back(std::move(obj));
        }
        os << nlohmann::json{{"columns", t.columns}, {"rows", rows}}.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << csv_field(t.columns[i]);
        os << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << csv_field(r[i]);
            os << "\n";
        }
    }
    write_text(os.str(), c.out);
}

std::string fmt(const Real& v, const Common& c) { return v.to_string(c.out_digits()); }
std::string fmt(const std::optional<Real>& v, const Common& c) { return v ? fmt(*v, c) : std::string("nan"); }

std::vector<int> n_range(int n_max)
{
    std::vector<int> v;
    for (int n = 0; n <= n_max; ++n)
        v.push_back(n);
    return v;
}

// ---------------------------------------------------------------------------

Table cmd_moments(const Common& c, int max_order, const std::string& source)
{
    const NumericContext ctx(c.digits);
    std::optional<MomentSource> src;
    if (source == "quadrature")
        src = MomentSource::quadrature;
    else if (source == "closed_form")
        src = MomentSource::closed_form;
    const MomentTable mt = moment_table(c.params(), max_order, ctx, src);
    Table t{{"k", "mu_k", "source"}, {}};
    for (std::size_t k = 0; k < mt.values.size(); ++k)
        t.rows.push_back({std::to_string(k), fmt(mt.values[k], c), to_string(mt.source)});
    return t;
}

std::vector<std::optional<Real>> beta_values(const std::string& method, const WeightParams& w, const std::vector<int>& ns,
                              const NumericContext& ctx, std::optional<int>& halted)
{
    const int n_max = ns.empty() ? 0 : *std::max_element(ns.begin(), ns.end());
    const Precision p = ctx.precision();
    if (w.s_is_zero() && method != "hankel" && method != "smalls")
        throw UsageError("method '" + method + "' needs s > 0 (use hankel or smalls at s = 0)");
    std::vector<std::optional<Real>> out;
    if (method == "hankel" || method == "dpi") {
        BetaSequence seq = method == "hankel" ? beta_from_moments(w, std::max(n_max, 1), ctx)
                                              : dpi_forward(w, beta1_initial(w, ctx), std::max(n_max, 1), ctx);
        halted = seq.halted_at;
        for (int n : ns)
            if (static_cast<std::size_t>(n) < seq.betas.size())
                out.push_back(seq.betas[static_cast<std::size_t>(n)]);
            else
                out.push_back(std::nullopt);
        return out;
    }
    for (int n : ns) {
        if (n == 0) {
            out.push_back(Real(0L, p));
            continue;
        }
        if (method == "smalls")
            out.push_back(beta_small_s(n, w, ctx));
        else if (method == "largen")
            out.push_back(beta_large_n(n, w, p));
        else
            out.push_back(beta_double_scaling(n, w.bigN, w.s, w.alpha, p));
    }
    return out;
}

Table cmd_beta(const Common& c, const std::string& method, int n_max, const std::vector<int>& n_list)
{
    const NumericContext ctx(c.digits);
    const std::vector<int> ns = n_list.empty() ? n_range(n_max) : n_list;
    std::optional<int> halted;
    const auto vals = beta_values(method, c.params(), ns, ctx, halted);
    Table t{{"n", "beta_n"}, {}};
    for (std::size_t i = 0; i < ns.size(); ++i)
        t.rows.push_back({std::to_string(ns[i]), fmt(vals[i], c)});
    if (halted)
        std::cerr << "forward recursion left the positive range at n = " << *halted << "\n";
    return t;
}

Table cmd_hankel(const Common& c, int n)
{
    const NumericContext ctx(c.digits);
    const HankelData hd = h_sequence(c.params(), n, ctx);
    Table t{{"name", "index", "value"}, {}};
    for (std::size_t j = 0; j < hd.h.size(); ++j)
        t.rows.push_back({"h", std::to_string(j), fmt(hd.h[j], c)});
    t.rows.push_back({"logdet", std::to_string(n), fmt(hd.logdet, c)});
    t.rows.push_back({"digits_used", std::to_string(n), std::to_string(hd.digits_used)});
    return t;
}

Table cmd_poly_ode(const Common& c, int n, const std::vector<std::string>& zs)
{
    const NumericContext ctx(c.digits);
    const WeightParams w = c.params();
    if (w.s_is_zero())
        throw UsageError("poly-ode needs s > 0");
    const BetaSequence hk = beta_from_moments(w, n + 2, ctx);
    const auto polys = build_polynomials(hk.betas, n + 1);
    Table t{{"z", "P_n", "lowering_rel", "S1_rel", "S2_rel", "S2prime_rel", "ode_rel"}, {}};
    for (const auto& zt : zs) {
        const Real z = ctx.parse(zt);
        const auto cr = compatibility_residuals(n, z, w, hk.betas);
        t.rows.push_back({zt, fmt(eval_poly(polys[static_cast<std::size_t>(n)], z), c),
                          lowering_residual(n, z, w, hk.betas, polys).relative().to_string(6),
                          cr.s1.relative().to_string(6), cr.s2.relative().to_string(6),
                          cr.s2_prime.relative().to_string(6),
                          pn_ode_residual(n, z, w, hk.betas, polys).relative().to_string(6)});
    }
    return t;
}

Table cmd_logdet(const Common& c, int n, const std::string& r_text, bool as_printed, bool exact, bool derivative)
{
    const NumericContext ctx(c.digits);
    if (derivative) {
        const WeightParams w = c.params();
        if (w.s_is_zero())
            throw UsageError("logdet --derivative needs s > 0");
        const BetaSequence hk = beta_from_moments(w, n + 1, ctx);
        Table t{{"n", "exact", "sum_formula", "finite_difference"}, {}};
        t.rows.push_back({std::to_string(n), fmt(logdet_derivative_exact_from(n, hk.betas, w), c),
                          fmt(logdet_derivative_sum(n, hk.betas, w), c),
                          w.s == 1 ? std::string("nan") : fmt(logdet_derivative_fd(n, w, ctx), c)});
        return t;
    }
    const Real r = ctx.parse(r_text);
    const Real alpha = ctx.parse(c.alpha);
    Table t{{"quantity", "n", "r", "n2", "n1", "log_n", "constant", "inv_n", "value", "exact"}, {}};
    std::optional<Real> l0, l1;
    if (exact) {
        const Real bigN = Real(static_cast<long>(n), ctx.precision()) / r;
        l0 = mehta_normand_logD0(n, alpha, bigN, ctx);
        const WeightParams w1(Real(1L, Precision{WeightParams::storage_bits}),
                              alpha.with_precision(Precision{WeightParams::storage_bits}),
                              (Real(static_cast<long>(n), Precision{WeightParams::storage_bits}) /
                               Real::parse(r_text, Precision{WeightParams::storage_bits})));
        l1 = logdet_hankel(n, w1, ctx);
    }
    for (auto q : {LogDetQuantity::ratio_10, LogDetQuantity::D0, LogDetQuantity::D1}) {
        const auto e = logdet_expansion(q, n, r, alpha, ctx, as_printed);
        std::string ex = "";
        if (exact)
            ex = fmt(q == LogDetQuantity::ratio_10 ? *l1 - *l0 : q == LogDetQuantity::D0 ? *l0 : *l1, c);
        t.rows.push_back({to_string(q), std::to_string(n), r_text, fmt(e.n2, c), fmt(e.n1, c), fmt(e.log_n, c),
                          fmt(e.constant, c), fmt(e.inv_n, c), fmt(e.value, c), ex});
    }
    return t;
}

Table cmd_sensitivity(const Common& c, const std::vector<std::string>& eps_text, int n_max)
{
    const NumericContext ctx(c.digits);
    const WeightParams w = c.params();
    if (w.s_is_zero())
        throw UsageError("sensitivity needs s > 0");
    std::vector<Real> eps;
    for (const auto& e : eps_text)
        eps.push_back(ctx.parse(e));
    const auto runs = sensitivity_sweep(w, eps, n_max, ctx);
    Table t{{"epsilon", "n", "beta_n", "first_failure_index"}, {}};
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string ffi = runs[i].first_failure_index ? std::to_string(*runs[i].first_failure_index) : "";
        for (std::size_t n = 0; n < runs[i].trajectory.size(); ++n)
            t.rows.push_back({eps_text[i], std::to_string(n), fmt(runs[i].trajectory[n], c), ffi});
    }
    return t;
}

Table cmd_sweep(const Common& c, const std::string& method, const std::vector<GridPoint>& grid, int n_max,
                int threads)
{
    if (grid.empty())
        throw UsageError("sweep: empty parameter grid");
    const NumericContext ctx(c.digits);
    const std::vector<int> ns = n_range(n_max);
    std::vector<std::vector<std::string>> per_point(grid.size());
    auto task = [&](std::size_t i) {
        std::optional<int> halted;
        const auto vals = beta_values(method, grid[i].params(), ns, ctx, halted);
        std::vector<std::string> out;
        for (const auto& v : vals)
            out.push_back(fmt(v, c));
        return out;
    };
    // Workers take grid points in blocks; results are merged in grid order.
    const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    for (std::size_t start = 0; start < grid.size(); start += workers) {
        std::vector<std::future<std::vector<std::string>>> futs;
        for (std::size_t i = start; i < std::min(grid.size(), start + workers); ++i)
            futs.push_back(std::async(std::launch::async, task, i));
        for (std::size_t k = 0; k < futs.size(); ++k)
            per_point[start + k] = futs[k].get();
    }
    Table t{{"s", "alpha", "N", "n", "beta_n"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t k = 0; k < ns.size(); ++k)
            t.rows.push_back({grid[i].s, grid[i].alpha, grid[i].bigN, std::to_string(ns[k]), per_point[i][k]});
    return t;
}

int cmd_verify(const Common& c, const std::string& suite, const std::vector<GridPoint>& grid)
{
    const VerificationReport rep = run_verification(suite, grid, c.digits);
    if (c.format == "csv") {
        Table t{{"id", "description", "measured", "threshold", "pass"}, {}};
        for (const auto& ch : rep.checks) {
            std::ostringstream m, th;
            m.precision(17);
            th.precision(17);
            m << ch.measured;
            th << ch.threshold;
            t.rows.push_back({ch.id, ch.description, m.str(), th.str(), ch.pass ? "true" : "false"});
        }
        emit(t, c);
    } else {
        write_text(nlohmann::json(rep).dump(2) + "\n", c.out);
    }
    std::size_t failed = 0;
    for (const auto& ch : rep.checks)
        if (!ch.pass) {
            ++failed;
            std::cerr << "FAIL " << ch.id << ": " << ch.measured << " > " << ch.threshold << "\n";
        }
    std::cerr << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed in " << rep.wall_time
              << " s\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Recurrence coefficients, Hankel determinants and their asymptotics for the weight "
                 "|x|^alpha exp(-N[x^2 + s(x^4 - x^2)])"};
    app.require_subcommand(1);

    Common c_mom, c_beta, c_hk, c_poly, c_ld, c_sens, c_ver, c_sweep;

    auto* mom = app.add_subcommand("moments", "moments mu_0 .. mu_k");
    add_common(mom, c_mom, 50);
    int max_order = 10;
    std::string source = "auto";
    mom->add_option("--max-order", max_order)->capture_default_str()->check(CLI::NonNegativeNumber);
    mom->add_option("--source", source)->capture_default_str()->check(
        CLI::IsMember({"auto", "quadrature", "closed_form"}));

    auto* beta = app.add_subcommand("beta", "recurrence coefficients beta_n");
    add_common(beta, c_beta, 50);
    std::string method = "hankel";
    int n_max = 10;
    std::vector<int> n_list;
    beta->add_option("--method", method)->capture_default_str()->check(
        CLI::IsMember({"hankel", "dpi", "smalls", "largen", "double"}));
    beta->add_option("--n-max", n_max)->capture_default_str()->check(CLI::NonNegativeNumber);
    beta->add_option("--n", n_list, "explicit indices (overrides --n-max)")->delimiter(',')->check(
        CLI::NonNegativeNumber);

    auto* hk = app.add_subcommand("hankel-det", "norms h_j and log D_n");
    add_common(hk, c_hk, 50);
    int hk_n = 10;
    hk->add_option("--n", hk_n)->capture_default_str()->check(CLI::PositiveNumber);

    auto* poly = app.add_subcommand("poly-ode", "ladder, compatibility and ODE residuals of P_n");
    add_common(poly, c_poly, 100);
    int poly_n = 10;
    std::vector<std::string> zs{"0.3", "-0.3", "1.1", "-1.1", "2.7"};
    poly->add_option("--n", poly_n)->capture_default_str()->check(CLI::PositiveNumber);
    poly->add_option("--z", zs)->delimiter(',')->capture_default_str();

    auto* ld = app.add_subcommand("logdet", "large-n expansions of log D_n, or the exact s-derivative");
    add_common(ld, c_ld, 50);
    int ld_n = 20;
    std::string r_text = "1";
    bool as_printed = false, exact = false, derivative = false;
    ld->add_option("--n", ld_n)->capture_default_str()->check(CLI::PositiveNumber);
    ld->add_option("--r", r_text, "n/N")->capture_default_str();
    ld->add_flag("--as-printed", as_printed, "use the printed even-n linear coefficient");
    ld->add_flag("--exact", exact, "add exact values (product formula at s=0, Hankel at s=1, N = n/r)");
    ld->add_flag("--derivative", derivative, "exact d/ds log D_n at (s, alpha, N) with its two oracles");

    auto* sens = app.add_subcommand("sensitivity", "forward recursion from perturbed beta_1");
    add_common(sens, c_sens, 500);
    c_sens.s = "0.5";
    c_sens.alpha = "3";
    std::vector<std::string> eps{"0", "1e-1", "1e-3", "1e-5"};
    int sens_n = 100;
    sens->add_option("--eps", eps)->delimiter(',')->capture_default_str();
    sens->add_option("--n-max", sens_n)->capture_default_str()->check(CLI::PositiveNumber);

    auto* ver = app.add_subcommand("verify", "run invariant suites and write a JSON report");
    add_common(ver, c_ver, 100);
    c_ver.format = "json";
    std::string suite = "all";
    std::vector<std::string> vs{"0.25", "0.5", "1"}, va{"0", "1.5", "3"}, vn{"1"};
    ver->add_option("--suite", suite)->capture_default_str()->check(CLI::IsMember(verify_suites()));
    // Grid lists replace the scalar --s/--alpha/--N of the other commands.
    ver->remove_option(ver->get_option("--s"));
    ver->remove_option(ver->get_option("--alpha"));
    ver->remove_option(ver->get_option("--N"));
    ver->add_option("--s", vs, "comma-separated s values")->delimiter(',')->capture_default_str();
    ver->add_option("--alpha", va, "comma-separated alpha values")->delimiter(',')->capture_default_str();
    ver->add_option("--N", vn, "comma-separated N values")->delimiter(',')->capture_default_str();

    auto* sw = app.add_subcommand("sweep", "beta_n over a parameter grid");
    add_common(sw, c_sweep, 50);
    std::string sw_method = "hankel";
    int sw_n = 10, threads = 1;
    std::vector<std::string> ss{"0", "0.25", "0.5", "0.75", "1"}, sa{"0"}, sn{"1"};
    sw->add_option("--method", sw_method)->capture_default_str()->check(
        CLI::IsMember({"hankel", "dpi", "smalls", "largen", "double"}));
    sw->add_option("--n-max", sw_n)->capture_default_str()->check(CLI::NonNegativeNumber);
    sw->add_option("--threads", threads)->capture_default_str()->check(CLI::PositiveNumber);
    sw->remove_option(sw->get_option("--s"));
    sw->remove_option(sw->get_option("--alpha"));
    sw->remove_option(sw->get_option("--N"));
    sw->add_option("--s", ss)->delimiter(',')->capture_default_str();
    sw->add_option("--alpha", sa)->delimiter(',')->capture_default_str();
    sw->add_option("--N", sn)->delimiter(',')->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto drop_empty = [](std::vector<std::string> v) {
        v.erase(std::remove(v.begin(), v.end(), std::string()), v.end());
        return v;
    };

    try {
        if (mom->parsed())
            emit(cmd_moments(c_mom, max_order, source), c_mom);
        else if (beta->parsed())
            emit(cmd_beta(c_beta, method, n_max, n_list), c_beta);
        else if (hk->parsed())
            emit(cmd_hankel(c_hk, hk_n), c_hk);
        else if (poly->parsed())
            emit(cmd_poly_ode(c_poly, poly_n, zs), c_poly);
        else if (ld->parsed())
            emit(cmd_logdet(c_ld, ld_n, r_text, as_printed, exact, derivative), c_ld);
        else if (sens->parsed())
            emit(cmd_sensitivity(c_sens, eps, sens_n), c_sens);
        else if (ver->parsed()) {
            const auto grid = make_grid(drop_empty(vs), drop_empty(va), drop_empty(vn));
            if (grid.empty())
                throw UsageError("verify: empty parameter grid");
            return cmd_verify(c_ver, suite, grid);
        } else if (sw->parsed()) {
            const auto grid = make_grid(drop_empty(ss), drop_empty(sa), drop_empty(sn));
            emit(cmd_sweep(c_sweep, sw_method, grid, sw_n, threads), c_sweep);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
