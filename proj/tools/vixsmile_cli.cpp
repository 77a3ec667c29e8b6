// vixsmile: Monte Carlo and asymptotic ATMI level/skew tables for VIX and RV options.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "validation.hpp"
#include "vs_handles.hpp"

namespace {

constexpr const char* kSchema = "vixsmile-csv v1";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
    std::string model = "mixed";
    std::string underlying = "vix";
    double v0 = 0.04;
    double hurst = 0.3;
    double beta = 0.0;
    double gamma = 1.0;
    double nu = 2.0;
    double eta = 0.0;
    double kappa = 1.0;
    double theta = 0.04;
    double delta = 30.0 / 365.0;
    std::vector<double> maturities;
    std::size_t paths = 200000;
    std::size_t inner = 64;
    std::uint64_t seed = 42;
    double skew_step = 0.01;
    std::vector<double> offsets = {-0.1, -0.08, -0.06, -0.04, -0.02, 0.0, 0.02, 0.04, 0.06, 0.08, 0.1};
    std::string out;
    unsigned workers = 0;
    bool quick = false;
    std::vector<int> criteria;
    double tolerance_scale = 1.0;

    bool heston() const { return model == "heston"; }
    bool rv() const { return underlying == "rv"; }
    vs_model_params params() const { return vs_model_params{v0, hurst, beta, gamma, nu, eta}; }
    vs_heston_params heston_params() const { return vs_heston_params{kappa, theta, nu, theta}; }
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ';';
        s += num(xs[i]);
    }
    return s;
}

void log(const std::string& message) { std::cerr << "vixsmile: " << message << '\n'; }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

class CsvWriter {
public:
    CsvWriter(const RunConfig& cfg, const std::string& command) {
        if (!cfg.out.empty()) {
            file_.open(cfg.out);
            if (!file_) {
                throw std::runtime_error("cannot open output file " + cfg.out);
            }
        }
        std::ostringstream h;
        h << "# " << kSchema << " command=" << command << " model=" << cfg.model << " underlying=" << cfg.underlying
          << " v0=" << num(cfg.v0) << " hurst=" << num(cfg.hurst) << " beta=" << num(cfg.beta)
          << " gamma=" << num(cfg.gamma) << " nu=" << num(cfg.nu) << " eta=" << num(cfg.eta)
          << " kappa=" << num(cfg.kappa) << " theta=" << num(cfg.theta) << " delta=" << num(cfg.delta)
          << " T=" << join(cfg.maturities) << " paths=" << cfg.paths << " inner=" << cfg.inner
          << " seed=" << cfg.seed << " skew_step=" << num(cfg.skew_step) << " offsets=" << join(cfg.offsets);
        line(h.str());
    }

    void line(const std::string& s) {
        stream() << s << '\n';
        stream().flush();
    }

    void row(const std::vector<std::string>& fields) {
        std::string s;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) s += ',';
            s += fields[i];
        }
        line(s);
    }

    void error_trailer(const std::string& where, const std::string& message) {
        std::string clean = message;
        for (char& c : clean) {
            if (c == '\n' || c == ',') c = ' ';
        }
        line("# error," + where + "," + clean);
    }

private:
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    std::ofstream file_;
};

void require_maturities(const RunConfig& cfg) {
    if (cfg.maturities.empty()) {
        throw CLI::ValidationError("--T", "at least one maturity is required");
    }
}

vs_underlying kind_of(const RunConfig& cfg) { return cfg.rv() ? VS_RV : VS_VIX; }

vstool::BatchPtr simulate(const RunConfig& cfg, double T) {
    const vs_sim_grid grid = vstool::sim_grid(T, cfg.delta, cfg.inner, cfg.paths, cfg.seed);
    const vstool::SamplerPtr sampler = vstool::make_sampler(kind_of(cfg), cfg.params(), grid);
    return vstool::sample(sampler.get(), cfg.paths, cfg.seed, cfg.workers);
}

int heston_rows(const RunConfig& cfg, CsvWriter& csv) {
    csv.line("k,theta,nu,v0,delta,value,sign,feller_satisfied");
    const vs_heston_params h = cfg.heston_params();
    double value = 0.0;
    int sign = 0;
    int feller = 0;
    vstool::check(vs_heston_vix_skew_sign(&h, cfg.delta, &value, &sign, &feller), "heston_vix_skew_sign");
    if (!feller) {
        log("warning: Feller condition 2 k theta > nu^2 is violated");
    }
    csv.row({num(h.k), num(h.theta), num(h.nu), num(h.v0), num(cfg.delta), num(value), std::to_string(sign),
             std::to_string(feller)});
    return 0;
}

int cmd_atmi(const RunConfig& cfg) {
    if (cfg.heston()) {
        throw CLI::ValidationError("--model", "atmi supports the mixed model only");
    }
    require_maturities(cfg);
    CsvWriter csv(cfg, "atmi");
    csv.line("T,mc_atmi,mc_stderr,approx_atmi,limit_value,rel_gap,status");
    const vs_model_params p = cfg.params();
    for (double T : cfg.maturities) {
        const auto start = std::chrono::steady_clock::now();
        try {
            const vstool::BatchPtr batch = simulate(cfg, T);
            vs_atmi_result a{};
            vstool::check(vs_atmi(batch.get(), &a), "atmi");
            double approx = 0.0;
            double limit = 0.0;
            if (cfg.rv()) {
                approx = vstool::asymptote(VS_RV_ATMI_APPROX, p, cfg.delta, T).value;
                limit = vstool::asymptote(VS_RV_ATMI_LIMIT, p, cfg.delta, T).value * std::pow(T, cfg.hurst - 0.5);
            } else {
                approx = vstool::asymptote(VS_VIX_ATMI_APPROX, p, cfg.delta, T).value;
                limit = vstool::asymptote(VS_VIX_ATMI_LIMIT, p, cfg.delta, T).value;
            }
            const double gap = (a.degenerate || approx == 0.0) ? kNaN : (a.vol - approx) / approx;
            csv.row({num(T), num(a.vol), num(a.vol_std_error), num(approx), num(limit), num(gap),
                     a.degenerate ? "degenerate" : "ok"});
            log("atmi T=" + num(T) + " done in " + num(seconds_since(start)) + " s");
        } catch (const vstool::StatusError& e) {
            csv.error_trailer("T=" + num(T), e.what());
            log(e.what());
            return 1;
        }
    }
    return 0;
}

int cmd_skew(const RunConfig& cfg) {
    CsvWriter csv(cfg, "skew");
    if (cfg.heston()) {
        return heston_rows(cfg, csv);
    }
    require_maturities(cfg);
    csv.line("T,mc_skew,mc_stderr,approx_skew,limit_value,status");
    const vs_model_params p = cfg.params();
    for (double T : cfg.maturities) {
        const auto start = std::chrono::steady_clock::now();
        try {
            const vstool::BatchPtr batch = simulate(cfg, T);
            vs_skew_result s{};
            vstool::check(vs_atmi_skew(batch.get(), cfg.skew_step, &s), "atmi_skew");
            double approx = kNaN;
            double limit = 0.0;
            if (cfg.rv()) {
                limit = vstool::asymptote(VS_RV_SKEW_LIMIT, p, cfg.delta, 0.0).value * std::pow(T, cfg.hurst - 0.5);
            } else {
                approx = vstool::asymptote(VS_VIX_SKEW_APPROX, p, cfg.delta, T).value;
                limit = vstool::asymptote(VS_VIX_SKEW_LIMIT, p, cfg.delta, T).value;
            }
            csv.row({num(T), num(s.skew), num(s.std_error), num(approx), num(limit), "ok"});
            log("skew T=" + num(T) + " done in " + num(seconds_since(start)) + " s");
        } catch (const vstool::StatusError& e) {
            csv.error_trailer("T=" + num(T), e.what());
            log(e.what());
            return 1;
        }
    }
    return 0;
}

int cmd_smile(const RunConfig& cfg) {
    if (cfg.heston()) {
        throw CLI::ValidationError("--model", "smile supports the mixed model only");
    }
    require_maturities(cfg);
    CsvWriter csv(cfg, "smile");
    csv.line("T,offset,strike,implied_vol,vol_stderr,price,price_stderr,status");
    for (double T : cfg.maturities) {
        try {
            const vstool::BatchPtr batch = simulate(cfg, T);
            std::vector<vs_smile_point> pts(cfg.offsets.size());
            vstool::check(vs_smile(batch.get(), cfg.offsets.data(), cfg.offsets.size(), pts.data()), "smile");
            for (const vs_smile_point& pt : pts) {
                const bool ok = pt.status == VS_OK;
                csv.row({num(T), num(pt.log_strike_offset), num(pt.strike), num(ok ? pt.implied_vol : kNaN),
                         num(ok ? pt.vol_std_error : kNaN), num(pt.price.value), num(pt.price.std_error),
                         vs_status_string(pt.status)});
            }
        } catch (const vstool::StatusError& e) {
            csv.error_trailer("T=" + num(T), e.what());
            log(e.what());
            return 1;
        }
    }
    return 0;
}

int cmd_asymptote(const RunConfig& cfg) {
    CsvWriter csv(cfg, "asymptote");
    if (cfg.heston()) {
        return heston_rows(cfg, csv);
    }
    csv.line("formula,T,value,quad_error_bound,status");
    const vs_model_params p = cfg.params();
    const auto emit = [&](vs_formula f, double T, bool with_t) {
        vs_asymptote_result r{};
        const vs_status st = vs_asymptote(f, &p, cfg.delta, T, &r);
        const std::string t_field = with_t ? num(T) : "";
        if (st == VS_OK) {
            csv.row({vs_formula_name(f), t_field, num(r.value), num(r.quad_error_bound), "ok"});
        } else if (st == VS_ERR_DEGENERATE) {
            csv.row({vs_formula_name(f), t_field, num(kNaN), num(kNaN), "degenerate"});
        } else {
            vstool::check(st, vs_formula_name(f));
        }
    };
    try {
        if (cfg.rv()) {
            emit(VS_RV_ATMI_LIMIT, 0.0, false);
            emit(VS_RV_SKEW_LIMIT, 0.0, false);
            for (double T : cfg.maturities) emit(VS_RV_ATMI_APPROX, T, true);
        } else {
            emit(VS_VIX_ATMI_LIMIT, 0.0, false);
            emit(VS_VIX_SKEW_LIMIT, 0.0, false);
            if (cfg.hurst == 0.5 && cfg.beta == 0.0) emit(VS_SABR_VIX_SKEW, 0.0, false);
            for (double T : cfg.maturities) {
                emit(VS_VIX_ATMI_APPROX, T, true);
                emit(VS_VIX_SKEW_APPROX, T, true);
            }
        }
    } catch (const vstool::StatusError& e) {
        csv.error_trailer("asymptote", e.what());
        log(e.what());
        return 1;
    }
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    vstool::ValidationOptions opt;
    opt.quick = cfg.quick;
    opt.seed = cfg.seed;
    opt.workers = cfg.workers;
    opt.only = cfg.criteria;
    opt.tolerance_scale = cfg.tolerance_scale;
    std::cout << "criterion | achieved | tolerance | time / budget" << (cfg.quick ? "  (quick mode)" : "") << '\n';
    int failed = 0;
    double total = 0.0;
    const auto results = vstool::run_validation(opt, [&](const vstool::CriterionResult& r) {
        std::cout << vstool::format_result(r) << '\n';
        for (const std::string& d : r.details) {
            std::cout << "       " << d << '\n';
        }
        std::cout.flush();
        failed += r.passed ? 0 : 1;
        total += r.seconds;
    });
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed in " << num(total) << " s\n";
    return failed == 0 ? 0 : 1;
}

constexpr const char* kFooter = R"(CSV output
  Line 1 is '# vixsmile-csv v1' followed by every parameter; line 2 names the columns.
  Floats carry 17 significant digits. A failing row ends the table with '# error,<where>,<message>'.
  atmi:      T,mc_atmi,mc_stderr,approx_atmi,limit_value,rel_gap,status
             rel_gap = (mc_atmi - approx_atmi) / approx_atmi. For RV, limit_value is the
             limit of T^(1/2-H) ATMI multiplied back by T^(H-1/2).
  skew:      T,mc_skew,mc_stderr,approx_skew,limit_value,status
             RV has no finite-T skew approximation (approx_skew = nan).
  smile:     T,offset,strike,implied_vol,vol_stderr,price,price_stderr,status
  asymptote: formula,T,value,quad_error_bound,status
  heston (skew/asymptote with --model heston): k,theta,nu,v0,delta,value,sign,feller_satisfied

Config files hold one 'key = value' per line with '#' comments; keys are the long flag
names. Command-line flags override the file, which overrides VIXSMILE_SEED.)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short-maturity ATMI level and skew of VIX and realized-variance options"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read flags from a key = value file");

    RunConfig cfg;
    app.add_option("--model", cfg.model, "Variance model")->check(CLI::IsMember({"mixed", "heston"}))->capture_default_str();
    app.add_option("--underlying", cfg.underlying, "Option underlying")->check(CLI::IsMember({"vix", "rv"}))->capture_default_str();
    app.add_option("--v0", cfg.v0, "Initial variance")->capture_default_str();
    app.add_option("--hurst", cfg.hurst, "Hurst parameter in (0, 1/2]")->capture_default_str();
    app.add_option("--beta", cfg.beta, "Kernel mean reversion")->capture_default_str();
    app.add_option("--gamma", cfg.gamma, "Mixing weight")->capture_default_str();
    app.add_option("--nu", cfg.nu, "Vol-of-vol (also the Heston vol-of-vol)")->capture_default_str();
    app.add_option("--eta", cfg.eta, "Second vol-of-vol")->capture_default_str();
    app.add_option("--kappa", cfg.kappa, "Heston reversion speed")->capture_default_str();
    app.add_option("--theta", cfg.theta, "Heston long-run variance (= v0)")->capture_default_str();
    app.add_option("--delta", cfg.delta, "VIX window in years")->capture_default_str();
    app.add_option("--T", cfg.maturities, "Maturities in years, comma separated")->delimiter(',');
    app.add_option("--paths", cfg.paths, "Monte Carlo paths")->capture_default_str();
    app.add_option("--inner", cfg.inner, "Time nodes per path")->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed")->envname("VIXSMILE_SEED")->capture_default_str();
    app.add_option("--skew-step", cfg.skew_step, "Log-strike step of the skew difference")->capture_default_str();
    app.add_option("--offsets", cfg.offsets, "Smile log-strike offsets, comma separated")->delimiter(',');
    app.add_option("--out", cfg.out, "Output CSV file (default: standard output)");
    app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("--quick", cfg.quick, "validate: quarter path counts and doubled tolerances");
    app.add_option("--criterion", cfg.criteria, "validate: run only these criteria")->delimiter(',');
    app.add_option("--tolerance-scale", cfg.tolerance_scale)->group("");

    auto* atmi = app.add_subcommand("atmi", "MC ATMI against the approximation and the short-time limit");
    auto* skew = app.add_subcommand("skew", "MC ATMI skew against the approximation and the short-time limit");
    auto* smile = app.add_subcommand("smile", "MC implied volatility smile at the given offsets");
    auto* asym = app.add_subcommand("asymptote", "Closed-form and quadrature formulas only");
    auto* validate = app.add_subcommand("validate", "Run the acceptance criteria");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*atmi) return cmd_atmi(cfg);
        if (*skew) return cmd_skew(cfg);
        if (*smile) return cmd_smile(cfg);
        if (*asym) return cmd_asymptote(cfg);
        if (*validate) return cmd_validate(cfg);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        log(e.what());
        return 1;
    }
    return 1;
}
