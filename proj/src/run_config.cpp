#include "logdecay/run_config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "logdecay/acceptance.hpp"
#include "logdecay/bump.hpp"
#include "logdecay/contour.hpp"
#include "logdecay/errors.hpp"
#include "logdecay/io.hpp"
#include "logdecay/lowfreq.hpp"
#include "logdecay/parallel.hpp"
#include "logdecay/radial.hpp"
#include "logdecay/specfun.hpp"
#include "logdecay/wave.hpp"

namespace logdecay::cli {

namespace {

using nlohmann::json;

RadialSamples<double> gaussian_data(double center, double sigma, double h) {
    double halfw = sigma * std::sqrt(37.0);  // truncated below ~8e-17
    double hi = center + halfw;
    return sample_on_grid(
        [&](double r) {
            double w = (r - center) / sigma;
            double v = std::exp(-w * w);
            return v < 1e-16 ? 0.0 : v;
        },
        0.0, hi, h);
}

void write_plot_stub(const std::string& csv_path, const std::vector<std::string>& cols) {
    std::ofstream py(csv_path + ".plot.py");
    if (!py) return;
    py << "#!/usr/bin/env python3\n"
       << "# quick-look plot for " << csv_path << "\n"
       << "import csv\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "rows = []\n"
       << "with open(" << std::quoted(csv_path) << ") as fh:\n"
       << "    for line in fh:\n"
       << "        if line.startswith('#'):\n"
       << "            continue\n"
       << "        rows.append(line.strip().split(','))\n"
       << "header, data = rows[0], rows[1:]\n"
       << "cols = {name: [float(r[i]) for r in data] for i, name in enumerate(header)}\n";
    if (cols.size() >= 2) {
        py << "plt.plot(cols[" << std::quoted(cols[0]) << "], cols[" << std::quoted(cols[1])
           << "], '.-')\n"
           << "plt.xlabel(" << std::quoted(cols[0]) << ")\n"
           << "plt.ylabel(" << std::quoted(cols[1]) << ")\n";
    }
    py << "plt.show()\n";
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConstructionError*>(&e) || dynamic_cast<const SpecError*>(&e) ||
        dynamic_cast<const GridError*>(&e) || dynamic_cast<const InsufficientDataError*>(&e) ||
        dynamic_cast<const BranchDomainError*>(&e) ||
        dynamic_cast<const std::invalid_argument*>(&e))
        return 2;
    return 3;
}

// --- subcommands -------------------------------------------------------------

int run_resonance(const RunConfig& cfg, std::ostream& out) {
    bool ok = true;
    auto emit = [&](const std::string& k, double v) {
        out << k << " = " << io::format_double(v) << "\n";
    };
    if (cfg.variant == "round-well") {
        auto [model, st] = models::round_well_presonance(cfg.R, cfg.n_index);
        double j0_at = specfun::bessel_j(0, model.a * model.R);
        double cont = st.inner_coeff * specfun::bessel_j(1, model.a * model.R) - 1.0 / model.R;
        double j1p = specfun::bessel_j(0, model.a * model.R) -
                     specfun::bessel_j(1, model.a * model.R) / (model.a * model.R);
        double deriv = st.inner_coeff * model.a * j1p - (-1.0 / (model.R * model.R));
        emit("a", model.a);
        emit("C", st.inner_coeff);
        emit("abs_J0_aR", std::fabs(j0_at));
        emit("continuity_residual", std::fabs(cont));
        emit("derivative_residual", std::fabs(deriv));
        emit("threshold_determinant", radial::threshold_determinant(model, 1));
        ok = std::fabs(j0_at) <= 1e-12 && std::fabs(cont) <= 1e-10 && std::fabs(deriv) <= 1e-10;
    } else if (cfg.variant == "delta-ring") {
        auto [model, st] = models::delta_ring_presonance(cfg.R);
        double fr = st.radial_profile(model.R);
        double jump = (-st.outer_coeff / (model.R * model.R)) - st.inner_coeff;
        double rhs = model.a * fr;
        emit("a", model.a);
        emit("jump_lhs", jump);
        emit("jump_rhs", rhs);
        emit("jump_residual", std::fabs(jump - rhs));
        emit("continuity_residual",
             std::fabs(st.inner_coeff * model.R - st.outer_coeff / model.R));
        ok = std::fabs(jump - rhs) <= 1e-14 * std::max(1.0, std::fabs(rhs));
    } else if (cfg.variant == "robin-disc") {
        auto [model, states] = models::robin_disc_presonance(cfg.rho);
        emit("sigma", model.sigma);
        emit("state_count", (double)states.size());
        double worst = 0.0;
        for (const auto& st : states)
            worst = std::max(worst, std::fabs(models::robin_residual(model, st)));
        emit("robin_residual", worst);
        ok = states.size() == 2 && worst <= 1e-12;
    } else {
        throw ConstructionError("resonance: variant must name a scatterer, not 'free'");
    }
    out << "status = " << (ok ? "pass" : "fail") << "\n";
    return ok ? 0 : 3;
}

int run_resolvent(const RunConfig& cfg, std::ostream& out) {
    if (cfg.output.empty()) throw ConstructionError("resolvent requires --output");
    models::RadialModel model = cfg.make_model();
    auto grid = lowfreq::lambda_grid(cfg.lambda_min, cfg.lambda_max, cfg.per_ray,
                                     {M_PI / 2.0, M_PI / 4.0, 3.0 * M_PI / 4.0});
    double r0 = model.inner_radius();
    auto f = sample_on_grid([&](double r) { return bump(r, r0 + 0.5, r0 + 2.5); }, r0,
                            r0 + 3.0, 0.01);

    std::vector<std::complex<double>> values(grid.size());
    int workers = resolve_workers(cfg.workers);
    parallel_for((int)grid.size(), workers, [&](int i) {
        auto v = lowfreq::sample_lowfreq(model, cfg.mode, f, {grid[i]});
        values[i] = v[0];
    });

    io::CsvWriter csv(cfg.output);
    csv.comments(cfg.metadata());
    csv.header({"re_lambda", "im_lambda", "re_value", "im_value"});
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv.row({grid[i].value().real(), grid[i].value().imag(), values[i].real(),
                 values[i].imag()});
    if (cfg.plot_script)
        write_plot_stub(cfg.output, {"re_lambda", "im_lambda", "re_value", "im_value"});
    out << "wrote " << grid.size() << " resolvent samples to " << cfg.output << "\n";
    return 0;
}

int run_contour(const RunConfig& cfg, std::ostream& out) {
    if (cfg.output.empty()) throw ConstructionError("contour requires --output");
    std::complex<double> b = parse_complex(cfg.b);
    std::vector<double> ts = parse_t_grid(cfg.t_grid);
    std::vector<double> J(ts.size());
    int workers = resolve_workers(cfg.workers);
    std::exception_ptr first_error;
    parallel_for((int)ts.size(), workers, [&](int i) {
        try {
            contour::ContourSpec spec;
            spec.A = cfg.A;
            spec.C = cfg.C;
            spec.Cprime = cfg.Cprime;
            spec.eta = cfg.eta;
            spec.t = ts[i];
            J[i] = contour::jm_profile(spec, b);
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    });
    if (first_error) std::rethrow_exception(first_error);

    io::CsvWriter csv(cfg.output);
    csv.comments(cfg.metadata());
    csv.header({"t", "J", "J_norm"});
    for (std::size_t i = 0; i < ts.size(); ++i)
        csv.row({ts[i], J[i], J[i] * std::log(ts[i]) / ts[i]});
    if (cfg.plot_script) write_plot_stub(cfg.output, {"t", "J", "J_norm"});
    out << "wrote " << ts.size() << " time profile samples to " << cfg.output << "\n";
    return 0;
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
    if (cfg.output.empty()) throw ConstructionError("simulate requires --output");
    models::RadialModel model = cfg.make_model();
    std::vector<double> observers = parse_double_list(cfg.observers);
    auto f = gaussian_data(cfg.f_center, cfg.f_sigma, cfg.h);

    wave::EvolveConfig ecfg;
    ecfg.h = cfg.h;
    ecfg.cfl = cfg.cfl;
    auto field = wave::evolve_fd(model, cfg.mode, f, cfg.T, observers, ecfg);

    auto bound = radial::find_bound_states(model, cfg.mode);
    lowfreq::ExpansionFit fit;  // M = 0 unless the mode carries a p-resonance
    if (std::abs(cfg.mode) == 1 && model.kind != models::Kind::Free) {
        auto scan = lowfreq::detect_presonances(model, f);
        fit = cfg.mode > 0 ? scan.fit_plus : scan.fit_minus;
    }
    auto split = wave::decompose(field, model, fit, bound);

    io::CsvWriter csv(cfg.output);
    csv.comments(cfg.metadata());
    csv.comment("fit_M", std::to_string(fit.M));
    csv.comment("fit_alpha", io::format_double(split.fit_alpha));
    csv.comment("bound_states", std::to_string(bound.size()));
    csv.header({"t", "r", "u", "u_d", "u_z", "u_r"});
    for (Eigen::Index it = 0; it < field.times.size(); ++it)
        for (std::size_t k = 0; k < field.observers.size(); ++k)
            csv.row({field.times[it], field.observers[k], field.values(it, k),
                     split.u_d(it, k), split.u_z(it, k), split.u_r(it, k)});
    if (cfg.plot_script) write_plot_stub(cfg.output, {"t", "r", "u", "u_d", "u_z", "u_r"});
    out << "wrote " << field.times.size() << " time samples x " << field.observers.size()
        << " observers to " << cfg.output << "\n";
    return 0;
}

int run_fit(const RunConfig& cfg, std::ostream& out) {
    if (cfg.input.empty()) throw ConstructionError("fit requires --input");
    io::CsvTable table = io::read_csv(cfg.input);

    std::mt19937_64 rng((unsigned long long)cfg.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto noisy = [&](double v) {
        return cfg.noise_frac > 0.0 ? v * (1.0 + cfg.noise_frac * unif(rng)) : v;
    };

    json report;
    report["input"] = cfg.input;
    report["seed"] = cfg.seed;
    report["noise_frac"] = cfg.noise_frac;

    if (cfg.kind == "expansion") {
        int cl = table.column("re_lambda"), cli_ = table.column("im_lambda");
        int cvr = table.column("re_value"), cvi = table.column("im_value");
        std::vector<std::pair<std::complex<double>, std::complex<double>>> samples;
        for (const auto& r : table.rows)
            samples.push_back({{r[cl], r[cli_]}, noisy(r[cvr]) + std::complex<double>(0, 1) * noisy(r[cvi])});
        auto fit = lowfreq::fit_expansion(samples);
        report["M"] = fit.M;
        report["residual"] = fit.residual;
        report["condition_number"] = fit.condition_number;
        report["singular_ratio"] = fit.singular_ratio;
        report["zero_eigen_amp"] = {fit.zero_eigen_amp.real(), fit.zero_eigen_amp.imag()};
        report["terms"] = json::array();
        for (const auto& t : fit.terms)
            report["terms"].push_back({{"nu", t.nu},
                                       {"k", t.k},
                                       {"b", {t.b.real(), t.b.imag()}},
                                       {"arg_b", std::arg(t.b)},
                                       {"coeff", {t.coeff.real(), t.coeff.imag()}}});
    } else if (cfg.kind == "decay") {
        int ct = table.column("t");
        int cu = table.column(table.columns.size() > 2 ? "u_r" : "u");
        std::vector<double> tv, uv;
        for (const auto& r : table.rows) {
            tv.push_back(r[ct]);
            uv.push_back(noisy(r[cu]));
        }
        Eigen::Map<Eigen::VectorXd> t(tv.data(), tv.size()), u(uv.data(), uv.size());
        wave::DecayLaw law = cfg.law == "log-power" ? wave::DecayLaw::LogPower
                                                    : wave::DecayLaw::TOverLog;
        auto fit = wave::fit_decay(t, u, law, cfg.log_power);
        report["law"] = cfg.law;
        report["alpha"] = fit.alpha;
        report["residual"] = fit.residual;
        report["log_power"] = fit.log_power;
        report["passed"] = fit.passed;
        report["window_sups"] = fit.window_sups;
    } else {
        throw ConstructionError("fit --kind must be 'expansion' or 'decay'");
    }

    std::string text = report.dump(2);
    if (!cfg.output.empty()) {
        std::ofstream fh(cfg.output);
        if (!fh) throw ConstructionError("cannot open output file: " + cfg.output);
        fh << text << "\n";
        out << "wrote fit report to " << cfg.output << "\n";
    } else {
        out << text << "\n";
    }
    return 0;
}

int run_verify_all(const RunConfig& cfg, std::ostream& out) {
    acceptance::Options opt;
    opt.workers = cfg.workers;
    opt.only = cfg.only;
    auto results = acceptance::run_all(opt, out);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    return all ? 0 : 3;
}

} // namespace

void RunConfig::validate() const {
    static const std::vector<std::string> commands{"resonance", "resolvent", "contour",
                                                   "simulate", "fit", "verify-all"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
        throw ConstructionError("unknown command: " + command);
    static const std::vector<std::string> variants{"free", "round-well", "delta-ring",
                                                   "robin-disc"};
    if (std::find(variants.begin(), variants.end(), variant) == variants.end())
        throw ConstructionError("unknown model variant: " + variant);
    if (tol <= 0.0 || h <= 0.0 || cfl <= 0.0 || eta <= 0.0)
        throw ConstructionError("tolerances and grid parameters must be positive");
    if (std::abs(mode) > radial::kMaxMode)
        throw ConstructionError("mode exceeds m_max = 4");
}

models::RadialModel RunConfig::make_model() const {
    if (variant == "free") return models::RadialModel::free();
    if (variant == "round-well") {
        double amp = a_set ? a : specfun::bessel_zero({0, n_index}) / R;
        return models::RadialModel::round_well(amp, R);
    }
    if (variant == "delta-ring") {
        double amp = a_set ? a : -2.0 / R;
        return models::RadialModel::delta_ring(amp, R);
    }
    double sg = sigma_set ? sigma : 1.0 / rho;
    return models::RadialModel::robin_disc(rho, sg);
}

std::map<std::string, std::string> RunConfig::metadata() const {
    std::map<std::string, std::string> kv;
    kv["command"] = command;
    kv["variant"] = variant;
    if (variant == "round-well" || variant == "delta-ring") {
        kv["R"] = io::format_double(R);
        kv["a"] = a_set ? io::format_double(a) : "resonant(n=" + std::to_string(n_index) + ")";
    }
    if (variant == "robin-disc") {
        kv["rho"] = io::format_double(rho);
        kv["sigma"] = sigma_set ? io::format_double(sigma) : "resonant(1/rho)";
    }
    kv["mode"] = std::to_string(mode);
    kv["h"] = io::format_double(h);
    kv["T"] = io::format_double(T);
    kv["cfl"] = io::format_double(cfl);
    kv["A"] = io::format_double(A);
    kv["C"] = io::format_double(C);
    kv["Cprime"] = io::format_double(Cprime);
    kv["eta"] = io::format_double(eta);
    kv["b"] = b;
    kv["t_grid"] = t_grid;
    kv["observers"] = observers;
    kv["f_center"] = io::format_double(f_center);
    kv["f_sigma"] = io::format_double(f_sigma);
    kv["seed"] = std::to_string(seed);
    kv["tol"] = io::format_double(tol);
    return kv;
}

std::complex<double> parse_complex(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) t.push_back(c);
    if (t.empty()) throw ConstructionError("empty complex literal");
    if (t.back() != 'i' && t.back() != 'I') {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw ConstructionError("bad complex literal: " + s);
        return {v, 0.0};
    }
    t.pop_back();  // strip i
    if (t.empty() || t == "+") return {0.0, 1.0};
    if (t == "-") return {0.0, -1.0};
    // split at the last +/- that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    try {
        if (split == std::string::npos) return {0.0, std::stod(t)};
        double re = std::stod(t.substr(0, split));
        std::string im = t.substr(split);
        if (im == "+") return {re, 1.0};
        if (im == "-") return {re, -1.0};
        return {re, std::stod(im)};
    } catch (const std::exception&) {
        throw ConstructionError("bad complex literal: " + s);
    }
}

namespace {
double parse_t_value(const std::string& tok) {
    if (!tok.empty() && (tok[0] == 'e' || tok[0] == 'E'))
        return std::exp(std::stod(tok.substr(1)));
    return std::stod(tok);
}
} // namespace

std::vector<double> parse_t_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    try {
        if (parts.size() == 1) return {parse_t_value(parts[0])};
        if (parts.size() != 3) throw ConstructionError("t grid must be start:end:count");
        double t0 = parse_t_value(parts[0]), t1 = parse_t_value(parts[1]);
        int n = std::stoi(parts[2]);
        if (n < 1 || t0 <= 0.0 || t1 < t0)
            throw ConstructionError("bad t grid: " + s);
        std::vector<double> ts;
        for (int i = 0; i < n; ++i) {
            double w = n == 1 ? 0.0 : double(i) / (n - 1);
            ts.push_back(std::exp(std::log(t0) + w * (std::log(t1) - std::log(t0))));
        }
        return ts;
    } catch (const ConstructionError&) {
        throw;
    } catch (const std::exception&) {
        throw ConstructionError("bad t grid: " + s);
    }
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConstructionError("bad numeric list: " + s);
        }
    }
    if (vals.empty()) throw ConstructionError("empty numeric list");
    return vals;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        if (config.command == "resonance") return run_resonance(config, out);
        if (config.command == "resolvent") return run_resolvent(config, out);
        if (config.command == "contour") return run_contour(config, out);
        if (config.command == "simulate") return run_simulate(config, out);
        if (config.command == "fit") return run_fit(config, out);
        return run_verify_all(config, out);
    } catch (const std::exception& e) {
        int code = exit_code_for(e);
        err << (code == 2 ? "config error: " : "numerical failure: ") << e.what() << "\n";
        return code;
    }
}

} // namespace logdecay::cli
