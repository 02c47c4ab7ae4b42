#ifndef LOGDECAY_RUN_CONFIG_HPP
#define LOGDECAY_RUN_CONFIG_HPP

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "logdecay/models.hpp"

namespace logdecay::cli {

/// One batch run.  Field names double as CLI flag / config-file key names.
struct RunConfig {
    std::string command;  // resonance | resolvent | contour | simulate | fit | verify-all

    // model
    std::string variant = "free";
    double a = 0.0;
    bool a_set = false;
    double R = 1.0;
    double rho = 1.0;
    double sigma = 0.0;
    bool sigma_set = false;
    int n_index = 1;  // resonance index for the round well
    int mode = 1;

    // numerics
    double h = 0.02;
    double T = 200.0;
    double cfl = 0.85;
    double tol = 1e-8;
    double A = 4.0, C = 1.0, Cprime = 1.0, eta = 0.05;
    std::string b = "-1i";
    std::string t_grid = "e6:e12:4";
    double lambda_min = 1e-4, lambda_max = 1e-1;
    int per_ray = 24;
    std::string observers = "2";
    double f_center = 3.0, f_sigma = 1.2;

    // io & orchestration
    std::string output;
    std::string input;
    std::string kind = "decay";       // fit: expansion | decay
    std::string law = "t-over-log";   // fit: t-over-log | log-power
    int log_power = 1;
    double noise_frac = 0.0;
    long seed = 0;
    int workers = 0;
    bool plot_script = true;
    std::vector<int> only;

    void validate() const;  // throws ConstructionError/SpecError on bad values
    models::RadialModel make_model() const;
    std::map<std::string, std::string> metadata() const;
};

/// Exit status 0/2/3 per the documented contract.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::complex<double> parse_complex(const std::string& s);
std::vector<double> parse_t_grid(const std::string& s);
std::vector<double> parse_double_list(const std::string& s);

} // namespace logdecay::cli

#endif
