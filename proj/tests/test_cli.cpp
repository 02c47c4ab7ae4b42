#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "logdecay/errors.hpp"
#include "logdecay/io.hpp"
#include "logdecay/run_config.hpp"

using namespace logdecay;
using cli::RunConfig;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("complex literal parsing") {
    CHECK(cli::parse_complex("-1i") == std::complex<double>(0.0, -1.0));
    CHECK(cli::parse_complex("2") == std::complex<double>(2.0, 0.0));
    CHECK(cli::parse_complex("1+2i") == std::complex<double>(1.0, 2.0));
    CHECK(cli::parse_complex("-0.5-0.7i") == std::complex<double>(-0.5, -0.7));
    CHECK(cli::parse_complex("1e-3i") == std::complex<double>(0.0, 1e-3));
    CHECK_THROWS_AS(cli::parse_complex("banana"), ConstructionError);
}

TEST_CASE("time grid parsing") {
    auto ts = cli::parse_t_grid("e6:e12:4");
    REQUIRE(ts.size() == 4);
    CHECK(ts[0] == doctest::Approx(std::exp(6.0)));
    CHECK(ts[3] == doctest::Approx(std::exp(12.0)));
    CHECK(ts[1] / ts[0] == doctest::Approx(ts[2] / ts[1]));
    auto lin = cli::parse_t_grid("100:1000:3");
    CHECK(lin[1] == doctest::Approx(std::sqrt(100.0 * 1000.0)));
    CHECK_THROWS_AS(cli::parse_t_grid("10:2:5"), ConstructionError);
    CHECK_THROWS_AS(cli::parse_t_grid("1:2"), ConstructionError);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.command = "warp";
    CHECK_THROWS_AS(cfg.validate(), ConstructionError);
    cfg.command = "resonance";
    cfg.variant = "cube";
    CHECK_THROWS_AS(cfg.validate(), ConstructionError);
    cfg.variant = "round-well";
    cfg.tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConstructionError);
}

TEST_CASE("resonance command output and exit codes") {
    RunConfig cfg;
    cfg.command = "resonance";
    cfg.variant = "round-well";
    cfg.R = 1.0;
    cfg.n_index = 1;
    std::ostringstream out, err;
    CHECK(cli::run(cfg, out, err) == 0);
    CHECK(out.str().find("a = 2.4048255576957729") != std::string::npos);
    CHECK(out.str().find("status = pass") != std::string::npos);

    RunConfig ring;
    ring.command = "resonance";
    ring.variant = "delta-ring";
    ring.R = 2.0;
    std::ostringstream out2, err2;
    CHECK(cli::run(ring, out2, err2) == 0);
    CHECK(out2.str().find("a = -1") != std::string::npos);

    RunConfig bad;
    bad.command = "resonance";
    bad.variant = "free";
    std::ostringstream out3, err3;
    CHECK(cli::run(bad, out3, err3) == 2);  // schema violation
}

TEST_CASE("contour command determinism: identical config, identical bytes") {
    RunConfig cfg;
    cfg.command = "contour";
    cfg.b = "-1i";
    cfg.t_grid = "e6:e8:3";
    cfg.workers = 2;
    cfg.output = "/tmp/logdecay_test_contour_a.csv";
    std::ostringstream out, err;
    REQUIRE(cli::run(cfg, out, err) == 0);
    cfg.output = "/tmp/logdecay_test_contour_b.csv";
    REQUIRE(cli::run(cfg, out, err) == 0);
    std::string a = slurp("/tmp/logdecay_test_contour_a.csv");
    std::string b = slurp("/tmp/logdecay_test_contour_b.csv");
    // metadata differs only through the output path, which is not recorded
    CHECK(a == b);
    CHECK(a.find("# command = contour") != std::string::npos);
    CHECK(a.find("t,J,J_norm") != std::string::npos);
}

TEST_CASE("resolvent then expansion fit round trip through files") {
    RunConfig cfg;
    cfg.command = "resolvent";
    cfg.variant = "round-well";
    cfg.R = 1.0;
    cfg.n_index = 1;  // resonant amplitude
    cfg.mode = 1;
    cfg.per_ray = 10;
    cfg.lambda_min = 1e-4;
    cfg.lambda_max = 1e-2;
    cfg.output = "/tmp/logdecay_test_resolvent.csv";
    std::ostringstream out, err;
    REQUIRE(cli::run(cfg, out, err) == 0);

    RunConfig fit;
    fit.command = "fit";
    fit.kind = "expansion";
    fit.input = "/tmp/logdecay_test_resolvent.csv";
    fit.output = "/tmp/logdecay_test_fit.json";
    std::ostringstream out2, err2;
    REQUIRE(cli::run(fit, out2, err2) == 0);
    std::string rep = slurp("/tmp/logdecay_test_fit.json");
    CHECK(rep.find("\"M\": 1") != std::string::npos);
}

TEST_CASE("numerical failures exit with status 3") {
    RunConfig cfg;
    cfg.command = "contour";
    cfg.b = "-1i";
    cfg.t_grid = "e6:e8:2";
    cfg.eta = 3.0;  // violates eta < r(t): caught as a spec violation -> 2
    cfg.output = "/tmp/logdecay_test_bad.csv";
    std::ostringstream out, err;
    CHECK(cli::run(cfg, out, err) == 2);
}

TEST_CASE("csv reader rejects malformed input with a line number") {
    {
        std::ofstream f("/tmp/logdecay_test_bad_csv.csv");
        f << "t,u\n1.0,2.0\n1.0,oops\n";
    }
    try {
        io::read_csv("/tmp/logdecay_test_bad_csv.csv");
        CHECK(false);
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

#ifdef LOGDECAY_BIN
TEST_CASE("binary: config file with an unknown key exits 2") {
    {
        std::ofstream f("/tmp/logdecay_test_cfg.ini");
        f << "t-grid=e6:e8:2\nwarp-speed=9\n";
    }
    std::string cmd = std::string(LOGDECAY_BIN) +
                      " contour --config /tmp/logdecay_test_cfg.ini"
                      " --output /tmp/logdecay_test_cfg.csv >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("binary: config file drives a run") {
    {
        std::ofstream f("/tmp/logdecay_test_cfg2.ini");
        f << "b=-1i\nt-grid=e6:e7:2\n";
    }
    std::string cmd = std::string(LOGDECAY_BIN) +
                      " contour --config /tmp/logdecay_test_cfg2.ini"
                      " --output /tmp/logdecay_test_cfg2.csv >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
}
#endif
