// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line binary: exit codes, artifacts,
// determinism across worker counts.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

std::string cli_path() {
    const char* p = std::getenv("FRACSIM_CLI");
    REQUIRE_MESSAGE(p != nullptr, "FRACSIM_CLI must point at the fracsim binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[512];
    while (fgets(buf, sizeof(buf), pipe)) out += buf;
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    f << content;
}

}  // namespace

TEST_CASE("filter-check certifies the reference localization factors") {
    const auto r = run("filter-check --overlap 4 --n 256");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("L = 1, M = 4") != std::string::npos);
}

TEST_CASE("filter-check rejects unsupported overlap with a usage error") {
    const auto r = run("filter-check --overlap 3");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("unsupported overlap") != std::string::npos);
}

TEST_CASE("filter-check reports wider bounds informationally") {
    const auto r = run("filter-check --overlap 4 --n 256 --threshold 1e-6");
    CHECK(r.exit_code == 0);  // gate stays at the certification threshold
    CHECK(r.output.find("threshold 1e-06") != std::string::npos);
}

TEST_CASE("ici-check passes for the proposed scheme and fails for the baseline") {
    const auto ok = run("ici-check --iafo 0,0.1,0.3 --nf 16 --n 64 --m-half 12");
    CHECK(ok.exit_code == 0);

    const auto trivially = run("ici-check --iafo 0 --nf 16 --n 64 --m-half 12");
    CHECK(trivially.exit_code == 0);

    const auto bad = run("ici-check --scheme naive --iafo 0.3 --nf 16 --n 64 --m-half 12");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("residual") != std::string::npos);
}

TEST_CASE("ber-sweep: determinism, workers, env seed, validation") {
    const std::string cfg = "/tmp/fracsim_cli_sweep.cfg";
    write_file(cfg,
               "scheme = frac\nchannel = flat\nsnr_db = 10\niafo_norm = 0\n"
               "nf_half = 16\ntrials = 12\nseed = 5\nn = 64\nm_half = 12\n");

    const auto r1 = run("ber-sweep --config " + cfg + " --out /tmp/fracsim_cli_a.csv --workers 1");
    CHECK(r1.exit_code == 0);
    const auto r8 = run("ber-sweep --config " + cfg + " --out /tmp/fracsim_cli_b.csv --workers 8");
    CHECK(r8.exit_code == 0);
    CHECK(slurp("/tmp/fracsim_cli_a.csv") == slurp("/tmp/fracsim_cli_b.csv"));

    // FRAC_SIM_SEED wins over --seed
    const auto renv = run("ber-sweep --config " + cfg +
                          " --seed 777 --out /tmp/fracsim_cli_c.csv");
    CHECK(renv.exit_code == 0);
    setenv("FRAC_SIM_SEED", "5", 1);
    const auto renv2 = run("ber-sweep --config " + cfg +
                           " --seed 777 --out /tmp/fracsim_cli_d.csv");
    unsetenv("FRAC_SIM_SEED");
    CHECK(renv2.exit_code == 0);
    CHECK(slurp("/tmp/fracsim_cli_d.csv") == slurp("/tmp/fracsim_cli_a.csv"));
    CHECK(slurp("/tmp/fracsim_cli_c.csv") != slurp("/tmp/fracsim_cli_a.csv"));

    write_file("/tmp/fracsim_cli_zero.cfg",
               "scheme = frac\nchannel = flat\nsnr_db = 10\niafo_norm = 0\n"
               "nf_half = 16\ntrials = 0\nn = 64\nm_half = 12\n");
    const auto rz = run("ber-sweep --config /tmp/fracsim_cli_zero.cfg --out /tmp/fracsim_z.csv");
    CHECK(rz.exit_code == 2);

    const auto rmiss = run("ber-sweep --config /nonexistent.cfg --out /tmp/fracsim_z.csv");
    CHECK(rmiss.exit_code == 2);

    const auto rnothing = run("ber-sweep --out /tmp/fracsim_z.csv");
    CHECK(rnothing.exit_code == 2);
}

TEST_CASE("presets configure the figure grids") {
    const auto r = run(
        "ber-sweep --preset fig3-flat --trials 1 --out /tmp/fracsim_cli_fig3.csv --workers 2");
    CHECK(r.exit_code == 0);
    const auto body = slurp("/tmp/fracsim_cli_fig3.csv");
    // 7 SNR points x 3 IAFO values at nf_half 128
    int rows = 0;
    size_t pos = 0;
    while ((pos = body.find("\nfrac,flat,", pos)) != std::string::npos) {
        ++rows;
        ++pos;
    }
    CHECK(rows == 21);
    CHECK(body.find(",128,") != std::string::npos);

    const auto rbad = run("ber-sweep --preset fig9-flat --out /tmp/fracsim_z.csv");
    CHECK(rbad.exit_code == 2);
}

TEST_CASE("plot renders the sweep and rejects malformed csv") {
    const std::string cfg = "/tmp/fracsim_cli_plot.cfg";
    write_file(cfg,
               "scheme = frac\nchannel = flat\nsnr_db = 0, 10\niafo_norm = 0, 0.3\n"
               "nf_half = 16\ntrials = 8\nseed = 5\nn = 64\nm_half = 12\n");
    const auto rs = run("ber-sweep --config " + cfg + " --out /tmp/fracsim_cli_plot.csv");
    REQUIRE(rs.exit_code == 0);

    const auto rp = run("plot /tmp/fracsim_cli_plot.csv --x snr --out /tmp/fracsim_cli_plot.svg");
    CHECK(rp.exit_code == 0);
    const auto svg = slurp("/tmp/fracsim_cli_plot.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);

    write_file("/tmp/fracsim_cli_bad.csv", "not,a,ber\n1,2,3\n");
    const auto rb = run("plot /tmp/fracsim_cli_bad.csv --out /tmp/fracsim_cli_bad.svg");
    CHECK(rb.exit_code == 2);
    CHECK(rb.output.find("line") != std::string::npos);

    write_file("/tmp/fracsim_cli_empty.csv", "");
    const auto re = run("plot /tmp/fracsim_cli_empty.csv --out /tmp/x.svg");
    CHECK(re.exit_code == 2);
}

TEST_CASE("unknown subcommand is a usage error") {
    const auto r = run("frobnicate");
    CHECK(r.exit_code == 2);
}
