// Command-line entry point: kernel/profile grids, exterior studies, exact
// sampling, and the verification suites, writing CSV/JSON artifacts.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 runtime
// failure (numerical or I/O).

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyg/asymptotics.hpp"
#include "polyg/berezin.hpp"
#include "polyg/dpp.hpp"
#include "polyg/kernel.hpp"
#include "polyg/verify.hpp"

namespace {

using cplx = std::complex<double>;

// accepts forms like "0", "-1.3", "0.6i", "0.4+0.2i", "1-0.7i"
cplx parse_complex(const std::string& text) {
    const std::string s = text;
    if (s.empty()) throw CLI::ValidationError("empty complex literal");
    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // split off the real part if a sign separates two terms
        for (size_t pos = body.size(); pos-- > 1;) {
            if ((body[pos] == '+' || body[pos] == '-') &&
                body[pos - 1] != 'e' && body[pos - 1] != 'E') {
                const double re = std::stod(body.substr(0, pos));
                std::string imag_part = body.substr(pos);
                if (imag_part == "+" || imag_part == "-") imag_part += "1";
                return {re, std::stod(imag_part)};
            }
        }
        std::string imag_part = body.empty() ? "1" : body;
        if (imag_part == "+" || imag_part == "-") imag_part += "1";
        return {0.0, std::stod(imag_part)};
    }
    return {std::stod(s), 0.0};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output path: " + path);
    return os;
}

struct GridArgs {
    double extent = 2.0;
    int resolution = 64;
};

void validate_grid(const GridArgs& grid) {
    if (!(grid.extent > 0.0)) throw CLI::ValidationError("--extent must be positive");
    if (grid.resolution < 1 || grid.resolution > 4096)
        throw CLI::ValidationError("--res must lie in [1, 4096]");
}

int cmd_kernel(const polyg::kernel::EnsembleParams& p, const GridArgs& grid,
               cplx w, const std::string& out_path) {
    p.validate();
    validate_grid(grid);
    polyg::kernel::KernelEvaluator eval(p);
    auto os = open_output(out_path);
    os << "z_re,z_im,zhe_re,zhe_im,fock_re,fock_im,gap\n";
    char line[320];
    const double cell = 2.0 * grid.extent / grid.resolution;
    for (int row = 0; row < grid.resolution; ++row) {
        const double y = -grid.extent + (row + 0.5) * cell;
        for (int col = 0; col < grid.resolution; ++col) {
            const double x = -grid.extent + (col + 0.5) * cell;
            const cplx z(x, y);
            const cplx zhe = eval.zhe(z, w);
            const cplx fock = polyg::kernel::corr_kernel_fock(p.m, p.q, z, w);
            std::snprintf(line, sizeof(line),
                          "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", x, y,
                          zhe.real(), zhe.imag(), fock.real(), fock.imag(),
                          std::abs(zhe - fock));
            os << line;
        }
    }
    return 0;
}

int cmd_blowup(const polyg::kernel::EnsembleParams& p, const GridArgs& grid,
               cplx center, const std::string& out_path) {
    p.validate();
    validate_grid(grid);
    polyg::berezin::BlowupFrame frame{center};
    auto sweep = polyg::berezin::sweep_blowup(p, frame, grid.extent, grid.resolution);
    {
        auto os = open_output(out_path);
        polyg::berezin::write_profile_csv(os, sweep.samples);
    }
    const char* region = "interior";
    if (frame.classify() == polyg::berezin::BlowupFrame::Region::boundary)
        region = "boundary";
    if (frame.classify() == polyg::berezin::BlowupFrame::Region::exterior)
        region = "exterior";
    nlohmann::json summary{{"m", p.m},
                           {"n", p.n},
                           {"q", p.q},
                           {"center_re", center.real()},
                           {"center_im", center.imag()},
                           {"region", region},
                           {"extent", grid.extent},
                           {"resolution", grid.resolution},
                           {"l1_gap", sweep.l1_gap},
                           {"sup_gap", sweep.sup_gap}};
    auto os = open_output(out_path + ".summary.json");
    os << summary.dump(2) << "\n";
    return 0;
}

int cmd_exterior(const polyg::kernel::EnsembleParams& p, cplx z, double rho,
                 int lmax, const std::string& out_path) {
    p.validate();
    if (lmax < 0 || lmax > 16) throw CLI::ValidationError("--lmax must lie in [0, 16]");
    const auto mass = polyg::asymptotics::exterior_mass_outside(p, z, rho);
    nlohmann::json report{{"m", p.m},
                          {"n", p.n},
                          {"q", p.q},
                          {"z_re", z.real()},
                          {"z_im", z.imag()},
                          {"rho", rho},
                          {"mass_outside", mass.value},
                          {"quadrature_warning", mass.accuracy_warning}};
    nlohmann::json moments = nlohmann::json::array();
    for (int l = 0; l <= lmax; ++l) {
        const cplx value = polyg::asymptotics::exterior_moment(p, z, l);
        const cplx harm = polyg::asymptotics::harmonic_moment(z, l);
        const cplx target = std::pow(z, -l);
        moments.push_back({{"l", l},
                           {"moment_re", value.real()},
                           {"moment_im", value.imag()},
                           {"harmonic_re", harm.real()},
                           {"harmonic_im", harm.imag()},
                           {"target_re", target.real()},
                           {"target_im", target.imag()},
                           {"abs_error", std::abs(value - target)}});
    }
    report["moments"] = std::move(moments);
    auto os = open_output(out_path);
    os << report.dump(2) << "\n";
    return 0;
}

int cmd_sample(const polyg::kernel::EnsembleParams& p, std::uint64_t seed,
               const std::string& out_path) {
    p.validate();
    if (p.dim() > 5000)
        throw CLI::ValidationError("sampling is capped at n*q <= 5000 points");
    const auto config = polyg::dpp::sample_configuration(p, seed);
    {
        auto os = open_output(out_path);
        polyg::dpp::write_configuration_csv(os, config);
    }
    auto os = open_output(out_path + ".meta.json");
    os << polyg::dpp::configuration_metadata_json(config) << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, bool fast, const std::string& out_path) {
    if (!polyg::verify::is_suite(suite))
        throw CLI::ValidationError("unknown suite: " + suite);
    polyg::verify::Options opt;
    opt.fast = fast;
    const auto reports = polyg::verify::run_suite(suite, opt);
    const std::string json = polyg::asymptotics::reports_to_json(reports);
    if (out_path.empty()) {
        std::cout << json << "\n";
    } else {
        auto os = open_output(out_path);
        os << json << "\n";
    }
    int failures = 0;
    for (const auto& r : reports) {
        std::fprintf(stderr, "%-34s %s observed=%.6g tolerance=%.6g\n",
                     r.law.c_str(), r.passed ? "pass" : "FAIL", r.observed_error,
                     r.tolerance);
        if (!r.passed) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyanalytic Ginibre ensemble: kernels, blow-ups, sampling, verification"};
    app.require_subcommand(1);

    polyg::kernel::EnsembleParams params;
    GridArgs grid;
    std::string center_str = "0";
    std::string w_str = "0";
    std::string z_str = "1.3";
    std::string out_path;
    std::string suite = "all";
    double rho = 1.1;
    int lmax = 4;
    std::uint64_t seed = 1;
    bool fast = false;

    auto add_params = [&params](CLI::App* cmd) {
        cmd->add_option("--m", params.m, "weight scale m")->required();
        cmd->add_option("--n", params.n, "analytic degree bound n")->required();
        cmd->add_option("--q", params.q, "polyanalytic degree q")->required();
    };

    CLI::App* kernel_cmd =
        app.add_subcommand("kernel", "correlation kernel on a z-grid against a fixed w");
    add_params(kernel_cmd);
    kernel_cmd->add_option("--w", w_str, "fixed second argument (complex literal)");
    kernel_cmd->add_option("--extent", grid.extent, "half-width of the grid");
    kernel_cmd->add_option("--res", grid.resolution, "grid points per axis");
    kernel_cmd->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* blowup_cmd =
        app.add_subcommand("blowup", "blow-up Berezin density against its limit profile");
    add_params(blowup_cmd);
    blowup_cmd->add_option("--center", center_str, "blow-up center (complex literal)");
    blowup_cmd->add_option("--extent", grid.extent, "half-width of the xi grid");
    blowup_cmd->add_option("--res", grid.resolution, "grid points per axis");
    blowup_cmd->add_option("--out", out_path, "output CSV path (summary JSON beside it)")
        ->required();

    CLI::App* exterior_cmd =
        app.add_subcommand("exterior", "exterior-point Berezin mass and moments");
    add_params(exterior_cmd);
    exterior_cmd->add_option("--z", z_str, "exterior center (complex literal)");
    exterior_cmd->add_option("--rho", rho, "mass-outside radius (> 1)");
    exterior_cmd->add_option("--lmax", lmax, "largest moment order");
    exterior_cmd->add_option("--out", out_path, "output JSON path")->required();

    CLI::App* sample_cmd =
        app.add_subcommand("sample", "draw one exact configuration of the process");
    add_params(sample_cmd);
    sample_cmd->add_option("--seed", seed, "sampler seed");
    sample_cmd->add_option("--out", out_path, "points CSV path (metadata JSON beside it)")
        ->required();

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run a verification suite and emit the JSON report");
    verify_cmd->add_option("--suite", suite,
                           "specfun|kernels|bulk|boundary|exterior|dpp|transforms|all");
    verify_cmd->add_flag("--fast", fast, "reduced m-grid (<= 200)");
    verify_cmd->add_option("--out", out_path, "report path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (kernel_cmd->parsed())
            return cmd_kernel(params, grid, parse_complex(w_str), out_path);
        if (blowup_cmd->parsed())
            return cmd_blowup(params, grid, parse_complex(center_str), out_path);
        if (exterior_cmd->parsed())
            return cmd_exterior(params, parse_complex(z_str), rho, lmax, out_path);
        if (sample_cmd->parsed()) return cmd_sample(params, seed, out_path);
        if (verify_cmd->parsed()) return cmd_verify(suite, fast, out_path);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime failure: %s\n", e.what());
        return 3;
    }
    return 2;
}
