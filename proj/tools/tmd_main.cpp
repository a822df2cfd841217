// Command-line front end: distributions, efficiency sweeps, coherent-state
// curves, Monte Carlo sampling, histogram fitting, and the layout dump.
//
// Exit codes: 0 success, 2 usage error, 3 numeric or degenerate-input error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmd/classical.hpp"
#include "tmd/coherent.hpp"
#include "tmd/detection.hpp"
#include "tmd/fit.hpp"
#include "tmd/io.hpp"
#include "tmd/montecarlo.hpp"
#include "tmd/network.hpp"
#include "tmd/version.hpp"

namespace {

std::string build_invocation(int argc, char** argv) {
    std::ostringstream joined;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) joined << ' ';
        joined << argv[i];
    }
    joined << " | " << tmd::kToolName << ' ' << tmd::kVersion;
    return joined.str();
}

// Output is assembled in memory first; a file only ever appears complete.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << content;
    if (!file.flush()) throw std::runtime_error("failed writing output file: " + path);
}

void annotate(nlohmann::json& doc, const std::string& invocation) {
    doc["invocation"] = invocation;
    doc["version"] = std::string(tmd::kToolName) + " " + tmd::kVersion;
}

struct PmnArgs {
    int n = 0;
    double eta = 0.43;
    double f = 0.97;
    std::string out;
};

struct SweepArgs {
    std::vector<int> n_list;
    double eta_min = 0.0;
    double eta_max = 1.0;
    int steps = 21;
    double f = 0.97;
    std::string out;
};

struct CoherentArgs {
    double eta_l_mu0 = 0.0;
    std::string out;
};

struct McArgs {
    std::string mode;
    std::int64_t shots = 1000000;
    std::uint64_t seed = 1;
    int n = -1;
    double f = 0.97;
    double eta = 0.43;
    double mu0 = -1.0;
    std::string loss = "equal";
    double l = 0.55;
    std::string out;
};

struct FitArgs {
    std::string in;
    std::string out;
};

void run_pmn(const PmnArgs& args, const std::string& invocation) {
    const tmd::TmdLayout layout = tmd::build_layout();
    const tmd::FockState state = tmd::propagate(tmd::NetworkConfig{args.f, args.n});
    const tmd::ClickDistribution dist =
        tmd::click_distribution_from_state(state, layout, tmd::DetectorModel{args.eta});

    std::ostringstream csv;
    tmd::write_distribution_csv(csv, dist, invocation);
    write_output(args.out, csv.str());
}

void run_sweep(const SweepArgs& args, const std::string& invocation) {
    if (args.steps > 1 && args.eta_max < args.eta_min) {
        throw CLI::ValidationError("sweep", "--eta-max must be >= --eta-min");
    }
    const tmd::TmdLayout layout = tmd::build_layout();
    std::vector<tmd::SweepRow> rows;
    for (int n : args.n_list) {
        const tmd::FockState state = tmd::propagate(tmd::NetworkConfig{args.f, n});
        for (int i = 0; i < args.steps; ++i) {
            const double eta =
                args.steps == 1
                    ? args.eta_min
                    : args.eta_min + (args.eta_max - args.eta_min) * i / (args.steps - 1.0);
            const double p =
                tmd::click_distribution_from_state(state, layout, tmd::DetectorModel{eta})[n];
            rows.push_back(tmd::SweepRow{eta, n, p});
        }
    }

    std::ostringstream csv;
    tmd::write_sweep_csv(csv, rows, invocation);
    write_output(args.out, csv.str());
}

void run_coherent(const CoherentArgs& args, const std::string& invocation) {
    const tmd::CoherentParams params = tmd::CoherentParams::from_eta_l_mu0(args.eta_l_mu0);
    tmd::ClickDistribution dist(tmd::click_distribution(params));

    std::ostringstream csv;
    tmd::write_distribution_csv(csv, dist, invocation);
    write_output(args.out, csv.str());
}

void run_mc(const McArgs& args, const std::string& invocation) {
    tmd::McConfig config;
    config.shots = args.shots;
    config.seed = args.seed;

    tmd::McResult result;
    if (args.mode == "fock") {
        if (args.n < 0) throw CLI::ValidationError("mc", "--n is required for --mode fock");
        config.params = tmd::FockMcParams{args.n, args.f, args.eta};
        result = tmd::sample_fock_clicks(config);
    } else {
        if (args.mu0 < 0.0) {
            throw CLI::ValidationError("mc", "--mu0 is required for --mode coherent");
        }
        const tmd::CoherentLossMode loss_mode = args.loss == "perbin"
                                                    ? tmd::CoherentLossMode::PerBin
                                                    : tmd::CoherentLossMode::Equal;
        config.params = tmd::CoherentMcParams{args.mu0, args.eta, loss_mode, args.l, args.f};
        result = tmd::sample_coherent_clicks(config);
    }

    std::ostringstream csv;
    tmd::write_histogram_csv(csv, result.histogram, invocation);
    write_output(args.out, csv.str());
}

void run_fit(const FitArgs& args, const std::string& invocation) {
    std::ifstream in(args.in);
    if (!in) throw std::runtime_error("cannot open histogram file: " + args.in);
    const tmd::ClickHistogram hist = tmd::read_histogram_csv(in);
    const tmd::FitResult result = tmd::fit_histogram(hist);

    nlohmann::json doc = tmd::fit_result_to_json(result);
    annotate(doc, invocation);
    write_output(args.out, doc.dump(2) + "\n");
}

void run_layout(const std::string& out, const std::string& invocation) {
    nlohmann::json doc = tmd::layout_to_json(tmd::build_layout());
    annotate(doc, invocation);
    write_output(out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string invocation = build_invocation(argc, argv);

    CLI::App app{"time-multiplexed photon-number-resolving detector simulator"};
    app.set_version_flag("--version", std::string(tmd::kToolName) + " " + tmd::kVersion);
    app.require_subcommand(1);

    PmnArgs pmn_args;
    auto* pmn = app.add_subcommand("pmn", "P(m|n) for a number state through the full pipeline");
    pmn->add_option("--n", pmn_args.n, "incident photon number")
        ->required()
        ->check(CLI::Range(0, 16));
    pmn->add_option("--eta", pmn_args.eta, "detector efficiency")->check(CLI::Range(0.0, 1.0));
    pmn->add_option("--f", pmn_args.f, "fiber transmission per delay length")
        ->check(CLI::Range(0.0, 1.0));
    pmn->add_option("--out", pmn_args.out, "output CSV path (stdout when omitted)");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "P(n|n) versus detector efficiency");
    sweep->add_option("--n-list", sweep_args.n_list, "photon numbers, comma separated")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(0, 16));
    sweep->add_option("--eta-min", sweep_args.eta_min)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--eta-max", sweep_args.eta_max)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--steps", sweep_args.steps, "grid points")->check(CLI::Range(1, 100000));
    sweep->add_option("--f", sweep_args.f)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--out", sweep_args.out);

    CoherentArgs coherent_args;
    auto* coherent =
        app.add_subcommand("coherent", "analytic click distribution for a coherent input");
    coherent->add_option("--eta-l-mu0", coherent_args.eta_l_mu0, "eta * l * mu0 product")
        ->required()
        ->check(CLI::NonNegativeNumber);
    coherent->add_option("--out", coherent_args.out);

    McArgs mc_args;
    auto* mc = app.add_subcommand("mc", "Monte Carlo click sampling");
    mc->add_option("--mode", mc_args.mode, "fock or coherent")
        ->required()
        ->check(CLI::IsMember({"fock", "coherent"}));
    mc->add_option("--shots", mc_args.shots)->check(CLI::PositiveNumber);
    mc->add_option("--seed", mc_args.seed);
    mc->add_option("--n", mc_args.n, "photon number (fock mode)")->check(CLI::Range(0, 1000));
    mc->add_option("--f", mc_args.f, "fiber transmission (fock / perbin loss)")
        ->check(CLI::Range(0.0, 1.0));
    mc->add_option("--eta", mc_args.eta)->check(CLI::Range(0.0, 1.0));
    mc->add_option("--mu0", mc_args.mu0, "mean photon number (coherent mode)");
    mc->add_option("--loss", mc_args.loss, "equal or perbin (coherent mode)")
        ->check(CLI::IsMember({"equal", "perbin"}));
    mc->add_option("--l", mc_args.l, "average transmission (equal loss)")
        ->check(CLI::Range(0.0, 1.0));
    mc->add_option("--out", mc_args.out);

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "least-squares fit of a click histogram");
    fit->add_option("--in", fit_args.in, "histogram CSV")->required();
    fit->add_option("--out", fit_args.out, "result JSON path (stdout when omitted)");

    std::string layout_out;
    auto* layout = app.add_subcommand("layout", "mode table as JSON");
    layout->add_option("--out", layout_out);

    try {
        app.parse(argc, argv);
        if (pmn->parsed()) run_pmn(pmn_args, invocation);
        if (sweep->parsed()) run_sweep(sweep_args, invocation);
        if (coherent->parsed()) run_coherent(coherent_args, invocation);
        if (mc->parsed()) run_mc(mc_args, invocation);
        if (fit->parsed()) run_fit(fit_args, invocation);
        if (layout->parsed()) run_layout(layout_out, invocation);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
