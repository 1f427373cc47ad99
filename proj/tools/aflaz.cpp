#include "aflaz/af.hpp"
#include "aflaz/bounds.hpp"
#include "aflaz/chu.hpp"
#include "aflaz/io.hpp"
#include "aflaz/repro.hpp"
#include "aflaz/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace aflaz;

namespace {

std::vector<long long> parse_int_list(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    for (std::string cell; std::getline(ss, cell, ',');) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != cell.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + cell + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what);
    return out;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_text(path, text);
    }
}

int report_checks(const std::vector<CheckOutcome>& checks) {
    std::size_t failed = 0;
    for (const auto& c : checks) failed += c.pass ? 0 : 1;
    std::cerr << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    for (const auto& c : checks) {
        if (!c.pass) std::cerr << "FAILED " << io::to_json(c).dump() << "\n";
    }
    return failed == 0 ? 0 : 1;
}

int run_repro(ExperimentConfig config) {
    const ExperimentResult result = run_experiment(config);
    for (const auto& path : write_experiment(result, config)) std::cerr << "wrote " << path << "\n";
    return report_checks(result.checks);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    return ExperimentConfig::from_json(nlohmann::json::parse(in));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aperiodic ambiguity functions over low-ambiguity zones: bounds, Chu sets and checks"};
    app.require_subcommand(0, 1);
    std::string top_config;
    app.add_option("--config", top_config, "JSON experiment config to run");

    // af
    auto* af = app.add_subcommand("af", "AF surfaces and theta statistics of a sequence file");
    std::string af_in, af_laz, af_out;
    std::string af_method = "auto";
    af->add_option("--in", af_in, "sequence CSV")->required();
    af->add_option("--laz", af_laz, "Zx,Zy")->required();
    af->add_option("--out", af_out, "surface CSV (stdout when omitted)");
    af->add_option("--method", af_method, "auto|direct|transform")
        ->check(CLI::IsMember({"auto", "direct", "transform"}));

    // bounds
    auto* bounds = app.add_subcommand("bounds", "lower bounds on theta_max^2");
    long long b_n = 0, b_m = 0, b_zx = 0, b_zy = 0;
    std::string b_family, b_d = "auto", b_json, b_out;
    std::optional<int> b_q;
    bounds->add_option("--N", b_n, "sequence length")->required();
    bounds->add_option("--M", b_m, "set size")->required();
    bounds->add_option("--zx", b_zx, "delay extent Zx")->required();
    bounds->add_option("--zy", b_zy, "Doppler extent Zy")->required();
    bounds->add_option("--family", b_family, "weight family A|B|C")->check(CLI::IsMember({"A", "B", "C"}));
    bounds->add_option("--q", b_q, "weight support q");
    bounds->add_option("--D", b_d, "auto (exact sweep) or a fixed D");
    bounds->add_option("--out", b_out, "CSV output (stdout when omitted)");
    bounds->add_option("--json", b_json, "JSON mirror of the reports");

    // chu
    auto* chu = app.add_subcommand("chu", "Chu sequence sets and peak-ratio sweeps");
    long long c_n = 0;
    std::string c_roots, c_out, c_sweep, c_format = "iq";
    double c_beta = 0.9;
    chu->add_option("--N", c_n, "sequence length (required unless --sweep)");
    chu->add_option("--roots", c_roots, "a1,a2,...")->required();
    chu->add_option("--format", c_format, "iq|phase")->check(CLI::IsMember({"iq", "phase"}));
    chu->add_option("--out", c_out, "output file (stdout when omitted)");
    chu->add_option("--sweep", c_sweep, "N1,N2,...: emit N,a,ratio,target instead of sequences");
    chu->add_option("--beta", c_beta, "delay fraction of the auto-AF LAZ");

    // verify
    auto* verify = app.add_subcommand("verify", "seeded randomized checks against brute-force oracles");
    std::uint64_t v_seed = 1;
    int v_instances = 25;
    std::string v_out;
    bool v_all_lazs = false;
    verify->add_option("--seed", v_seed, "master seed");
    verify->add_option("--instances", v_instances, "random instances per check family")->check(CLI::PositiveNumber);
    verify->add_flag("--all-laz", v_all_lazs, "cover every LAZ of each random instance");
    verify->add_option("--out", v_out, "JSON report (stdout when omitted)");

    // repro
    auto* repro = app.add_subcommand("repro", "reproduce an experiment");
    std::string r_name, r_out, r_config;
    bool r_svg = false;
    repro->add_option("experiment", r_name, "table1|fig1a|fig1b|fig3|custom")
        ->check(CLI::IsMember({"table1", "fig1a", "fig1b", "fig3", "custom"}));
    repro->add_option("--out", r_out, "output directory");
    repro->add_option("--config", r_config, "JSON experiment config");
    repro->add_flag("--svg", r_svg, "also write an SVG chart");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*af) {
            const std::vector<long long> laz_vals = parse_int_list(af_laz, "LAZ");
            if (laz_vals.size() != 2) throw std::invalid_argument("--laz expects Zx,Zy");
            const LazSpec laz{static_cast<Index>(laz_vals[0]), static_cast<Index>(laz_vals[1])};
            const SequenceSet set = io::read_sequences_file(af_in);
            laz.validate(set.length());
            const SurfaceMethod method = af_method == "direct"      ? SurfaceMethod::direct
                                         : af_method == "transform" ? SurfaceMethod::transform
                                                                    : SurfaceMethod::automatic;
            std::ostringstream surface;
            io::write_surfaces(surface, set, laz, method);
            emit(af_out, surface.str());
            if (!af_out.empty() && af_out != "-") std::cout << io::to_json(theta_report(set, laz, method)).dump(2) << "\n";
            return 0;
        }

        if (*bounds) {
            BoundQuery query;
            query.params = BoundParams{b_n, b_m, b_zx, b_zy, 0};
            if (!b_family.empty()) {
                query.family = b_family == "A" ? WeightFamily::A : b_family == "B" ? WeightFamily::B : WeightFamily::C;
            }
            query.q = b_q;
            if (b_d != "auto") query.d = parse_int_list(b_d, "D").at(0);
            const std::vector<BoundReport> reports = evaluate_bounds(query);
            std::ostringstream csv;
            io::write_bounds_csv(csv, reports);
            emit(b_out, csv.str());
            if (!b_json.empty()) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& r : reports) arr.push_back(io::to_json(r));
                emit(b_json, arr.dump(2) + "\n");
            }
            return 0;
        }

        if (*chu) {
            const std::vector<long long> roots = parse_int_list(c_roots, "root");
            std::ostringstream os;
            if (!c_sweep.empty()) {
                os << "N,a,ratio,target\n";
                for (long long n : parse_int_list(c_sweep, "N")) {
                    for (long long a : roots) {
                        const double ratio = chu_aaf_peak_ratio(n, a, c_beta);
                        const double target = ChuAsymptote::peak_constant / std::sqrt(static_cast<double>(std::llabs(a)));
                        os << n << ',' << a << ',' << io::format_number(ratio) << ',' << io::format_number(target)
                           << '\n';
                    }
                }
            } else {
                if (c_n < 1) throw std::invalid_argument("chu needs --N");
                const ChuSpec spec{c_n, roots};
                io::write_sequences(os, chu_set(spec),
                                    c_format == "phase" ? io::SequenceFormat::phase : io::SequenceFormat::iq);
            }
            emit(c_out, os.str());
            return 0;
        }

        if (*verify) {
            Rng master(v_seed);
            std::vector<CheckOutcome> checks;
            for (int i = 0; i < v_instances; ++i) {
                const std::uint64_t seed = master();
                const Index n = 4 + static_cast<Index>(seed % 61);
                for (auto& c : zero_delay_checks(seed, n)) checks.push_back(c);
            }
            for (int i = 0; i < v_instances; ++i) {
                for (auto& c : gram_chain_checks(master(), 8, 3, v_all_lazs)) checks.push_back(c);
            }
            for (auto& c : search_floor_checks(4, 3, 1)) checks.push_back(c);
            for (auto& c : search_floor_checks(2, 4, 1)) checks.push_back(c);
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& c : checks) arr.push_back(io::to_json(c));
            emit(v_out, arr.dump(2) + "\n");
            return report_checks(checks);
        }

        if (*repro) {
            ExperimentConfig config;
            if (!r_config.empty()) {
                config = load_config(r_config);
                if (!r_name.empty() && r_name != config.experiment) {
                    throw std::invalid_argument("config experiment '" + config.experiment +
                                                "' differs from requested '" + r_name + "'");
                }
            } else {
                if (r_name.empty()) throw std::invalid_argument("repro needs an experiment name or --config");
                config = ExperimentConfig::defaults(r_name);
            }
            if (!r_out.empty()) config.out_dir = r_out;
            if (r_svg) config.svg = true;
            return run_repro(config);
        }

        if (!top_config.empty()) return run_repro(load_config(top_config));
        std::cerr << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
