#include "fea/cli.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fea/experiment.hpp"

namespace fea::cli {

namespace {

struct Options {
    ExperimentConfig cfg;       // numeric fields bind straight to this
    std::string policy = "active";
    std::string sweep;          // comma-separated ints; empty = experiment default
    std::string intention;      // comma-separated doubles; empty = target/sharpness
    std::string config_path;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    for (const std::string& tok : split_list(text)) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": '" + tok + "' is not an integer");
        }
        if (used != tok.size())
            throw std::invalid_argument(flag + ": '" + tok + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const std::string& tok : split_list(text)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": '" + tok + "' is not a number");
        }
        if (used != tok.size())
            throw std::invalid_argument(flag + ": '" + tok + "' is not a number");
        out.push_back(v);
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Reads a flat key=value config file ('#' starts a comment) and turns each
/// entry into a --key=value token. Injecting these before the user's own
/// flags gives config-then-flags precedence without a second parser.
std::vector<std::string> load_config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path, "cannot open config file");
    std::vector<std::string> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument(path + ": line " + std::to_string(line_no) +
                                        ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key[0] == '-')
            throw std::invalid_argument(path + ": line " + std::to_string(line_no) +
                                        ": bad key '" + key + "'");
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

void add_common_options(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config_path, "flat key=value config file")->take_last();
    sub->add_option("--seed", o.cfg.master_seed, "master random seed")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--out", o.cfg.output_dir, "output directory")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--steps", o.cfg.steps, "time steps per run")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--runs", o.cfg.runs, "independent runs (profile)")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--sweep", o.sweep, "comma-separated iteration budgets")->take_last();
    sub->add_option("--threads", o.cfg.threads, "worker threads (profile)")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--psi_init", o.cfg.psi_init, "initial cell")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--world.n", o.cfg.world.n, "number of cells")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--world.rho", o.cfg.world.rho, "motion success probability")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--world.omega", o.cfg.world.omega, "sensor decay rate")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--world.k_max", o.cfg.world.k_max, "peak High-sensation probability")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--world.psi0", o.cfg.world.psi0, "sensor source cell")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--agent.eta", o.cfg.agent.eta, "gradient-descent step size")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--agent.iterations", o.cfg.agent.iterations, "gradient-descent iterations")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--agent.target", o.cfg.agent.target, "intention target cell")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--agent.sharpness", o.cfg.agent.sharpness, "intention sharpness")
        ->capture_default_str()
        ->take_last();
    sub->add_option("--agent.policy", o.policy, "action policy")
        ->check(CLI::IsMember({"active", "random"}))
        ->take_last();
    sub->add_option("--agent.intention", o.intention,
                    "explicit intention vector, comma-separated")
        ->take_last();
    sub->add_flag("--agent.warm_start", o.cfg.agent.warm_start,
                  "start descent from the previous brain state");
}

// The config file is spliced in before CLI11 ever runs, so the subcommand
// name and --config value are located with a plain scan first.
std::vector<std::string> assemble_args(int argc, const char* const* argv) {
    static const std::array<std::string, 4> kSubcommands = {"passive", "active", "compare",
                                                           "profile"};
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    std::size_t sub_idx = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        for (const std::string& name : kSubcommands)
            if (args[i] == name) {
                sub_idx = i;
                break;
            }
        if (sub_idx != args.size()) break;
    }
    if (sub_idx == args.size()) return args;

    std::string config_path;
    for (std::size_t i = sub_idx + 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;

    const std::vector<std::string> tokens = load_config_tokens(config_path);
    args.insert(args.begin() + sub_idx + 1, tokens.begin(), tokens.end());
    return args;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"free-energy agent simulator"};
    app.require_subcommand(1);

    Options o;
    CLI::App* passive = app.add_subcommand("passive", "single run, indifferent intention");
    CLI::App* active = app.add_subcommand("active", "single run, target-seeking intention");
    CLI::App* compare =
        app.add_subcommand("compare", "random walk vs. exact filter at several budgets");
    CLI::App* profile = app.add_subcommand("profile", "visit-frequency profiles over many runs");
    for (CLI::App* sub : {passive, active, compare, profile}) add_common_options(sub, o);

    try {
        std::vector<std::string> args = assemble_args(argc, argv);
        std::vector<const char*> cargv;
        cargv.reserve(args.size() + 1);
        cargv.push_back(argc > 0 ? argv[0] : "fea");
        for (const std::string& s : args) cargv.push_back(s.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());

        o.cfg.agent.policy = o.policy == "random" ? Policy::RandomAction : Policy::Active;
        if (!o.sweep.empty()) o.cfg.sweep = parse_int_list(o.sweep, "--sweep");
        if (!o.intention.empty())
            o.cfg.agent.intention = parse_double_list(o.intention, "--agent.intention");

        if (app.got_subcommand(passive)) {
            run_passive(o.cfg);
            std::cout << "wrote trace.csv, belief.pgm in " << o.cfg.output_dir << '\n';
        } else if (app.got_subcommand(active)) {
            run_active(o.cfg);
            std::cout << "wrote trace.csv, belief.pgm in " << o.cfg.output_dir << '\n';
        } else if (app.got_subcommand(compare)) {
            const ComparisonTable table = run_comparison(o.cfg);
            std::cout << "wrote trace.csv, kl.csv, exact.pgm and " << table.sweep.size()
                      << " belief_<k>.pgm in " << o.cfg.output_dir << '\n';
        } else {
            run_profile(o.cfg);
            std::cout << "wrote profile.csv in " << o.cfg.output_dir << '\n';
        }
        return 0;
    } catch (const CLI::Success& e) {
        return app.exit(e); // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace fea::cli
