#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sos/error.hpp"
#include "sos/parallel.hpp"
#include "sos_cli/commands.hpp"
#include "sos_cli/config.hpp"

using namespace sos;
using namespace sos::cli;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string experiment;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "key = value config file, or any output file of this tool");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--out", o.out, "output path (default: stdout)");
    sub->add_option("--threads", o.threads, "worker thread cap (0: all cores)");
    sub->add_option("--set", o.overrides, "override a config entry, key=value")->take_all();
}

ExperimentConfig resolve(const std::string& command, const Options& o) {
    ExperimentConfig c;
    if (!o.experiment.empty()) c = experiment_preset(o.experiment);
    if (!o.config.empty()) c = load_config(o.config, c);
    c.command = command;
    if (!o.experiment.empty()) c.experiment = o.experiment;
    for (const auto& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InputError("--set expects key=value, got: " + kv);
        c.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) c.seed = *o.seed;
    if (o.threads) c.threads = *o.threads;
    if (!o.out.empty()) c.out = o.out;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Disordered SOS pinning laboratory"};
    app.require_subcommand(1);
    Options o;
    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const ExperimentConfig&, std::ostream&);
    };
    const Entry entries[] = {
        {"contours", "extract cylinders from a height grid, or run a random round-trip batch", cmd_contours},
        {"oracle", "exact partition functions, theta1 and annealed bounds", cmd_oracle},
        {"mcmc", "heat-bath free-energy curve or a resumable single chain", cmd_mcmc},
        {"gfunc", "G, kinks and the max-p bounds", cmd_gfunc},
        {"experiment", "canned experiments: bijection, peaks, localization, layering", cmd_experiment},
    };
    std::vector<std::pair<CLI::App*, const Entry*>> subs;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, o);
        if (std::string(e.name) == "experiment")
            sub->add_option("--experiment", o.experiment, "experiment name")->check(CLI::IsMember(experiment_names()));
        subs.emplace_back(sub, &e);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        for (const auto& [sub, e] : subs) {
            if (!sub->parsed()) continue;
            const ExperimentConfig c = resolve(e->name, o);
            set_thread_cap(c.threads);
            int violations = 0;
            if (c.out.empty()) {
                violations = e->run(c, std::cout);
            } else {
                std::ofstream os(c.out);
                if (!os) throw InputError("cannot write " + c.out);
                violations = e->run(c, os);
            }
            if (violations) std::cerr << violations << " check(s) violated\n";
            return violations ? 1 : 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
