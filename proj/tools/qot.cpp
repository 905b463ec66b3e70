#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qot/cli.hpp"

namespace {

struct Flags {
    bool channel = false, channel2 = false, resource = false, group = false, states = false,
         suite = false, mode = false, ascent = false, samples = false, mixing = false,
         via_states = false;
};

void add_options(CLI::App* sub, qot::cli::RunConfig& c, std::vector<std::string>& tols, const Flags& f) {
    if (f.channel)
        sub->add_option("--channel", c.channel,
                        "depolarizing:d:p | pauli:px:py:pz | identity:d | random:seed[:laziness] | "
                        "unitary:file | replacer:file | channel JSON path");
    if (f.channel2) sub->add_option("--channel2", c.channel2, "second channel (same formats)");
    if (f.resource) {
        sub->add_option("--resource", c.resource, "pauli | pauli-xy | single:file | resource JSON path")
            ->capture_default_str();
        sub->add_option("--kind", c.kind, "linf | l2")->capture_default_str();
        sub->add_option("--amplification", c.amplification, "matrix level n of 1_n (x) S")
            ->capture_default_str();
    }
    if (f.group) sub->add_option("--group", c.group, "zn:n | dn:n | s3 | s4 | group JSON path");
    if (f.states) {
        sub->add_option("--rho", c.rho, "basis:d:k | mixed:d | matrix JSON path");
        sub->add_option("--sigma", c.sigma, "basis:d:k | mixed:d | matrix JSON path");
    }
    if (f.suite) sub->add_option("--suite", c.suite, "all | cost | lip | entropy | group | geometry | mixing")
                     ->required();
    if (f.mode) {
        sub->add_option("--mode", c.mode, "trace | return | cost")->capture_default_str();
        sub->add_option("--eps", c.eps, "mixing threshold in (0, 1)")->capture_default_str();
        sub->add_option("--cap", c.cap, "largest iterate examined")->capture_default_str();
        sub->add_flag("--amplified", c.amplified, "trace mode: search entangled inputs (cb estimate)");
    }
    if (f.ascent) {
        sub->add_option("--restarts", c.restarts, "ascent restarts")->capture_default_str();
        sub->add_option("--iterations", c.iterations, "ascent iterations per restart")->capture_default_str();
    }
    if (f.samples) sub->add_option("--samples", c.samples, "sample count (0 = command default)");
    if (f.via_states) sub->add_flag("--via-states", c.via_states, "also report the state-side estimate");
    sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
    sub->add_option("--tol", tols, "tolerance override key=value (cc, harness, entropy)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transport cost, Lipschitz constants and mixing times of quantum channels"};
    app.require_subcommand(1);
    qot::cli::RunConfig config;
    std::vector<std::string> tols;

    struct Command {
        const char* name;
        const char* help;
        Flags flags;
    };
    Flags cost_f;
    cost_f.channel = cost_f.resource = cost_f.ascent = cost_f.samples = cost_f.via_states = true;
    Flags kappa_f;
    kappa_f.resource = kappa_f.ascent = true;
    Flags w_f;
    w_f.resource = w_f.states = w_f.ascent = true;
    Flags ch_f;
    ch_f.channel = true;
    Flags ent_f;
    ent_f.channel = ent_f.samples = true;
    Flags loglip_f;
    loglip_f.channel = loglip_f.resource = loglip_f.samples = true;
    Flags ve_f;
    ve_f.channel = ve_f.resource = ve_f.samples = ve_f.ascent = true;
    Flags g_f;
    g_f.group = true;
    Flags cc_f;
    cc_f.samples = cc_f.ascent = true;
    Flags mix_f;
    mix_f.channel = mix_f.resource = mix_f.mode = mix_f.ascent = mix_f.samples = true;
    Flags v_f;
    v_f.suite = true;
    Flags props_f;
    props_f.channel = props_f.channel2 = props_f.resource = props_f.samples = true;

    const std::vector<Command> cmds = {
        {"cost", "transport cost of a channel (Heisenberg picture)", cost_f},
        {"kappa", "expected length of a resource set", kappa_f},
        {"wasserstein", "Wasserstein distance between two states", w_f},
        {"lip", "Lipschitz constant of a channel", cost_f},
        {"lambda2", "second BKM eigenvalue of a primitive channel", ch_f},
        {"entropy-contraction", "sampled relative-entropy contraction ratio", ent_f},
        {"loglip", "sampled log-Lipschitz ratio", loglip_f},
        {"verify-entropy", "entropy contraction against its Lipschitz upper bound", ve_f},
        {"group-length", "word lengths and their mean for a finite group", g_f},
        {"cc-verify", "cost of SU(2) conjugations against the bi-invariant distance (CSV)", cc_f},
        {"mixing", "trace, return or cost-induced mixing time", mix_f},
        {"verify", "run an acceptance suite", v_f},
        {"verify-cost-props", "pointwise cost inequalities on random observables", props_f},
    };
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_options(sub, config, tols, c.flags);
        sub->callback([&config, name = std::string(c.name)] { config.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qot::cli::kExitInput;
    }
    for (const auto& t : tols) {
        const auto eq = t.find('=');
        try {
            if (eq == std::string::npos) throw std::invalid_argument(t);
            config.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "qot: --tol expects key=value, got '" << t << "'\n";
            return qot::cli::kExitInput;
        }
    }
    if (config.command == "cc-verify") config.format = "csv";
    return qot::cli::run(config, std::cout, std::cerr);
}
