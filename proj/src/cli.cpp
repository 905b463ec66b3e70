#include "qot/cli.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "qot/contraction.hpp"
#include "qot/errors.hpp"
#include "qot/geometry.hpp"
#include "qot/groups.hpp"
#include "qot/mixing.hpp"
#include "qot/report.hpp"
#include "qot/transport.hpp"
#include "qot/verify.hpp"

namespace qot::cli {

namespace {

using nlohmann::json;

const std::map<std::string, double> kDefaultTolerances = {
    {"cc", 1e-6},        // cc-verify: cost_lower <= distance + tol
    {"harness", 1e-10},  // verify-cost-props: pointwise slack
    {"entropy", 1e-6},   // verify-entropy: eta <= rhs (1 + tol)
};

double tolerance(const RunConfig& c, const std::string& key) {
    auto it = c.tolerances.find(key);
    return it != c.tolerances.end() ? it->second : kDefaultTolerances.at(key);
}

json config_json(const RunConfig& c) {
    json tol = json::object();
    for (const auto& [k, v] : kDefaultTolerances) tol[k] = c.tolerances.count(k) ? c.tolerances.at(k) : v;
    return {{"command", c.command},   {"channel", c.channel},     {"channel2", c.channel2},
            {"resource", c.resource}, {"kind", c.kind},           {"group", c.group},
            {"rho", c.rho},           {"sigma", c.sigma},         {"suite", c.suite},
            {"mode", c.mode},         {"seed", c.seed},           {"restarts", c.restarts},
            {"iterations", c.iterations}, {"amplification", c.amplification},
            {"samples", c.samples},   {"cap", c.cap},             {"eps", c.eps},
            {"via_states", c.via_states}, {"amplified", c.amplified}, {"tolerances", tol},
            {"format", c.format}};
}

void require(const std::string& value, const std::string& flag, const std::string& command) {
    if (value.empty()) throw InputError("command '" + command + "' needs --" + flag);
}

AscentOptions ascent_options(const RunConfig& c) {
    if (c.restarts < 1) throw InputError("--restarts must be >= 1");
    if (c.iterations < 1) throw InputError("--iterations must be >= 1");
    return {c.restarts, c.iterations, 0.1, c.seed, true};
}

SeminormSpec seminorm_spec(const RunConfig& c) {
    if (c.amplification < 1) throw InputError("--amplification must be >= 1");
    SeminormSpec s{parse_resource_spec(c.resource), parse_kind(c.kind), c.amplification};
    s.resource.validate();
    return s;
}

int samples_or(const RunConfig& c, int fallback) {
    if (c.samples < 0) throw InputError("--samples must be >= 0");
    return c.samples > 0 ? c.samples : fallback;
}

DensityMatrix parse_state_spec(const std::string& spec, const std::string& field) {
    if (spec.empty()) throw InputError("missing state for --" + field);
    std::stringstream ss(spec);
    std::vector<std::string> parts;
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    auto as_int = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            int v = std::stoi(t, &used);
            if (used == t.size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError("--" + field + ": '" + t + "' is not an integer");
    };
    if (parts[0] == "basis") {
        if (parts.size() != 3) throw InputError("--" + field + " expects basis:d:k");
        const int d = as_int(parts[1]), k = as_int(parts[2]);
        if (d < 1 || k < 0 || k >= d) throw InputError("--" + field + ": basis index out of range");
        Matrix m = Matrix::Zero(d, d);
        m(k, k) = 1;
        return DensityMatrix(m);
    }
    if (parts[0] == "mixed") {
        if (parts.size() != 2) throw InputError("--" + field + " expects mixed:d");
        const int d = as_int(parts[1]);
        if (d < 1) throw InputError("--" + field + ": dimension must be positive");
        return DensityMatrix(identity(d) / static_cast<double>(d));
    }
    return DensityMatrix(matrix_from_json(read_json_file(spec)));
}

json doubles(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number_json(x));
    return a;
}

json header(const RunConfig& c) { return {{"command", c.command}, {"config", config_json(c)}}; }

void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

// Commands ---------------------------------------------------------------------

int cmd_cost(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    QuantumChannel ch = parse_channel_spec(c.channel);
    SeminormSpec spec = seminorm_spec(c);
    CostOptions co;
    co.ascent = ascent_options(c);
    json j = header(c);
    j["result"] = report_to_json(cost(ch, spec, co), true);
    if (c.via_states) {
        StatesOptions so;
        if (c.samples > 0) so.n_states = c.samples;
        so.seed = c.seed;
        j["via_states"] = report_to_json(cost_via_states(ch, spec, so), true);
    }
    emit(out, j);
    return kExitOk;
}

int cmd_kappa(const RunConfig& c, std::ostream& out) {
    CostOptions co;
    co.ascent = ascent_options(c);
    json j = header(c);
    j["result"] = report_to_json(expected_length(seminorm_spec(c), co), true);
    emit(out, j);
    return kExitOk;
}

int cmd_wasserstein(const RunConfig& c, std::ostream& out) {
    DensityMatrix rho = parse_state_spec(c.rho, "rho");
    DensityMatrix sigma = parse_state_spec(c.sigma, "sigma");
    json j = header(c);
    j["result"] = report_to_json(wasserstein(rho, sigma, seminorm_spec(c), ascent_options(c)), true);
    emit(out, j);
    return kExitOk;
}

int cmd_lip(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    QuantumChannel ch = parse_channel_spec(c.channel);
    SeminormSpec spec = seminorm_spec(c);
    LipOptions lo;
    lo.ascent = ascent_options(c);
    json j = header(c);
    j["result"] = report_to_json(lip(ch.heisenberg_superop(), spec, lo), true);
    if (c.via_states) {
        PairsOptions po;
        if (c.samples > 0) po.n_pairs = c.samples;
        po.seed = c.seed;
        j["via_states"] = report_to_json(contraction_via_states(ch, spec, po), false);
    }
    emit(out, j);
    return kExitOk;
}

int cmd_lambda2(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    Lambda2Report r = bkm_lambda2(parse_channel_spec(c.channel));
    json j = header(c);
    j["lambda2"] = tagged(r.lambda2, "exact");
    j["lambda1"] = tagged(r.lambda1, "exact");
    j["symmetry_defect"] = tagged(r.symmetry_defect, "exact");
    j["spectrum"] = {{"values", doubles(r.spectrum)}, {"method", "exact"}};
    j["fixed_state"] = matrix_to_json(r.sigma.matrix());
    emit(out, j);
    return kExitOk;
}

int cmd_entropy_contraction(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    QuantumChannel ch = parse_channel_spec(c.channel);
    DensityMatrix sigma = fixed_state(ch);
    EntropySample s = entropy_contraction_sample(ch, sigma, samples_or(c, 10000), c.seed);
    json j = header(c);
    j["ratio"] = tagged(s.ratio, "sample-max");
    j["samples"] = s.samples;
    j["skipped"] = s.skipped;
    j["seed"] = s.seed;
    j["argmax"] = matrix_to_json(s.argmax.matrix());
    j["optimizer_residual"] = tagged(optimizer_residual(ch, sigma, s.argmax, s.ratio), "sample-max");
    emit(out, j);
    return kExitOk;
}

int cmd_loglip(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    QuantumChannel ch = parse_channel_spec(c.channel);
    EntropySample s = loglip_sample(ch, fixed_state(ch), seminorm_spec(c), samples_or(c, 2000), c.seed);
    json j = header(c);
    j["loglip"] = tagged(s.ratio, "sample-max");
    j["samples"] = s.samples;
    j["skipped"] = s.skipped;
    j["seed"] = s.seed;
    emit(out, j);
    return kExitOk;
}

int cmd_verify_entropy(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    QuantumChannel ch = parse_channel_spec(c.channel);
    EntropyUpperReport r =
        entropy_upper_check(ch, seminorm_spec(c), samples_or(c, 2000), c.seed, ascent_options(c));
    const bool holds = r.eta_lower <= r.rhs_factored * (1 + tolerance(c, "entropy"));
    json j = header(c);
    j["eta"] = tagged(r.eta_lower, "sample-max");
    j["lip_heisenberg"] = tagged(r.lip_heisenberg, "ascent-lower");
    j["lip_bkm"] = tagged(r.lip_bkm, "ascent-lower");
    j["lip_composite"] = tagged(r.lip_composite, "ascent-lower");
    j["loglip"] = tagged(r.loglip, "sample-max");
    j["rhs_factored"] = tagged(r.rhs_factored, "ascent-lower");
    j["rhs_composite"] = tagged(r.rhs_composite, "ascent-lower");
    j["holds"] = holds;
    emit(out, j);
    return holds ? kExitOk : kExitVerify;
}

int cmd_group_length(const RunConfig& c, std::ostream& out) {
    require(c.group, "group", c.command);
    FiniteGroupTable g = parse_group_spec(c.group);
    GroupCostReport r = group_cost_efix(g);
    json j = header(c);
    j["mean"] = mean_word_length(g).str();
    j["lengths"] = word_lengths(g);
    j["method"] = "exact";
    j["cost_efix"] = {{"value", r.value.str()}, {"method", "exact"}};
    emit(out, j);
    return kExitOk;
}

int cmd_cc_verify(const RunConfig& c, std::ostream& out) {
    const int n = samples_or(c, 100);
    CCSummary s = cc_verify(n, c.seed, ascent_options(c));
    const double tol = tolerance(c, "cc");
    out << "# qot cc-verify samples=" << n << " seed=" << c.seed << " restarts=" << c.restarts
        << " iterations=" << c.iterations << " tolerance=" << tol
        << " distance=closed-form cost_lower=ascent-lower basis={i sx, i sy, i sz} orthonormal\n";
    out << "sample,distance,cost_lower,margin\n";
    int violations = 0;
    char buf[160];
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        const CCSample& x = s.samples[i];
        if (x.cost_lower > x.distance + tol) ++violations;
        std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g\n", i, x.distance, x.cost_lower, x.margin);
        out << buf;
    }
    out << "# violations=" << violations << "\n";
    return violations == 0 ? kExitOk : kExitVerify;
}

int cmd_mixing(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    if (!(c.eps > 0 && c.eps < 1)) throw InputError("--eps must lie in (0, 1)");
    if (c.cap < 1) throw InputError("--cap must be >= 1");
    QuantumChannel ch = parse_channel_spec(c.channel);
    json j = header(c);
    MixingReport m;
    if (c.mode == "trace") {
        MixingOptions mo;
        mo.cap = c.cap;
        mo.samples = samples_or(c, 64);
        mo.amplified = c.amplified;
        mo.seed = c.seed;
        m = trace_mixing_time(ch, c.eps, mo);
    } else if (c.mode == "return") {
        SeminormSpec spec = seminorm_spec(c);
        m = return_time(ch, conditional_expectation(spec.effective_elements()), c.eps, c.cap);
    } else if (c.mode == "cost") {
        CostMixingReport r = cost_mixing_time(ch, seminorm_spec(c), c.eps, c.cap, ascent_options(c));
        m = r.mixing;
        j["kappa"] = tagged(r.kappa, "ascent-lower");
    } else {
        throw InputError("--mode must be trace, return or cost, got '" + c.mode + "'");
    }
    const std::string tag = c.mode == "return" ? "exact" : m.method;
    j["time"] = m.time > 0 ? json{{"value", m.time}, {"method", tag}} : json{{"value", "cap-exceeded"}, {"method", tag}};
    j["cap_exceeded"] = m.cap_exceeded;
    j["stationary"] = m.stationary;
    j["trace"] = {{"values", doubles(m.trace)}, {"method", tag}};
    emit(out, j);
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    std::vector<int> ids = suite_criteria(c.suite);
    int failed = 0;
    for (int id : ids) {
        CriterionResult r = run_criterion(id, c.seed);
        if (!r.passed) ++failed;
        emit(out, {{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    json j = header(c);
    j["suite"] = c.suite;
    j["criteria"] = ids.size();
    j["failed"] = failed;
    j["passed"] = failed == 0;
    emit(out, j);
    return failed == 0 ? kExitOk : kExitVerify;
}

int cmd_verify_cost_props(const RunConfig& c, std::ostream& out) {
    require(c.channel, "channel", c.command);
    require(c.channel2, "channel2", c.command);
    QuantumChannel phi = parse_channel_spec(c.channel);
    QuantumChannel psi = parse_channel_spec(c.channel2);
    auto checks = pointwise_harness(phi.heisenberg_superop(), psi.heisenberg_superop(), seminorm_spec(c),
                                    samples_or(c, 100), c.seed);
    const double tol = tolerance(c, "harness");
    bool ok = true;
    json arr = json::array();
    for (const auto& h : checks) {
        const bool pass = h.worst_slack <= tol;
        ok = ok && pass;
        arr.push_back({{"name", h.name},
                       {"instances", h.instances},
                       {"worst_slack", tagged(h.worst_slack, "exact")},
                       {"passed", pass}});
    }
    json j = header(c);
    j["checks"] = arr;
    j["passed"] = ok;
    emit(out, j);
    return ok ? kExitOk : kExitVerify;
}

using Handler = std::function<int(const RunConfig&, std::ostream&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"cost", cmd_cost},
        {"kappa", cmd_kappa},
        {"wasserstein", cmd_wasserstein},
        {"lip", cmd_lip},
        {"lambda2", cmd_lambda2},
        {"entropy-contraction", cmd_entropy_contraction},
        {"loglip", cmd_loglip},
        {"verify-entropy", cmd_verify_entropy},
        {"group-length", cmd_group_length},
        {"cc-verify", cmd_cc_verify},
        {"mixing", cmd_mixing},
        {"verify", cmd_verify},
        {"verify-cost-props", cmd_verify_cost_props},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : handlers()) v.push_back(k);
        return v;
    }();
    return names;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    auto it = handlers().find(config.command);
    if (it == handlers().end()) {
        err << "qot: unknown command '" << config.command << "'\n";
        return kExitInput;
    }
    for (const auto& [k, _] : config.tolerances)
        if (!kDefaultTolerances.count(k)) {
            err << "qot: unknown tolerance key '" << k << "' (expected cc, harness or entropy)\n";
            return kExitInput;
        }
    try {
        return it->second(config, out);
    } catch (const json::exception& e) {
        err << "qot: malformed JSON: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "qot: error: " << e.what() << "\n";
    }
    return kExitInput;
}

}  // namespace qot::cli
