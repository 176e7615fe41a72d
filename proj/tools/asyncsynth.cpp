// Command-line front end.
//
// Exit codes: 0 success or winning, 1 losing or counterexample, 2 input
// error, 3 resource limit or interrupt, 4 internal inconsistency.
// ASYNCSYNTH_STATE_LIMIT overrides the state ceiling of every exploring
// command.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "asyncsynth/bench.hpp"
#include "asyncsynth/io.hpp"
#include "asyncsynth/synthesis.hpp"
#include "asyncsynth/verify.hpp"

using namespace asyncsynth;

namespace {

constexpr int kOk = 0;
constexpr int kLosing = 1;
constexpr int kInputError = 2;
constexpr int kResource = 3;
constexpr int kInternal = 4;

std::size_t state_limit(std::size_t fallback) {
    const char* env = std::getenv("ASYNCSYNTH_STATE_LIMIT");
    if (!env || !*env) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw std::invalid_argument("ASYNCSYNTH_STATE_LIMIT must be a positive integer");
    return static_cast<std::size_t>(v);
}

void on_sigint(int) { request_interrupt(); }

Plant load_plant(const std::string& path) { return parse_plant(read_text_file(path)); }

void emit_json(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    if (path == "-")
        std::cout << j.dump(2) << '\n';
    else
        write_text_file(path, j.dump(2) + "\n");
}

void print_violations(const InvalidPlant& e) {
    for (const auto& v : e.violations())
        std::cerr << "invalid: " << to_string(v.kind) << " at " << v.locus << ": " << v.message << '\n';
}

std::optional<std::vector<std::pair<std::string, std::string>>> parse_order(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
            throw std::invalid_argument("--order expects leaf:parent[,leaf:parent...]");
        out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void print_levels(const SynthesisReport& r) {
    for (const auto& l : r.levels)
        std::cout << "  eliminated " << l.leaf << " into " << l.parent << ": " << l.stats.q_states()
                  << " parent states, " << l.stats.plans << " plans\n";
}

// -------------------------------------------------------------- commands

int cmd_validate(const std::string& path) {
    Plant p = parse_plant(read_text_file(path));
    std::cout << "valid: " << p.process_count() << " processes, " << p.action_count() << " actions, "
              << p.transition_count() << " transitions\n";
    return kOk;
}

int cmd_graph(const std::string& path) {
    Plant p = load_plant(path);
    auto g = communication_graph(p);
    for (const auto& [a, b] : g.edges)
        std::cout << p.process(a).name << " -- " << p.process(b).name << '\n';
    bool acyclic = g.is_acyclic();
    std::cout << "acyclic: " << (acyclic ? "yes" : "no") << '\n';
    std::cout << "components: " << g.components().size() << '\n';
    std::cout << "diameter: " << g.diameter() << '\n';
    if (acyclic) {
        auto order = leaf_order(p);
        std::cout << "leaf order:";
        for (const auto& s : order.steps)
            std::cout << ' ' << p.process(s.leaf).name << "->" << p.process(s.parent).name;
        std::cout << "\nroots:";
        for (ProcessIndex r : order.roots) std::cout << ' ' << p.process(r).name;
        std::cout << '\n';
    }
    return acyclic ? kOk : kLosing;
}

struct ReduceArgs {
    std::string plant, leaf, parent, output, sidecar;
    bool full = false, all_b = false, explain = false;
};

int cmd_reduce(const ReduceArgs& a) {
    auto current = std::make_shared<const Plant>(load_plant(a.plant));
    ReductionOptions opt;
    opt.all_b = a.all_b;
    opt.state_limit = state_limit(opt.state_limit);
    std::vector<std::pair<std::string, std::string>> steps;
    if (a.full) {
        for (const auto& s : leaf_order(*current).steps)
            steps.emplace_back(current->process(s.leaf).name, current->process(s.parent).name);
    } else {
        if (a.leaf.empty()) throw std::invalid_argument("reduce needs --leaf or --full");
        ProcessIndex r = current->process_index(a.leaf);
        std::string parent = a.parent;
        if (parent.empty()) {
            auto adj = communication_graph(*current).adjacency();
            if (adj[r].size() != 1) throw NotALeaf("'" + a.leaf + "' is not a leaf");
            parent = current->process(adj[r][0]).name;
        }
        steps.emplace_back(a.leaf, parent);
    }
    // The reduced plant goes to stdout without -o; the summary then goes to stderr.
    std::ostream& info = a.output.empty() ? std::cerr : std::cout;
    nlohmann::json sidecars = nlohmann::json::array();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        // --full recomputes the next step on the reduced plant, like the pipeline.
        std::pair<std::string, std::string> step = steps[i];
        if (a.full && i > 0) {
            auto order = leaf_order(*current).steps;
            step = {current->process(order.front().leaf).name, current->process(order.front().parent).name};
        }
        auto art = reduce_leaf(current, current->process_index(step.first),
                               current->process_index(step.second), opt);
        info << "eliminated " << step.first << " into " << step.second << ": "
                  << art.stats.q_states() << " parent states (bound " << art.stats.bound() << "), "
                  << art.stats.plans << " plans\n";
        if (a.explain)
            for (std::size_t k = 0; k < art.plans.size(); ++k)
                info << "  " << art.plans[k].action << " " << art.describe_plan(k) << '\n';
        sidecars.push_back(reduction_sidecar(art));
        current = std::make_shared<const Plant>(art.reduced);
    }
    if (!a.output.empty()) write_text_file(a.output, serialize_plant(*current));
    else std::cout << serialize_plant(*current);
    if (!a.sidecar.empty()) emit_json(a.sidecar, a.full ? sidecars : sidecars.front());
    return kOk;
}

struct SynthArgs {
    std::string plant, output, report, order;
    bool all_b = false, no_minimize = false;
};

int cmd_synthesize(const SynthArgs& a, bool lift) {
    Plant p = load_plant(a.plant);
    SynthesisOptions opt;
    opt.state_limit = state_limit(opt.state_limit);
    opt.all_b = a.all_b;
    opt.minimize = !a.no_minimize;
    opt.order = parse_order(a.order);
    SynthesisReport r;
    try {
        r = lift ? synthesize(p, opt) : solve(p, opt);
    } catch (const ResourceLimit& e) {
        std::cout << "resource limit: " << e.what() << '\n';
        emit_json(a.report, nlohmann::json{{"resource_limit", e.what()}});
        return kResource;
    }
    nlohmann::json report = synthesis_report_json(r, p);
    report["command"] = lift ? "synthesize" : "solve";
    if (r.interrupted) {
        std::cout << "interrupted after " << r.levels.size() << " eliminations\n";
        print_levels(r);
        emit_json(a.report, report);
        return kResource;
    }
    std::cout << (r.winning ? "winning" : "losing") << '\n';
    print_levels(r);
    if (lift && r.controller) {
        std::cout << "controller: " << r.controller->total_memory() << " memory states"
                  << (r.verified ? ", verified" : "") << '\n';
        if (!a.output.empty()) write_text_file(a.output, serialize_controller(*r.controller));
    }
    emit_json(a.report, report);
    return r.winning ? kOk : kLosing;
}

int cmd_verify(const std::string& plant_path, const std::string& ctrl_path, const std::string& report) {
    Plant p = load_plant(plant_path);
    Controller c = parse_controller(read_text_file(ctrl_path), &p);
    VerifyOptions opt;
    opt.state_limit = state_limit(opt.state_limit);
    Verdict v = verify_controller(p, c, opt);
    std::cout << describe_verdict(p, v) << '\n';
    emit_json(report, verdict_json(p, v));
    return v.winning() ? kOk : kLosing;
}

struct SimArgs {
    std::string plant, ctrl, env = "random", script;
    std::uint64_t seed = 0;
    std::size_t max_steps = 1000;
};

int cmd_simulate(const SimArgs& a) {
    Plant p = load_plant(a.plant);
    Controller c = parse_controller(read_text_file(a.ctrl), &p);
    std::vector<ActionIndex> script;
    if (a.env == "script") script = parse_word(p, a.script);
    else if (a.env != "random") throw std::invalid_argument("--env must be 'script' or 'random'");
    std::mt19937_64 rng(a.seed);

    ProductState s = initial_product_state(p, c);
    std::vector<ActionIndex> word;
    std::size_t next = 0;
    std::string status;
    for (;;) {
        auto enabled = product_enabled(p, c, s);
        if (enabled.empty()) {
            status = p.all_final(s.plant) ? "all-final" : "deadlock";
            break;
        }
        if (word.size() >= a.max_steps) {
            status = "step limit";
            break;
        }
        ActionIndex pick;
        if (a.env == "random") {
            pick = enabled[rng() % enabled.size()];
        } else if (next < script.size() &&
                   std::find(enabled.begin(), enabled.end(), script[next]) != enabled.end()) {
            pick = script[next++];
        } else {
            // Off-script: the least possible controllable action, if any.
            auto it = std::find_if(enabled.begin(), enabled.end(),
                                   [&](ActionIndex x) { return p.action(x).controllable; });
            if (it == enabled.end()) {
                status = "script exhausted";
                break;
            }
            pick = *it;
        }
        s = product_step(p, c, s, pick);
        word.push_back(pick);
    }
    std::cout << format_word(p, canonical_word(p, word)) << '\n';
    std::cout << status << ": " << p.describe(s.plant) << '\n';
    return status == "all-final" ? kOk : kLosing;
}

struct GenArgs {
    std::string family, output;
    std::size_t k = 2, client_states = 3, level = 1, base = 2;
    bool expect = false;
};

int cmd_generate(const GenArgs& a) {
    Plant p;
    std::optional<bool> expected;
    if (a.family == "fig2") p = gen_fig2(), expected = true;
    else if (a.family == "server-client") p = gen_server_client(a.k, a.client_states), expected = true;
    else if (a.family == "counter") p = gen_counter_plant(a.level, a.base), expected = true;
    else if (a.family == "l2") p = gen_l2(), expected = true;
    else if (a.family == "t1a") p = gen_t1a(), expected = true;
    else if (a.family == "t1b") p = gen_t1b(), expected = true;
    else if (a.family == "t1c") p = gen_t1c(), expected = false;
    else throw std::invalid_argument("unknown family '" + a.family + "'");
    std::string text = serialize_plant(p);
    if (a.expect && expected) text = std::string("// expect: ") + (*expected ? "winning" : "losing") + "\n" + text;
    if (a.output.empty()) std::cout << text;
    else write_text_file(a.output, text);
    return kOk;
}

int cmd_oracle(const std::string& path, std::size_t memory, const std::string& output) {
    Plant p = load_plant(path);
    OracleOptions opt;
    opt.state_limit = state_limit(opt.state_limit);
    OracleResult r = oracle_solve(p, memory, opt);
    if (!r.controller) {
        std::cout << "no controller with memory <= " << memory << " (" << r.nodes << " nodes)\n";
        return kLosing;
    }
    std::cout << "controller found with memory " << r.memory_bound << " (" << r.nodes << " nodes)\n";
    if (!output.empty()) write_text_file(output, serialize_controller(*r.controller));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed controller synthesis for tree-shaped asynchronous plants"};
    app.require_subcommand(1);

    std::string plant, ctrl, report;
    auto* validate = app.add_subcommand("validate", "Check a plant file");
    validate->add_option("plant", plant)->required();

    auto* graph = app.add_subcommand("graph", "Print the communication graph");
    graph->add_option("plant", plant)->required();

    ReduceArgs ra;
    auto* reduce = app.add_subcommand("reduce", "Eliminate one leaf, or all of them");
    reduce->add_option("plant", ra.plant)->required();
    reduce->add_option("--leaf", ra.leaf, "Leaf process to eliminate");
    reduce->add_option("--parent", ra.parent, "Its parent (default: the unique neighbor)");
    reduce->add_flag("--full", ra.full, "Eliminate leaves until no shared action is left");
    reduce->add_flag("--all-B", ra.all_b, "Materialize every offer set");
    reduce->add_flag("--explain", ra.explain, "List the plans");
    reduce->add_option("-o,--output", ra.output, "Reduced plant file");
    reduce->add_option("--sidecar", ra.sidecar, "JSON description of the new actions and states");

    SynthArgs sa;
    auto add_synth_opts = [&](CLI::App* c) {
        c->add_option("plant", sa.plant)->required();
        c->add_option("--report", sa.report, "JSON run summary ('-' for stdout)");
        c->add_flag("--all-B", sa.all_b, "Materialize every offer set");
        c->add_option("--order", sa.order, "Elimination order leaf:parent,...");
    };
    auto* solve_cmd = app.add_subcommand("solve", "Decide whether a controller exists");
    add_synth_opts(solve_cmd);
    auto* synth = app.add_subcommand("synthesize", "Build a controller");
    add_synth_opts(synth);
    synth->add_option("-o,--output", sa.output, "Controller file");
    synth->add_flag("--no-minimize", sa.no_minimize, "Keep unminimized memory");

    auto* verify = app.add_subcommand("verify", "Check a controller against a plant");
    verify->add_option("plant", plant)->required();
    verify->add_option("controller", ctrl)->required();
    verify->add_option("--report", report, "JSON verdict ('-' for stdout)");

    SimArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run one play of the controlled system");
    simulate->add_option("plant", sim.plant)->required();
    simulate->add_option("controller", sim.ctrl)->required();
    simulate->add_option("--env", sim.env, "script or random")->check(CLI::IsMember({"script", "random"}));
    simulate->add_option("--script", sim.script, "Actions to prefer, in order");
    simulate->add_option("--seed", sim.seed);
    simulate->add_option("--max-steps", sim.max_steps);

    GenArgs ga;
    auto* generate = app.add_subcommand("generate", "Write a benchmark plant");
    generate->add_option("family", ga.family, "fig2, server-client, counter, l2, t1a, t1b, t1c")->required();
    generate->add_option("--k", ga.k, "Number of clients");
    generate->add_option("--client-states", ga.client_states);
    generate->add_option("--level", ga.level);
    generate->add_option("--base", ga.base);
    generate->add_option("-o,--output", ga.output);
    generate->add_flag("--expect", ga.expect, "Prepend the known verdict as a comment");

    std::size_t memory = 2;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "Brute-force search for a small controller");
    oracle->add_option("plant", plant)->required();
    oracle->add_option("--memory", memory, "Memory states per process");
    oracle->add_option("-o,--output", oracle_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    std::signal(SIGINT, on_sigint);
    try {
        if (*validate) return cmd_validate(plant);
        if (*graph) return cmd_graph(plant);
        if (*reduce) return cmd_reduce(ra);
        if (*solve_cmd) return cmd_synthesize(sa, false);
        if (*synth) return cmd_synthesize(sa, true);
        if (*verify) return cmd_verify(plant, ctrl, report);
        if (*simulate) return cmd_simulate(sim);
        if (*generate) return cmd_generate(ga);
        if (*oracle) return cmd_oracle(plant, memory, oracle_out);
    } catch (const InvalidPlant& e) {
        print_violations(e);
        return kInputError;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const Interrupted&) {
        std::cerr << "interrupted\n";
        return kResource;
    } catch (const InconsistentArtifact& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
