#include "asyncsynth/model.hpp"

#include <algorithm>
#include <csignal>
#include <deque>
#include <functional>
#include <set>
#include <tuple>

namespace asyncsynth {

namespace {
volatile std::sig_atomic_t g_interrupt = 0;
}

void request_interrupt() noexcept { g_interrupt = 1; }
void clear_interrupt() noexcept { g_interrupt = 0; }
bool interrupt_requested() noexcept { return g_interrupt != 0; }
void check_interrupt() {
    if (g_interrupt) throw Interrupted("interrupted");
}

std::optional<LocalState> Process::find_state(std::string_view state) const {
    auto it = std::lower_bound(states.begin(), states.end(), state,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == states.end() || *it != state) return std::nullopt;
    return static_cast<LocalState>(it - states.begin());
}

bool Action::involves(ProcessIndex p) const {
    return std::find(domain.begin(), domain.end(), p) != domain.end();
}

std::optional<ProcessIndex> Plant::find_process(std::string_view name) const {
    auto it = std::lower_bound(processes_.begin(), processes_.end(), name,
                               [](const Process& a, std::string_view b) { return a.name < b; });
    if (it == processes_.end() || it->name != name) return std::nullopt;
    return static_cast<ProcessIndex>(it - processes_.begin());
}

std::optional<ActionIndex> Plant::find_action(std::string_view name) const {
    auto it = std::lower_bound(actions_.begin(), actions_.end(), name,
                               [](const Action& a, std::string_view b) { return a.name < b; });
    if (it == actions_.end() || it->name != name) return std::nullopt;
    return static_cast<ActionIndex>(it - actions_.begin());
}

ProcessIndex Plant::process_index(std::string_view name) const {
    if (auto p = find_process(name)) return *p;
    throw PlantError("unknown process '" + std::string(name) + "'");
}

ActionIndex Plant::action_index(std::string_view name) const {
    if (auto a = find_action(name)) return *a;
    throw PlantError("unknown action '" + std::string(name) + "'");
}

std::size_t Plant::transition_count() const {
    std::size_t n = 0;
    for (const auto& t : transitions_) n += t.size();
    return n;
}

std::optional<LocalTuple> Plant::step(ActionIndex a, const LocalTuple& source) const {
    const auto& table = lookup_[a];
    auto it = table.find(pack_tuple(source));
    if (it == table.end()) return std::nullopt;
    return it->second;
}

GlobalState Plant::initial_state() const {
    GlobalState g(processes_.size());
    for (std::size_t p = 0; p < processes_.size(); ++p) g[p] = processes_[p].initial;
    return g;
}

bool Plant::all_final(const GlobalState& g) const {
    for (std::size_t p = 0; p < processes_.size(); ++p)
        if (!processes_[p].is_final(g[p])) return false;
    return true;
}

std::size_t Plant::total_states() const {
    std::size_t n = 0;
    for (const auto& p : processes_) n += p.size();
    return n;
}

std::string Plant::describe(const GlobalState& g) const {
    std::string out;
    for (std::size_t p = 0; p < processes_.size(); ++p) {
        if (p) out += ' ';
        out += processes_[p].name + "=" + processes_[p].states[g[p]];
    }
    return out;
}

// ---------------------------------------------------------------- builder

PlantBuilder& PlantBuilder::add_process(ProcessDecl decl) {
    if (decl.name.empty()) throw PlantError("process with empty name");
    if (process_pos_.count(decl.name)) throw PlantError("duplicate process '" + decl.name + "'");
    process_pos_.emplace(decl.name, processes_.size());
    processes_.push_back(std::move(decl));
    return *this;
}

PlantBuilder& PlantBuilder::add_process(std::string name, std::vector<std::string> states,
                                        std::string initial, std::vector<std::string> finals) {
    return add_process(ProcessDecl{std::move(name), std::move(states), std::move(initial),
                                   std::move(finals)});
}

PlantBuilder& PlantBuilder::add_action(ActionDecl decl) {
    if (decl.name.empty()) throw PlantError("action with empty name");
    if (action_pos_.count(decl.name)) throw PlantError("duplicate action '" + decl.name + "'");
    action_pos_.emplace(decl.name, actions_.size());
    actions_.push_back(std::move(decl));
    return *this;
}

PlantBuilder& PlantBuilder::add_action(std::string name, std::vector<std::string> domain,
                                       bool controllable) {
    return add_action(ActionDecl{std::move(name), std::move(domain), controllable});
}

PlantBuilder& PlantBuilder::add_transition(TransitionDecl decl) {
    transitions_.push_back(std::move(decl));
    return *this;
}

PlantBuilder& PlantBuilder::add_transition(std::string action, std::vector<std::string> source,
                                           std::vector<std::string> target) {
    return add_transition(TransitionDecl{std::move(action), std::move(source), std::move(target)});
}

bool PlantBuilder::has_action(std::string_view name) const {
    return action_pos_.count(std::string(name)) != 0;
}

bool PlantBuilder::has_process(std::string_view name) const {
    return process_pos_.count(std::string(name)) != 0;
}

Plant PlantBuilder::build() const {
    Plant plant;

    std::vector<const ProcessDecl*> procs;
    for (const auto& p : processes_) procs.push_back(&p);
    std::sort(procs.begin(), procs.end(),
              [](const ProcessDecl* a, const ProcessDecl* b) { return a->name < b->name; });
    for (const ProcessDecl* decl : procs) {
        Process p;
        p.name = decl->name;
        p.states = decl->states;
        std::sort(p.states.begin(), p.states.end());
        if (std::adjacent_find(p.states.begin(), p.states.end()) != p.states.end())
            throw PlantError("process '" + p.name + "' declares a state twice");
        for (const auto& s : p.states)
            if (s.empty()) throw PlantError("process '" + p.name + "' has a state with empty name");
        p.final.assign(p.states.size(), 0);
        if (!p.states.empty()) {
            auto init = p.find_state(decl->initial);
            if (!init)
                throw PlantError("process '" + p.name + "': unknown initial state '" +
                                 decl->initial + "'");
            p.initial = *init;
        }
        for (const auto& f : decl->finals) {
            auto s = p.find_state(f);
            if (!s) throw PlantError("process '" + p.name + "': unknown final state '" + f + "'");
            p.final[*s] = 1;
        }
        plant.processes_.push_back(std::move(p));
    }

    std::vector<const ActionDecl*> acts;
    for (const auto& a : actions_) acts.push_back(&a);
    std::sort(acts.begin(), acts.end(),
              [](const ActionDecl* a, const ActionDecl* b) { return a->name < b->name; });
    for (const ActionDecl* decl : acts) {
        Action a;
        a.name = decl->name;
        a.controllable = decl->controllable;
        for (const auto& pn : decl->domain) a.domain.push_back(plant.process_index(pn));
        std::sort(a.domain.begin(), a.domain.end());
        a.domain.erase(std::unique(a.domain.begin(), a.domain.end()), a.domain.end());
        plant.actions_.push_back(std::move(a));
    }

    plant.transitions_.assign(plant.actions_.size(), {});
    for (const auto& decl : transitions_) {
        ActionIndex a = plant.action_index(decl.action);
        const auto& dom = plant.actions_[a].domain;
        if (decl.source.size() != dom.size() || decl.target.size() != dom.size())
            throw PlantError("transition of '" + decl.action + "' has " +
                             std::to_string(decl.source.size()) + " source and " +
                             std::to_string(decl.target.size()) + " target states, domain has " +
                             std::to_string(dom.size()));
        Transition t;
        for (std::size_t i = 0; i < dom.size(); ++i) {
            const Process& p = plant.processes_[dom[i]];
            auto s = p.find_state(decl.source[i]);
            auto d = p.find_state(decl.target[i]);
            if (!s)
                throw PlantError("transition of '" + decl.action + "': unknown state '" +
                                 decl.source[i] + "' of process '" + p.name + "'");
            if (!d)
                throw PlantError("transition of '" + decl.action + "': unknown state '" +
                                 decl.target[i] + "' of process '" + p.name + "'");
            t.source.push_back(*s);
            t.target.push_back(*d);
        }
        plant.transitions_[a].push_back(std::move(t));
    }

    plant.lookup_.assign(plant.actions_.size(), {});
    plant.from_index_.assign(plant.processes_.size(), {});
    plant.actions_of_.assign(plant.processes_.size(), {});
    for (std::size_t p = 0; p < plant.processes_.size(); ++p)
        plant.from_index_[p].assign(plant.processes_[p].size(), {});

    for (ActionIndex a = 0; a < plant.actions_.size(); ++a) {
        auto& ts = plant.transitions_[a];
        std::sort(ts.begin(), ts.end(), [](const Transition& x, const Transition& y) {
            return std::tie(x.source, x.target) < std::tie(y.source, y.target);
        });
        ts.erase(std::unique(ts.begin(), ts.end(),
                             [](const Transition& x, const Transition& y) {
                                 return x.source == y.source && x.target == y.target;
                             }),
                 ts.end());
        const auto& dom = plant.actions_[a].domain;
        for (ProcessIndex p : dom) plant.actions_of_[p].push_back(a);
        if (dom.empty() || dom.size() > 2) continue;
        for (const auto& t : ts) {
            LocalTuple src{t.source[0], dom.size() > 1 ? t.source[1] : kNoState};
            LocalTuple dst{t.target[0], dom.size() > 1 ? t.target[1] : kNoState};
            // First declared wins; duplicates are reported by validate_plant.
            plant.lookup_[a].emplace(pack_tuple(src), dst);
            for (std::size_t i = 0; i < dom.size(); ++i) {
                auto& bucket = plant.from_index_[dom[i]][t.source[i]];
                if (bucket.empty() || bucket.back() != a) bucket.push_back(a);
            }
        }
    }
    return plant;
}

// ------------------------------------------------------------- validation

std::string_view to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::EmptyDomain: return "empty domain";
        case Violation::Kind::DomainTooLarge: return "domain size > 2";
        case Violation::Kind::NonLocalUncontrollable: return "uncontrollable action not local";
        case Violation::Kind::FinalNotBlocking: return "final not blocking";
        case Violation::Kind::Nondeterministic: return "nondeterministic transition";
        case Violation::Kind::NoStates: return "process without states";
    }
    return "unknown";
}

InvalidPlant::InvalidPlant(std::vector<Violation> violations)
    : PlantError([&] {
          std::string msg = "invalid plant:";
          for (const auto& v : violations) msg += "\n  " + v.message;
          return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<Violation> validate_plant(const Plant& plant) {
    std::vector<Violation> out;
    auto add = [&](Violation::Kind kind, std::string locus, std::string detail) {
        std::string msg = std::string(to_string(kind)) + ": " + locus;
        if (!detail.empty()) msg += " (" + detail + ")";
        out.push_back({kind, std::move(locus), std::move(msg)});
    };

    for (const auto& p : plant.processes())
        if (p.states.empty()) add(Violation::Kind::NoStates, p.name, "");

    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const Action& act = plant.action(a);
        if (act.domain.empty()) add(Violation::Kind::EmptyDomain, act.name, "");
        if (act.domain.size() > 2)
            add(Violation::Kind::DomainTooLarge, act.name,
                std::to_string(act.domain.size()) + " processes");
        if (!act.controllable && act.domain.size() > 1)
            add(Violation::Kind::NonLocalUncontrollable, act.name, "");

        const auto& ts = plant.transitions(a);
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            if (ts[i].source == ts[i + 1].source) {
                std::string src;
                for (std::size_t k = 0; k < ts[i].source.size(); ++k) {
                    if (k) src += ',';
                    src += plant.process(act.domain[k]).states[ts[i].source[k]];
                }
                add(Violation::Kind::Nondeterministic, act.name, "source " + src);
                while (i + 1 < ts.size() && ts[i].source == ts[i + 1].source) ++i;
            }
        }
        std::set<std::pair<ProcessIndex, LocalState>> reported;
        for (const auto& t : ts) {
            for (std::size_t k = 0; k < t.source.size(); ++k) {
                const Process& p = plant.process(act.domain[k]);
                if (p.is_final(t.source[k]) && reported.emplace(act.domain[k], t.source[k]).second)
                    add(Violation::Kind::FinalNotBlocking, p.name + "." + p.states[t.source[k]],
                        "action " + act.name);
            }
        }
    }
    return out;
}

void require_valid(const Plant& plant) {
    auto v = validate_plant(plant);
    if (!v.empty()) throw InvalidPlant(std::move(v));
}

// ------------------------------------------------------ communication graph

std::vector<std::vector<ProcessIndex>> CommunicationGraph::adjacency() const {
    std::size_t n = 0;
    for (ProcessIndex p : nodes) n = std::max<std::size_t>(n, p + 1);
    std::vector<std::vector<ProcessIndex>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
}

std::vector<std::vector<ProcessIndex>> CommunicationGraph::components() const {
    auto adj = adjacency();
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::vector<ProcessIndex>> out;
    for (ProcessIndex start : nodes) {
        if (seen[start]) continue;
        std::vector<ProcessIndex> comp;
        std::vector<ProcessIndex> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            ProcessIndex p = stack.back();
            stack.pop_back();
            comp.push_back(p);
            for (ProcessIndex q : adj[p])
                if (!seen[q]) {
                    seen[q] = 1;
                    stack.push_back(q);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool CommunicationGraph::is_acyclic() const {
    // A forest has exactly |V| - #components edges.
    return edges.size() + components().size() == nodes.size();
}

namespace {

std::vector<std::size_t> bfs_distances(const std::vector<std::vector<ProcessIndex>>& adj,
                                       ProcessIndex from) {
    std::vector<std::size_t> dist(adj.size(), SIZE_MAX);
    std::deque<ProcessIndex> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        ProcessIndex p = queue.front();
        queue.pop_front();
        for (ProcessIndex q : adj[p])
            if (dist[q] == SIZE_MAX) {
                dist[q] = dist[p] + 1;
                queue.push_back(q);
            }
    }
    return dist;
}

}  // namespace

std::size_t CommunicationGraph::diameter() const {
    auto adj = adjacency();
    std::size_t best = 0;
    for (ProcessIndex p : nodes)
        for (std::size_t d : bfs_distances(adj, p))
            if (d != SIZE_MAX) best = std::max(best, d);
    return best;
}

std::size_t CommunicationGraph::degree(ProcessIndex p) const {
    std::size_t d = 0;
    for (auto [a, b] : edges) d += (a == p) + (b == p);
    return d;
}

CommunicationGraph communication_graph(const Plant& plant) {
    CommunicationGraph g;
    for (ProcessIndex p = 0; p < plant.process_count(); ++p) g.nodes.push_back(p);
    std::set<std::pair<ProcessIndex, ProcessIndex>> edges;
    for (const auto& a : plant.actions())
        if (a.domain.size() == 2) edges.emplace(a.domain[0], a.domain[1]);
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

LeafOrder leaf_order(const CommunicationGraph& graph, const std::vector<std::string>& names,
                     const std::vector<std::vector<std::size_t>>& cost) {
    if (!graph.is_acyclic()) throw CyclicGraph("communication graph has a cycle");
    auto adj = graph.adjacency();

    // Eccentricity in the original graph; preferring far leaves first leaves
    // a central process as the root.
    std::vector<std::size_t> ecc(adj.size(), 0);
    for (ProcessIndex p : graph.nodes)
        for (std::size_t d : bfs_distances(adj, p))
            if (d != SIZE_MAX) ecc[p] = std::max(ecc[p], d);

    std::vector<std::set<ProcessIndex>> live(adj.size());
    for (ProcessIndex p : graph.nodes) live[p].insert(adj[p].begin(), adj[p].end());

    LeafOrder order;
    for (const auto& comp : graph.components()) {
        std::set<ProcessIndex> remaining(comp.begin(), comp.end());
        while (remaining.size() > 1) {
            std::optional<LeafStep> best;
            auto better = [&](const LeafStep& x, const LeafStep& y) {
                std::size_t cx = cost[x.leaf][x.parent], cy = cost[y.leaf][y.parent];
                if (cx != cy) return cx < cy;
                if (ecc[x.leaf] != ecc[y.leaf]) return ecc[x.leaf] > ecc[y.leaf];
                return names[x.leaf] < names[y.leaf];
            };
            for (ProcessIndex p : remaining) {
                if (live[p].size() != 1) continue;
                LeafStep cand{p, *live[p].begin()};
                if (!best || better(cand, *best)) best = cand;
            }
            order.steps.push_back(*best);
            remaining.erase(best->leaf);
            live[best->parent].erase(best->leaf);
            live[best->leaf].clear();
        }
        order.roots.push_back(*remaining.begin());
    }
    return order;
}

std::vector<ActionIndex> shared_actions(const Plant& plant, ProcessIndex p, ProcessIndex q) {
    std::vector<ActionIndex> out;
    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const auto& d = plant.action(a).domain;
        if (d.size() == 2 && ((d[0] == p && d[1] == q) || (d[0] == q && d[1] == p)))
            out.push_back(a);
    }
    return out;
}

LeafOrder leaf_order(const Plant& plant) {
    auto graph = communication_graph(plant);
    std::size_t n = plant.process_count();
    std::vector<std::string> names;
    for (const auto& p : plant.processes()) names.push_back(p.name);
    std::vector<std::vector<std::size_t>> cost(n, std::vector<std::size_t>(n, 0));
    for (const auto& a : plant.actions())
        if (a.domain.size() == 2) {
            cost[a.domain[0]][a.domain[1]] += 1;
            cost[a.domain[1]][a.domain[0]] += 1;
        }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) cost[p][q] *= plant.process(p).size();
    return leaf_order(graph, names, cost);
}

std::vector<std::vector<LeafStep>> all_leaf_orders(const CommunicationGraph& graph) {
    if (!graph.is_acyclic()) throw CyclicGraph("communication graph has a cycle");
    auto adj = graph.adjacency();
    std::vector<std::set<ProcessIndex>> live(adj.size());
    for (ProcessIndex p : graph.nodes) live[p].insert(adj[p].begin(), adj[p].end());
    std::size_t edges_left = graph.edges.size();

    std::vector<std::vector<LeafStep>> out;
    std::vector<LeafStep> current;
    std::function<void()> rec = [&] {
        if (edges_left == 0) {
            out.push_back(current);
            return;
        }
        for (ProcessIndex p : graph.nodes) {
            if (live[p].size() != 1) continue;
            ProcessIndex parent = *live[p].begin();
            live[p].clear();
            live[parent].erase(p);
            --edges_left;
            current.push_back({p, parent});
            rec();
            current.pop_back();
            ++edges_left;
            live[parent].insert(p);
            live[p].insert(parent);
        }
    };
    rec();
    return out;
}

// ---------------------------------------------------------------- semantics

LocalTuple project(const Plant& plant, const GlobalState& g, ActionIndex a) {
    const auto& dom = plant.action(a).domain;
    return {g[dom[0]], dom.size() > 1 ? g[dom[1]] : kNoState};
}

bool is_enabled(const Plant& plant, const GlobalState& g, ActionIndex a) {
    return plant.step(a, project(plant, g, a)).has_value();
}

std::vector<ActionIndex> enabled_actions(const Plant& plant, const GlobalState& g) {
    std::vector<ActionIndex> out;
    for (ActionIndex a = 0; a < plant.action_count(); ++a)
        if (is_enabled(plant, g, a)) out.push_back(a);
    return out;
}

GlobalState apply_action(const Plant& plant, const GlobalState& g, ActionIndex a) {
    auto next = plant.step(a, project(plant, g, a));
    if (!next)
        throw NotEnabled("action '" + plant.action(a).name + "' not enabled at " +
                         plant.describe(g));
    GlobalState out = g;
    const auto& dom = plant.action(a).domain;
    out[dom[0]] = (*next)[0];
    if (dom.size() > 1) out[dom[1]] = (*next)[1];
    return out;
}

}  // namespace asyncsynth
