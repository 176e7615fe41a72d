#include "asyncsynth/reduction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <set>

namespace asyncsynth {

std::vector<ActionIndex> match(const Plant& plant, ProcessIndex q, ProcessIndex /*r*/,
                               const SyncOutcome& outcome, LocalState sq,
                               const std::vector<ActionIndex>& b) {
    std::vector<ActionIndex> out;
    for (ActionIndex a : outcome.proposal) {
        if (!std::binary_search(b.begin(), b.end(), a)) continue;
        const auto& dom = plant.action(a).domain;
        if (dom.size() != 2) continue;
        LocalTuple src = dom[0] == q ? LocalTuple{sq, outcome.state} : LocalTuple{outcome.state, sq};
        if (plant.step(a, src)) out.push_back(a);
    }
    return out;
}

double ReductionStats::bound() const {
    double pow2 = std::ldexp(1.0, static_cast<int>(shared));
    return static_cast<double>(mq) * static_cast<double>(mr) +
           static_cast<double>(mq) * static_cast<double>(plans) * (1.0 + pow2);
}

double ReductionStats::plan_bound() const {
    return std::pow(std::ldexp(1.0, static_cast<int>(shared)) + 1.0, static_cast<double>(mr));
}

std::optional<LocalState> ReductionArtifact::find_q_state(const ReducedQState& s) const {
    auto it = std::lower_bound(q_index.begin(), q_index.end(), s,
                               [&](LocalState x, const ReducedQState& y) { return q_states[x] < y; });
    if (it == q_index.end() || !(q_states[*it] == s)) return std::nullopt;
    return *it;
}

const NewAction* ReductionArtifact::new_action(ActionIndex reduced_action) const {
    auto it = new_actions.find(reduced.action(reduced_action).name);
    return it == new_actions.end() ? nullptr : &it->second;
}

std::optional<ActionIndex> ReductionArtifact::original_action(ActionIndex reduced_action) const {
    if (new_action(reduced_action)) return std::nullopt;
    return original->find_action(reduced.action(reduced_action).name);
}

std::string ReductionArtifact::describe_plan(std::size_t plan) const {
    const PlanEntry& e = plans[plan];
    const Process& r_proc = original->process(r);
    std::string out = "T = {";
    for (std::size_t i = 0; i < e.outcomes.size(); ++i) {
        if (i) out += ", ";
        out += r_proc.states[e.outcomes[i].state] + ": {";
        for (std::size_t k = 0; k < e.outcomes[i].proposal.size(); ++k) {
            if (k) out += ", ";
            out += original->action(e.outcomes[i].proposal[k]).name;
        }
        out += "}";
    }
    out += e.is_final ? "} final" : "} nonfinal";
    return out;
}

namespace {

// Largest k among names "<prefix>k" in the plant, or 0.
std::size_t max_suffix(const Plant& plant, const std::string& prefix) {
    std::size_t best = 0;
    for (const auto& a : plant.actions()) {
        if (a.name.rfind(prefix, 0) != 0) continue;
        std::string rest = a.name.substr(prefix.size());
        if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) continue;
        best = std::max<std::size_t>(best, std::stoull(rest));
    }
    return best;
}

std::vector<std::vector<ActionIndex>> nonempty_subsets(const std::vector<ActionIndex>& base) {
    if (base.size() > 20) throw ResourceLimit("too many synchronization actions for ch(B) subsets");
    std::vector<std::vector<ActionIndex>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << base.size()); ++mask) {
        std::vector<ActionIndex> b;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask >> i & 1) b.push_back(base[i]);
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

ReductionArtifact reduce_leaf(const Plant& plant, ProcessIndex r, ProcessIndex q,
                              const ReductionOptions& options) {
    return reduce_leaf(std::make_shared<const Plant>(plant), r, q, options);
}

ReductionArtifact reduce_leaf(std::shared_ptr<const Plant> plant_ptr, ProcessIndex r,
                              ProcessIndex q, const ReductionOptions& options) {
    const Plant& plant = *plant_ptr;
    require_valid(plant);
    if (r >= plant.process_count() || q >= plant.process_count() || r == q)
        throw NotALeaf("invalid leaf/parent pair");
    {
        auto adj = communication_graph(plant).adjacency();
        if (adj[r].size() != 1 || adj[r][0] != q)
            throw NotALeaf("process '" + plant.process(r).name + "' is not a leaf below '" +
                           plant.process(q).name + "'");
    }

    const Process& pq = plant.process(q);
    const Process& pr = plant.process(r);
    const std::vector<ActionIndex> sigma_qr = shared_actions(plant, q, r);
    const LocalArena arena = leaf_arena(plant, r, q);

    ReductionArtifact art;
    art.original = plant_ptr;
    art.r = r;
    art.q = q;

    // ---- symbolic forward construction
    std::map<std::vector<SyncOutcome>, std::size_t> plan_ids;
    std::vector<PlanEntry> plans;
    std::map<LocalState, std::vector<std::size_t>> plans_at;
    auto plans_in = [&](LocalState sr) -> const std::vector<std::size_t>& {
        auto it = plans_at.find(sr);
        if (it != plans_at.end()) return it->second;
        std::vector<std::size_t> ids;
        for (auto& p : enumerate_admissible_plans(arena, sr, options.plan_limits)) {
            auto [pit, fresh] = plan_ids.emplace(p.outcomes, plans.size());
            if (fresh) plans.push_back(PlanEntry{p.outcomes, p.is_final, {}, {}});
            plans[pit->second].witnesses.emplace(sr, std::move(p.witness));
            ids.push_back(pit->second);
        }
        return plans_at.emplace(sr, std::move(ids)).first->second;
    };

    struct Edge {
        std::size_t from;
        enum class Kind { ChT, ChB, Sync, Local, Shared } kind;
        ActionIndex action;       // original action (Local, Shared, Sync)
        std::size_t plan = 0;     // ChT
        std::vector<ActionIndex> b;  // ChB
        LocalState tr = 0;        // Sync
        std::size_t to;
        std::size_t transition = 0;  // Shared: index into plant.transitions(action)
    };

    std::map<ReducedQState, std::size_t> ids;
    std::vector<ReducedQState> states;
    std::vector<Edge> edges;
    std::deque<std::size_t> queue;
    auto intern = [&](ReducedQState s) {
        auto [it, fresh] = ids.emplace(s, states.size());
        if (fresh) {
            if (states.size() >= options.state_limit)
                throw ResourceLimit("reduced process exceeds " +
                                    std::to_string(options.state_limit) + " states");
            states.push_back(std::move(s));
            queue.push_back(it->second);
        }
        return it->second;
    };

    // Actions of q that survive the reduction (not shared with r).
    std::vector<ActionIndex> q_actions;
    for (ActionIndex a : plant.actions_of(q))
        if (!plant.action(a).involves(r)) q_actions.push_back(a);

    intern(ReducedQState{ReducedQState::Kind::Pair, pq.initial, pr.initial, 0, {}});
    while (!queue.empty()) {
        std::size_t id = queue.front();
        queue.pop_front();
        ReducedQState s = states[id];
        switch (s.kind) {
            case ReducedQState::Kind::Pair: {
                if (pq.is_final(s.sq) && pr.is_final(s.sr)) break;
                for (std::size_t t : plans_in(s.sr)) {
                    std::size_t to = intern({ReducedQState::Kind::Planned, s.sq, 0, t, {}});
                    edges.push_back({id, Edge::Kind::ChT, 0, t, {}, 0, to});
                }
                break;
            }
            case ReducedQState::Kind::Planned: {
                for (ActionIndex a : q_actions) {
                    const auto& ts = plant.transitions(a);
                    for (std::size_t k = 0; k < ts.size(); ++k) {
                        std::size_t slot = plant.action(a).domain[0] == q ? 0 : 1;
                        if (ts[k].source[slot] != s.sq) continue;
                        std::size_t to = intern(
                            {ReducedQState::Kind::Planned, ts[k].target[slot], 0, s.plan, {}});
                        auto kind = plant.action(a).is_local() ? Edge::Kind::Local : Edge::Kind::Shared;
                        edges.push_back({id, kind, a, 0, {}, 0, to, k});
                    }
                }
                const PlanEntry& plan = plans[s.plan];
                if (pq.is_final(s.sq) || plan.is_final) break;
                std::vector<ActionIndex> base;
                if (options.all_b) {
                    base = sigma_qr;
                } else {
                    std::set<ActionIndex> useful;
                    for (const auto& o : plan.outcomes)
                        for (ActionIndex a : match(plant, q, r, o, s.sq, o.proposal)) useful.insert(a);
                    base.assign(useful.begin(), useful.end());
                }
                for (auto& b : nonempty_subsets(base)) {
                    bool ok = true;
                    for (const auto& o : plan.outcomes)
                        if (match(plant, q, r, o, s.sq, b).empty()) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    std::size_t to = intern({ReducedQState::Kind::Offered, s.sq, 0, s.plan, b});
                    edges.push_back({id, Edge::Kind::ChB, 0, 0, std::move(b), 0, to});
                }
                break;
            }
            case ReducedQState::Kind::Offered: {
                const PlanEntry& plan = plans[s.plan];
                for (const auto& o : plan.outcomes) {
                    for (ActionIndex a : match(plant, q, r, o, s.sq, s.b)) {
                        const auto& dom = plant.action(a).domain;
                        bool q_first = dom[0] == q;
                        LocalTuple src = q_first ? LocalTuple{s.sq, o.state} : LocalTuple{o.state, s.sq};
                        LocalTuple dst = *plant.step(a, src);
                        LocalState nq = q_first ? dst[0] : dst[1];
                        LocalState nr = q_first ? dst[1] : dst[0];
                        std::size_t to = intern({ReducedQState::Kind::Pair, nq, nr, 0, {}});
                        edges.push_back({id, Edge::Kind::Sync, a, 0, {}, o.state, to});
                    }
                }
                break;
            }
        }
    }

    // ---- canonical plan numbering and action names
    std::vector<std::size_t> order(plans.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return plan_order_less(plans[x].outcomes, plans[y].outcomes);
    });
    std::vector<std::size_t> renumber(plans.size());
    for (std::size_t i = 0; i < order.size(); ++i) renumber[order[i]] = i;

    std::size_t t_base = max_suffix(plant, "ch_T#");
    std::size_t b_base = max_suffix(plant, "ch_B#");
    std::size_t e_base = max_suffix(plant, "env_a_tr#");

    for (std::size_t i = 0; i < order.size(); ++i) {
        PlanEntry entry = std::move(plans[order[i]]);
        entry.action = "ch_T#" + std::to_string(t_base + 1 + i);
        art.plans.push_back(std::move(entry));
    }
    for (auto& s : states)
        if (s.kind != ReducedQState::Kind::Pair) s.plan = renumber[s.plan];
    for (auto& e : edges)
        if (e.kind == Edge::Kind::ChT) e.plan = renumber[e.plan];

    std::map<std::vector<ActionIndex>, std::string> b_names;
    std::map<std::pair<std::string, std::string>, std::pair<ActionIndex, LocalState>> sync_payloads;
    for (const auto& e : edges) {
        if (e.kind == Edge::Kind::ChB) b_names.emplace(e.b, "");
        if (e.kind == Edge::Kind::Sync)
            sync_payloads.emplace(std::make_pair(plant.action(e.action).name, pr.states[e.tr]),
                                  std::make_pair(e.action, e.tr));
    }
    // ch(B) numbered by the sorted list of action names.
    {
        std::vector<std::pair<std::vector<std::string>, const std::vector<ActionIndex>*>> keyed;
        for (auto& [b, name] : b_names) {
            std::vector<std::string> names;
            for (ActionIndex a : b) names.push_back(plant.action(a).name);
            keyed.emplace_back(std::move(names), &b);
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i < keyed.size(); ++i)
            b_names[*keyed[i].second] = "ch_B#" + std::to_string(b_base + 1 + i);
    }
    std::map<std::pair<ActionIndex, LocalState>, std::string> sync_names;
    {
        std::size_t i = 0;
        for (const auto& [key, payload] : sync_payloads)
            sync_names[payload] = "env_a_tr#" + std::to_string(e_base + 1 + i++);
    }

    auto plan_number = [&](std::size_t plan) {
        return art.plans[plan].action.substr(std::string("ch_T").size());
    };
    auto state_name = [&](const ReducedQState& s) {
        switch (s.kind) {
            case ReducedQState::Kind::Pair:
                return "<" + pq.states[s.sq] + "|" + pr.states[s.sr] + ">";
            case ReducedQState::Kind::Planned:
                return "<" + pq.states[s.sq] + "|T" + plan_number(s.plan) + ">";
            case ReducedQState::Kind::Offered:
                return "<" + pq.states[s.sq] + "|T" + plan_number(s.plan) + "|B" +
                       b_names[s.b].substr(std::string("ch_B").size()) + ">";
        }
        return std::string();
    };

    // ---- reduced plant
    PlantBuilder builder;
    for (ProcessIndex p = 0; p < plant.process_count(); ++p) {
        if (p == r) continue;
        const Process& proc = plant.process(p);
        if (p != q) {
            std::vector<std::string> finals;
            for (LocalState s = 0; s < proc.size(); ++s)
                if (proc.is_final(s)) finals.push_back(proc.states[s]);
            builder.add_process(proc.name, proc.states, proc.states[proc.initial], finals);
            continue;
        }
        std::vector<std::string> names, finals;
        for (const auto& s : states) {
            names.push_back(state_name(s));
            bool fin = false;
            if (s.kind == ReducedQState::Kind::Pair)
                fin = pq.is_final(s.sq) && pr.is_final(s.sr);
            else if (s.kind == ReducedQState::Kind::Planned)
                fin = pq.is_final(s.sq) && art.plans[s.plan].is_final;
            if (fin) finals.push_back(names.back());
        }
        builder.add_process(proc.name, names, names.front(), finals);
    }
    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const Action& act = plant.action(a);
        if (act.involves(r)) continue;
        std::vector<std::string> dom;
        for (ProcessIndex p : act.domain) dom.push_back(plant.process(p).name);
        builder.add_action(act.name, dom, act.controllable);
        if (act.involves(q)) continue;
        for (const auto& t : plant.transitions(a)) {
            std::vector<std::string> src, dst;
            for (std::size_t i = 0; i < act.domain.size(); ++i) {
                src.push_back(plant.process(act.domain[i]).states[t.source[i]]);
                dst.push_back(plant.process(act.domain[i]).states[t.target[i]]);
            }
            builder.add_transition(act.name, src, dst);
        }
    }
    const std::string& qn = pq.name;
    for (const auto& plan : art.plans) {
        builder.add_action(plan.action, {qn}, true);
        art.new_actions.emplace(plan.action, NewAction{NewAction::Kind::ChooseT, plan.action,
                                                       static_cast<std::size_t>(&plan - art.plans.data()),
                                                       {}, 0, 0});
    }
    for (const auto& [b, name] : b_names) {
        builder.add_action(name, {qn}, true);
        art.new_actions.emplace(name, NewAction{NewAction::Kind::ChooseB, name, 0, b, 0, 0});
    }
    for (const auto& [payload, name] : sync_names) {
        builder.add_action(name, {qn}, false);
        art.new_actions.emplace(name, NewAction{NewAction::Kind::Sync, name, 0, {}, payload.first,
                                                payload.second});
    }
    std::vector<std::string> names;
    names.reserve(states.size());
    for (const auto& s : states) names.push_back(state_name(s));
    for (const auto& e : edges) {
        const std::string& from = names[e.from];
        const std::string& to = names[e.to];
        switch (e.kind) {
            case Edge::Kind::ChT: builder.add_transition(art.plans[e.plan].action, {from}, {to}); break;
            case Edge::Kind::ChB: builder.add_transition(b_names[e.b], {from}, {to}); break;
            case Edge::Kind::Sync:
                builder.add_transition(sync_names[{e.action, e.tr}], {from}, {to});
                break;
            case Edge::Kind::Local:
                builder.add_transition(plant.action(e.action).name, {from}, {to});
                break;
            case Edge::Kind::Shared: {
                const Action& act = plant.action(e.action);
                const Transition& t = plant.transitions(e.action)[e.transition];
                std::vector<std::string> src(2), dst(2);
                for (std::size_t i = 0; i < 2; ++i) {
                    const Process& proc = plant.process(act.domain[i]);
                    if (act.domain[i] == q) {
                        src[i] = from;
                        dst[i] = to;
                    } else {
                        src[i] = proc.states[t.source[i]];
                        dst[i] = proc.states[t.target[i]];
                    }
                }
                builder.add_transition(act.name, src, dst);
                break;
            }
        }
    }
    art.reduced = builder.build();
    art.reduced_q = art.reduced.process_index(qn);
    for (const auto& p : art.reduced.processes()) art.to_original.push_back(plant.process_index(p.name));

    art.q_states.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        LocalState local = *art.reduced.process(art.reduced_q).find_state(names[i]);
        art.q_states[local] = states[i];
    }
    art.q_index.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) art.q_index[i] = static_cast<LocalState>(i);
    std::sort(art.q_index.begin(), art.q_index.end(),
              [&](LocalState x, LocalState y) { return art.q_states[x] < art.q_states[y]; });

    art.stats.mq = pq.size();
    art.stats.mr = pr.size();
    art.stats.shared = sigma_qr.size();
    art.stats.plans = art.plans.size();
    for (const auto& s : states) {
        if (s.kind == ReducedQState::Kind::Pair) ++art.stats.pairs;
        else if (s.kind == ReducedQState::Kind::Planned) ++art.stats.planned;
        else ++art.stats.offered;
    }
    return art;
}

// ------------------------------------------------------------------ χ

std::vector<ActionIndex> translate_play_chi(const ReductionArtifact& art,
                                            const std::vector<ActionIndex>& u,
                                            const ChiAnnotations& ann) {
    const Plant& plant = *art.original;
    const Plant& reduced = art.reduced;
    const Process& pq = plant.process(art.q);
    const Process& pr = plant.process(art.r);

    auto plan_action = [&](std::size_t i) -> ActionIndex {
        if (i >= ann.plans.size())
            throw MalformedDecomposition("missing plan annotation T_" + std::to_string(i));
        if (ann.plans[i] >= art.plans.size())
            throw MalformedDecomposition("plan annotation out of range");
        return reduced.action_index(art.plans[ann.plans[i]].action);
    };
    auto offer_action = [&](std::size_t i) -> ActionIndex {
        if (i >= ann.offers.size())
            throw MalformedDecomposition("missing offer annotation B_" + std::to_string(i));
        for (const auto& [name, na] : art.new_actions)
            if (na.kind == NewAction::Kind::ChooseB && na.b == ann.offers[i])
                return reduced.action_index(name);
        throw MalformedDecomposition("offer B_" + std::to_string(i) + " has no ch(B) action");
    };
    auto sync_action = [&](ActionIndex a, LocalState tr) -> ActionIndex {
        for (const auto& [name, na] : art.new_actions)
            if (na.kind == NewAction::Kind::Sync && na.a == a && na.tr == tr)
                return reduced.action_index(name);
        throw MalformedDecomposition("no (a,t_r) action for " + plant.action(a).name + " at " +
                                     pr.states[tr]);
    };

    std::vector<ActionIndex> out;
    GlobalState g = plant.initial_state();
    std::size_t segment = 0;
    bool pair_final = pq.is_final(g[art.q]) && pr.is_final(g[art.r]);
    if (!pair_final) out.push_back(plan_action(0));
    for (ActionIndex a : u) {
        const Action& act = plant.action(a);
        bool with_q = act.involves(art.q), with_r = act.involves(art.r);
        if (with_q && with_r) {
            if (pair_final) throw MalformedDecomposition("synchronization after a final pair");
            LocalState tr = g[art.r];
            out.push_back(offer_action(segment));
            g = apply_action(plant, g, a);
            out.push_back(sync_action(a, tr));
            ++segment;
            pair_final = pq.is_final(g[art.q]) && pr.is_final(g[art.r]);
            if (!pair_final) out.push_back(plan_action(segment));
        } else {
            g = apply_action(plant, g, a);
            if (!with_r) out.push_back(reduced.action_index(act.name));
        }
    }
    if (ann.offers.size() > segment) out.push_back(offer_action(segment));
    return out;
}

}  // namespace asyncsynth
