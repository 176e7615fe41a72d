#include "asyncsynth/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "asyncsynth/verify.hpp"

namespace asyncsynth {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> domain_names(const Plant& plant, ActionIndex a) {
    std::vector<std::string> out;
    for (ProcessIndex p : plant.action(a).domain) out.push_back(plant.process(p).name);
    return out;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

// ----------------------------------------------------------------- product

Plant compose_product(const Plant& plant, const Controller& controller) {
    check_alphabet(plant, controller);
    const Plant& c = controller.automaton;
    auto name = [](const std::string& s, const std::string& m) { return "(" + s + "," + m + ")"; };
    PlantBuilder b;
    for (ProcessIndex p = 0; p < plant.process_count(); ++p) {
        const Process& ps = plant.process(p);
        const Process& pm = c.process(p);
        std::vector<std::string> states, finals;
        for (LocalState s = 0; s < ps.size(); ++s)
            for (LocalState m = 0; m < pm.size(); ++m) {
                states.push_back(name(ps.states[s], pm.states[m]));
                if (ps.is_final(s)) finals.push_back(states.back());
            }
        b.add_process(ps.name, states, name(ps.states[ps.initial], pm.states[pm.initial]), finals);
    }
    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const Action& act = plant.action(a);
        b.add_action(act.name, domain_names(plant, a), act.controllable);
        for (const auto& pt : plant.transitions(a))
            for (const auto& ct : c.transitions(a)) {
                bool allowed = true;
                if (act.controllable)
                    for (std::size_t i = 0; i < act.domain.size(); ++i)
                        if (!controller.advises(act.domain[i], ct.source[i], a)) allowed = false;
                if (!allowed) continue;
                std::vector<std::string> src, dst;
                for (std::size_t i = 0; i < act.domain.size(); ++i) {
                    const Process& ps = plant.process(act.domain[i]);
                    const Process& pm = c.process(act.domain[i]);
                    src.push_back(name(ps.states[pt.source[i]], pm.states[ct.source[i]]));
                    dst.push_back(name(ps.states[pt.target[i]], pm.states[ct.target[i]]));
                }
                b.add_transition(act.name, src, dst);
            }
    }
    return b.build();
}

// ---------------------------------------------------------------- lifting

namespace {

class Lifter {
public:
    Lifter(const Controller& reduced, const ReductionArtifact& art)
        : red_(reduced), art_(art), orig_(*art.original), aprime_(art.reduced) {
        check_alphabet(aprime_, red_);
        for (ProcessIndex p = 0; p < orig_.process_count(); ++p)
            to_reduced_.push_back(p == art.r ? kNoState
                                             : *aprime_.find_process(orig_.process(p).name));
        for (ActionIndex a = 0; a < orig_.action_count(); ++a) {
            auto ra = aprime_.find_action(orig_.action(a).name);
            reduced_action_.push_back(ra ? *ra : kNoState);
        }
        for (const auto& [name, na] : art.new_actions) {
            ActionIndex ra = aprime_.action_index(name);
            kind_[ra] = &na;
            if (na.kind == NewAction::Kind::Sync) sync_action_[{na.a, na.tr}] = ra;
        }
        q_ = art.q;
        r_ = art.r;
        rq_ = art.reduced_q;
    }

    LiftResult run(std::size_t state_limit) {
        std::size_t n = orig_.process_count();
        interned_.assign(n, {});
        symbols_.assign(n, {});

        std::vector<std::uint32_t> init(n);
        for (ProcessIndex p = 0; p < n; ++p) {
            if (p == q_ || p == r_) continue;
            ProcessIndex rp = to_reduced_[p];
            init[p] = intern(p, {LiftedMemory::Kind::Other, red_.automaton.process(rp).initial,
                                 orig_.process(p).initial, std::nullopt, 0});
        }
        {
            LocalState m = red_.automaton.process(rq_).initial;
            LocalState x = aprime_.process(rq_).initial;
            auto inj = inject_plan(m, x);
            LiftedMemory qm{LiftedMemory::Kind::Parent, m, x, std::nullopt, 0};
            LiftedMemory rm{LiftedMemory::Kind::Leaf, 0, orig_.process(r_).initial, std::nullopt,
                            orig_.process(r_).initial};
            if (inj) {
                qm.reduced_memory = inj->m;
                qm.state = inj->x;
                rm.plan = inj->plan;
            }
            init[q_] = intern(q_, qm);
            init[r_] = intern(r_, rm);
        }

        std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> seen;
        std::deque<std::vector<std::uint32_t>> queue;
        seen.emplace(init, 0);
        queue.push_back(init);
        std::map<std::pair<ActionIndex, std::array<std::uint32_t, 2>>, std::array<std::uint32_t, 2>>
            transitions;
        while (!queue.empty()) {
            check_interrupt();
            auto config = std::move(queue.front());
            queue.pop_front();
            for (ActionIndex a = 0; a < orig_.action_count(); ++a) {
                const Action& act = orig_.action(a);
                LocalTuple src_states{plant_state(act.domain[0], config[act.domain[0]]), kNoState};
                if (act.domain.size() > 1)
                    src_states[1] = plant_state(act.domain[1], config[act.domain[1]]);
                if (!orig_.step(a, src_states)) continue;
                if (act.controllable) {
                    bool ok = true;
                    for (ProcessIndex p : act.domain)
                        if (!advised(p, config[p], a)) ok = false;
                    if (!ok) continue;
                }
                std::array<std::uint32_t, 2> src{config[act.domain[0]],
                                                 act.domain.size() > 1 ? config[act.domain[1]] : 0};
                auto key = std::make_pair(a, src);
                std::array<std::uint32_t, 2> dst;
                if (auto it = transitions.find(key); it != transitions.end()) {
                    dst = it->second;
                } else {
                    auto next = step(a, src);
                    if (!next) continue;
                    dst = *next;
                    transitions.emplace(key, dst);
                }
                auto next_config = config;
                next_config[act.domain[0]] = dst[0];
                if (act.domain.size() > 1) next_config[act.domain[1]] = dst[1];
                if (seen.emplace(next_config, static_cast<std::uint32_t>(seen.size())).second) {
                    if (seen.size() > state_limit)
                        throw ResourceLimit("lifted controller exceeds " +
                                            std::to_string(state_limit) + " configurations");
                    queue.push_back(std::move(next_config));
                }
            }
        }

        PlantBuilder b;
        std::vector<std::vector<std::string>> names(n);
        for (ProcessIndex p = 0; p < n; ++p) {
            for (std::size_t i = 0; i < symbols_[p].size(); ++i)
                names[p].push_back(memory_name(i, symbols_[p].size()));
            b.add_process(orig_.process(p).name, names[p], names[p][init[p]], {});
        }
        for (ActionIndex a = 0; a < orig_.action_count(); ++a)
            b.add_action(orig_.action(a).name, domain_names(orig_, a), orig_.action(a).controllable);
        for (const auto& [key, dst] : transitions) {
            const Action& act = orig_.action(key.first);
            std::vector<std::string> s, t;
            for (std::size_t i = 0; i < act.domain.size(); ++i) {
                s.push_back(names[act.domain[i]][key.second[i]]);
                t.push_back(names[act.domain[i]][dst[i]]);
            }
            b.add_transition(act.name, s, t);
        }
        LiftResult result;
        result.controller.automaton = b.build();
        result.controller.advice.resize(n);
        result.memory = symbols_;
        for (ProcessIndex p = 0; p < n; ++p) {
            result.controller.advice[p].resize(symbols_[p].size());
            for (std::size_t i = 0; i < symbols_[p].size(); ++i)
                result.controller.advice[p][i] = advice(p, static_cast<std::uint32_t>(i));
        }
        return result;
    }

    // Exposed for annotation extraction.
    std::optional<std::pair<ActionIndex, std::vector<ActionIndex>>> offer_for(LocalState m, LocalState x,
                                                                              ActionIndex a) const {
        for (ActionIndex ra : red_.advice[rq_][m]) {
            auto it = kind_.find(ra);
            if (it == kind_.end() || it->second->kind != NewAction::Kind::ChooseB) continue;
            const auto& bset = it->second->b;
            if (a != kNoState && !std::binary_search(bset.begin(), bset.end(), a)) continue;
            if (!aprime_.step(ra, {x, kNoState})) continue;
            if (!red_.automaton.step(ra, {m, kNoState})) continue;
            return std::make_pair(ra, bset);
        }
        return std::nullopt;
    }

private:
    struct Injection {
        LocalState m, x;
        std::size_t plan;
    };

    std::uint32_t intern(ProcessIndex p, const LiftedMemory& mem) {
        auto [it, fresh] = interned_[p].emplace(mem, static_cast<std::uint32_t>(symbols_[p].size()));
        if (fresh) symbols_[p].push_back(mem);
        return it->second;
    }

    LocalState plant_state(ProcessIndex p, std::uint32_t mem) const {
        const LiftedMemory& s = symbols_[p][mem];
        if (s.kind == LiftedMemory::Kind::Parent) return art_.q_states[s.state].sq;
        return s.state;
    }

    // ch(T) proposed by the reduced controller at a non-final Pair state.
    std::optional<Injection> inject_plan(LocalState m, LocalState x) const {
        const ReducedQState& qs = art_.q_states[x];
        if (qs.kind != ReducedQState::Kind::Pair) return std::nullopt;
        for (ActionIndex ra : red_.advice[rq_][m]) {
            auto it = kind_.find(ra);
            if (it == kind_.end() || it->second->kind != NewAction::Kind::ChooseT) continue;
            auto nx = aprime_.step(ra, {x, kNoState});
            auto nm = red_.automaton.step(ra, {m, kNoState});
            if (!nx || !nm) continue;
            if (!art_.plans[it->second->plan].witnesses.count(qs.sr))
                throw InconsistentArtifact("plan " + art_.plans[it->second->plan].action +
                                           " has no witness at the current leaf state");
            return Injection{(*nm)[0], (*nx)[0], it->second->plan};
        }
        return std::nullopt;
    }

    std::vector<ActionIndex> to_original(const std::vector<ActionIndex>& reduced_actions) const {
        std::vector<ActionIndex> out;
        for (ActionIndex ra : reduced_actions) {
            if (kind_.count(ra)) continue;
            out.push_back(orig_.action_index(aprime_.action(ra).name));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<ActionIndex> advice(ProcessIndex p, std::uint32_t mem) const {
        const LiftedMemory& s = symbols_[p][mem];
        switch (s.kind) {
            case LiftedMemory::Kind::Other:
                return to_original(red_.advice[to_reduced_[p]][s.reduced_memory]);
            case LiftedMemory::Kind::Parent: {
                if (art_.q_states[s.state].kind != ReducedQState::Kind::Planned) return {};
                if (auto offer = offer_for(s.reduced_memory, s.state, kNoState)) return offer->second;
                return to_original(red_.advice[rq_][s.reduced_memory]);
            }
            case LiftedMemory::Kind::Leaf: {
                if (!s.plan || orig_.process(r_).is_final(s.state)) return {};
                const auto& witnesses = art_.plans[*s.plan].witnesses;
                auto wit = witnesses.find(s.plan_from);
                if (wit == witnesses.end()) return {};
                auto c = wit->second.find(s.state);
                if (c == wit->second.end()) return {};
                if (c->second.kind == Choice::Kind::Control) return {c->second.action};
                if (c->second.kind == Choice::Kind::Offer) return c->second.offer;
                return {};
            }
        }
        return {};
    }

    bool advised(ProcessIndex p, std::uint32_t mem, ActionIndex a) const {
        auto set = advice(p, mem);
        return std::binary_search(set.begin(), set.end(), a);
    }

    std::optional<std::array<std::uint32_t, 2>> step(ActionIndex a, std::array<std::uint32_t, 2> src) {
        const Action& act = orig_.action(a);
        const auto& dom = act.domain;
        bool has_q = act.involves(q_), has_r = act.involves(r_);

        if (has_r && !has_q) {
            LiftedMemory rm = symbols_[r_][src[0]];
            auto t = orig_.step(a, {rm.state, kNoState});
            if (!t) return std::nullopt;
            rm.state = (*t)[0];
            return std::array<std::uint32_t, 2>{intern(r_, rm), 0};
        }

        if (has_r && has_q) {
            std::size_t qi = dom[0] == q_ ? 0 : 1;
            LiftedMemory qm = symbols_[q_][src[qi]];
            LiftedMemory rm = symbols_[r_][src[1 - qi]];
            auto offer = offer_for(qm.reduced_memory, qm.state, a);
            if (!offer) return std::nullopt;
            LocalState m1 = (*red_.automaton.step(offer->first, {qm.reduced_memory, kNoState}))[0];
            LocalState x1 = (*aprime_.step(offer->first, {qm.state, kNoState}))[0];
            auto sync = sync_action_.find({a, rm.state});
            if (sync == sync_action_.end())
                throw InconsistentArtifact("no (a,t_r) action for '" + act.name + "'");
            auto x2 = aprime_.step(sync->second, {x1, kNoState});
            auto m2 = red_.automaton.step(sync->second, {m1, kNoState});
            if (!x2 || !m2) return std::nullopt;
            LiftedMemory nq{LiftedMemory::Kind::Parent, (*m2)[0], (*x2)[0], std::nullopt, 0};
            const ReducedQState& pair = art_.q_states[nq.state];
            LiftedMemory nr{LiftedMemory::Kind::Leaf, 0, pair.sr, std::nullopt, pair.sr};
            if (auto inj = inject_plan(nq.reduced_memory, nq.state)) {
                nq.reduced_memory = inj->m;
                nq.state = inj->x;
                nr.plan = inj->plan;
            }
            std::array<std::uint32_t, 2> out{};
            out[qi] = intern(q_, nq);
            out[1 - qi] = intern(r_, nr);
            return out;
        }

        ActionIndex ra = reduced_action_[a];
        std::array<LocalState, 2> mems{kNoState, kNoState}, states{kNoState, kNoState};
        for (std::size_t i = 0; i < dom.size(); ++i) {
            const LiftedMemory& m = symbols_[dom[i]][src[i]];
            mems[i] = m.reduced_memory;
            states[i] = m.state;  // q: reduced q-state; others: plant state
        }
        auto nm = red_.automaton.step(ra, mems);
        auto ns = aprime_.step(ra, states);
        if (!nm || !ns) return std::nullopt;
        std::array<std::uint32_t, 2> out{};
        for (std::size_t i = 0; i < dom.size(); ++i) {
            LiftedMemory m = symbols_[dom[i]][src[i]];
            m.reduced_memory = (*nm)[i];
            m.state = (*ns)[i];
            out[i] = intern(dom[i], m);
        }
        return out;
    }

    const Controller& red_;
    const ReductionArtifact& art_;
    const Plant& orig_;
    const Plant& aprime_;
    ProcessIndex q_ = 0, r_ = 0, rq_ = 0;
    std::vector<ProcessIndex> to_reduced_;
    std::vector<ActionIndex> reduced_action_;
    std::map<ActionIndex, const NewAction*> kind_;
    std::map<std::pair<ActionIndex, LocalState>, ActionIndex> sync_action_;
    std::vector<std::map<LiftedMemory, std::uint32_t>> interned_;
    std::vector<std::vector<LiftedMemory>> symbols_;
};

}  // namespace

LiftResult lift_controller(const Controller& reduced, const ReductionArtifact& artifact,
                           std::size_t state_limit) {
    Lifter lifter(reduced, artifact);
    return lifter.run(state_limit);
}

ChiAnnotations lifted_annotations(const LiftResult& lift, const ReductionArtifact& art,
                                  const Controller& reduced, const std::vector<ActionIndex>& u) {
    const Plant& plant = *art.original;
    Lifter lifter(reduced, art);
    const Plant& c = lift.controller.automaton;
    GlobalState mem = c.initial_state();
    ChiAnnotations ann;
    auto current_plan = [&] {
        const LiftedMemory& rm = lift.memory[art.r][mem[art.r]];
        if (rm.plan) ann.plans.push_back(*rm.plan);
    };
    current_plan();
    for (ActionIndex a : u) {
        const Action& act = plant.action(a);
        if (act.involves(art.q) && act.involves(art.r)) {
            const LiftedMemory& qm = lift.memory[art.q][mem[art.q]];
            auto offer = lifter.offer_for(qm.reduced_memory, qm.state, a);
            if (!offer) throw MalformedDecomposition("play is not consistent with the lifted controller");
            ann.offers.push_back(offer->second);
        }
        LocalTuple src{mem[act.domain[0]], act.domain.size() > 1 ? mem[act.domain[1]] : kNoState};
        auto dst = c.step(a, src);
        if (!dst) throw MalformedDecomposition("play is not consistent with the lifted controller");
        mem[act.domain[0]] = (*dst)[0];
        if (act.domain.size() > 1) mem[act.domain[1]] = (*dst)[1];
        if (act.involves(art.q) && act.involves(art.r)) current_plan();
    }
    return ann;
}

// ------------------------------------------------------------ minimization

Controller minimize_controller(const Plant& plant, const Controller& controller) {
    check_alphabet(plant, controller);
    const Plant& c = controller.automaton;
    std::size_t n = c.process_count();

    std::vector<std::vector<std::uint32_t>> cls(n);
    std::vector<std::size_t> counts(n, 0);
    for (ProcessIndex p = 0; p < n; ++p) {
        std::map<std::vector<ActionIndex>, std::uint32_t> ids;
        for (LocalState m = 0; m < c.process(p).size(); ++m)
            cls[p].push_back(ids.emplace(controller.advice[p][m], ids.size()).first->second);
        counts[p] = ids.size();
    }

    using Entry = std::array<std::uint32_t, 5>;
    for (;;) {
        std::vector<std::vector<std::vector<Entry>>> sig(n);
        for (ProcessIndex p = 0; p < n; ++p) sig[p].resize(c.process(p).size());
        for (ActionIndex a = 0; a < c.action_count(); ++a) {
            const auto& dom = c.action(a).domain;
            for (const auto& t : c.transitions(a)) {
                for (std::size_t i = 0; i < dom.size(); ++i) {
                    Entry e{a, static_cast<std::uint32_t>(i), UINT32_MAX, cls[dom[i]][t.target[i]],
                            UINT32_MAX};
                    if (dom.size() > 1) {
                        e[2] = cls[dom[1 - i]][t.source[1 - i]];
                        e[4] = cls[dom[1 - i]][t.target[1 - i]];
                    }
                    sig[dom[i]][t.source[i]].push_back(e);
                }
            }
        }
        bool changed = false;
        for (ProcessIndex p = 0; p < n; ++p) {
            std::map<std::pair<std::uint32_t, std::vector<Entry>>, std::uint32_t> ids;
            std::vector<std::uint32_t> next;
            for (LocalState m = 0; m < c.process(p).size(); ++m) {
                auto& s = sig[p][m];
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
                next.push_back(ids.emplace(std::make_pair(cls[p][m], std::move(s)), ids.size())
                                   .first->second);
            }
            if (ids.size() != counts[p]) changed = true;
            counts[p] = ids.size();
            cls[p] = std::move(next);
        }
        if (!changed) break;
    }

    PlantBuilder b;
    std::vector<std::vector<std::string>> names(n);
    for (ProcessIndex p = 0; p < n; ++p) {
        // Number classes by first occurrence so the initial memory is m0.
        std::vector<std::uint32_t> renumber(counts[p], UINT32_MAX);
        std::uint32_t next = 0;
        LocalState init = c.process(p).initial;
        renumber[cls[p][init]] = next++;
        for (LocalState m = 0; m < c.process(p).size(); ++m)
            if (renumber[cls[p][m]] == UINT32_MAX) renumber[cls[p][m]] = next++;
        for (auto& x : cls[p]) x = renumber[x];
        for (std::size_t i = 0; i < counts[p]; ++i) names[p].push_back(memory_name(i, counts[p]));
        b.add_process(c.process(p).name, names[p], names[p][0], {});
    }
    for (ActionIndex a = 0; a < c.action_count(); ++a) {
        const Action& act = c.action(a);
        b.add_action(act.name, domain_names(c, a), act.controllable);
        std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> quotient;
        for (const auto& t : c.transitions(a)) {
            std::vector<std::uint32_t> s, d;
            for (std::size_t i = 0; i < act.domain.size(); ++i) {
                s.push_back(cls[act.domain[i]][t.source[i]]);
                d.push_back(cls[act.domain[i]][t.target[i]]);
            }
            auto [it, fresh] = quotient.emplace(s, d);
            if (!fresh && it->second != d) return controller;
        }
        for (const auto& [s, d] : quotient) {
            std::vector<std::string> src, dst;
            for (std::size_t i = 0; i < act.domain.size(); ++i) {
                src.push_back(names[act.domain[i]][s[i]]);
                dst.push_back(names[act.domain[i]][d[i]]);
            }
            b.add_transition(act.name, src, dst);
        }
    }
    Controller out{b.build(), {}};
    out.advice.resize(n);
    for (ProcessIndex p = 0; p < n; ++p) {
        out.advice[p].resize(counts[p]);
        for (LocalState m = 0; m < c.process(p).size(); ++m)
            out.advice[p][cls[p][m]] = controller.advice[p][m];
    }
    return out;
}

// ---------------------------------------------------------------- pipeline

std::vector<std::pair<std::string, std::string>> elimination_order(const Plant& plant) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& step : leaf_order(plant).steps)
        out.emplace_back(plant.process(step.leaf).name, plant.process(step.parent).name);
    return out;
}

std::vector<std::vector<std::pair<std::string, std::string>>> all_elimination_orders(
    const Plant& plant) {
    std::vector<std::vector<std::pair<std::string, std::string>>> out;
    for (const auto& order : all_leaf_orders(communication_graph(plant))) {
        std::vector<std::pair<std::string, std::string>> named;
        for (const auto& step : order)
            named.emplace_back(plant.process(step.leaf).name, plant.process(step.parent).name);
        out.push_back(std::move(named));
    }
    return out;
}

namespace {

SynthesisReport run_pipeline(const Plant& plant, const SynthesisOptions& options, bool lift) {
    auto t0 = Clock::now();
    SynthesisReport report;
    require_valid(plant);
    auto graph = communication_graph(plant);
    if (!graph.is_acyclic()) throw CyclicGraph("communication graph has a cycle");

    std::vector<ReductionArtifact> levels;
    auto current = std::make_shared<const Plant>(plant);
    // Without an explicit order the next leaf is chosen on the current
    // plant, so the cost sees the sizes produced by earlier reductions.
    auto next_step = [&](std::size_t i) -> std::optional<std::pair<std::string, std::string>> {
        if (options.order) {
            if (i < options.order->size()) return (*options.order)[i];
            return std::nullopt;
        }
        auto steps = leaf_order(*current).steps;
        if (steps.empty()) return std::nullopt;
        return std::make_pair(current->process(steps.front().leaf).name,
                              current->process(steps.front().parent).name);
    };
    try {
        for (std::size_t i = 0;; ++i) {
            auto step = next_step(i);
            if (!step) break;
            const auto& [leaf, parent] = *step;
            auto t = Clock::now();
            ReductionOptions ropt;
            ropt.all_b = options.all_b;
            ropt.plan_limits = options.plan_limits;
            ropt.state_limit = options.state_limit;
            ReductionArtifact art = reduce_leaf(current, current->process_index(leaf),
                                                current->process_index(parent), ropt);
            LevelReport lr{leaf, parent, art.stats, art.reduced.total_states(), seconds_since(t)};
            report.levels.push_back(lr);
            if (art.reduced.total_states() > options.state_limit)
                throw ResourceLimit("reduced plant exceeds " + std::to_string(options.state_limit) +
                                    " states");
            current = std::make_shared<const Plant>(art.reduced);
            levels.push_back(std::move(art));
        }
        report.reduce_seconds = seconds_since(t0);

        auto t_solve = Clock::now();
        const Plant& last = *current;
        for (const auto& a : last.actions())
            if (!a.is_local()) throw CyclicGraph("elimination order leaves a binary action");
        // Plan choices prefer final plans, then fewer outcomes, then plan
        // number; ties go to the leaf eliminated first.
        std::map<std::string, std::vector<std::size_t>> priorities;
        for (std::size_t level = 0; level < levels.size(); ++level) {
            const auto& art = levels[level];
            for (std::size_t i = 0; i < art.plans.size(); ++i)
                priorities[art.plans[i].action] = {art.plans[i].is_final ? 0u : 1u,
                                                   art.plans[i].outcomes.size(), i, level};
        }
        ActionPriority priority = [&](ActionIndex a) {
            auto it = priorities.find(last.action(a).name);
            return it == priorities.end() ? std::vector<std::size_t>{0, 0, 0, 0} : it->second;
        };
        std::vector<std::vector<std::vector<ActionIndex>>> advice(last.process_count());
        report.winning = true;
        for (ProcessIndex p = 0; p < last.process_count(); ++p) {
            report.roots.push_back(last.process(p).name);
            LocalSolution sol = solve_arena(arena_of_process(last, p), priority);
            if (!sol.winning) report.winning = false;
            advice[p].resize(last.process(p).size());
            for (LocalState s = 0; s < last.process(p).size(); ++s)
                if (sol.winning_region[s] && sol.strategy[s]) advice[p][s] = {*sol.strategy[s]};
        }
        report.final_states = last.total_states();
        report.solve_seconds = seconds_since(t_solve);
        if (!lift || !report.winning) {
            report.total_seconds = seconds_since(t0);
            return report;
        }

        auto t_lift = Clock::now();
        auto tidy = [&](const Plant& at, Controller c) {
            if (!options.minimize) return c;
            Controller m = minimize_controller(at, c);
            if (m.total_memory() < c.total_memory() && verify_controller(at, m).winning())
                return m;
            return c;
        };
        Controller ctrl = tidy(last, state_controller(last, advice));
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            LiftResult lifted = lift_controller(ctrl, *it, options.state_limit * 5);
            ctrl = tidy(*it->original, std::move(lifted.controller));
        }
        report.lift_seconds = seconds_since(t_lift);
        if (options.verify) {
            Verdict v = verify_controller(plant, ctrl);
            report.verified = v.winning();
            if (!v.winning())
                throw InconsistentArtifact("lifted controller fails verification: " +
                                           describe_verdict(plant, v));
        }
        report.controller_memory = ctrl.total_memory();
        report.controller = std::move(ctrl);
    } catch (const Interrupted&) {
        report.interrupted = true;
        report.winning = false;
        report.controller.reset();
    }
    report.total_seconds = seconds_since(t0);
    return report;
}

}  // namespace

SynthesisReport synthesize(const Plant& plant, const SynthesisOptions& options) {
    return run_pipeline(plant, options, true);
}

SynthesisReport solve(const Plant& plant, const SynthesisOptions& options) {
    return run_pipeline(plant, options, false);
}

}  // namespace asyncsynth
