#include "asyncsynth/localgame.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace asyncsynth {

LocalArena arena_of_process(const Plant& plant, ProcessIndex p) {
    const Process& proc = plant.process(p);
    LocalArena arena;
    arena.size = proc.size();
    arena.initial = proc.initial;
    arena.final = proc.final;
    arena.controllable.assign(arena.size, {});
    arena.uncontrollable.assign(arena.size, {});
    arena.offers.assign(arena.size, {});
    for (ActionIndex a : plant.actions_of(p)) {
        const Action& act = plant.action(a);
        if (!act.is_local()) continue;
        for (const auto& t : plant.transitions(a)) {
            auto& bucket = act.controllable ? arena.controllable : arena.uncontrollable;
            bucket[t.source[0]].push_back({a, t.target[0]});
        }
    }
    return arena;
}

LocalArena leaf_arena(const Plant& plant, ProcessIndex r, ProcessIndex q) {
    LocalArena arena = arena_of_process(plant, r);
    for (ActionIndex a : shared_actions(plant, r, q)) {
        std::size_t slot = plant.action(a).domain[0] == r ? 0 : 1;
        for (const auto& t : plant.transitions(a)) {
            auto& offers = arena.offers[t.source[slot]];
            if (offers.empty() || offers.back() != a) offers.push_back(a);
        }
    }
    for (auto& o : arena.offers) {
        std::sort(o.begin(), o.end());
        o.erase(std::unique(o.begin(), o.end()), o.end());
    }
    return arena;
}

// ------------------------------------------------------------ witnesses

namespace {

void check_choice(const LocalArena& arena, LocalState s, const Choice& c) {
    if (arena.is_final(s)) return;
    if (!arena.uncontrollable[s].empty()) {
        if (c.kind != Choice::Kind::Pass)
            throw IllFormedWitness("state " + std::to_string(s) +
                                   " has an uncontrollable move but the witness does not pass");
        return;
    }
    if (c.kind == Choice::Kind::Control) {
        for (const auto& e : arena.controllable[s])
            if (e.action == c.action) return;
        throw IllFormedWitness("witness chooses an action not enabled at state " +
                               std::to_string(s));
    }
    if (c.kind == Choice::Kind::Offer) {
        if (c.offer.empty()) throw IllFormedWitness("empty offer at state " + std::to_string(s));
        for (ActionIndex a : c.offer)
            if (!std::binary_search(arena.offers[s].begin(), arena.offers[s].end(), a))
                throw IllFormedWitness("offer at state " + std::to_string(s) +
                                       " contains an action that is not offerable");
    }
}

std::vector<LocalState> successors(const LocalArena& arena, LocalState s, const Choice& c) {
    std::vector<LocalState> out;
    if (arena.is_final(s)) return out;
    if (!arena.uncontrollable[s].empty()) {
        for (const auto& e : arena.uncontrollable[s]) out.push_back(e.target);
    } else if (c.kind == Choice::Kind::Control) {
        for (const auto& e : arena.controllable[s])
            if (e.action == c.action) out.push_back(e.target);
    }
    return out;
}

// Outcomes of a complete positional assignment over the reachable part, or
// nullopt when some play diverges or gets stuck outside F.
std::optional<std::vector<SyncOutcome>> evaluate(const LocalArena& arena, LocalState from,
                                                 const std::vector<const Choice*>& choice) {
    std::vector<char> color(arena.size, 0);  // 0 new, 1 on stack, 2 done
    std::vector<SyncOutcome> outcomes;
    std::vector<std::pair<LocalState, std::size_t>> stack;
    std::vector<std::vector<LocalState>> succ(arena.size);
    auto enter = [&](LocalState s) -> bool {
        color[s] = 1;
        const Choice& c = *choice[s];
        if (arena.is_final(s)) {
            outcomes.push_back({s, {}});
        } else if (arena.uncontrollable[s].empty() && c.kind == Choice::Kind::Offer) {
            outcomes.push_back({s, c.offer});
        } else {
            succ[s] = successors(arena, s, c);
            if (succ[s].empty()) return false;
        }
        stack.push_back({s, 0});
        return true;
    };
    if (!enter(from)) return std::nullopt;
    while (!stack.empty()) {
        auto& [s, i] = stack.back();
        if (i == succ[s].size()) {
            color[s] = 2;
            stack.pop_back();
            continue;
        }
        LocalState t = succ[s][i++];
        if (color[t] == 1) return std::nullopt;
        if (color[t] == 0 && !enter(t)) return std::nullopt;
    }
    std::sort(outcomes.begin(), outcomes.end());
    return outcomes;
}

}  // namespace

OutcomeResult plan_witness_outcomes(const LocalArena& arena, LocalState from,
                                    const Witness& witness) {
    static const Choice kPass;
    std::vector<const Choice*> choice(arena.size, &kPass);
    for (const auto& [s, c] : witness) {
        if (s >= arena.size) throw IllFormedWitness("witness mentions unknown state");
        check_choice(arena, s, c);
        choice[s] = &c;
    }
    auto result = evaluate(arena, from, choice);
    if (!result) return Divergent{};
    return *result;
}

namespace {

std::size_t proposal_size(const std::vector<SyncOutcome>& x) {
    std::size_t n = 0;
    for (const auto& o : x) n += o.proposal.size();
    return n;
}

bool homogeneous(const LocalArena& arena, const std::vector<SyncOutcome>& outcomes) {
    bool any_final = false, any_offer = false;
    for (const auto& o : outcomes) {
        if (o.proposal.empty()) {
            if (!arena.is_final(o.state)) return false;
            any_final = true;
        } else {
            any_offer = true;
        }
    }
    return !(any_final && any_offer);
}

}  // namespace

bool plan_order_less(const std::vector<SyncOutcome>& x, const std::vector<SyncOutcome>& y) {
    bool fx = !x.empty() && x.front().proposal.empty();
    bool fy = !y.empty() && y.front().proposal.empty();
    if (fx != fy) return fx;
    if (x.size() != y.size()) return x.size() < y.size();
    std::size_t sx = proposal_size(x), sy = proposal_size(y);
    if (sx != sy) return sx < sy;
    // Colexicographic: the outcome at the highest leaf state decides first.
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

std::vector<AdmissiblePlan> enumerate_admissible_plans(const LocalArena& arena, LocalState from,
                                                       const PlanLimits& limits) {
    // Candidate choices per state, following the normal form: finals and
    // states with an uncontrollable move pass; otherwise one controllable
    // action or one nonempty offer set.
    std::vector<std::vector<Choice>> options(arena.size);
    for (LocalState s = 0; s < arena.size; ++s) {
        if (arena.is_final(s) || !arena.uncontrollable[s].empty()) {
            options[s].push_back(Choice::pass());
            continue;
        }
        for (const auto& e : arena.controllable[s]) options[s].push_back(Choice::control(e.action));
        const auto& offers = arena.offers[s];
        if (offers.size() >= 63) throw ResourceLimit("too many offerable actions at a leaf state");
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << offers.size()); ++mask) {
            std::vector<ActionIndex> b;
            for (std::size_t i = 0; i < offers.size(); ++i)
                if (mask >> i & 1) b.push_back(offers[i]);
            options[s].push_back(Choice::offer_set(std::move(b)));
        }
    }

    std::map<std::vector<SyncOutcome>, Witness> found;
    std::vector<const Choice*> choice(arena.size, nullptr);
    std::vector<LocalState> pending{from};
    std::size_t explored = 0;

    // Every assigned state is reachable from `from`, so a cycle among
    // assigned states, or a final state next to an offer, dooms every
    // completion of the current assignment.
    std::size_t finals_in = 0, offers_in = 0;
    std::vector<char> mark(arena.size, 0);
    auto closes_cycle = [&](LocalState s, const Choice& c) {
        std::vector<LocalState> stack;
        std::fill(mark.begin(), mark.end(), 0);
        for (LocalState t : successors(arena, s, c)) {
            if (t == s) return true;
            if (choice[t] != nullptr && !mark[t]) {
                mark[t] = 1;
                stack.push_back(t);
            }
        }
        while (!stack.empty()) {
            LocalState u = stack.back();
            stack.pop_back();
            for (LocalState v : successors(arena, u, *choice[u])) {
                if (v == s) return true;
                if (choice[v] != nullptr && !mark[v]) {
                    mark[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return false;
    };

    // Depth-first over assignments of the states reachable so far.
    auto rec = [&](auto&& self) -> void {
        while (!pending.empty() && choice[pending.back()] != nullptr) pending.pop_back();
        if (pending.empty()) {
            if (++explored > limits.max_witnesses)
                throw ResourceLimit("admissible-plan enumeration exceeded " +
                                    std::to_string(limits.max_witnesses) + " witnesses");
            auto outcomes = evaluate(arena, from, choice);
            if (!outcomes || outcomes->empty() || !homogeneous(arena, *outcomes)) return;
            if (found.count(*outcomes)) return;
            Witness w;
            for (LocalState s = 0; s < arena.size; ++s)
                if (choice[s] != nullptr && !arena.is_final(s)) w.emplace(s, *choice[s]);
            found.emplace(std::move(*outcomes), std::move(w));
            return;
        }
        LocalState s = pending.back();
        pending.pop_back();
        auto saved = pending;
        bool is_final = arena.is_final(s);
        for (const Choice& c : options[s]) {
            bool offer = c.kind == Choice::Kind::Offer;
            if ((is_final && offers_in) || (offer && finals_in)) continue;
            if (closes_cycle(s, c)) continue;
            choice[s] = &c;
            finals_in += is_final;
            offers_in += offer;
            for (LocalState t : successors(arena, s, c))
                if (choice[t] == nullptr) pending.push_back(t);
            self(self);
            pending = saved;
            finals_in -= is_final;
            offers_in -= offer;
        }
        choice[s] = nullptr;
        pending.push_back(s);
    };
    rec(rec);

    std::vector<AdmissiblePlan> plans;
    for (auto& [outcomes, witness] : found) {
        AdmissiblePlan plan;
        plan.outcomes = outcomes;
        plan.is_final = outcomes.front().proposal.empty();
        plan.from = from;
        plan.witness = std::move(witness);
        plans.push_back(std::move(plan));
    }
    std::sort(plans.begin(), plans.end(), [](const AdmissiblePlan& x, const AdmissiblePlan& y) {
        return plan_order_less(x.outcomes, y.outcomes);
    });
    return plans;
}

// --------------------------------------------------------------- solving

LocalSolution solve_arena(const LocalArena& arena, const ActionPriority& priority) {
    std::size_t n = arena.size;
    LocalSolution sol;
    sol.winning_region.assign(n, 0);
    sol.strategy.assign(n, std::nullopt);
    sol.rank.assign(n, SIZE_MAX);

    std::vector<std::vector<LocalState>> unc_pred(n), ctrl_pred(n);
    std::vector<std::size_t> unc_open(n, 0);
    for (LocalState s = 0; s < n; ++s) {
        for (const auto& e : arena.uncontrollable[s]) unc_pred[e.target].push_back(s);
        for (const auto& e : arena.controllable[s]) ctrl_pred[e.target].push_back(s);
        unc_open[s] = arena.uncontrollable[s].size();
    }
    for (auto* preds : {&unc_pred, &ctrl_pred})
        for (auto& l : *preds) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }

    std::deque<LocalState> queue;
    std::size_t next_rank = 0;
    auto win = [&](LocalState s) {
        sol.winning_region[s] = 1;
        sol.rank[s] = next_rank++;
        queue.push_back(s);
    };
    for (LocalState s = 0; s < n; ++s)
        if (arena.is_final(s)) win(s);

    // A state joins once every uncontrollable successor is winning and either
    // it has an uncontrollable move (pass) or some controllable successor wins.
    auto ready = [&](LocalState s) {
        if (sol.winning_region[s] || unc_open[s] != 0) return false;
        if (!arena.uncontrollable[s].empty()) return true;
        for (const auto& e : arena.controllable[s])
            if (sol.winning_region[e.target]) return true;
        return false;
    };
    while (!queue.empty()) {
        LocalState t = queue.front();
        queue.pop_front();
        for (LocalState s : unc_pred[t]) {
            for (const auto& e : arena.uncontrollable[s])
                if (e.target == t) --unc_open[s];
            if (ready(s)) win(s);
        }
        for (LocalState s : ctrl_pred[t])
            if (ready(s)) win(s);
    }

    for (LocalState s = 0; s < n; ++s) {
        if (!sol.winning_region[s] || arena.is_final(s) || !arena.uncontrollable[s].empty())
            continue;
        std::optional<LocalEdge> best;
        std::vector<std::size_t> best_key;
        for (const auto& e : arena.controllable[s]) {
            if (!sol.winning_region[e.target] || sol.rank[e.target] >= sol.rank[s]) continue;
            std::vector<std::size_t> key = priority ? priority(e.action) : std::vector<std::size_t>{};
            key.push_back(sol.rank[e.target]);
            key.push_back(e.action);
            if (!best || key < best_key) {
                best = e;
                best_key = std::move(key);
            }
        }
        sol.strategy[s] = best->action;
    }
    sol.winning = sol.winning_region[arena.initial] != 0;
    return sol;
}

LocalSolution solve_single_process(const Plant& plant, const ActionPriority& priority) {
    if (plant.process_count() != 1)
        throw MultiProcess("expected a single-process plant, got " +
                           std::to_string(plant.process_count()) + " processes");
    return solve_arena(arena_of_process(plant, 0), priority);
}

}  // namespace asyncsynth
