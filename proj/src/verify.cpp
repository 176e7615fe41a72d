#include "asyncsynth/verify.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace asyncsynth {

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

std::vector<std::uint32_t> key_of(const ProductState& s) {
    std::vector<std::uint32_t> k(s.plant);
    k.insert(k.end(), s.memory.begin(), s.memory.end());
    return k;
}

LocalTuple tuple_of(const GlobalState& g, const std::vector<ProcessIndex>& dom) {
    return {g[dom[0]], dom.size() > 1 ? g[dom[1]] : kNoState};
}

void write_tuple(GlobalState& g, const std::vector<ProcessIndex>& dom, const LocalTuple& t) {
    g[dom[0]] = t[0];
    if (dom.size() > 1) g[dom[1]] = t[1];
}

}  // namespace

ProductState initial_product_state(const Plant& plant, const Controller& controller) {
    return {plant.initial_state(), controller.automaton.initial_state()};
}

std::vector<ActionIndex> product_enabled(const Plant& plant, const Controller& controller,
                                         const ProductState& s) {
    std::vector<ActionIndex> out;
    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const Action& act = plant.action(a);
        if (!plant.step(a, tuple_of(s.plant, act.domain))) continue;
        if (!controller.automaton.step(a, tuple_of(s.memory, act.domain))) continue;
        bool allowed = true;
        if (act.controllable)
            for (ProcessIndex p : act.domain)
                if (!controller.advises(p, s.memory[p], a)) allowed = false;
        if (allowed) out.push_back(a);
    }
    return out;
}

ProductState product_step(const Plant& plant, const Controller& controller,
                          const ProductState& s, ActionIndex a) {
    const auto& dom = plant.action(a).domain;
    auto p = plant.step(a, tuple_of(s.plant, dom));
    auto m = controller.automaton.step(a, tuple_of(s.memory, dom));
    if (!p || !m) throw NotEnabled("action '" + plant.action(a).name + "' not possible");
    ProductState out = s;
    write_tuple(out.plant, dom, *p);
    write_tuple(out.memory, dom, *m);
    return out;
}

std::optional<ProductState> replay(const Plant& plant, const Controller& controller,
                                   const std::vector<ActionIndex>& word) {
    ProductState s = initial_product_state(plant, controller);
    for (ActionIndex a : word) {
        auto en = product_enabled(plant, controller, s);
        if (!std::binary_search(en.begin(), en.end(), a)) return std::nullopt;
        s = product_step(plant, controller, s, a);
    }
    return s;
}

Verdict verify_controller(const Plant& plant, const Controller& controller,
                          const VerifyOptions& options) {
    check_alphabet(plant, controller);

    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> index;
    std::vector<ProductState> states;
    std::vector<std::pair<std::uint32_t, ActionIndex>> parent;
    std::vector<std::vector<std::pair<ActionIndex, std::uint32_t>>> succ;

    auto path_to = [&](std::uint32_t s) {
        std::vector<ActionIndex> word;
        while (s != 0) {
            word.push_back(parent[s].second);
            s = parent[s].first;
        }
        std::reverse(word.begin(), word.end());
        return word;
    };

    ProductState init = initial_product_state(plant, controller);
    index.emplace(key_of(init), 0);
    states.push_back(init);
    parent.push_back({0, 0});
    succ.emplace_back();

    Verdict v;
    for (std::uint32_t i = 0; i < states.size(); ++i) {
        if ((i & 0xfff) == 0) check_interrupt();
        const ProductState s = states[i];
        for (ActionIndex a = 0; a < plant.action_count(); ++a) {
            const Action& act = plant.action(a);
            auto pnext = plant.step(a, tuple_of(s.plant, act.domain));
            if (!pnext) continue;
            auto mnext = controller.automaton.step(a, tuple_of(s.memory, act.domain));
            if (!act.controllable) {
                if (!mnext) {
                    v.kind = Verdict::Kind::Deadlock;
                    v.play = path_to(i);
                    v.culprit = act.domain[0];
                    v.blocked_uncontrollable = a;
                    v.explored = states.size();
                    return v;
                }
            } else {
                if (!mnext) continue;
                bool allowed = true;
                for (ProcessIndex p : act.domain)
                    if (!controller.advises(p, s.memory[p], a)) allowed = false;
                if (!allowed) continue;
            }
            ProductState next = s;
            write_tuple(next.plant, act.domain, *pnext);
            write_tuple(next.memory, act.domain, *mnext);
            auto [it, fresh] = index.emplace(key_of(next), static_cast<std::uint32_t>(states.size()));
            if (fresh) {
                if (states.size() >= options.state_limit)
                    throw ResourceLimit("verification exceeds " +
                                        std::to_string(options.state_limit) + " product states");
                states.push_back(std::move(next));
                parent.push_back({i, a});
                succ.emplace_back();
            }
            succ[i].push_back({a, it->second});
        }
        if (succ[i].empty() && !plant.all_final(s.plant)) {
            v.kind = Verdict::Kind::Deadlock;
            v.play = path_to(i);
            for (ProcessIndex p = 0; p < plant.process_count(); ++p)
                if (!plant.process(p).is_final(s.plant[p])) {
                    v.culprit = p;
                    break;
                }
            v.explored = states.size();
            return v;
        }
    }
    v.explored = states.size();

    // Any reachable cycle is an infinite maximal play.
    std::vector<char> color(states.size(), 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
    color[0] = 1;
    while (!stack.empty()) {
        auto& [s, k] = stack.back();
        if (k == succ[s].size()) {
            color[s] = 2;
            stack.pop_back();
            continue;
        }
        auto [a, t] = succ[s][k++];
        if (color[t] == 1) {
            v.kind = Verdict::Kind::Lasso;
            v.play = path_to(t);
            std::size_t pos = 0;
            while (stack[pos].first != t) ++pos;
            for (std::size_t j = pos; j < stack.size(); ++j)
                v.cycle.push_back(succ[stack[j].first][stack[j].second - 1].first);
            return v;
        }
        if (color[t] == 0) {
            color[t] = 1;
            stack.push_back({t, 0});
        }
    }
    return v;
}

std::string describe_verdict(const Plant& plant, const Verdict& v) {
    switch (v.kind) {
        case Verdict::Kind::Winning: return "winning";
        case Verdict::Kind::Deadlock: {
            std::string out = "deadlock after [" + format_word(plant, canonical_word(plant, v.play)) + "]";
            if (v.blocked_uncontrollable)
                out += ": controller blocks uncontrollable '" +
                       plant.action(*v.blocked_uncontrollable).name + "'";
            out += " (process " + plant.process(v.culprit).name + ")";
            return out;
        }
        case Verdict::Kind::Lasso:
            return "infinite play: stem [" + format_word(plant, canonical_word(plant, v.play)) +
                   "] cycle [" + format_word(plant, v.cycle) + "]";
    }
    return "";
}

MaximalPlays enumerate_maximal_plays(const Plant& plant, const Controller& controller,
                                     std::size_t length_bound) {
    check_alphabet(plant, controller);
    MaximalPlays out;
    std::map<std::vector<ActionIndex>, ProductState> level;
    level.emplace(std::vector<ActionIndex>{}, initial_product_state(plant, controller));
    std::set<std::vector<ActionIndex>> maximal;
    for (std::size_t len = 0; !level.empty(); ++len) {
        std::map<std::vector<ActionIndex>, ProductState> next;
        for (const auto& [word, s] : level) {
            auto en = product_enabled(plant, controller, s);
            if (en.empty()) {
                maximal.insert(word);
                continue;
            }
            if (len == length_bound) {
                out.truncated = true;
                continue;
            }
            for (ActionIndex a : en) {
                auto w = word;
                w.push_back(a);
                w = canonical_word(plant, w);
                if (!next.count(w)) next.emplace(std::move(w), product_step(plant, controller, s, a));
            }
        }
        level = std::move(next);
    }
    for (const auto& w : maximal) out.plays.push_back(play_of_word(plant, w));
    return out;
}

// ------------------------------------------------------------------ oracle

namespace {

class OracleSearch {
public:
    OracleSearch(const Plant& plant, std::size_t k, const OracleOptions& options, std::size_t& nodes)
        : plant_(plant), k_(k), options_(options), nodes_(nodes) {
        std::size_t n = plant.process_count();
        advice_.resize(n);
        options_per_.resize(n);
        for (ProcessIndex p = 0; p < n; ++p) {
            std::size_t states = plant.process(p).size();
            advice_[p].assign(states * k, -1);
            options_per_[p].resize(states);
            for (LocalState s = 0; s < states; ++s) options_per_[p][s] = advice_options(p, s);
        }
    }

    bool run() { return search(); }

    Controller build() const {
        PlantBuilder b;
        auto mem = [&](ProcessIndex p, std::uint32_t code) {
            return plant_.process(p).states[code / k_] + "." + std::to_string(code % k_);
        };
        for (ProcessIndex p = 0; p < plant_.process_count(); ++p) {
            std::vector<std::string> names;
            for (std::uint32_t c = 0; c < plant_.process(p).size() * k_; ++c) names.push_back(mem(p, c));
            b.add_process(plant_.process(p).name, names, mem(p, plant_.process(p).initial * k_), {});
        }
        for (ActionIndex a = 0; a < plant_.action_count(); ++a) {
            const Action& act = plant_.action(a);
            std::vector<std::string> dom;
            for (ProcessIndex p : act.domain) dom.push_back(plant_.process(p).name);
            b.add_action(act.name, dom, act.controllable);
        }
        for (const auto& [key, targets] : updates_) {
            ActionIndex a = key.first;
            const Action& act = plant_.action(a);
            LocalTuple src_s{key.second[0] / static_cast<std::uint32_t>(k_), 0};
            if (act.domain.size() > 1) src_s[1] = key.second[1] / static_cast<std::uint32_t>(k_);
            else src_s[1] = kNoState;
            auto dst = plant_.step(a, src_s);
            std::vector<std::string> src, tgt;
            for (std::size_t i = 0; i < act.domain.size(); ++i) {
                src.push_back(mem(act.domain[i], key.second[i]));
                tgt.push_back(mem(act.domain[i], (*dst)[i] * k_ + targets[i]));
            }
            b.add_transition(act.name, src, tgt);
        }
        Controller c{b.build(), {}};
        c.advice.resize(plant_.process_count());
        for (ProcessIndex p = 0; p < plant_.process_count(); ++p) {
            c.advice[p].assign(c.automaton.process(p).size(), {});
            for (std::uint32_t code = 0; code < advice_[p].size(); ++code) {
                int choice = advice_[p][code];
                if (choice < 0) continue;
                LocalState local = *c.automaton.process(p).find_state(mem(p, code));
                c.advice[p][local] = options_per_[p][code / k_][static_cast<std::size_t>(choice)];
            }
        }
        return c;
    }

private:
    using UpdateKey = std::pair<ActionIndex, std::array<std::uint32_t, 2>>;

    std::vector<std::vector<ActionIndex>> advice_options(ProcessIndex p, LocalState s) const {
        std::vector<std::vector<ActionIndex>> out;
        const auto& from = plant_.actions_from(p, s);
        for (ActionIndex a : from)
            if (!plant_.action(a).controllable) return {{}};
        for (ActionIndex a : from)
            if (plant_.action(a).is_local()) out.push_back({a});
        std::map<ProcessIndex, std::vector<ActionIndex>> by_partner;
        for (ActionIndex a : from) {
            const Action& act = plant_.action(a);
            if (act.is_local()) continue;
            by_partner[act.domain[0] == p ? act.domain[1] : act.domain[0]].push_back(a);
        }
        for (const auto& [partner, acts] : by_partner) {
            std::vector<std::vector<ActionIndex>> subsets;
            for (std::uint64_t mask = (std::uint64_t{1} << acts.size()) - 1; mask > 0; --mask) {
                std::vector<ActionIndex> b;
                for (std::size_t i = 0; i < acts.size(); ++i)
                    if (mask >> i & 1) b.push_back(acts[i]);
                subsets.push_back(std::move(b));
            }
            std::stable_sort(subsets.begin(), subsets.end(),
                             [](const auto& x, const auto& y) { return x.size() > y.size(); });
            out.insert(out.end(), subsets.begin(), subsets.end());
        }
        out.push_back({});
        return out;
    }

    struct Request {
        bool advice = true;
        ProcessIndex p = 0;
        std::uint32_t code = 0;
        UpdateKey update{};
        std::size_t options = 0;
    };

    enum class Outcome { Win, Lose, Need };

    // Explores the product under the current partial decisions.
    Outcome explore(Request& req) {
        std::size_t n = plant_.process_count();
        std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> index;
        std::vector<std::vector<std::uint32_t>> states;  // memory codes
        std::vector<std::vector<std::uint32_t>> succ;
        std::vector<std::uint32_t> init(n);
        for (ProcessIndex p = 0; p < n; ++p) init[p] = plant_.process(p).initial * k_;
        index.emplace(init, 0);
        states.push_back(init);
        succ.emplace_back();
        for (std::uint32_t i = 0; i < states.size(); ++i) {
            const auto codes = states[i];
            for (ProcessIndex p = 0; p < n; ++p)
                if (advice_[p][codes[p]] < 0) {
                    req = {true, p, codes[p], {}, options_per_[p][codes[p] / k_].size()};
                    return Outcome::Need;
                }
            bool all_final = true;
            for (ProcessIndex p = 0; p < n; ++p)
                if (!plant_.process(p).is_final(codes[p] / k_)) all_final = false;
            for (ActionIndex a = 0; a < plant_.action_count(); ++a) {
                const Action& act = plant_.action(a);
                LocalTuple src{codes[act.domain[0]] / static_cast<std::uint32_t>(k_), kNoState};
                if (act.domain.size() > 1) src[1] = codes[act.domain[1]] / static_cast<std::uint32_t>(k_);
                auto dst = plant_.step(a, src);
                if (!dst) continue;
                if (act.controllable) {
                    bool ok = true;
                    for (ProcessIndex p : act.domain) {
                        const auto& set = options_per_[p][codes[p] / k_][advice_[p][codes[p]]];
                        if (!std::binary_search(set.begin(), set.end(), a)) ok = false;
                    }
                    if (!ok) continue;
                }
                UpdateKey key{a, {codes[act.domain[0]], act.domain.size() > 1 ? codes[act.domain[1]] : 0}};
                auto it = updates_.find(key);
                if (it == updates_.end()) {
                    if (k_ == 1) {
                        it = updates_.emplace(key, std::array<std::uint32_t, 2>{0, 0}).first;
                    } else {
                        req = {false, 0, 0, key, act.domain.size() == 1 ? k_ : k_ * k_};
                        return Outcome::Need;
                    }
                }
                auto next = codes;
                next[act.domain[0]] = (*dst)[0] * k_ + it->second[0];
                if (act.domain.size() > 1) next[act.domain[1]] = (*dst)[1] * k_ + it->second[1];
                auto [pos, fresh] = index.emplace(next, static_cast<std::uint32_t>(states.size()));
                if (fresh) {
                    if (states.size() >= options_.state_limit)
                        throw ResourceLimit("oracle product exceeds state limit");
                    states.push_back(std::move(next));
                    succ.emplace_back();
                }
                succ[i].push_back(pos->second);
            }
            if (succ[i].empty() && !all_final) return Outcome::Lose;
        }
        // Acyclicity.
        std::vector<char> color(states.size(), 0);
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
        color[0] = 1;
        while (!stack.empty()) {
            auto& [s, k] = stack.back();
            if (k == succ[s].size()) {
                color[s] = 2;
                stack.pop_back();
                continue;
            }
            std::uint32_t t = succ[s][k++];
            if (color[t] == 1) return Outcome::Lose;
            if (color[t] == 0) {
                color[t] = 1;
                stack.push_back({t, 0});
            }
        }
        return Outcome::Win;
    }

    bool search() {
        if (++nodes_ > options_.node_limit)
            throw ResourceLimit("oracle exceeded " + std::to_string(options_.node_limit) + " nodes");
        if ((nodes_ & 0xff) == 0) check_interrupt();
        Request req;
        Outcome o = explore(req);
        if (o == Outcome::Win) return true;
        if (o == Outcome::Lose) return false;
        for (std::size_t choice = 0; choice < req.options; ++choice) {
            if (req.advice) {
                advice_[req.p][req.code] = static_cast<int>(choice);
            } else {
                std::array<std::uint32_t, 2> t{static_cast<std::uint32_t>(choice % k_),
                                               static_cast<std::uint32_t>(choice / k_)};
                updates_[req.update] = t;
            }
            if (search()) return true;
        }
        if (req.advice) advice_[req.p][req.code] = -1;
        else updates_.erase(req.update);
        return false;
    }

    const Plant& plant_;
    std::size_t k_;
    OracleOptions options_;
    std::size_t& nodes_;
    std::vector<std::vector<int>> advice_;  // [p][s*k+m] -> option index
    std::vector<std::vector<std::vector<std::vector<ActionIndex>>>> options_per_;  // [p][s]
    std::map<UpdateKey, std::array<std::uint32_t, 2>> updates_;
};

}  // namespace

OracleResult oracle_solve(const Plant& plant, std::size_t memory_bound, const OracleOptions& options) {
    require_valid(plant);
    OracleResult result;
    for (std::size_t k = 1; k <= memory_bound; ++k) {
        OracleSearch search(plant, k, options, result.nodes);
        if (search.run()) {
            result.controller = search.build();
            result.memory_bound = k;
            return result;
        }
    }
    return result;
}

}  // namespace asyncsynth
