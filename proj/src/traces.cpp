#include "asyncsynth/traces.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace asyncsynth {

namespace {

bool share_process(const Action& x, const Action& y) {
    for (ProcessIndex p : x.domain)
        if (y.involves(p)) return true;
    return false;
}

// Greedy topological sort of the dependence order picking the smallest
// action index among minimal events: this yields the lexicographically
// least linearization.
std::vector<std::size_t> least_linearization(const Plant& plant,
                                             const std::vector<ActionIndex>& word) {
    std::size_t n = word.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    // Only the closest earlier dependent event per process is needed.
    std::vector<std::size_t> last(plant.process_count(), SIZE_MAX);
    for (std::size_t j = 0; j < n; ++j) {
        for (ProcessIndex p : plant.action(word[j]).domain) {
            std::size_t i = last[p];
            if (i != SIZE_MAX &&
                std::find(succ[i].begin(), succ[i].end(), j) == succ[i].end()) {
                succ[i].push_back(j);
                ++indeg[j];
            }
            last[p] = j;
        }
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<std::size_t> ready;
    for (std::size_t j = 0; j < n; ++j)
        if (indeg[j] == 0) ready.push_back(j);
    while (!ready.empty()) {
        auto best = std::min_element(ready.begin(), ready.end(), [&](std::size_t x, std::size_t y) {
            return std::tie(word[x], x) < std::tie(word[y], y);
        });
        std::size_t e = *best;
        ready.erase(best);
        order.push_back(e);
        for (std::size_t s : succ[e])
            if (--indeg[s] == 0) ready.push_back(s);
    }
    return order;
}

}  // namespace

bool independent(const Plant& plant, ActionIndex a, ActionIndex b) {
    return !share_process(plant.action(a), plant.action(b));
}

std::vector<ActionIndex> canonical_word(const Plant& plant, const std::vector<ActionIndex>& word) {
    std::vector<ActionIndex> out;
    for (std::size_t i : least_linearization(plant, word)) out.push_back(word[i]);
    return out;
}

Play::Play(const Plant& plant)
    : counts_(plant.process_count(), 0), state_(plant.initial_state()) {}

std::vector<ActionIndex> Play::word() const {
    std::vector<ActionIndex> w;
    w.reserve(events_.size());
    for (const auto& e : events_) w.push_back(e.action);
    return w;
}

bool Play::operator==(const Play& other) const {
    if (events_.size() != other.events_.size()) return false;
    for (std::size_t i = 0; i < events_.size(); ++i)
        if (events_[i].action != other.events_[i].action) return false;
    return true;
}

bool Play::operator<(const Play& other) const {
    return word() < other.word();
}

Play extend_play(const Plant& plant, const Play& u, ActionIndex a) {
    GlobalState next = apply_action(plant, u.state_, a);
    const auto& dom = plant.action(a).domain;

    // Clock of the new event: join of the last events of dom(a), then tick.
    std::vector<std::uint32_t> clock(plant.process_count(), 0);
    for (auto it = u.events_.rbegin(); it != u.events_.rend(); ++it) {
        bool relevant = false;
        for (ProcessIndex p : dom)
            if (plant.action(it->action).involves(p)) relevant = true;
        if (!relevant) continue;
        for (std::size_t k = 0; k < clock.size(); ++k) clock[k] = std::max(clock[k], it->clock[k]);
    }
    for (ProcessIndex p : dom) clock[p] = u.counts_[p] + 1;

    Play out;
    out.counts_ = u.counts_;
    for (ProcessIndex p : dom) ++out.counts_[p];
    out.state_ = std::move(next);

    std::vector<ActionIndex> word = u.word();
    word.push_back(a);
    std::vector<Event> events = u.events_;
    events.push_back({a, std::move(clock)});
    auto order = least_linearization(plant, word);
    out.events_.reserve(events.size());
    for (std::size_t i : order) out.events_.push_back(std::move(events[i]));
    return out;
}

Play view_of(const Plant& plant, const Play& u, ProcessIndex p) {
    Play out(plant);
    if (u.counts_[p] == 0) return out;
    const Event* last = nullptr;
    for (const auto& e : u.events_)
        if (plant.action(e.action).involves(p) && e.clock[p] == u.counts_[p]) last = &e;
    std::vector<ActionIndex> word;
    for (const auto& e : u.events_) {
        bool in_past = false;
        for (ProcessIndex q : plant.action(e.action).domain)
            if (e.clock[q] <= last->clock[q]) in_past = true;
        if (in_past) word.push_back(e.action);
    }
    // Events of a downward-closed set, listed in an order compatible with the
    // original linearization, form a run.
    return play_of_word(plant, word);
}

View view(const Plant& plant, const Play& u, ProcessIndex p) {
    return View{view_of(plant, u, p), p};
}

Play play_of_word(const Plant& plant, const std::vector<ActionIndex>& word) {
    // Replay sequentially to compute clocks and state, then canonicalize once.
    Play out(plant);
    std::vector<Event> events;
    std::vector<std::vector<std::uint32_t>> last_clock(plant.process_count(),
                                                       std::vector<std::uint32_t>(plant.process_count(), 0));
    for (ActionIndex a : word) {
        out.state_ = apply_action(plant, out.state_, a);
        const auto& dom = plant.action(a).domain;
        std::vector<std::uint32_t> clock(plant.process_count(), 0);
        for (ProcessIndex p : dom)
            for (std::size_t k = 0; k < clock.size(); ++k)
                clock[k] = std::max(clock[k], last_clock[p][k]);
        for (ProcessIndex p : dom) clock[p] = ++out.counts_[p];
        for (ProcessIndex p : dom) last_clock[p] = clock;
        events.push_back({a, std::move(clock)});
    }
    for (std::size_t i : least_linearization(plant, word)) out.events_.push_back(std::move(events[i]));
    return out;
}

bool plays_equivalent(const Plant& plant, const std::vector<ActionIndex>& u,
                      const std::vector<ActionIndex>& v) {
    try {
        return play_of_word(plant, u) == play_of_word(plant, v);
    } catch (const NotEnabled&) {
        return false;
    }
}

std::string format_word(const Plant& plant, const std::vector<ActionIndex>& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ' ';
        out += plant.action(word[i]).name;
    }
    return out;
}

std::string format_play(const Plant& plant, const Play& u) {
    return format_word(plant, u.word());
}

std::vector<ActionIndex> parse_word(const Plant& plant, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<ActionIndex> out;
    std::string token;
    while (in >> token) out.push_back(plant.action_index(token));
    return out;
}

}  // namespace asyncsynth
