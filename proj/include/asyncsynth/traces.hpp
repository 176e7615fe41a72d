#pragma once

// Plays as Mazurkiewicz traces. A Play keeps the lexicographically least
// linearization of its trace (w.r.t. action index order), together with
// per-event vector clocks and the global state it reaches.

#include <string>
#include <string_view>
#include <vector>

#include "asyncsynth/model.hpp"

namespace asyncsynth {

struct Event {
    ActionIndex action;
    std::vector<std::uint32_t> clock;  // per process: events of that process in the causal past
};

class Play {
public:
    Play() = default;
    explicit Play(const Plant& plant);

    const std::vector<Event>& events() const { return events_; }
    std::vector<ActionIndex> word() const;
    const GlobalState& state() const { return state_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    /// Number of events of process p.
    std::uint32_t count(ProcessIndex p) const { return counts_[p]; }

    bool operator==(const Play& other) const;
    bool operator<(const Play& other) const;

    friend Play extend_play(const Plant& plant, const Play& u, ActionIndex a);
    friend Play view_of(const Plant& plant, const Play& u, ProcessIndex p);
    friend Play play_of_word(const Plant& plant, const std::vector<ActionIndex>& word);

private:
    std::vector<Event> events_;
    std::vector<std::uint32_t> counts_;
    GlobalState state_;
};

struct View {
    Play play;
    ProcessIndex owner;
    bool operator==(const View& other) const = default;
};

/// Canonical representative of [ua]. Throws NotEnabled.
Play extend_play(const Plant& plant, const Play& u, ActionIndex a);

/// The causal past of p's last event (empty if p never moved).
Play view_of(const Plant& plant, const Play& u, ProcessIndex p);
View view(const Plant& plant, const Play& u, ProcessIndex p);

/// Builds the play of a word; throws NotEnabled if it is not an initial run.
Play play_of_word(const Plant& plant, const std::vector<ActionIndex>& word);

/// True iff both words are runs and denote the same trace.
bool plays_equivalent(const Plant& plant, const std::vector<ActionIndex>& u,
                      const std::vector<ActionIndex>& v);

/// Lexicographically least linearization of the trace of `word` (no run check).
std::vector<ActionIndex> canonical_word(const Plant& plant, const std::vector<ActionIndex>& word);

bool independent(const Plant& plant, ActionIndex a, ActionIndex b);

std::string format_word(const Plant& plant, const std::vector<ActionIndex>& word);
std::string format_play(const Plant& plant, const Play& u);
/// Whitespace-separated action names; throws PlantError on unknown names.
std::vector<ActionIndex> parse_word(const Plant& plant, std::string_view text);

}  // namespace asyncsynth
