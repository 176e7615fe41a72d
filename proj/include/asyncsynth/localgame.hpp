#pragma once

// Reachability games played by one process against its local environment:
// the base case of synthesis and the admissible-plan enumeration for a leaf.

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "asyncsynth/model.hpp"

namespace asyncsynth {

class MultiProcess : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IllFormedWitness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LocalEdge {
    ActionIndex action;
    LocalState target;
};

struct LocalArena {
    std::size_t size = 0;
    LocalState initial = 0;
    std::vector<char> final;
    std::vector<std::vector<LocalEdge>> controllable;
    std::vector<std::vector<LocalEdge>> uncontrollable;
    std::vector<std::vector<ActionIndex>> offers;  // sorted

    bool is_final(LocalState s) const { return final[s] != 0; }
};

/// Arena of a single-process plant (no offers).
LocalArena arena_of_process(const Plant& plant, ProcessIndex p);

/// Arena of leaf r below its parent q: local moves of r, and at each state
/// the actions of Σ_{q,r} that some q-state could synchronize with.
LocalArena leaf_arena(const Plant& plant, ProcessIndex r, ProcessIndex q);

/// A positional move of the leaf or of a single process.
struct Choice {
    enum class Kind : std::uint8_t { Pass, Control, Offer };
    Kind kind = Kind::Pass;
    ActionIndex action = 0;          // Control
    std::vector<ActionIndex> offer;  // Offer: sorted, nonempty

    static Choice pass() { return {}; }
    static Choice control(ActionIndex a) { return {Kind::Control, a, {}}; }
    static Choice offer_set(std::vector<ActionIndex> b) { return {Kind::Offer, 0, std::move(b)}; }
    bool operator==(const Choice&) const = default;
};

using Witness = std::map<LocalState, Choice>;

struct SyncOutcome {
    LocalState state;
    std::vector<ActionIndex> proposal;  // sorted; empty only at final states
    auto operator<=>(const SyncOutcome&) const = default;
};

struct Divergent {};

using OutcomeResult = std::variant<std::vector<SyncOutcome>, Divergent>;

/// Outcomes of following `witness` from `from` until r is final or offers.
/// Throws IllFormedWitness on choices that break the normal form.
OutcomeResult plan_witness_outcomes(const LocalArena& arena, LocalState from,
                                    const Witness& witness);

struct AdmissiblePlan {
    std::vector<SyncOutcome> outcomes;  // sorted by state, one per state
    bool is_final = false;
    LocalState from = 0;
    Witness witness;
};

struct PlanLimits {
    std::size_t max_witnesses = 2'000'000;
};

/// All admissible plans in `from`, one witness each, in canonical order.
/// Throws ResourceLimit if more than limits.max_witnesses are explored.
std::vector<AdmissiblePlan> enumerate_admissible_plans(const LocalArena& arena, LocalState from,
                                                       const PlanLimits& limits = {});

/// True if outcome vector x precedes y in the canonical plan order.
bool plan_order_less(const std::vector<SyncOutcome>& x, const std::vector<SyncOutcome>& y);

struct LocalSolution {
    bool winning = false;
    std::vector<char> winning_region;
    /// Per state: the move taken from a winning state (Pass for finals).
    std::vector<std::optional<ActionIndex>> strategy;
    /// Order in which states entered the attractor; strictly decreases along
    /// every strategy move.
    std::vector<std::size_t> rank;
};

/// Priority for a controllable action when several enter the attractor;
/// smaller is preferred. Compared before rank.
using ActionPriority = std::function<std::vector<std::size_t>(ActionIndex)>;

LocalSolution solve_arena(const LocalArena& arena, const ActionPriority& priority = {});

/// Throws MultiProcess unless the plant has exactly one process.
LocalSolution solve_single_process(const Plant& plant, const ActionPriority& priority = {});

}  // namespace asyncsynth
