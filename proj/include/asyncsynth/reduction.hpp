#pragma once

// Leaf elimination: folds a leaf process r into its parent q, producing a
// plant over the remaining processes whose game has the same verdict.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asyncsynth/localgame.hpp"
#include "asyncsynth/model.hpp"
#include "asyncsynth/traces.hpp"

namespace asyncsynth {

class NotALeaf : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedDecomposition : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (s_r, A) ⋈ (s_q, B): actions of A ∩ B enabled at (s_q, s_r).
std::vector<ActionIndex> match(const Plant& plant, ProcessIndex q, ProcessIndex r,
                               const SyncOutcome& outcome, LocalState sq,
                               const std::vector<ActionIndex>& b);

/// A q-state of the reduced plant.
struct ReducedQState {
    enum class Kind : std::uint8_t { Pair, Planned, Offered };
    Kind kind = Kind::Pair;
    LocalState sq = 0;
    LocalState sr = 0;           // Pair
    std::size_t plan = 0;        // Planned, Offered: index into ReductionArtifact::plans
    std::vector<ActionIndex> b;  // Offered: original actions, sorted

    auto operator<=>(const ReducedQState&) const = default;
};

/// Payload of a new action of q in the reduced plant.
struct NewAction {
    enum class Kind : std::uint8_t { ChooseT, ChooseB, Sync };
    Kind kind;
    std::string name;
    std::size_t plan = 0;        // ChooseT
    std::vector<ActionIndex> b;  // ChooseB (original action indices)
    ActionIndex a = 0;           // Sync: the original shared action
    LocalState tr = 0;           // Sync: r's state before the synchronization
};

/// A plan T, shared by every r-state where it is admissible.
struct PlanEntry {
    std::vector<SyncOutcome> outcomes;
    bool is_final = false;
    std::map<LocalState, Witness> witnesses;  // r-state where chosen -> witness
    std::string action;                       // name of the ch(T) action
};

struct ReductionStats {
    std::size_t mq = 0, mr = 0, shared = 0;
    std::size_t pairs = 0, planned = 0, offered = 0;
    std::size_t plans = 0;  // distinct plans materialized (P)
    std::size_t q_states() const { return pairs + planned + offered; }
    /// M_q·M_r + M_q·P·(1 + 2^{|Σ_qr|}).
    double bound() const;
    /// (2^{|Σ_qr|}+1)^{M_r}.
    double plan_bound() const;
};

struct ReductionOptions {
    bool all_b = false;
    PlanLimits plan_limits{};
    std::size_t state_limit = 1'000'000;
};

struct ReductionArtifact {
    std::shared_ptr<const Plant> original;
    ProcessIndex r = 0, q = 0;    // in the original plant
    Plant reduced;
    ProcessIndex reduced_q = 0;   // q's index in the reduced plant
    std::vector<ProcessIndex> to_original;  // reduced process -> original process
    std::vector<ReducedQState> q_states;    // indexed by reduced q local state
    std::vector<PlanEntry> plans;
    std::map<std::string, NewAction> new_actions;
    ReductionStats stats;
    std::vector<LocalState> q_index;        // q states sorted by symbolic value

    /// Reduced local state of q for a symbolic state, if materialized.
    std::optional<LocalState> find_q_state(const ReducedQState& s) const;
    const NewAction* new_action(ActionIndex reduced_action) const;
    /// Original action index for a reduced action that was copied verbatim.
    std::optional<ActionIndex> original_action(ActionIndex reduced_action) const;
    std::string describe_plan(std::size_t plan) const;
};

/// Throws NotALeaf unless q is the only neighbor of r; InvalidPlant if the
/// plant is invalid; ResourceLimit beyond options.state_limit q-states.
ReductionArtifact reduce_leaf(std::shared_ptr<const Plant> plant, ProcessIndex r, ProcessIndex q,
                              const ReductionOptions& options = {});
ReductionArtifact reduce_leaf(const Plant& plant, ProcessIndex r, ProcessIndex q,
                              const ReductionOptions& options = {});

/// Annotations for χ: the plan chosen after each synchronization (T_0 first)
/// and q's offer before each synchronization.
struct ChiAnnotations {
    std::vector<std::size_t> plans;                 // T_0, T_1, ...
    std::vector<std::vector<ActionIndex>> offers;   // B_0, B_1, ... (original actions)
};

/// χ(u): rewrites a play of the original plant into a word of the reduced
/// plant. Throws MalformedDecomposition if the annotations do not fit u.
std::vector<ActionIndex> translate_play_chi(const ReductionArtifact& artifact,
                                            const std::vector<ActionIndex>& u,
                                            const ChiAnnotations& annotations);

}  // namespace asyncsynth
