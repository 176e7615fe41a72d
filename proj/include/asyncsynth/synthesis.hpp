#pragma once

// The synthesis pipeline: eliminate leaves until every component is a single
// process, solve the local games, and lift the strategy back level by level.

#include <optional>
#include <string>
#include <vector>

#include "asyncsynth/controller.hpp"
#include "asyncsynth/localgame.hpp"
#include "asyncsynth/reduction.hpp"

namespace asyncsynth {

class InconsistentArtifact : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Standard product; finals are the plant finals in every component.
/// Throws AlphabetMismatch.
Plant compose_product(const Plant& plant, const Controller& controller);

/// Symbolic content of a lifted memory state.
struct LiftedMemory {
    enum class Kind : std::uint8_t { Other, Parent, Leaf };
    Kind kind = Kind::Other;
    LocalState reduced_memory = 0;  // Other, Parent: memory of the reduced controller
    LocalState state = 0;           // Other: plant state; Parent: reduced q-state; Leaf: r-state
    std::optional<std::size_t> plan;  // Leaf: current plan
    LocalState plan_from = 0;         // Leaf: r-state where the plan was chosen

    auto operator<=>(const LiftedMemory&) const = default;
};

struct LiftResult {
    Controller controller;
    std::vector<std::vector<LiftedMemory>> memory;  // [original process][memory]
};

/// Lifts a controller of the reduced plant to one of the original plant.
/// Throws InconsistentArtifact if the reduced controller does not fit the
/// artifact (unknown plan, refused injection).
LiftResult lift_controller(const Controller& reduced, const ReductionArtifact& artifact,
                           std::size_t state_limit = 5'000'000);

/// χ annotations of a play of the lifted controlled system.
ChiAnnotations lifted_annotations(const LiftResult& lift, const ReductionArtifact& artifact,
                                  const Controller& reduced, const std::vector<ActionIndex>& u);

/// Merges behaviorally equal memory states; returns the input unchanged if
/// the quotient would not be well defined.
Controller minimize_controller(const Plant& plant, const Controller& controller);

struct LevelReport {
    std::string leaf, parent;
    ReductionStats stats;
    std::size_t reduced_states = 0;  // total local states of the reduced plant
    double seconds = 0;
};

struct SynthesisOptions {
    std::size_t state_limit = 1'000'000;
    bool all_b = false;
    bool minimize = true;
    bool verify = true;
    /// Explicit elimination order by process name. By default each step
    /// takes the first step of leaf_order on the current reduced plant.
    std::optional<std::vector<std::pair<std::string, std::string>>> order;
    PlanLimits plan_limits{};
};

struct SynthesisReport {
    bool winning = false;
    std::optional<Controller> controller;
    std::vector<LevelReport> levels;
    std::vector<std::string> roots;
    std::size_t final_states = 0;
    std::size_t controller_memory = 0;
    bool verified = false;
    bool interrupted = false;
    double reduce_seconds = 0, solve_seconds = 0, lift_seconds = 0, total_seconds = 0;
};

/// Throws CyclicGraph, InvalidPlant, ResourceLimit. An interrupt yields a
/// report with interrupted = true and the levels completed so far.
SynthesisReport synthesize(const Plant& plant, const SynthesisOptions& options = {});

/// Verdict only: reduction and base-case solving, no lifting.
SynthesisReport solve(const Plant& plant, const SynthesisOptions& options = {});

/// leaf_order of the input plant, as (leaf, parent) names. The default
/// pipeline may deviate once reduced sizes differ from the input sizes.
std::vector<std::pair<std::string, std::string>> elimination_order(const Plant& plant);

/// Every elimination order of the plant's communication graph, by name.
std::vector<std::vector<std::pair<std::string, std::string>>> all_elimination_orders(
    const Plant& plant);

}  // namespace asyncsynth
