#pragma once

// Independent checking of controllers against the local-reachability
// winning condition, a bounded brute-force synthesis oracle, and maximal
// play enumeration.

#include <optional>
#include <string>
#include <vector>

#include "asyncsynth/controller.hpp"
#include "asyncsynth/traces.hpp"

namespace asyncsynth {

/// A configuration of plant × controller.
struct ProductState {
    GlobalState plant;
    GlobalState memory;
    bool operator==(const ProductState&) const = default;
};

ProductState initial_product_state(const Plant& plant, const Controller& controller);

/// Actions possible in the controlled system at `s`.
std::vector<ActionIndex> product_enabled(const Plant& plant, const Controller& controller,
                                         const ProductState& s);
ProductState product_step(const Plant& plant, const Controller& controller,
                          const ProductState& s, ActionIndex a);

/// Replays a word on plant × controller; nullopt if some letter is not possible.
std::optional<ProductState> replay(const Plant& plant, const Controller& controller,
                                   const std::vector<ActionIndex>& word);

struct Verdict {
    enum class Kind { Winning, Deadlock, Lasso };
    Kind kind = Kind::Winning;
    std::vector<ActionIndex> play;   // Deadlock: counterexample; Lasso: stem
    std::vector<ActionIndex> cycle;  // Lasso only
    ProcessIndex culprit = 0;        // Deadlock only
    /// Deadlock caused by the controller refusing an uncontrollable action.
    std::optional<ActionIndex> blocked_uncontrollable;
    std::size_t explored = 0;

    bool winning() const { return kind == Kind::Winning; }
};

struct VerifyOptions {
    std::size_t state_limit = 10'000'000;
};

/// Throws AlphabetMismatch, ResourceLimit.
Verdict verify_controller(const Plant& plant, const Controller& controller,
                          const VerifyOptions& options = {});

std::string describe_verdict(const Plant& plant, const Verdict& verdict);

struct MaximalPlays {
    std::vector<Play> plays;  // canonical, deduplicated, sorted
    bool truncated = false;   // some play reached the bound and could continue
};

MaximalPlays enumerate_maximal_plays(const Plant& plant, const Controller& controller,
                                     std::size_t length_bound);

struct OracleOptions {
    std::size_t node_limit = 200'000;
    std::size_t state_limit = 100'000;
};

struct OracleResult {
    std::optional<Controller> controller;
    std::size_t memory_bound = 0;  // bound at which the controller was found
    std::size_t nodes = 0;
};

/// Searches controllers whose memory is (local state, m) with m < k, for
/// k = 1..memory_bound, with normal-form advice. An empty result means "none
/// at this bound". Throws ResourceLimit when the node budget runs out.
OracleResult oracle_solve(const Plant& plant, std::size_t memory_bound,
                          const OracleOptions& options = {});

}  // namespace asyncsynth
