#pragma once

// Distributed controllers: a Zielonka automaton over the plant's alphabet
// (memory states, no finals) plus, per process and memory state, the set of
// controllable actions the process proposes.

#include <string>
#include <vector>

#include "asyncsynth/model.hpp"

namespace asyncsynth {

class AlphabetMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Controller {
    Plant automaton;
    std::vector<std::vector<std::vector<ActionIndex>>> advice;  // [process][memory] sorted

    bool advises(ProcessIndex p, LocalState m, ActionIndex a) const;
    std::size_t memory_size(ProcessIndex p) const { return automaton.process(p).size(); }
    std::size_t total_memory() const { return automaton.total_states(); }
};

/// Throws AlphabetMismatch unless processes and actions (names, domains,
/// controllability) coincide.
void check_alphabet(const Plant& plant, const Controller& controller);

/// Every advice set is empty, one controllable local action, or controllable
/// actions shared with a single neighbor. On failure `why` names the locus.
bool has_corollary_shape(const Plant& plant, const Controller& controller,
                         std::string* why = nullptr);

/// One memory state per process, every action allowed, every controllable
/// action proposed.
Controller identity_controller(const Plant& plant);

/// One memory state per process, every action allowed, nothing proposed.
Controller empty_controller(const Plant& plant);

/// Memory mirrors the plant's local states; advice[p][s] given per state.
Controller state_controller(const Plant& plant,
                            const std::vector<std::vector<std::vector<ActionIndex>>>& advice);

/// Zero-padded memory name so that name order equals index order.
std::string memory_name(std::size_t index, std::size_t count);

}  // namespace asyncsynth
