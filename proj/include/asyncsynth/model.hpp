#pragma once

// Distributed alphabets and Zielonka automata (plants).
//
// A plant is immutable once built. Processes, their local states and the
// actions are kept sorted by name, so indices are canonical: two plants
// built from the same declarations in any order are identical, and the
// action index order is the total order used for canonical plays.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace asyncsynth {

using ProcessIndex = std::uint32_t;
using ActionIndex = std::uint32_t;
using LocalState = std::uint32_t;

inline constexpr LocalState kNoState = std::numeric_limits<LocalState>::max();

/// Local states of the processes in dom(a), ordered like dom(a).
/// Unary actions leave the second slot at kNoState.
using LocalTuple = std::array<LocalState, 2>;

/// One local state per process of the plant.
using GlobalState = std::vector<LocalState>;

/// Raised for malformed input: unknown names, duplicates, empty sets.
class PlantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotEnabled : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CyclicGraph : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by long-running operations after request_interrupt().
class Interrupted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Async-signal-safe; makes the next check_interrupt() throw.
void request_interrupt() noexcept;
void clear_interrupt() noexcept;
bool interrupt_requested() noexcept;
/// Throws Interrupted if an interrupt was requested.
void check_interrupt();

struct ProcessDecl {
    std::string name;
    std::vector<std::string> states;
    std::string initial;
    std::vector<std::string> finals;
};

struct ActionDecl {
    std::string name;
    std::vector<std::string> domain;
    bool controllable = true;
};

struct TransitionDecl {
    std::string action;
    std::vector<std::string> source;  // ordered like the sorted domain
    std::vector<std::string> target;
};

struct Process {
    std::string name;
    std::vector<std::string> states;
    LocalState initial = 0;
    std::vector<char> final;

    std::size_t size() const { return states.size(); }
    bool is_final(LocalState s) const { return final[s] != 0; }
    std::optional<LocalState> find_state(std::string_view state) const;
};

struct Action {
    std::string name;
    std::vector<ProcessIndex> domain;  // sorted, duplicates removed
    bool controllable = true;

    bool is_local() const { return domain.size() == 1; }
    bool involves(ProcessIndex p) const;
};

struct Transition {
    std::vector<LocalState> source;
    std::vector<LocalState> target;
};

class PlantBuilder;

class Plant {
public:
    Plant() = default;

    std::size_t process_count() const { return processes_.size(); }
    std::size_t action_count() const { return actions_.size(); }
    const Process& process(ProcessIndex p) const { return processes_[p]; }
    const Action& action(ActionIndex a) const { return actions_[a]; }
    const std::vector<Process>& processes() const { return processes_; }
    const std::vector<Action>& actions() const { return actions_; }

    std::optional<ProcessIndex> find_process(std::string_view name) const;
    std::optional<ActionIndex> find_action(std::string_view name) const;
    ProcessIndex process_index(std::string_view name) const;  // throws PlantError
    ActionIndex action_index(std::string_view name) const;    // throws PlantError

    /// All declared transitions of `a`, sorted by source tuple.
    const std::vector<Transition>& transitions(ActionIndex a) const { return transitions_[a]; }
    std::size_t transition_count() const;

    /// δ_a on a dom(a)-tuple, if defined. Requires |dom(a)| <= 2.
    std::optional<LocalTuple> step(ActionIndex a, const LocalTuple& source) const;

    /// Actions a with p in dom(a) that have a transition whose p-component is s.
    const std::vector<ActionIndex>& actions_from(ProcessIndex p, LocalState s) const {
        return from_index_[p][s];
    }

    /// Actions whose domain contains p.
    const std::vector<ActionIndex>& actions_of(ProcessIndex p) const { return actions_of_[p]; }

    GlobalState initial_state() const;
    bool all_final(const GlobalState& g) const;
    std::size_t total_states() const;

    /// Renders a global state as "p=s ..." for reports.
    std::string describe(const GlobalState& g) const;

    friend class PlantBuilder;

private:
    std::vector<Process> processes_;
    std::vector<Action> actions_;
    std::vector<std::vector<Transition>> transitions_;
    std::vector<std::unordered_map<std::uint64_t, LocalTuple>> lookup_;
    std::vector<std::vector<std::vector<ActionIndex>>> from_index_;
    std::vector<std::vector<ActionIndex>> actions_of_;
};

/// Collects declarations by name and produces a canonical Plant.
/// Name resolution problems throw PlantError; structural problems (domain
/// size, blocking finals, determinism) are left to validate_plant.
class PlantBuilder {
public:
    PlantBuilder& add_process(ProcessDecl decl);
    PlantBuilder& add_process(std::string name, std::vector<std::string> states,
                              std::string initial, std::vector<std::string> finals);
    PlantBuilder& add_action(ActionDecl decl);
    PlantBuilder& add_action(std::string name, std::vector<std::string> domain, bool controllable);
    PlantBuilder& add_transition(TransitionDecl decl);
    PlantBuilder& add_transition(std::string action, std::vector<std::string> source,
                                 std::vector<std::string> target);

    bool has_action(std::string_view name) const;
    bool has_process(std::string_view name) const;

    Plant build() const;

private:
    std::vector<ProcessDecl> processes_;
    std::vector<ActionDecl> actions_;
    std::vector<TransitionDecl> transitions_;
    std::unordered_map<std::string, std::size_t> process_pos_;
    std::unordered_map<std::string, std::size_t> action_pos_;
};

struct Violation {
    enum class Kind {
        EmptyDomain,
        DomainTooLarge,
        NonLocalUncontrollable,
        FinalNotBlocking,
        Nondeterministic,
        NoStates,
    };
    Kind kind;
    std::string locus;
    std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// Every violated structural assumption; empty means the plant is valid.
std::vector<Violation> validate_plant(const Plant& plant);

/// Thrown by loaders when validate_plant reports violations.
class InvalidPlant : public PlantError {
public:
    explicit InvalidPlant(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Throws InvalidPlant unless the plant is valid.
void require_valid(const Plant& plant);

struct CommunicationGraph {
    std::vector<ProcessIndex> nodes;
    std::vector<std::pair<ProcessIndex, ProcessIndex>> edges;  // first < second, sorted

    std::vector<std::vector<ProcessIndex>> adjacency() const;
    bool is_acyclic() const;
    std::vector<std::vector<ProcessIndex>> components() const;
    /// Longest shortest path (in edges) within any component.
    std::size_t diameter() const;
    std::size_t degree(ProcessIndex p) const;
};

CommunicationGraph communication_graph(const Plant& plant);

struct LeafStep {
    ProcessIndex leaf;
    ProcessIndex parent;
    bool operator==(const LeafStep&) const = default;
};

struct LeafOrder {
    std::vector<LeafStep> steps;
    std::vector<ProcessIndex> roots;  // one per connected component
};

/// Elimination order by repeatedly removing the cheapest leaf.
/// `cost(leaf, parent)` ranks candidates; ties go to the leaf farther from
/// the center of its component, then to the smaller process name.
LeafOrder leaf_order(const CommunicationGraph& graph,
                     const std::vector<std::string>& names,
                     const std::vector<std::vector<std::size_t>>& cost);

/// Uses cost M_leaf * |Σ_{leaf,parent}| from the plant.
LeafOrder leaf_order(const Plant& plant);

/// Every complete leaf-elimination sequence of the graph (exponential; for
/// small test instances).
std::vector<std::vector<LeafStep>> all_leaf_orders(const CommunicationGraph& graph);

/// Σ_{p,q}: actions whose domain is exactly {p, q}.
std::vector<ActionIndex> shared_actions(const Plant& plant, ProcessIndex p, ProcessIndex q);

std::vector<ActionIndex> enabled_actions(const Plant& plant, const GlobalState& g);
bool is_enabled(const Plant& plant, const GlobalState& g, ActionIndex a);
GlobalState apply_action(const Plant& plant, const GlobalState& g, ActionIndex a);

LocalTuple project(const Plant& plant, const GlobalState& g, ActionIndex a);

inline std::uint64_t pack_tuple(const LocalTuple& t) {
    return (static_cast<std::uint64_t>(t[0]) << 32) | t[1];
}

}  // namespace asyncsynth
