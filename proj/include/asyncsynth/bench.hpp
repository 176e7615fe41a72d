#pragma once

// Instance generators: the named example plants, the counter family and a
// seeded corpus of small random tree plants.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "asyncsynth/model.hpp"

namespace asyncsynth {

class UnsupportedLevel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Three processes 1 - 2 - 3. Process 2 records the choices of 1 and 3 and
/// ends final iff the recorded guesses are compatible.
Plant gen_fig2();

/// q: q0 -m-> qf; r: r0 -a-> r1 -m-> rf, m shared.
Plant gen_l2();

/// Single-process examples: one controllable step, one uncontrollable step,
/// and an unavoidable non-final sink.
Plant gen_t1a();
Plant gen_t1b();
Plant gen_t1c();

/// Star with one server and k clients. Each client reads one of
/// (client_states - 2) inputs, then reports it to the server through a
/// controllable synchronization; the server counts reports and is final
/// once every client has reported.
Plant gen_server_client(std::size_t k, std::size_t client_states = 3);

/// Letters of level i (1-based). Level 1 has n letters, higher levels two.
struct CounterAlphabet {
    std::size_t level = 1;
    std::size_t base = 2;

    std::vector<std::string> letters(std::size_t i) const;
    std::string end_marker(std::size_t i) const { return "#_" + std::to_string(i); }
    std::string top(std::size_t i) const { return "top_" + std::to_string(i); }
    /// Σ_i^# for every i <= level, in level order.
    std::vector<std::string> counter_letters() const;
};

/// The counter plants for l in {1, 2}; throws UnsupportedLevel otherwise.
Plant gen_counter_plant(std::size_t l, std::size_t n);

struct CounterCheck {
    bool ok = false;
    std::vector<std::uint64_t> values;  // one per top-level counter
    std::string error;
};

/// Decodes a word over the counter letters of levels 1..l as a nonempty
/// sequence of l-counters.
CounterCheck is_iterated_counter(const std::vector<std::string>& word, std::size_t l, std::size_t n);

/// Words whose letters are not counter letters of levels 1..l are dropped.
std::vector<std::string> project_counter(const std::vector<std::string>& word, std::size_t l);

struct CorpusLimits {
    std::size_t max_processes = 4;
    std::size_t max_states = 4;
    std::size_t max_actions = 8;
    std::size_t min_processes = 1;
};

/// One random valid plant whose communication graph is a forest.
/// Only uses mt19937_64 output, so a seed gives the same plant everywhere.
Plant random_tree_plant(std::mt19937_64& rng, const CorpusLimits& limits);

/// `count` plants drawn from one seed.
std::vector<Plant> random_corpus(std::uint64_t seed, std::size_t count, const CorpusLimits& limits);

}  // namespace asyncsynth
