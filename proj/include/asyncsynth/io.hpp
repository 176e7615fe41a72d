#pragma once

// Text formats for plants and controllers, and the JSON documents written by
// the command-line tool.
//
// Plant document:
//
//   plant
//   processes
//     process <name> initial <state> states <state>... final <state>...
//   actions
//     action <name> controllable|uncontrollable <process> [<process>]
//   transitions
//     <action> : <source>... -> <target>...
//
// Tuples follow the sorted domain. A controller document starts with
// `controller`, uses the same sections for its memory automaton (no finals)
// and adds
//
//   advice
//     <process> <memory> : <action>...
//
// Blank lines and lines starting with "//" are ignored. Serialization is
// canonical (everything sorted by name), so parse and serialize round-trip.

#include <string>
#include <string_view>

#include <json.hpp>

#include "asyncsynth/controller.hpp"
#include "asyncsynth/reduction.hpp"
#include "asyncsynth/synthesis.hpp"
#include "asyncsynth/verify.hpp"

namespace asyncsynth {

/// Syntax error; what() starts with "line N:".
class ParseError : public PlantError {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses and validates. Throws ParseError or InvalidPlant.
Plant parse_plant(std::string_view text);
std::string serialize_plant(const Plant& plant);

/// With a plant, also checks that the alphabets agree (AlphabetMismatch).
Controller parse_controller(std::string_view text, const Plant* plant = nullptr);
std::string serialize_controller(const Controller& controller);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

nlohmann::json stats_json(const ReductionStats& stats);
nlohmann::json reduction_sidecar(const ReductionArtifact& artifact);
nlohmann::json synthesis_report_json(const SynthesisReport& report, const Plant& plant);
nlohmann::json verdict_json(const Plant& plant, const Verdict& verdict);

}  // namespace asyncsynth
