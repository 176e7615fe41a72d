#include "asyncsynth/controller.hpp"

#include <algorithm>

namespace asyncsynth {

bool Controller::advises(ProcessIndex p, LocalState m, ActionIndex a) const {
    const auto& set = advice[p][m];
    return std::binary_search(set.begin(), set.end(), a);
}

void check_alphabet(const Plant& plant, const Controller& controller) {
    const Plant& c = controller.automaton;
    if (c.process_count() != plant.process_count())
        throw AlphabetMismatch("controller has " + std::to_string(c.process_count()) +
                               " processes, plant has " + std::to_string(plant.process_count()));
    for (ProcessIndex p = 0; p < plant.process_count(); ++p)
        if (c.process(p).name != plant.process(p).name)
            throw AlphabetMismatch("process '" + plant.process(p).name + "' missing in controller");
    if (c.action_count() != plant.action_count())
        throw AlphabetMismatch("controller has " + std::to_string(c.action_count()) +
                               " actions, plant has " + std::to_string(plant.action_count()));
    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const Action& x = plant.action(a);
        const Action& y = c.action(a);
        if (x.name != y.name || x.domain != y.domain || x.controllable != y.controllable)
            throw AlphabetMismatch("action '" + x.name + "' differs between plant and controller");
    }
    if (controller.advice.size() != c.process_count())
        throw AlphabetMismatch("advice table does not cover every process");
    for (ProcessIndex p = 0; p < c.process_count(); ++p) {
        if (controller.advice[p].size() != c.process(p).size())
            throw AlphabetMismatch("advice table of '" + c.process(p).name +
                                   "' does not cover every memory state");
        for (const auto& set : controller.advice[p])
            for (ActionIndex a : set)
                if (!plant.action(a).controllable || !plant.action(a).involves(p))
                    throw AlphabetMismatch("process '" + c.process(p).name + "' proposes '" +
                                           plant.action(a).name + "'");
    }
}

bool has_corollary_shape(const Plant& plant, const Controller& controller, std::string* why) {
    for (ProcessIndex p = 0; p < controller.automaton.process_count(); ++p) {
        const Process& proc = controller.automaton.process(p);
        for (LocalState m = 0; m < proc.size(); ++m) {
            const auto& set = controller.advice[p][m];
            if (set.empty()) continue;
            bool ok = true;
            if (set.size() == 1 && plant.action(set[0]).is_local()) {
                ok = plant.action(set[0]).controllable;
            } else {
                std::optional<ProcessIndex> partner;
                for (ActionIndex a : set) {
                    const Action& act = plant.action(a);
                    if (act.is_local() || !act.controllable) {
                        ok = false;
                        break;
                    }
                    ProcessIndex other = act.domain[0] == p ? act.domain[1] : act.domain[0];
                    if (partner && *partner != other) {
                        ok = false;
                        break;
                    }
                    partner = other;
                }
            }
            if (!ok) {
                if (why) *why = "process '" + proc.name + "' memory '" + proc.states[m] + "'";
                return false;
            }
        }
    }
    return true;
}

std::string memory_name(std::size_t index, std::size_t count) {
    std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
    std::string digits = std::to_string(index);
    return "m" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

namespace {

Controller single_memory(const Plant& plant, bool propose) {
    PlantBuilder b;
    for (const auto& p : plant.processes()) b.add_process(p.name, {"m0"}, "m0", {});
    for (const auto& a : plant.actions()) {
        std::vector<std::string> dom;
        for (ProcessIndex p : a.domain) dom.push_back(plant.process(p).name);
        b.add_action(a.name, dom, a.controllable);
        b.add_transition(a.name, std::vector<std::string>(dom.size(), "m0"),
                         std::vector<std::string>(dom.size(), "m0"));
    }
    Controller c{b.build(), {}};
    c.advice.assign(plant.process_count(), std::vector<std::vector<ActionIndex>>(1));
    if (propose)
        for (ActionIndex a = 0; a < plant.action_count(); ++a)
            if (plant.action(a).controllable)
                for (ProcessIndex p : plant.action(a).domain) c.advice[p][0].push_back(a);
    return c;
}

}  // namespace

Controller identity_controller(const Plant& plant) { return single_memory(plant, true); }

Controller empty_controller(const Plant& plant) { return single_memory(plant, false); }

Controller state_controller(const Plant& plant,
                            const std::vector<std::vector<std::vector<ActionIndex>>>& advice) {
    PlantBuilder b;
    for (const auto& p : plant.processes())
        b.add_process(p.name, p.states, p.states[p.initial], {});
    for (ActionIndex a = 0; a < plant.action_count(); ++a) {
        const Action& act = plant.action(a);
        std::vector<std::string> dom;
        for (ProcessIndex p : act.domain) dom.push_back(plant.process(p).name);
        b.add_action(act.name, dom, act.controllable);
        for (const auto& t : plant.transitions(a)) {
            std::vector<std::string> src, dst;
            for (std::size_t i = 0; i < act.domain.size(); ++i) {
                src.push_back(plant.process(act.domain[i]).states[t.source[i]]);
                dst.push_back(plant.process(act.domain[i]).states[t.target[i]]);
            }
            b.add_transition(act.name, src, dst);
        }
    }
    Controller c{b.build(), advice};
    for (auto& per_p : c.advice)
        for (auto& set : per_p) std::sort(set.begin(), set.end());
    return c;
}

}  // namespace asyncsynth
