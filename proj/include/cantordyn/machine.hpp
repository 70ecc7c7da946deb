#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantordyn/sequence.hpp"

namespace cantordyn {

// Tape shift per rule: +1 is the left shift (head lands on the old s_1),
// -1 the right shift, 0 stays put.  Serialized as L/S/R respectively.
struct Transition {
    StateId next = -1;
    SymbolId write = -1;
    int move = 0;
};

// Plain description of a machine, as parsed from a file or assembled by a
// transform.  TuringMachine::build validates it.
struct MachineDef {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::string blank;
    std::string initial;
    std::string halting;
    bool looping = false;

    struct Rule {
        std::string from, read, to, write;
        int move = 0;
    };
    std::vector<Rule> rules;
};

// Deterministic Turing machine with a total transition table on
// (Q \ {halting}) x Sigma.  When `looping` is set the table is total on all
// of Q x Sigma and the machine has no halting behaviour (its global
// transition is a total map on configurations).
class TuringMachine {
public:
    static TuringMachine build(const MachineDef& def);

    int n_states() const { return static_cast<int>(states_.size()); }
    int n_symbols() const { return static_cast<int>(symbols_.size()); }
    const std::vector<std::string>& state_names() const { return states_; }
    const std::vector<std::string>& symbol_names() const { return symbols_; }
    const std::string& state_name(StateId q) const { return states_.at(q); }
    const std::string& symbol_name(SymbolId s) const { return symbols_.at(s); }
    std::optional<StateId> find_state(const std::string& name) const;
    std::optional<SymbolId> find_symbol(const std::string& name) const;

    SymbolId blank() const { return blank_; }
    StateId initial() const { return initial_; }
    StateId halting() const { return halting_; }
    bool looping() const { return looping_; }

    bool has_rule(StateId q, SymbolId s) const;
    const Transition& rule(StateId q, SymbolId s) const;

    Tape blank_tape() const { return Tape(blank_); }

    MachineDef to_def() const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> symbols_;
    SymbolId blank_ = 0;
    StateId initial_ = 0;
    StateId halting_ = 0;
    bool looping_ = false;
    std::vector<Transition> table_;  // indexed q * n_symbols + s
};

struct Configuration {
    StateId state = 0;
    Tape tape;

    bool operator==(const Configuration&) const = default;
    std::string key() const;
};

// One step of the global transition.  `halted` is set (with the configuration
// unchanged) when a non-looping machine sits in its halting state.
struct StepResult {
    bool halted = false;
    Configuration config;
};

StepResult step(const TuringMachine& m, const Configuration& c);

// In-place variant for long runs; returns true (leaving `c` untouched) when
// the machine halts.
bool step_in_place(const TuringMachine& m, Configuration& c);

struct RunResult {
    enum class Kind { Halted, Unresolved };
    Kind kind = Kind::Unresolved;
    Tape output;                 // Halted: tape at the halting configuration
    std::uint64_t steps = 0;     // Halted: number of steps taken
    Configuration final_config;  // Unresolved: configuration after `budget`
    std::uint64_t budget = 0;

    bool halted() const { return kind == Kind::Halted; }
};

RunResult run(const TuringMachine& m, const Tape& input, std::uint64_t budget);

// Injectivity report for the global transition function.  `radius` is the
// tape window the exhaustive search covered; witnesses are genuine distinct
// configurations with equal images.
struct ReversibilityResult {
    bool reversible = false;
    int radius = 0;
    std::optional<std::pair<Configuration, Configuration>> witness;
};

ReversibilityResult is_reversible(const TuringMachine& m, int radius = 4);

// Structural check equivalent to injectivity in this rule model: all rules
// entering a state share one shift and write pairwise distinct symbols.
// Returns a violating rule-source pair when present.
std::optional<std::pair<std::pair<StateId, SymbolId>, std::pair<StateId, SymbolId>>>
local_injectivity_violation(const TuringMachine& m);

}  // namespace cantordyn
