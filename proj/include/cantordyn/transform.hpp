#pragma once

#include <vector>

#include "cantordyn/machine.hpp"

namespace cantordyn {

// True iff no rule's target state is the initial state.
bool check_initial_unreachable(const TuringMachine& m);

// Inverse machine.  Undoing a rule that shifted the tape takes two steps
// (un-shift, then un-write), routed through a bookkeeping state; rules that
// stayed put invert in one step.  `bookkeeping[q]` marks those intermediate
// states: stepping the inverse from the image of a configuration c and
// skipping bookkeeping states recovers c exactly.
struct InverseMachine {
    TuringMachine machine;
    std::vector<bool> bookkeeping;

    bool is_bookkeeping(StateId q) const { return bookkeeping.at(q); }
};

// Requires a reversible machine whose initial state is unreachable.
InverseMachine invert(const TuringMachine& m);

enum class RestartPhase {
    Start,       // the initial state
    Forward,     // positive copies running the source machine
    TurnPlus,    // positive copy of the source halting state
    TurnMinus,   // negative copy of the source halting state
    Reverse,     // negative copies running the inverse machine
    ReverseAux,  // bookkeeping states of the inverse machine
    Halt,        // the halting state
};

// Restart construction: runs the source machine forward, and on reaching its
// halting state turns around and runs the inverse until the start of the
// computation, halting with the tape exactly as it was given.  The result is
// reversible, keeps the initial state unreachable, and halts on precisely the
// inputs the source machine halts on.
struct RestartMachine {
    TuringMachine machine;
    std::vector<RestartPhase> phases;

    RestartPhase phase(StateId q) const { return phases.at(q); }
};

RestartMachine restartify(const TuringMachine& m);

// Total dynamical-system form: maps the halting state back to the initial
// state without touching the tape and flags the table as looping.  run()
// rejects the result; orbit analysis accepts it.
TuringMachine extend_halt_loop(const TuringMachine& m);

}  // namespace cantordyn
