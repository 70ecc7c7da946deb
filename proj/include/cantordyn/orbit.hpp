#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantordyn/cantor.hpp"
#include "cantordyn/gshift.hpp"
#include "cantordyn/machine.hpp"

namespace cantordyn {

// Budget-relative trajectory classification.  The analysis never claims
// non-halting or non-periodicity; past the budget the verdict is Unresolved.
struct OrbitVerdict {
    enum class Kind { Halted, Periodic, Unresolved };
    Kind kind = Kind::Unresolved;
    Tape output;                 // Halted: tape of the halting configuration
    std::uint64_t steps = 0;     // Halted: steps until the halt
    std::uint64_t period = 0;    // Periodic: minimal period
    std::uint64_t preperiod = 0; // Periodic: steps before entering the cycle
    std::uint64_t budget = 0;    // Unresolved: budget exhausted

    bool periodic() const { return kind == Kind::Periodic; }
    bool halted() const { return kind == Kind::Halted; }
};

// Cycle detection is Brent's scheme with exact state equality; the preperiod
// is recovered with a second constant-memory pointer pass.
OrbitVerdict classify_orbit(const TuringMachine& m, const Configuration& start,
                            std::uint64_t budget);
OrbitVerdict classify_orbit(const CompiledShift& cs, const Sequence& start,
                            std::uint64_t budget);
OrbitVerdict classify_orbit(const GeneralizedShift& gs, const Sequence& start,
                            std::uint64_t budget);
OrbitVerdict classify_orbit(const CompiledBlockMap& cbm, const CantorPoint& start,
                            std::uint64_t budget);
OrbitVerdict classify_orbit(const BlockMap& bm, const CantorPoint& start,
                            std::uint64_t budget);

// Window of symbols the halting tape must show on positions -k..k.
struct ReachQuery {
    int k = 0;
    std::vector<SymbolId> target;
};

ReachQuery make_reach_query(const TuringMachine& m, int k, const std::string& window);

struct ReachResult {
    bool reached = false;
    std::uint64_t steps = 0;   // when reached
    std::uint64_t budget = 0;  // when not yet
};

// Reached iff the machine halts within the budget with the target window on
// the output tape.
ReachResult check_reachability(const TuringMachine& m, const Tape& input,
                               const ReachQuery& q, std::uint64_t budget);

struct CensusRow {
    std::string input;
    std::string digest;
    OrbitVerdict verdict;
};

// Budget-relative orbit census over a finite input family.  Counts are lower
// bounds, never decisions.
struct CensusReport {
    std::vector<CensusRow> rows;
    std::uint64_t budget = 0;
    std::size_t periodic = 0;
    std::size_t halted = 0;
    std::size_t unresolved = 0;
    double fraction_periodic = 0.0;
};

CensusReport orbit_census(const TuringMachine& m, const std::vector<Tape>& inputs,
                          std::uint64_t budget, int jobs = 1);

}  // namespace cantordyn
