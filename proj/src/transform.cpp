#include "cantordyn/transform.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "cantordyn/errors.hpp"

namespace cantordyn {

namespace {

// Per-target inversion data.  In this rule model reversibility forces all
// rules entering a state to share one shift and carry pairwise distinct
// writes; with a total table and an unreachable initial state the incoming
// writes of every other state cover the whole alphabet.
struct IncomingTable {
    struct Source {
        StateId from;
        SymbolId read;
    };
    // incoming[p][w] = source rule of the rule (from, read) -> (p, w, move(p))
    std::vector<std::map<SymbolId, Source>> incoming;
    std::vector<int> move;  // incoming shift per target; meaningless if empty
};

IncomingTable analyze_incoming(const TuringMachine& m) {
    IncomingTable t;
    t.incoming.resize(m.n_states());
    t.move.assign(m.n_states(), 0);
    std::vector<bool> seen(m.n_states(), false);
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting() && !m.looping()) continue;
        for (SymbolId s = 0; s < m.n_symbols(); ++s) {
            const Transition& tr = m.rule(q, s);
            if (!seen[tr.next]) {
                seen[tr.next] = true;
                t.move[tr.next] = tr.move;
            }
            t.incoming[tr.next].emplace(tr.write, IncomingTable::Source{q, s});
        }
    }
    return t;
}

void require_invertible(const TuringMachine& m, const char* op) {
    if (m.looping()) {
        throw LoopingMachineError(std::string(op) + " requires a halting-capable machine");
    }
    if (local_injectivity_violation(m)) {
        throw NotReversibleError(std::string(op) + " requires a reversible machine");
    }
    if (!check_initial_unreachable(m)) {
        throw InitialReachableError(std::string(op) +
                                    " requires the initial state to be unreachable");
    }
}

std::string unique_name(std::unordered_set<std::string>& used, std::string base) {
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "-" + std::to_string(k);
    used.insert(name);
    return name;
}

}  // namespace

bool check_initial_unreachable(const TuringMachine& m) {
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting() && !m.looping()) continue;
        for (SymbolId s = 0; s < m.n_symbols(); ++s) {
            if (m.rule(q, s).next == m.initial()) return false;
        }
    }
    return true;
}

InverseMachine invert(const TuringMachine& m) {
    require_invertible(m, "invert");
    IncomingTable inc = analyze_incoming(m);

    std::unordered_set<std::string> used(m.state_names().begin(), m.state_names().end());
    MachineDef def;
    def.states = m.state_names();
    def.alphabet = m.symbol_names();
    def.blank = m.symbol_name(m.blank());
    def.initial = m.state_name(m.halting());
    def.halting = m.state_name(m.initial());

    std::vector<std::string> aux_name(m.n_states());
    for (StateId p = 0; p < m.n_states(); ++p) {
        if (p == m.initial()) continue;
        if (inc.incoming[p].size() != static_cast<std::size_t>(m.n_symbols())) {
            throw Error("internal: state '" + m.state_name(p) +
                        "' lacks full incoming coverage despite reversibility");
        }
        if (inc.move[p] != 0) {
            aux_name[p] = unique_name(used, m.state_name(p) + "-u");
            def.states.push_back(aux_name[p]);
        }
    }

    auto sym = [&m](SymbolId s) { return m.symbol_name(s); };
    for (StateId p = 0; p < m.n_states(); ++p) {
        if (p == m.initial()) continue;
        const std::string unwrite_state =
            inc.move[p] == 0 ? m.state_name(p) : aux_name[p];
        if (inc.move[p] != 0) {
            for (SymbolId x = 0; x < m.n_symbols(); ++x) {
                def.rules.push_back({m.state_name(p), sym(x), aux_name[p], sym(x), -inc.move[p]});
            }
        }
        for (const auto& [w, src] : inc.incoming[p]) {
            def.rules.push_back({unwrite_state, sym(w), m.state_name(src.from), sym(src.read), 0});
        }
    }

    InverseMachine result{TuringMachine::build(def), {}};
    result.bookkeeping.assign(result.machine.n_states(), false);
    for (StateId p = 0; p < m.n_states(); ++p) {
        if (p != m.initial() && inc.move[p] != 0) {
            result.bookkeeping[*result.machine.find_state(aux_name[p])] = true;
        }
    }
    return result;
}

RestartMachine restartify(const TuringMachine& m) {
    require_invertible(m, "restartify");
    IncomingTable inc = analyze_incoming(m);
    for (StateId p = 0; p < m.n_states(); ++p) {
        if (p != m.initial() &&
            inc.incoming[p].size() != static_cast<std::size_t>(m.n_symbols())) {
            throw Error("internal: state '" + m.state_name(p) +
                        "' lacks full incoming coverage despite reversibility");
        }
    }

    std::unordered_set<std::string> used;
    const std::string start = unique_name(used, m.state_name(m.initial()));
    const std::string halt = unique_name(used, m.state_name(m.halting()));

    std::vector<std::string> plus(m.n_states()), minus(m.n_states()), aux(m.n_states());
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.initial()) continue;
        plus[q] = unique_name(used, m.state_name(q) + "+");
        minus[q] = unique_name(used, m.state_name(q) + "-");
        if (inc.move[q] != 0) aux[q] = unique_name(used, m.state_name(q) + "-u");
    }

    MachineDef def;
    def.alphabet = m.symbol_names();
    def.blank = m.symbol_name(m.blank());
    def.initial = start;
    def.halting = halt;

    std::vector<RestartPhase> phases;
    auto add_state = [&def, &phases](const std::string& name, RestartPhase ph) {
        def.states.push_back(name);
        phases.push_back(ph);
    };
    add_state(start, RestartPhase::Start);
    add_state(halt, RestartPhase::Halt);
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.initial()) continue;
        add_state(plus[q], q == m.halting() ? RestartPhase::TurnPlus : RestartPhase::Forward);
        add_state(minus[q], q == m.halting() ? RestartPhase::TurnMinus : RestartPhase::Reverse);
        if (!aux[q].empty()) add_state(aux[q], RestartPhase::ReverseAux);
    }

    auto sym = [&m](SymbolId s) { return m.symbol_name(s); };

    // Forward phase mirrors the source machine on the positive copies.
    for (StateId q = 0; q < m.n_states(); ++q) {
        if (q == m.halting()) continue;
        const std::string from = q == m.initial() ? start : plus[q];
        for (SymbolId s = 0; s < m.n_symbols(); ++s) {
            const Transition& tr = m.rule(q, s);
            def.rules.push_back({from, sym(s), plus[tr.next], sym(tr.write), tr.move});
        }
    }

    // Turnaround: swap to the reversing phase without touching the tape.
    for (SymbolId s = 0; s < m.n_symbols(); ++s) {
        def.rules.push_back({plus[m.halting()], sym(s), minus[m.halting()], sym(s), 0});
    }

    // Reverse phase runs the inverse machine on the negative copies; undoing
    // the very first step of the source machine exits to the halting state,
    // which restores the input tape exactly.
    for (StateId p = 0; p < m.n_states(); ++p) {
        if (p == m.initial()) continue;
        const std::string unshift_from = minus[p];
        const std::string unwrite_from = inc.move[p] == 0 ? minus[p] : aux[p];
        if (inc.move[p] != 0) {
            for (SymbolId x = 0; x < m.n_symbols(); ++x) {
                def.rules.push_back({unshift_from, sym(x), aux[p], sym(x), -inc.move[p]});
            }
        }
        for (const auto& [w, src] : inc.incoming[p]) {
            const std::string target = src.from == m.initial() ? halt : minus[src.from];
            def.rules.push_back({unwrite_from, sym(w), target, sym(src.read), 0});
        }
    }

    return RestartMachine{TuringMachine::build(def), std::move(phases)};
}

TuringMachine extend_halt_loop(const TuringMachine& m) {
    if (m.looping()) {
        throw LoopingMachineError("machine is already looping; nothing to extend");
    }
    MachineDef def = m.to_def();
    def.looping = true;
    for (SymbolId s = 0; s < m.n_symbols(); ++s) {
        def.rules.push_back({def.halting, m.symbol_name(s), def.initial, m.symbol_name(s), 0});
    }
    return TuringMachine::build(def);
}

}  // namespace cantordyn
