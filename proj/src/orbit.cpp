#include "cantordyn/orbit.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "cantordyn/digest.hpp"
#include "cantordyn/errors.hpp"
#include "cantordyn/machine_io.hpp"

namespace cantordyn {

namespace {

// Brent's cycle detection over an abstract system.  `Sys` provides
//   State, halted(s), advance(s), output(s).
template <typename Sys, typename State>
OrbitVerdict classify(const Sys& sys, const State& start, std::uint64_t budget) {
    OrbitVerdict v;
    if (sys.halted(start)) {
        v.kind = OrbitVerdict::Kind::Halted;
        v.output = sys.output(start);
        v.steps = 0;
        return v;
    }
    if (budget == 0) {
        v.kind = OrbitVerdict::Kind::Unresolved;
        v.budget = 0;
        return v;
    }

    State tortoise = start;
    State hare = start;
    sys.advance(hare);
    std::uint64_t steps = 1;
    std::uint64_t power = 1, lam = 1;
    while (!(hare == tortoise)) {
        if (sys.halted(hare)) {
            v.kind = OrbitVerdict::Kind::Halted;
            v.output = sys.output(hare);
            v.steps = steps;
            return v;
        }
        if (steps >= budget) {
            v.kind = OrbitVerdict::Kind::Unresolved;
            v.budget = budget;
            return v;
        }
        if (power == lam) {
            tortoise = hare;
            power <<= 1;
            lam = 0;
        }
        sys.advance(hare);
        ++steps;
        ++lam;
    }

    // Minimal period found; recover the preperiod with two aligned pointers.
    State front = start;
    State back = start;
    for (std::uint64_t i = 0; i < lam; ++i) sys.advance(back);
    std::uint64_t mu = 0;
    while (!(front == back)) {
        sys.advance(front);
        sys.advance(back);
        ++mu;
    }
    v.kind = OrbitVerdict::Kind::Periodic;
    v.period = lam;
    v.preperiod = mu;
    return v;
}

struct TmSystem {
    const TuringMachine& m;
    bool halted(const Configuration& c) const {
        return !m.looping() && c.state == m.halting();
    }
    void advance(Configuration& c) const { step_in_place(m, c); }
    Tape output(const Configuration& c) const { return c.tape; }
};

struct CompiledShiftSystem {
    const CompiledShift& cs;
    bool halted(const Sequence& s) const { return cs.enc.is_halt_marker(s.at(0)); }
    void advance(Sequence& s) const { apply_in_place(cs.gs, s); }
    Tape output(const Sequence& s) const { return cs.enc.decode(s).tape; }
};

struct RawShiftSystem {
    const GeneralizedShift& gs;
    bool halted(const Sequence&) const { return false; }
    void advance(Sequence& s) const { apply_in_place(gs, s); }
    Tape output(const Sequence& s) const { return s; }
};

struct CompiledBlockSystem {
    const CompiledBlockMap& cbm;
    bool halted(const CantorPoint& p) const { return cbm.is_halt_point(p); }
    void advance(CantorPoint& p) const { apply_block_map_in_place(cbm.bm, p); }
    Tape output(const CantorPoint& p) const { return cbm.decode_config(p).tape; }
};

struct RawBlockSystem {
    const BlockMap& bm;
    bool halted(const CantorPoint&) const { return false; }
    void advance(CantorPoint& p) const { apply_block_map_in_place(bm, p); }
    Tape output(const CantorPoint&) const { return Tape(); }
};

}  // namespace

OrbitVerdict classify_orbit(const TuringMachine& m, const Configuration& start,
                            std::uint64_t budget) {
    if (start.state < 0 || start.state >= m.n_states()) {
        throw TypeMismatchError("start state is not a state of the machine");
    }
    if (start.tape.def() != m.blank()) {
        throw TypeMismatchError("start tape default symbol is not the machine blank");
    }
    return classify(TmSystem{m}, start, budget);
}

OrbitVerdict classify_orbit(const CompiledShift& cs, const Sequence& start,
                            std::uint64_t budget) {
    if (start.def() != cs.gs.default_symbol) {
        throw TypeMismatchError("start sequence default does not match the shift");
    }
    cs.enc.decode(start);  // reject non-encoded starts up front
    return classify(CompiledShiftSystem{cs}, start, budget);
}

OrbitVerdict classify_orbit(const GeneralizedShift& gs, const Sequence& start,
                            std::uint64_t budget) {
    if (start.def() != gs.default_symbol) {
        throw TypeMismatchError("start sequence default does not match the shift");
    }
    return classify(RawShiftSystem{gs}, start, budget);
}

OrbitVerdict classify_orbit(const CompiledBlockMap& cbm, const CantorPoint& start,
                            std::uint64_t budget) {
    cbm.decode_config(start);  // reject non-encoded starts up front
    return classify(CompiledBlockSystem{cbm}, start, budget);
}

OrbitVerdict classify_orbit(const BlockMap& bm, const CantorPoint& start,
                            std::uint64_t budget) {
    return classify(RawBlockSystem{bm}, start, budget);
}

ReachQuery make_reach_query(const TuringMachine& m, int k, const std::string& window) {
    if (k < 0) throw ValidationError("reach query radius must be >= 0");
    std::vector<std::string> names;
    if (window.find(',') != std::string::npos) {
        std::istringstream in(window);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (!tok.empty()) names.push_back(tok);
        }
    } else {
        for (char c : window) names.emplace_back(1, c);
    }
    if (names.size() != static_cast<std::size_t>(2 * k + 1)) {
        throw ValidationError("reach window must list exactly 2k+1 = " +
                              std::to_string(2 * k + 1) + " symbols, got " +
                              std::to_string(names.size()));
    }
    ReachQuery q;
    q.k = k;
    for (const auto& n : names) {
        auto id = m.find_symbol(n);
        if (!id) {
            throw AlphabetMismatchError("reach window symbol '" + n +
                                        "' is not in the machine alphabet");
        }
        q.target.push_back(*id);
    }
    return q;
}

ReachResult check_reachability(const TuringMachine& m, const Tape& input,
                               const ReachQuery& q, std::uint64_t budget) {
    if (q.target.size() != static_cast<std::size_t>(2 * q.k + 1)) {
        throw ValidationError("reach query window must have exactly 2k+1 symbols");
    }
    for (SymbolId s : q.target) {
        if (s < 0 || s >= m.n_symbols()) {
            throw AlphabetMismatchError("reach window symbol outside machine alphabet");
        }
    }
    RunResult r = run(m, input, budget);
    ReachResult res;
    res.budget = budget;
    if (r.halted()) {
        bool match = true;
        for (int p = -q.k; p <= q.k; ++p) {
            if (r.output.at(p) != q.target[static_cast<std::size_t>(p + q.k)]) match = false;
        }
        if (match) {
            res.reached = true;
            res.steps = r.steps;
        }
    }
    return res;
}

CensusReport orbit_census(const TuringMachine& m, const std::vector<Tape>& inputs,
                          std::uint64_t budget, int jobs) {
    CensusReport report;
    report.budget = budget;
    report.rows.resize(inputs.size());

    auto work = [&](std::size_t i) {
        CensusRow& row = report.rows[i];
        row.input = tape_to_string(m, inputs[i]);
        row.digest = sha256_digest("tape:" + row.input);
        row.verdict = classify_orbit(m, Configuration{m.initial(), inputs[i]}, budget);
    };

    if (jobs <= 1 || inputs.size() <= 1) {
        for (std::size_t i = 0; i < inputs.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < inputs.size(); i = next.fetch_add(1)) {
                work(i);
            }
        };
        std::vector<std::thread> pool;
        int n = std::min<int>(jobs, static_cast<int>(inputs.size()));
        pool.reserve(n);
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& row : report.rows) {
        switch (row.verdict.kind) {
            case OrbitVerdict::Kind::Periodic: ++report.periodic; break;
            case OrbitVerdict::Kind::Halted: ++report.halted; break;
            case OrbitVerdict::Kind::Unresolved: ++report.unresolved; break;
        }
    }
    report.fraction_periodic =
        report.rows.empty() ? 0.0
                            : static_cast<double>(report.periodic) /
                                  static_cast<double>(report.rows.size());
    return report;
}

}  // namespace cantordyn
