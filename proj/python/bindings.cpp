// Python bindings for the toolkit.  Tapes, sequences and points cross the
// boundary as their string forms; machines and compiled artifacts are opaque
// handles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cantordyn/blockmap_io.hpp"
#include "cantordyn/cantor.hpp"
#include "cantordyn/errors.hpp"
#include "cantordyn/gshift_io.hpp"
#include "cantordyn/machine_io.hpp"
#include "cantordyn/ns_budget.hpp"
#include "cantordyn/orbit.hpp"
#include "cantordyn/transform.hpp"

namespace py = pybind11;
using namespace cantordyn;

namespace {

struct PyVerdict {
    std::string kind;
    std::uint64_t steps = 0;
    std::uint64_t period = 0;
    std::uint64_t preperiod = 0;
    std::uint64_t budget = 0;
    std::string output;  // halting tape, machine-level rendering
};

PyVerdict make_verdict(const OrbitVerdict& v, const std::vector<std::string>& names) {
    PyVerdict out;
    switch (v.kind) {
        case OrbitVerdict::Kind::Halted:
            out.kind = "halted";
            out.steps = v.steps;
            out.output = sequence_to_string(names, v.output);
            break;
        case OrbitVerdict::Kind::Periodic:
            out.kind = "periodic";
            out.period = v.period;
            out.preperiod = v.preperiod;
            break;
        case OrbitVerdict::Kind::Unresolved:
            out.kind = "unresolved";
            out.budget = v.budget;
            break;
    }
    return out;
}

struct PyMachine {
    TuringMachine m;

    static PyMachine from_text(const std::string& text) {
        return PyMachine{parse_machine(text).machine};
    }
    static PyMachine from_file(const std::string& path) {
        return PyMachine{load_machine(path).machine};
    }

    std::string to_text() const { return machine_to_text(m); }
    std::string digest() const { return machine_digest(m); }

    py::tuple step_py(const std::string& state, const std::string& tape) const {
        auto q = m.find_state(state);
        if (!q) throw UnknownStateError("unknown state '" + state + "'");
        StepResult r = cantordyn::step(m, Configuration{*q, parse_tape(m, tape)});
        return py::make_tuple(m.state_name(r.config.state),
                              tape_to_string(m, r.config.tape), r.halted);
    }

    py::dict run_py(const std::string& tape, std::uint64_t budget) const {
        RunResult r = run(m, parse_tape(m, tape), budget);
        py::dict d;
        d["halted"] = r.halted();
        if (r.halted()) {
            d["steps"] = r.steps;
            d["output"] = tape_to_string(m, r.output);
        } else {
            d["budget"] = r.budget;
            d["state"] = m.state_name(r.final_config.state);
            d["tape"] = tape_to_string(m, r.final_config.tape);
        }
        return d;
    }

    py::dict reversible_py(int radius) const {
        ReversibilityResult r = is_reversible(m, radius);
        py::dict d;
        d["reversible"] = r.reversible;
        d["radius"] = r.radius;
        if (r.witness) {
            auto wit = [&](const Configuration& c) {
                return py::make_tuple(m.state_name(c.state), tape_to_string(m, c.tape));
            };
            d["witness"] = py::make_tuple(wit(r.witness->first), wit(r.witness->second));
        }
        return d;
    }

    PyVerdict classify(const std::string& tape, std::uint64_t budget) const {
        OrbitVerdict v =
            classify_orbit(m, Configuration{m.initial(), parse_tape(m, tape)}, budget);
        return make_verdict(v, m.symbol_names());
    }

    py::dict reach(const std::string& tape, int k, const std::string& window,
                   std::uint64_t budget) const {
        ReachQuery q = make_reach_query(m, k, window);
        ReachResult r = check_reachability(m, parse_tape(m, tape), q, budget);
        py::dict d;
        d["reached"] = r.reached;
        if (r.reached) {
            d["steps"] = r.steps;
        } else {
            d["budget"] = r.budget;
        }
        return d;
    }

    py::dict census(const std::vector<std::string>& inputs, std::uint64_t budget,
                    int jobs) const {
        std::vector<Tape> tapes;
        tapes.reserve(inputs.size());
        for (const auto& s : inputs) tapes.push_back(parse_tape(m, s));
        CensusReport rep = orbit_census(m, tapes, budget, jobs);
        py::list rows;
        for (const auto& r : rep.rows) {
            py::dict row;
            row["input"] = r.input;
            row["digest"] = r.digest;
            row["verdict"] = py::cast(make_verdict(r.verdict, m.symbol_names()));
            rows.append(row);
        }
        py::dict d;
        d["rows"] = rows;
        d["periodic"] = rep.periodic;
        d["halted"] = rep.halted;
        d["unresolved"] = rep.unresolved;
        d["fraction_periodic"] = rep.fraction_periodic;
        return d;
    }
};

struct PyCompiledShift {
    CompiledShift cs;

    std::vector<std::string> plain_names() const {
        return {cs.enc.alphabet_names().begin(),
                cs.enc.alphabet_names().begin() + cs.enc.n_plain()};
    }

    std::string encode(const std::string& state, const std::string& tape) const {
        StateId q = -1;
        for (int i = 0; i < cs.enc.n_states(); ++i) {
            if (cs.enc.state_names()[i] == state) q = i;
        }
        if (q < 0) throw UnknownStateError("unknown state '" + state + "'");
        Tape t = parse_sequence_over(plain_names(), cs.enc.blank(), tape);
        return sequence_to_string(cs.enc.alphabet_names(),
                                  cs.enc.encode(Configuration{q, t}));
    }

    std::string apply_once(const std::string& seq) const {
        Sequence s =
            parse_sequence_over(cs.gs.alphabet, cs.gs.default_symbol, seq);
        return sequence_to_string(cs.gs.alphabet, apply(cs.gs, s));
    }

    py::tuple decode(const std::string& seq) const {
        Sequence s = parse_sequence_over(cs.gs.alphabet, cs.gs.default_symbol, seq);
        Configuration c = cs.enc.decode(s);
        return py::make_tuple(cs.enc.state_names()[c.state],
                              sequence_to_string(plain_names(), c.tape));
    }

    bool bijective_on_encoding(int window) const {
        return is_bijective_on_encoding(cs.gs, cs.enc, window).bijective;
    }

    PyVerdict classify(const std::string& tape, std::uint64_t budget) const {
        Tape t = parse_sequence_over(plain_names(), cs.enc.blank(), tape);
        OrbitVerdict v =
            classify_orbit(cs, cs.enc.encode(Configuration{cs.enc.initial(), t}), budget);
        return make_verdict(v, plain_names());
    }

    std::string to_text() const { return gshift_to_text(cs.gs, cs.enc); }
};

struct PyPoint {
    CantorPoint p;
    std::string x() const { return p.x_string(); }
    std::string y() const { return p.y_string(); }
    py::tuple coords() const {
        auto [x, y] = p.coords();
        return py::make_tuple(x.str(), y.str());
    }
};

struct PyBlockMap {
    CompiledBlockMap cbm;

    PyPoint encode(const std::string& state, const std::string& tape) const {
        StateId q = -1;
        for (int i = 0; i < cbm.enc.n_states(); ++i) {
            if (cbm.enc.state_names()[i] == state) q = i;
        }
        if (q < 0) throw UnknownStateError("unknown state '" + state + "'");
        std::vector<std::string> plain(cbm.enc.alphabet_names().begin(),
                                       cbm.enc.alphabet_names().begin() + cbm.enc.n_plain());
        Tape t = parse_sequence_over(plain, cbm.enc.blank(), tape);
        return PyPoint{cbm.encode_config(Configuration{q, t})};
    }

    PyPoint apply_once(const PyPoint& pt) const {
        return PyPoint{apply_block_map(cbm.bm, pt.p)};
    }

    py::tuple decode(const PyPoint& pt) const {
        Configuration c = cbm.decode_config(pt.p);
        std::vector<std::string> plain(cbm.enc.alphabet_names().begin(),
                                       cbm.enc.alphabet_names().begin() + cbm.enc.n_plain());
        return py::make_tuple(cbm.enc.state_names()[c.state],
                              sequence_to_string(plain, c.tape));
    }

    py::dict audit() const {
        BlockMapAudit a = audit_block_map(cbm.bm);
        py::dict d;
        d["components"] = a.component_count;
        d["sources_distinct"] = a.sources_distinct;
        d["images_disjoint"] = a.images_disjoint;
        d["measures_preserved"] = a.measures_preserved;
        return d;
    }

    PyVerdict classify(const std::string& tape, std::uint64_t budget) const {
        std::vector<std::string> plain(cbm.enc.alphabet_names().begin(),
                                       cbm.enc.alphabet_names().begin() + cbm.enc.n_plain());
        Tape t = parse_sequence_over(plain, cbm.enc.blank(), tape);
        OrbitVerdict v = classify_orbit(
            cbm, cbm.encode_config(Configuration{cbm.enc.initial(), t}), budget);
        return make_verdict(v, plain);
    }
};

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Turing machines, generalized shifts, square-Cantor block maps, "
                "orbit analysis and decay step budgets";

    py::register_exception<Error>(mod, "ToolkitError");

    py::class_<PyVerdict>(mod, "Verdict")
        .def_readonly("kind", &PyVerdict::kind)
        .def_readonly("steps", &PyVerdict::steps)
        .def_readonly("period", &PyVerdict::period)
        .def_readonly("preperiod", &PyVerdict::preperiod)
        .def_readonly("budget", &PyVerdict::budget)
        .def_readonly("output", &PyVerdict::output)
        .def("__repr__", [](const PyVerdict& v) {
            if (v.kind == "halted") {
                return "Verdict(halted, steps=" + std::to_string(v.steps) + ")";
            }
            if (v.kind == "periodic") {
                return "Verdict(periodic, period=" + std::to_string(v.period) +
                       ", preperiod=" + std::to_string(v.preperiod) + ")";
            }
            return "Verdict(unresolved, budget=" + std::to_string(v.budget) + ")";
        });

    py::class_<PyPoint>(mod, "Point")
        .def_property_readonly("x_digits", &PyPoint::x)
        .def_property_readonly("y_digits", &PyPoint::y)
        .def("coords", &PyPoint::coords,
             "Exact coordinates as fraction strings (numerator/denominator).")
        .def("__eq__", [](const PyPoint& a, const PyPoint& b) { return a.p == b.p; })
        .def("__repr__", [](const PyPoint& pt) {
            return "Point(x=" + pt.p.x_string() + ", y=" + pt.p.y_string() + ")";
        });

    py::class_<PyCompiledShift>(mod, "CompiledShift")
        .def("encode", &PyCompiledShift::encode, py::arg("state"), py::arg("tape"))
        .def("apply", &PyCompiledShift::apply_once, py::arg("sequence"))
        .def("decode", &PyCompiledShift::decode, py::arg("sequence"))
        .def("bijective_on_encoding", &PyCompiledShift::bijective_on_encoding,
             py::arg("window") = 2)
        .def("classify_orbit", &PyCompiledShift::classify, py::arg("tape"),
             py::arg("budget") = 100000)
        .def("to_text", &PyCompiledShift::to_text);

    py::class_<PyBlockMap>(mod, "CompiledBlockMap")
        .def("encode", &PyBlockMap::encode, py::arg("state"), py::arg("tape"))
        .def("apply", &PyBlockMap::apply_once, py::arg("point"))
        .def("decode", &PyBlockMap::decode, py::arg("point"))
        .def("audit", &PyBlockMap::audit)
        .def("classify_orbit", &PyBlockMap::classify, py::arg("tape"),
             py::arg("budget") = 100000);

    py::class_<PyMachine>(mod, "Machine")
        .def_static("from_text", &PyMachine::from_text, py::arg("text"))
        .def_static("from_file", &PyMachine::from_file, py::arg("path"))
        .def("to_text", &PyMachine::to_text)
        .def("digest", &PyMachine::digest)
        .def_property_readonly(
            "states", [](const PyMachine& pm) { return pm.m.state_names(); })
        .def_property_readonly(
            "alphabet", [](const PyMachine& pm) { return pm.m.symbol_names(); })
        .def_property_readonly(
            "initial", [](const PyMachine& pm) { return pm.m.state_name(pm.m.initial()); })
        .def_property_readonly(
            "halting", [](const PyMachine& pm) { return pm.m.state_name(pm.m.halting()); })
        .def_property_readonly(
            "blank", [](const PyMachine& pm) { return pm.m.symbol_name(pm.m.blank()); })
        .def_property_readonly("looping",
                               [](const PyMachine& pm) { return pm.m.looping(); })
        .def("step", &PyMachine::step_py, py::arg("state"), py::arg("tape"))
        .def("run", &PyMachine::run_py, py::arg("tape"), py::arg("budget") = 10000)
        .def("is_reversible", &PyMachine::reversible_py, py::arg("radius") = 4)
        .def("initial_unreachable",
             [](const PyMachine& pm) { return check_initial_unreachable(pm.m); })
        .def("invert",
             [](const PyMachine& pm) {
                 InverseMachine inv = invert(pm.m);
                 std::vector<std::string> aux;
                 for (StateId q = 0; q < inv.machine.n_states(); ++q) {
                     if (inv.bookkeeping[q]) aux.push_back(inv.machine.state_name(q));
                 }
                 return py::make_tuple(PyMachine{inv.machine}, aux);
             })
        .def("restartify",
             [](const PyMachine& pm) { return PyMachine{restartify(pm.m).machine}; })
        .def("extend_halt_loop",
             [](const PyMachine& pm) { return PyMachine{extend_halt_loop(pm.m)}; })
        .def("compile_shift",
             [](const PyMachine& pm) { return PyCompiledShift{compile_tm(pm.m)}; })
        .def("compile_block_map",
             [](const PyMachine& pm) {
                 return PyBlockMap{compile_block_map(compile_tm(pm.m))};
             })
        .def("classify_orbit", &PyMachine::classify, py::arg("tape"),
             py::arg("budget") = 100000)
        .def("check_reachability", &PyMachine::reach, py::arg("tape"), py::arg("k"),
             py::arg("window"), py::arg("budget") = 100000)
        .def("orbit_census", &PyMachine::census, py::arg("inputs"),
             py::arg("budget") = 100000, py::arg("jobs") = 1)
        .def("__repr__", [](const PyMachine& pm) {
            return "Machine(states=" + std::to_string(pm.m.n_states()) +
                   ", symbols=" + std::to_string(pm.m.n_symbols()) +
                   (pm.m.looping() ? ", looping" : "") + ")";
        });

    mod.def(
        "encode_point",
        [](const std::string& bits) {
            return PyPoint{encode_point(
                parse_sequence_over({"0", "1"}, 0, bits))};
        },
        py::arg("bits"), "Point assignment for a binary sequence string.");
    mod.def(
        "decode_point",
        [](const PyPoint& p) {
            return sequence_to_string({"0", "1"}, decode_point(p.p));
        },
        py::arg("point"));

    mod.def(
        "tau",
        [](double t, double nu, double m) { return tau(t, NSParams{nu, m}); },
        py::arg("t"), py::arg("nu"), py::arg("m"));
    mod.def(
        "amplitude",
        [](double t, double nu, double m) { return amplitude(t, NSParams{nu, m}); },
        py::arg("t"), py::arg("nu"), py::arg("m"));
    mod.def(
        "pressure_coefficient",
        [](double t, double nu, double m) {
            return pressure_coefficient(t, NSParams{nu, m});
        },
        py::arg("t"), py::arg("nu"), py::arg("m"));
    mod.def(
        "step_budget",
        [](double nu, double m, double tau_per_step) {
            return step_budget(NSParams{nu, m}, tau_per_step);
        },
        py::arg("nu"), py::arg("m"), py::arg("tau_per_step"));
    mod.def(
        "min_amplitude",
        [](double nu, double tau_per_step, std::uint64_t n) {
            MinAmplitude ma = min_amplitude(nu, tau_per_step, n);
            return py::make_tuple(ma.m, ma.attaining);
        },
        py::arg("nu"), py::arg("tau_per_step"), py::arg("n"),
        "Infimal amplitude enabling n steps; the bound is never attained.");

    mod.attr("__version__") = "0.1.0";
}
