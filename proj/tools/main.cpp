// cantordyn command line tool: validate artifacts, compile machines down the
// representation chain, analyze orbits, and compute decay step budgets.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cantordyn/blockmap_io.hpp"
#include "cantordyn/cantor.hpp"
#include "cantordyn/digest.hpp"
#include "cantordyn/errors.hpp"
#include "cantordyn/gshift_io.hpp"
#include "cantordyn/machine_io.hpp"
#include "cantordyn/ns_budget.hpp"
#include "cantordyn/orbit.hpp"
#include "cantordyn/transform.hpp"

using namespace cantordyn;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 2 validation failure, 3 unresolved-budget verdict,
// 4 I/O or parse error.
enum ExitCode { kOk = 0, kInvalid = 2, kUnresolved = 3, kIoError = 4 };

struct Options {
    bool no_timestamp = false;
    std::string out_path;
};

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const json& report, const Options& opt) {
    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw ParseError("cannot write report to '" + opt.out_path + "'");
        out << text;
    }
}

json base_report(const char* schema, const Options& opt) {
    json j;
    j["schema"] = schema;
    j["tool"] = std::string("cantordyn ") + kVersion;
    if (!opt.no_timestamp) j["timestamp"] = iso_now();
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

enum class ArtifactKind { Machine, GShift, BlockMap };

ArtifactKind detect_kind(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("cantordyn gshift") != std::string::npos) return ArtifactKind::GShift;
            if (line.find("cantordyn blockmap") != std::string::npos) {
                return ArtifactKind::BlockMap;
            }
            if (line.find("cantordyn machine") != std::string::npos) {
                return ArtifactKind::Machine;
            }
            continue;
        }
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "window" || kw == "component" || kw == "coverage") {
            return ArtifactKind::BlockMap;
        }
        if (kw == "df" || kw == "dg" || kw == "f" || kw == "g" || kw == "default") {
            return ArtifactKind::GShift;
        }
        if (kw == "states" || kw == "trans" || kw == "blank" || line[0] == '{') {
            return ArtifactKind::Machine;
        }
    }
    return ArtifactKind::Machine;
}

json provenance_json(const Provenance& prov) {
    json j = json::array();
    for (const auto& p : prov) {
        j.push_back({{"transform", p.transform}, {"source", p.source_digest}});
    }
    return j;
}

json config_json(const TuringMachine& m, const Configuration& c) {
    return json{{"state", m.state_name(c.state)}, {"tape", tape_to_string(m, c.tape)}};
}

json verdict_json(const OrbitVerdict& v, const std::vector<std::string>* tape_names) {
    json j;
    switch (v.kind) {
        case OrbitVerdict::Kind::Halted:
            j["kind"] = "halted";
            j["steps"] = v.steps;
            if (tape_names) j["output"] = sequence_to_string(*tape_names, v.output);
            break;
        case OrbitVerdict::Kind::Periodic:
            j["kind"] = "periodic";
            j["period"] = v.period;
            j["preperiod"] = v.preperiod;
            break;
        case OrbitVerdict::Kind::Unresolved:
            j["kind"] = "unresolved";
            j["budget"] = v.budget;
            break;
    }
    return j;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, bool require_reversible, int radius,
                 const Options& opt) {
    std::string content = read_file(path);
    json report = base_report("cantordyn.report.validate/1", opt);
    report["path"] = path;
    bool ok = true;

    switch (detect_kind(content)) {
        case ArtifactKind::Machine: {
            MachineFile mf = parse_machine(content);
            report["kind"] = "machine";
            report["digest"] = machine_digest(mf.machine);
            report["states"] = mf.machine.n_states();
            report["symbols"] = mf.machine.n_symbols();
            report["looping"] = mf.machine.looping();
            report["initial_unreachable"] = check_initial_unreachable(mf.machine);
            report["provenance"] = provenance_json(mf.provenance);
            if (require_reversible) {
                ReversibilityResult r = is_reversible(mf.machine, radius);
                report["reversible"] = r.reversible;
                report["radius"] = r.radius;
                if (!r.reversible) {
                    ok = false;
                    report["collision"] = {config_json(mf.machine, r.witness->first),
                                           config_json(mf.machine, r.witness->second)};
                }
            }
            break;
        }
        case ArtifactKind::GShift: {
            GShiftFile gf = parse_gshift(content);
            report["kind"] = "gshift";
            report["digest"] = gshift_digest(gf.gs, gf.enc);
            report["alphabet_size"] = gf.gs.n_symbols();
            report["df"] = {gf.gs.df_start, gf.gs.df_len};
            report["dg"] = {gf.gs.dg_start, gf.gs.dg_len};
            report["shift_bound"] = gf.gs.shift_bound();
            report["compiled"] = gf.enc.has_value();
            report["provenance"] = provenance_json(gf.provenance);
            break;
        }
        case ArtifactKind::BlockMap: {
            BlockMapFile bf = parse_blockmap(content);
            report["kind"] = "blockmap";
            report["digest"] = blockmap_digest(bf.bm, bf.bijective_flag,
                                               bf.compiled ? &*bf.compiled : nullptr);
            report["window"] = {bf.bm.window_start, bf.bm.window_len};
            report["components"] = bf.bm.components.size();
            report["coverage"] = bf.bm.full_coverage ? "full" : "admissible";
            BlockMapAudit audit = audit_block_map(bf.bm);
            report["audit"] = {{"sources_distinct", audit.sources_distinct},
                               {"sources_cover", audit.sources_cover},
                               {"images_disjoint", audit.images_disjoint},
                               {"measures_preserved", audit.measures_preserved}};
            report["bijective"] = bf.bijective_flag;
            if (!audit.sources_distinct || (bf.bijective_flag && !audit.images_disjoint)) {
                ok = false;
            }
            report["provenance"] = provenance_json(bf.provenance);
            break;
        }
    }
    report["ok"] = ok;
    emit(report, opt);
    return ok ? kOk : kInvalid;
}

// ----------------------------------------------------------------- compile

json self_test_gshift(const CompiledShift& cs, const TuringMachine& m, int trials,
                      std::uint64_t seed) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    std::uniform_int_distribution<int> sym(0, m.n_symbols() - 1);
    std::uniform_int_distribution<int> state(0, m.n_states() - 1);
    int checked = 0;
    for (int i = 0; i < trials; ++i) {
        Tape t = m.blank_tape();
        for (int p = -4; p <= 4; ++p) t.set(p, sym(rng));
        StateId q = state(rng);
        if (!m.looping() && q == m.halting()) q = m.initial();
        Configuration c{q, t};
        Sequence s = cs.enc.encode(c);
        for (int k = 0; k < 25; ++k) {
            if (!m.looping() && c.state == m.halting()) break;
            c = step(m, c).config;
            s = apply(cs.gs, s);
            if (!(s == cs.enc.encode(c))) {
                return json{{"name", "conjugacy"}, {"ok", false}, {"checked", checked}};
            }
            ++checked;
        }
    }
    return json{{"name", "conjugacy"}, {"ok", true}, {"checked", checked}};
}

json self_test_blockmap(const CompiledBlockMap& cbm, const CompiledShift& cs,
                        const TuringMachine& m, int trials, std::uint64_t seed) {
    BinarizedShift bin = binarize(cs.gs);
    std::mt19937 rng(static_cast<std::uint32_t>(seed) ^ 0x9e3779b9u);
    std::uniform_int_distribution<int> sym(0, m.n_symbols() - 1);
    std::uniform_int_distribution<int> state(0, m.n_states() - 1);
    int checked = 0;
    for (int i = 0; i < trials; ++i) {
        Tape t = m.blank_tape();
        for (int p = -3; p <= 3; ++p) t.set(p, sym(rng));
        StateId q = state(rng);
        if (!m.looping() && q == m.halting()) q = m.initial();
        Configuration c{q, t};
        Sequence bits = cbm.code.encode_sequence(cs.enc.encode(c));
        CantorPoint pt = encode_point(bits);
        for (int k = 0; k < 12; ++k) {
            if (!m.looping() && c.state == m.halting()) break;
            c = step(m, c).config;
            bits = apply(bin.gs, bits);
            pt = apply_block_map(cbm.bm, pt);
            if (!(pt == encode_point(bits)) ||
                !(pt == cbm.encode_config(c))) {
                return json{{"name", "point-conjugacy"}, {"ok", false}, {"checked", checked}};
            }
            ++checked;
        }
    }
    return json{{"name", "point-conjugacy"}, {"ok", true}, {"checked", checked}};
}

int cmd_compile(const std::string& path, const std::string& to, const std::string& out_path,
                int self_test, std::uint64_t seed, const Options& opt) {
    MachineFile mf = load_machine(path);
    std::string src_digest = machine_digest(mf.machine);
    json report = base_report("cantordyn.report.compile/1", opt);
    report["source"] = {{"path", path}, {"digest", src_digest}};
    report["to"] = to;
    bool ok = true;

    if (to == "restart") {
        RestartMachine rm = restartify(mf.machine);
        Provenance prov = mf.provenance;
        prov.push_back({"restartify", src_digest});
        save_machine(out_path, rm.machine, prov);
        report["digest"] = machine_digest(rm.machine);
        json st = json::array();
        st.push_back({{"name", "reversible"},
                      {"ok", is_reversible(rm.machine, 3).reversible}});
        st.push_back({{"name", "initial-unreachable"},
                      {"ok", check_initial_unreachable(rm.machine)}});
        for (const auto& t : st) ok = ok && t.at("ok").get<bool>();
        report["self_test"] = st;
    } else if (to == "loop") {
        TuringMachine ext = extend_halt_loop(mf.machine);
        Provenance prov = mf.provenance;
        prov.push_back({"extend_halt_loop", src_digest});
        save_machine(out_path, ext, prov);
        report["digest"] = machine_digest(ext);
    } else if (to == "gshift") {
        CompiledShift cs = compile_tm(mf.machine);
        Provenance prov = mf.provenance;
        prov.push_back({"compile_tm", src_digest});
        save_gshift(out_path, cs.gs, cs.enc, prov);
        report["digest"] = gshift_digest(cs.gs, cs.enc);
        if (self_test > 0) {
            json st = json::array();
            st.push_back(self_test_gshift(cs, mf.machine, self_test, seed));
            for (const auto& t : st) ok = ok && t.at("ok").get<bool>();
            report["self_test"] = st;
        }
    } else if (to == "blockmap") {
        CompiledShift cs = compile_tm(mf.machine);
        CompiledBlockMap cbm = compile_block_map(cs);
        BlockMapAudit audit = audit_block_map(cbm.bm);
        Provenance prov = mf.provenance;
        prov.push_back({"compile_blockmap", src_digest});
        save_blockmap(out_path, cbm.bm, audit.images_disjoint, &cbm, prov);
        report["digest"] = blockmap_digest(cbm.bm, audit.images_disjoint, &cbm);
        report["audit"] = {{"sources_distinct", audit.sources_distinct},
                           {"images_disjoint", audit.images_disjoint},
                           {"components", audit.component_count}};
        if (self_test > 0) {
            json st = json::array();
            st.push_back(self_test_blockmap(cbm, cs, mf.machine, self_test, seed));
            for (const auto& t : st) ok = ok && t.at("ok").get<bool>();
            report["self_test"] = st;
        }
    } else {
        throw CLI::ValidationError("--to must be one of restart|loop|gshift|blockmap");
    }
    report["out"] = out_path;
    report["ok"] = ok;
    emit(report, opt);
    return ok ? kOk : kInvalid;
}

// ------------------------------------------------------------------- orbit

struct ParsedQuery {
    bool periodic = true;
    int k = 0;
    std::string window;
};

ParsedQuery parse_query(const std::string& text) {
    ParsedQuery q;
    if (text == "periodic") return q;
    if (text.rfind("reach:", 0) == 0) {
        auto rest = text.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos) {
            throw CLI::ValidationError("--query reach needs the form reach:<k>:<window>");
        }
        q.periodic = false;
        q.k = std::stoi(rest.substr(0, colon));
        q.window = rest.substr(colon + 1);
        return q;
    }
    throw CLI::ValidationError("--query must be 'periodic' or 'reach:<k>:<window>'");
}

int cmd_orbit(const std::string& path, const std::string& input, const std::string& query,
              std::uint64_t budget, const Options& opt) {
    std::string content = read_file(path);
    json report = base_report("cantordyn.report.orbit/1", opt);
    report["artifact"] = path;
    report["input"] = input;
    report["budget"] = budget;
    ParsedQuery q = parse_query(query);
    report["query"] = query;

    OrbitVerdict v;

    switch (detect_kind(content)) {
        case ArtifactKind::Machine: {
            MachineFile mf = parse_machine(content);
            const TuringMachine& m = mf.machine;
            report["kind"] = "machine";
            report["digest"] = machine_digest(m);
            Tape t = parse_tape(m, input);
            if (!q.periodic) {
                ReachQuery rq = make_reach_query(m, q.k, q.window);
                ReachResult rr = check_reachability(m, t, rq, budget);
                report["verdict"] =
                    rr.reached
                        ? json{{"kind", "reached"}, {"steps", rr.steps}}
                        : json{{"kind", "not-yet"}, {"budget", rr.budget}};
                emit(report, opt);
                return rr.reached ? kOk : kUnresolved;
            }
            v = classify_orbit(m, Configuration{m.initial(), t}, budget);
            auto names = m.symbol_names();
            report["verdict"] = verdict_json(v, &names);
            break;
        }
        case ArtifactKind::GShift: {
            GShiftFile gf = parse_gshift(content);
            report["kind"] = "gshift";
            report["digest"] = gshift_digest(gf.gs, gf.enc);
            if (!q.periodic) {
                throw ValidationError("reach queries apply to machine artifacts");
            }
            if (gf.enc) {
                const ConfigEncoding& enc = *gf.enc;
                Tape t = parse_sequence_over(
                    std::vector<std::string>(enc.alphabet_names().begin(),
                                             enc.alphabet_names().begin() + enc.n_plain()),
                    enc.blank(), input);
                Sequence s = enc.encode(Configuration{enc.initial(), t});
                CompiledShift cs{gf.gs, enc};
                v = classify_orbit(cs, s, budget);
                std::vector<std::string> plain(enc.alphabet_names().begin(),
                                               enc.alphabet_names().begin() + enc.n_plain());
                report["verdict"] = verdict_json(v, &plain);
            } else {
                Sequence s = parse_sequence_over(gf.gs.alphabet, gf.gs.default_symbol, input);
                v = classify_orbit(gf.gs, s, budget);
                report["verdict"] = verdict_json(v, nullptr);
            }
            break;
        }
        case ArtifactKind::BlockMap: {
            BlockMapFile bf = parse_blockmap(content);
            report["kind"] = "blockmap";
            report["digest"] = blockmap_digest(bf.bm, bf.bijective_flag,
                                               bf.compiled ? &*bf.compiled : nullptr);
            if (!q.periodic) {
                throw ValidationError("reach queries apply to machine artifacts");
            }
            if (bf.compiled) {
                const CompiledBlockMap& cbm = *bf.compiled;
                std::vector<std::string> plain(
                    cbm.enc.alphabet_names().begin(),
                    cbm.enc.alphabet_names().begin() + cbm.enc.n_plain());
                Tape t = parse_sequence_over(plain, cbm.enc.blank(), input);
                CantorPoint p = cbm.encode_config(Configuration{cbm.enc.initial(), t});
                report["point"] = point_to_string(p);
                v = classify_orbit(cbm, p, budget);
                report["verdict"] = verdict_json(v, &plain);
            } else {
                CantorPoint p = parse_point(input);
                v = classify_orbit(bf.bm, p, budget);
                report["verdict"] = verdict_json(v, nullptr);
            }
            break;
        }
    }
    emit(report, opt);
    return v.kind == OrbitVerdict::Kind::Unresolved ? kUnresolved : kOk;
}

// ------------------------------------------------------------------ census

int cmd_census(const std::string& path, const std::string& inputs_path, std::uint64_t budget,
               int jobs, const Options& opt) {
    MachineFile mf = load_machine(path);
    const TuringMachine& m = mf.machine;

    std::vector<Tape> inputs;
    std::ifstream in(inputs_path);
    if (!in) throw ParseError("cannot open inputs file '" + inputs_path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        inputs.push_back(parse_tape(m, line == "-" ? "" : line));
    }

    CensusReport rep = orbit_census(m, inputs, budget, jobs);
    json report = base_report("cantordyn.report.census/1", opt);
    report["machine"] = {{"path", path}, {"digest", machine_digest(m)}};
    report["budget"] = budget;
    json rows = json::array();
    auto names = m.symbol_names();
    for (const auto& r : rep.rows) {
        rows.push_back({{"input", r.input},
                        {"digest", r.digest},
                        {"verdict", verdict_json(r.verdict, &names)}});
    }
    report["rows"] = rows;
    report["aggregate"] = {{"periodic", rep.periodic},
                           {"halted", rep.halted},
                           {"unresolved", rep.unresolved},
                           {"fraction_periodic", rep.fraction_periodic},
                           {"note", "budget-relative lower bounds, not decisions"}};
    report["summary"] = std::to_string(rep.periodic) + " periodic, " +
                        std::to_string(rep.halted) + " halted, " +
                        std::to_string(rep.unresolved) + " unresolved of " +
                        std::to_string(rep.rows.size()) + " inputs at budget " +
                        std::to_string(budget);
    emit(report, opt);
    return kOk;
}

// ------------------------------------------------------------------ budget

int cmd_budget(double nu, double m, double tau_step, int samples, const Options& opt) {
    NSParams p{nu, m};
    if (samples > 0) {
        // CSV curve: samples of tau over [0, 5/nu], strictly increasing.
        std::ostringstream csv;
        csv << "t,tau\n";
        double t_max = 5.0 / nu;
        for (int i = 0; i < samples; ++i) {
            double t = samples == 1 ? 0.0 : t_max * i / (samples - 1);
            csv << t << ',' << tau(t, p) << '\n';
        }
        std::cout << csv.str();
        if (!opt.out_path.empty()) {
            std::ofstream out(opt.out_path, std::ios::binary);
            if (!out) throw ParseError("cannot write '" + opt.out_path + "'");
            out << csv.str();
        }
        return kOk;
    }
    json report = base_report("cantordyn.report.budget/1", opt);
    report["nu"] = nu;
    report["m"] = m;
    report["tau_per_step"] = tau_step;
    report["tau_sup"] = tau_sup(p);
    report["budget"] = step_budget(p, tau_step);
    report["amplitude_t0"] = amplitude(0.0, p);
    report["pressure_coefficient_t0"] = pressure_coefficient(0.0, p);
    emit(report, opt);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turing machines, generalized shifts, square-Cantor block maps, "
                 "orbit analysis and decay step budgets"};
    app.set_version_flag("--version", std::string("cantordyn ") + kVersion);
    app.require_subcommand(1);

    Options opt;
    int exit_code = kOk;

    // validate
    auto* validate = app.add_subcommand("validate", "Parse and invariant-check an artifact");
    std::string v_path;
    bool v_reversible = false;
    int v_radius = 4;
    validate->add_option("file", v_path, "artifact file")->required();
    validate->add_flag("--require-reversible", v_reversible,
                       "fail unless the machine's global transition is injective");
    validate->add_option("--radius", v_radius, "exhaustive search window radius");
    validate->add_flag("--no-timestamp", opt.no_timestamp);
    validate->add_option("-o,--out", opt.out_path, "also write the report here");
    validate->callback(
        [&] { exit_code = cmd_validate(v_path, v_reversible, v_radius, opt); });

    // compile
    auto* compile = app.add_subcommand("compile", "Translate a machine down the chain");
    std::string c_path, c_to, c_out;
    int c_selftest = 25;
    std::uint64_t c_seed = 0;
    compile->add_option("machine", c_path, "machine file")->required();
    compile->add_option("--to", c_to, "restart|loop|gshift|blockmap")->required();
    compile->add_option("-o,--out", c_out, "output artifact path")->required();
    compile->add_option("--self-test", c_selftest, "trials for the compile self-test");
    compile->add_option("--seed", c_seed, "seed for randomized self-tests");
    compile->add_flag("--no-timestamp", opt.no_timestamp);
    std::string c_report;
    compile->add_option("--report", c_report, "also write the report here");
    compile->callback([&] {
        Options o = opt;
        o.out_path = c_report;
        exit_code = cmd_compile(c_path, c_to, c_out, c_selftest, c_seed, o);
    });

    // orbit
    auto* orbit = app.add_subcommand("orbit", "Classify the trajectory through an input");
    std::string o_path, o_input, o_query = "periodic";
    std::uint64_t o_budget = 100000;
    orbit->add_option("artifact", o_path, "machine, gshift or blockmap artifact")->required();
    orbit->add_option("--input", o_input,
                      "input tape (machine-level; raw artifacts take raw content)")
        ->required();
    orbit->add_option("--budget", o_budget, "step budget");
    orbit->add_option("--query", o_query, "periodic | reach:<k>:<window>");
    orbit->add_flag("--no-timestamp", opt.no_timestamp);
    orbit->add_option("-o,--out", opt.out_path, "also write the report here");
    orbit->callback([&] { exit_code = cmd_orbit(o_path, o_input, o_query, o_budget, opt); });

    // census
    auto* census = app.add_subcommand("census", "Orbit census over an input family");
    std::string n_path, n_inputs;
    std::uint64_t n_budget = 100000;
    int n_jobs = 1;
    census->add_option("machine", n_path, "machine artifact")->required();
    census->add_option("--inputs", n_inputs, "file with one tape string per line")->required();
    census->add_option("--budget", n_budget, "step budget per input");
    census->add_option("--jobs", n_jobs, "worker threads");
    census->add_flag("--no-timestamp", opt.no_timestamp);
    census->add_option("-o,--out", opt.out_path, "also write the report here");
    census->callback(
        [&] { exit_code = cmd_census(n_path, n_inputs, n_budget, n_jobs, opt); });

    // budget
    auto* budget = app.add_subcommand("budget", "Decay step budget and tau curve");
    double b_nu = 1.0, b_m = 1.0, b_tau = 1.0;
    int b_samples = 0;
    budget->add_option("--nu", b_nu, "viscosity")->required();
    budget->add_option("--m", b_m, "initial amplitude")->required();
    budget->add_option("--tau-step", b_tau, "reparametrized time per simulated step");
    budget->add_option("--samples", b_samples, "emit a CSV tau curve with this many rows");
    budget->add_flag("--no-timestamp", opt.no_timestamp);
    budget->add_option("-o,--out", opt.out_path, "also write the output here");
    budget->callback(
        [&] { exit_code = cmd_budget(b_nu, b_m, b_tau, b_samples, opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
    return exit_code;
}
