#include "cantordyn/machine_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cantordyn/digest.hpp"
#include "cantordyn/errors.hpp"

namespace cantordyn {

namespace {

using nlohmann::json;

const char* move_name(int move) {
    switch (move) {
        case 1: return "L";
        case 0: return "S";
        case -1: return "R";
    }
    throw Error("internal: bad move value");
}

int parse_move(const std::string& tok, const std::string& ctx) {
    if (tok == "L") return 1;
    if (tok == "S") return 0;
    if (tok == "R") return -1;
    throw ParseError(ctx + ": move must be L, S or R, got '" + tok + "'");
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

std::string def_to_text(const MachineDef& def) {
    std::ostringstream out;
    out << "states";
    for (const auto& s : def.states) out << ' ' << s;
    out << "\nalphabet";
    for (const auto& s : def.alphabet) out << ' ' << s;
    out << "\nblank " << def.blank;
    out << "\ninitial " << def.initial;
    out << "\nhalting " << def.halting;
    if (def.looping) out << "\nlooping";
    out << '\n';
    for (const auto& r : def.rules) {
        out << "trans " << r.from << ' ' << r.read << " -> " << r.to << ' ' << r.write
            << ' ' << move_name(r.move) << '\n';
    }
    return out.str();
}

MachineFile parse_machine_json(const std::string& content) {
    json j;
    try {
        j = json::parse(content);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON machine file: ") + e.what());
    }
    MachineDef def;
    try {
        def.states = j.at("states").get<std::vector<std::string>>();
        def.alphabet = j.at("alphabet").get<std::vector<std::string>>();
        def.blank = j.at("blank").get<std::string>();
        def.initial = j.at("initial").get<std::string>();
        def.halting = j.at("halting").get<std::string>();
        def.looping = j.value("looping", false);
        for (const auto& t : j.at("transitions")) {
            MachineDef::Rule r;
            r.from = t.at("from").get<std::string>();
            r.read = t.at("read").get<std::string>();
            r.to = t.at("to").get<std::string>();
            r.write = t.at("write").get<std::string>();
            r.move = parse_move(t.at("move").get<std::string>(), "transition");
            def.rules.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("machine JSON missing field: ") + e.what());
    }
    MachineFile mf{TuringMachine::build(def), {}};
    if (j.contains("provenance")) {
        for (const auto& p : j.at("provenance")) {
            mf.provenance.push_back(
                {p.at("transform").get<std::string>(), p.at("source").get<std::string>()});
        }
    }
    if (j.contains("digest")) {
        std::string want = j.at("digest").get<std::string>();
        std::string got = machine_digest(mf.machine);
        if (want != got) {
            throw ValidationError("machine digest mismatch: file says " + want +
                                  ", content is " + got);
        }
    }
    return mf;
}

MachineFile parse_machine_text(const std::string& content) {
    MachineDef def;
    Provenance prov;
    std::string embedded_digest;
    bool have_states = false, have_alpha = false, have_blank = false, have_initial = false,
         have_halting = false;

    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string ctx = "line " + std::to_string(lineno);
        if (!line.empty() && line[0] == '#') {
            auto toks = split_tokens(line.substr(1));
            if (toks.size() >= 2 && toks[0] == "digest:") embedded_digest = toks[1];
            if (toks.size() >= 3 && toks[0] == "provenance:") prov.push_back({toks[1], toks[2]});
            continue;
        }
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "states") {
            def.states.assign(toks.begin() + 1, toks.end());
            have_states = true;
        } else if (kw == "alphabet") {
            def.alphabet.assign(toks.begin() + 1, toks.end());
            have_alpha = true;
        } else if (kw == "blank" && toks.size() == 2) {
            def.blank = toks[1];
            have_blank = true;
        } else if (kw == "initial" && toks.size() == 2) {
            def.initial = toks[1];
            have_initial = true;
        } else if (kw == "halting" && toks.size() == 2) {
            def.halting = toks[1];
            have_halting = true;
        } else if (kw == "looping" && toks.size() == 1) {
            def.looping = true;
        } else if (kw == "trans") {
            if (toks.size() != 7 || toks[3] != "->") {
                throw ParseError(ctx + ": expected 'trans <state> <read> -> <state> <write> <move>'");
            }
            def.rules.push_back({toks[1], toks[2], toks[4], toks[5], parse_move(toks[6], ctx)});
        } else {
            throw ParseError(ctx + ": unknown directive '" + kw + "'");
        }
    }
    if (!have_states || !have_alpha || !have_blank || !have_initial || !have_halting) {
        throw ParseError("machine file is missing one of the required sections "
                         "(states, alphabet, blank, initial, halting)");
    }
    MachineFile mf{TuringMachine::build(def), std::move(prov)};
    if (!embedded_digest.empty()) {
        std::string got = machine_digest(mf.machine);
        if (embedded_digest != got) {
            throw ValidationError("machine digest mismatch: file says " + embedded_digest +
                                  ", content is " + got);
        }
    }
    return mf;
}

}  // namespace

std::string machine_to_text(const TuringMachine& m) { return def_to_text(m.to_def()); }

std::string machine_to_artifact_text(const TuringMachine& m, const Provenance& prov) {
    std::ostringstream out;
    out << "# cantordyn machine v1\n";
    out << "# digest: " << machine_digest(m) << '\n';
    for (const auto& p : prov) out << "# provenance: " << p.transform << ' ' << p.source_digest << '\n';
    out << machine_to_text(m);
    return out.str();
}

std::string machine_to_json(const TuringMachine& m, const Provenance& prov) {
    MachineDef def = m.to_def();
    json j;
    j["schema"] = "cantordyn.machine/1";
    j["states"] = def.states;
    j["alphabet"] = def.alphabet;
    j["blank"] = def.blank;
    j["initial"] = def.initial;
    j["halting"] = def.halting;
    j["looping"] = def.looping;
    json rules = json::array();
    for (const auto& r : def.rules) {
        rules.push_back({{"from", r.from},
                         {"read", r.read},
                         {"to", r.to},
                         {"write", r.write},
                         {"move", move_name(r.move)}});
    }
    j["transitions"] = rules;
    json jp = json::array();
    for (const auto& p : prov) jp.push_back({{"transform", p.transform}, {"source", p.source_digest}});
    j["provenance"] = jp;
    j["digest"] = machine_digest(m);
    return j.dump(2) + "\n";
}

MachineFile parse_machine(const std::string& content) {
    for (char c : content) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_machine_json(content);
        break;
    }
    return parse_machine_text(content);
}

MachineFile load_machine(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open machine file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_machine(buf.str());
}

void save_machine(const std::string& path, const TuringMachine& m, const Provenance& prov) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write machine file '" + path + "'");
    out << machine_to_artifact_text(m, prov);
}

std::string machine_digest(const TuringMachine& m) { return sha256_digest(machine_to_text(m)); }

Sequence parse_sequence_over(const std::vector<std::string>& symbol_names, SymbolId def,
                             const std::string& text) {
    auto bar = text.find('|');
    if (bar != std::string::npos && text.find('|', bar + 1) != std::string::npos) {
        throw ParseError("tape string may contain at most one '|'");
    }
    std::string left = bar == std::string::npos ? "" : text.substr(0, bar);
    std::string right = bar == std::string::npos ? text : text.substr(bar + 1);

    bool token_mode = false;
    for (const auto& n : symbol_names) {
        if (n.size() > 1) token_mode = true;
    }
    auto symbols_of = [&symbol_names, token_mode](const std::string& part) {
        std::vector<SymbolId> ids;
        auto push_name = [&](const std::string& name) {
            for (std::size_t i = 0; i < symbol_names.size(); ++i) {
                if (symbol_names[i] == name) {
                    ids.push_back(static_cast<SymbolId>(i));
                    return;
                }
            }
            throw AlphabetMismatchError("tape symbol '" + name +
                                        "' is not in the alphabet");
        };
        if (token_mode || part.find(',') != std::string::npos) {
            std::string tok;
            std::istringstream in(part);
            while (std::getline(in, tok, ',')) {
                if (!tok.empty()) push_name(tok);
            }
        } else {
            for (char c : part) push_name(std::string(1, c));
        }
        return ids;
    };

    Sequence t(def);
    auto lids = symbols_of(left);
    for (std::size_t i = 0; i < lids.size(); ++i) {
        t.set(-static_cast<std::int64_t>(lids.size() - i), lids[i]);
    }
    auto rids = symbols_of(right);
    for (std::size_t i = 0; i < rids.size(); ++i) {
        t.set(static_cast<std::int64_t>(i), rids[i]);
    }
    return t;
}

std::string sequence_to_string(const std::vector<std::string>& symbol_names,
                               const Sequence& s) {
    bool multichar = false;
    for (const auto& n : symbol_names) {
        if (n.size() > 1) multichar = true;
    }
    std::string sep = multichar ? "," : "";
    std::string out;
    if (s.stored_min() < 0) {
        for (std::int64_t p = s.stored_min(); p < 0; ++p) {
            if (p != s.stored_min() && !sep.empty()) out += sep;
            out += symbol_names.at(s.at(p));
        }
        out += '|';
    }
    for (std::int64_t p = 0; p < s.stored_max(); ++p) {
        if (p != 0 && !sep.empty()) out += sep;
        out += symbol_names.at(s.at(p));
    }
    return out;
}

Tape parse_tape(const TuringMachine& m, const std::string& text) {
    return parse_sequence_over(m.symbol_names(), m.blank(), text);
}

std::string tape_to_string(const TuringMachine& m, const Tape& t) {
    return sequence_to_string(m.symbol_names(), t);
}

}  // namespace cantordyn
