#include "cantordyn/blockmap_io.hpp"

#include <fstream>
#include <sstream>

#include "cantordyn/digest.hpp"
#include "cantordyn/errors.hpp"

namespace cantordyn {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

std::string bits_string(std::uint32_t bits, int len) {
    std::string s(static_cast<std::size_t>(len), '0');
    for (int k = 0; k < len; ++k) {
        if ((bits >> k) & 1u) s[static_cast<std::size_t>(k)] = '1';
    }
    return s;
}

std::uint32_t parse_bits(const std::string& s, int len, const std::string& ctx) {
    if (static_cast<int>(s.size()) != len) {
        throw ParseError(ctx + ": bit pattern must have exactly " + std::to_string(len) +
                         " characters");
    }
    std::uint32_t bits = 0;
    for (int k = 0; k < len; ++k) {
        if (s[k] == '1') {
            bits |= 1u << k;
        } else if (s[k] != '0') {
            throw ParseError(ctx + ": bit pattern characters must be 0 or 1");
        }
    }
    return bits;
}

}  // namespace

std::string blockmap_to_text(const BlockMap& bm, bool bijective,
                             const CompiledBlockMap* compiled) {
    std::ostringstream out;
    out << "window " << bm.window_start << ' ' << bm.window_len << '\n';
    out << "coverage " << (bm.full_coverage ? "full" : "admissible") << '\n';
    out << "bijective " << (bijective ? 1 : 0) << '\n';
    if (compiled) {
        out << "codewidth " << compiled->code.width << '\n';
        out << "alphabet";
        for (const auto& a : compiled->code.alphabet) out << ' ' << a;
        out << '\n';
        out << "default " << compiled->code.alphabet[compiled->code.default_symbol] << '\n';
        out << "initial " << compiled->enc.state_names()[compiled->enc.initial()] << '\n';
        out << "halting " << compiled->enc.state_names()[compiled->enc.halting()] << '\n';
        if (compiled->enc.looping()) out << "looping\n";
    }
    for (const auto& c : bm.components) {
        out << "component " << bits_string(c.source, bm.window_len) << ' ' << c.shift << ' '
            << bits_string(c.rewrite, bm.window_len) << '\n';
    }
    return out.str();
}

std::string blockmap_to_artifact_text(const BlockMap& bm, bool bijective,
                                      const CompiledBlockMap* compiled,
                                      const Provenance& prov) {
    std::ostringstream out;
    out << "# cantordyn blockmap v1\n";
    out << "# digest: " << blockmap_digest(bm, bijective, compiled) << '\n';
    for (const auto& p : prov) {
        out << "# provenance: " << p.transform << ' ' << p.source_digest << '\n';
    }
    out << blockmap_to_text(bm, bijective, compiled);
    return out.str();
}

std::string blockmap_digest(const BlockMap& bm, bool bijective,
                            const CompiledBlockMap* compiled) {
    return sha256_digest(blockmap_to_text(bm, bijective, compiled));
}

BlockMapFile parse_blockmap(const std::string& content) {
    BlockMapFile file;
    BlockMap& bm = file.bm;
    std::string embedded_digest, default_name, initial_name, halting_name;
    std::vector<std::string> alphabet;
    int codewidth = 0;
    bool looping = false;
    bool have_window = false;

    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string ctx = "line " + std::to_string(lineno);
        if (!line.empty() && line[0] == '#') {
            auto toks = split_tokens(line.substr(1));
            if (toks.size() >= 2 && toks[0] == "digest:") embedded_digest = toks[1];
            if (toks.size() >= 3 && toks[0] == "provenance:") {
                file.provenance.push_back({toks[1], toks[2]});
            }
            continue;
        }
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "window" && toks.size() == 3) {
            bm.window_start = std::stoll(toks[1]);
            bm.window_len = std::stoi(toks[2]);
            have_window = true;
        } else if (kw == "coverage" && toks.size() == 2) {
            if (toks[1] == "full") {
                bm.full_coverage = true;
            } else if (toks[1] == "admissible") {
                bm.full_coverage = false;
            } else {
                throw ParseError(ctx + ": coverage must be full or admissible");
            }
        } else if (kw == "bijective" && toks.size() == 2) {
            file.bijective_flag = toks[1] == "1";
        } else if (kw == "codewidth" && toks.size() == 2) {
            codewidth = std::stoi(toks[1]);
        } else if (kw == "alphabet") {
            alphabet.assign(toks.begin() + 1, toks.end());
        } else if (kw == "default" && toks.size() == 2) {
            default_name = toks[1];
        } else if (kw == "initial" && toks.size() == 2) {
            initial_name = toks[1];
        } else if (kw == "halting" && toks.size() == 2) {
            halting_name = toks[1];
        } else if (kw == "looping" && toks.size() == 1) {
            looping = true;
        } else if (kw == "component" && toks.size() == 4) {
            if (!have_window) throw ParseError(ctx + ": component before window declaration");
            BlockMap::Component c;
            c.source = parse_bits(toks[1], bm.window_len, ctx);
            c.shift = std::stoi(toks[2]);
            c.rewrite = parse_bits(toks[3], bm.window_len, ctx);
            bm.components.push_back(c);
        } else {
            throw ParseError(ctx + ": unknown directive '" + kw + "'");
        }
    }
    if (!have_window) throw ParseError("blockmap file has no window declaration");
    bm.build_lookup();
    bm.validate();

    if (!alphabet.empty() || codewidth > 0 || !initial_name.empty()) {
        if (alphabet.empty() || codewidth <= 0 || initial_name.empty() ||
            halting_name.empty() || default_name.empty()) {
            throw ParseError("compiled blockmap file needs codewidth, alphabet, default, "
                             "initial and halting together");
        }
        CompiledBlockMap cbm;
        cbm.bm = bm;
        cbm.enc = ConfigEncoding::from_names(alphabet, default_name, initial_name,
                                             halting_name, looping);
        SymbolId def = 0;
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            if (alphabet[i] == default_name) def = static_cast<SymbolId>(i);
        }
        cbm.code = BlockCode{codewidth, alphabet, def};
        file.compiled = std::move(cbm);
    }

    if (!embedded_digest.empty()) {
        std::string got = blockmap_digest(bm, file.bijective_flag,
                                          file.compiled ? &*file.compiled : nullptr);
        if (embedded_digest != got) {
            throw ValidationError("blockmap digest mismatch: file says " + embedded_digest +
                                  ", content is " + got);
        }
    }
    return file;
}

BlockMapFile load_blockmap(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open blockmap file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_blockmap(buf.str());
}

void save_blockmap(const std::string& path, const BlockMap& bm, bool bijective,
                   const CompiledBlockMap* compiled, const Provenance& prov) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write blockmap file '" + path + "'");
    out << blockmap_to_artifact_text(bm, bijective, compiled, prov);
}

std::string point_to_string(const CantorPoint& p) {
    std::string x = p.x_string();
    std::string y = p.y_string();
    return "x " + (x.empty() ? "-" : x) + " y " + (y.empty() ? "-" : y);
}

CantorPoint parse_point(const std::string& text) {
    auto toks = split_tokens(text);
    if (toks.size() != 4 || toks[0] != "x" || toks[2] != "y") {
        throw ParseError("point must look like 'x <digits|-> y <digits|->'");
    }
    auto digits = [](const std::string& s) {
        std::vector<int> d;
        if (s == "-") return d;
        for (char c : s) {
            if (c != '0' && c != '2') throw ParseError("point digits must be 0 or 2");
            d.push_back(c - '0');
        }
        return d;
    };
    return CantorPoint::from_digits(digits(toks[1]), digits(toks[3]));
}

}  // namespace cantordyn
