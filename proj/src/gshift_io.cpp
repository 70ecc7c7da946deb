#include "cantordyn/gshift_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

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

void write_domain(std::ostream& out, const GeneralizedShift& gs, std::size_t idx, int len) {
    const int na = gs.n_symbols();
    std::vector<int> syms(len);
    for (int k = len - 1; k >= 0; --k) {
        syms[k] = static_cast<int>(idx % na);
        idx /= na;
    }
    for (int k = 0; k < len; ++k) out << ' ' << gs.alphabet[syms[k]];
}

}  // namespace

std::string gshift_to_text(const GeneralizedShift& gs,
                           const std::optional<ConfigEncoding>& enc) {
    gs.validate();
    std::ostringstream out;
    out << "alphabet";
    for (const auto& a : gs.alphabet) out << ' ' << a;
    out << "\ndefault " << gs.alphabet[gs.default_symbol] << '\n';
    if (enc) {
        out << "initial " << enc->state_names()[enc->initial()] << '\n';
        out << "halting " << enc->state_names()[enc->halting()] << '\n';
        if (enc->looping()) out << "looping\n";
    }
    out << "df " << gs.df_start << ' ' << gs.df_len << '\n';
    out << "dg " << gs.dg_start << ' ' << gs.dg_len << '\n';
    for (std::size_t i = 0; i < gs.f_table.size(); ++i) {
        out << 'f';
        write_domain(out, gs, i, gs.df_len);
        out << " -> " << gs.f_table[i] << '\n';
    }
    const std::size_t grows = gs.g_rows();
    for (std::size_t i = 0; i < grows; ++i) {
        out << 'g';
        write_domain(out, gs, i, gs.dg_len);
        out << " ->";
        for (int k = 0; k < gs.dg_len; ++k) {
            out << ' ' << gs.alphabet[gs.g_table[i * gs.dg_len + k]];
        }
        out << '\n';
    }
    return out.str();
}

std::string gshift_to_artifact_text(const GeneralizedShift& gs,
                                    const std::optional<ConfigEncoding>& enc,
                                    const Provenance& prov) {
    std::ostringstream out;
    out << "# cantordyn gshift v1\n";
    out << "# digest: " << gshift_digest(gs, enc) << '\n';
    for (const auto& p : prov) {
        out << "# provenance: " << p.transform << ' ' << p.source_digest << '\n';
    }
    out << gshift_to_text(gs, enc);
    return out.str();
}

std::string gshift_digest(const GeneralizedShift& gs,
                          const std::optional<ConfigEncoding>& enc) {
    return sha256_digest(gshift_to_text(gs, enc));
}

GShiftFile parse_gshift(const std::string& content) {
    GeneralizedShift gs;
    Provenance prov;
    std::string embedded_digest, initial_name, halting_name;
    bool looping = false;
    bool have_alpha = false, have_default = false, have_df = false, have_dg = false;
    std::string default_name;
    std::unordered_map<std::string, SymbolId> sym_idx;
    std::vector<std::pair<std::vector<std::string>, std::string>> f_lines;
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> g_lines;

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
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "alphabet") {
            gs.alphabet.assign(toks.begin() + 1, toks.end());
            for (std::size_t i = 0; i < gs.alphabet.size(); ++i) {
                if (!sym_idx.emplace(gs.alphabet[i], static_cast<SymbolId>(i)).second) {
                    throw ParseError(ctx + ": symbol '" + gs.alphabet[i] + "' declared twice");
                }
            }
            have_alpha = true;
        } else if (kw == "default" && toks.size() == 2) {
            default_name = toks[1];
            have_default = true;
        } else if (kw == "initial" && toks.size() == 2) {
            initial_name = toks[1];
        } else if (kw == "halting" && toks.size() == 2) {
            halting_name = toks[1];
        } else if (kw == "looping" && toks.size() == 1) {
            looping = true;
        } else if (kw == "df" && toks.size() == 3) {
            gs.df_start = std::stoll(toks[1]);
            gs.df_len = std::stoi(toks[2]);
            have_df = true;
        } else if (kw == "dg" && toks.size() == 3) {
            gs.dg_start = std::stoll(toks[1]);
            gs.dg_len = std::stoi(toks[2]);
            have_dg = true;
        } else if (kw == "f") {
            auto arrow = std::find(toks.begin(), toks.end(), "->");
            if (arrow == toks.end() || arrow + 2 != toks.end()) {
                throw ParseError(ctx + ": expected 'f <window...> -> <shift>'");
            }
            f_lines.push_back({{toks.begin() + 1, arrow}, *(arrow + 1)});
        } else if (kw == "g") {
            auto arrow = std::find(toks.begin(), toks.end(), "->");
            if (arrow == toks.end()) throw ParseError(ctx + ": expected 'g <window...> -> <window...>'");
            g_lines.push_back({{toks.begin() + 1, arrow},
                               {arrow + 1, toks.end()}});
        } else {
            throw ParseError(ctx + ": unknown directive '" + kw + "'");
        }
    }
    if (!have_alpha || !have_default || !have_df || !have_dg) {
        throw ParseError("gshift file is missing one of alphabet/default/df/dg");
    }

    auto need_sym = [&sym_idx](const std::string& n) -> SymbolId {
        auto it = sym_idx.find(n);
        if (it == sym_idx.end()) throw ParseError("unknown shift symbol '" + n + "'");
        return it->second;
    };
    gs.default_symbol = need_sym(default_name);

    const int na = gs.n_symbols();
    auto domain_index = [&](const std::vector<std::string>& names, int len) -> std::size_t {
        if (static_cast<int>(names.size()) != len) {
            throw ParseError("table row has wrong window width");
        }
        std::size_t idx = 0;
        for (const auto& n : names) idx = idx * na + static_cast<std::size_t>(need_sym(n));
        return idx;
    };

    gs.f_table.assign(gs.f_rows(), 0);
    std::vector<bool> f_seen(gs.f_table.size(), false);
    for (const auto& [dom, val] : f_lines) {
        std::size_t i = domain_index(dom, gs.df_len);
        if (f_seen[i]) throw ParseError("duplicate f row");
        f_seen[i] = true;
        gs.f_table[i] = std::stoll(val);
    }
    const std::size_t grows = gs.g_rows();
    gs.g_table.assign(grows * gs.dg_len, 0);
    std::vector<bool> g_seen(grows, false);
    for (const auto& [dom, img] : g_lines) {
        std::size_t i = domain_index(dom, gs.dg_len);
        if (g_seen[i]) throw ParseError("duplicate g row");
        g_seen[i] = true;
        if (static_cast<int>(img.size()) != gs.dg_len) {
            throw ParseError("g row image has wrong window width");
        }
        for (int k = 0; k < gs.dg_len; ++k) {
            gs.g_table[i * gs.dg_len + k] = need_sym(img[k]);
        }
    }
    for (std::size_t i = 0; i < f_seen.size(); ++i) {
        if (!f_seen[i]) throw ValidationError("F table is not total: missing row");
    }
    for (std::size_t i = 0; i < g_seen.size(); ++i) {
        if (!g_seen[i]) throw ValidationError("G table is not total: missing row");
    }
    gs.validate();

    GShiftFile file{std::move(gs), std::nullopt, std::move(prov)};
    if (!initial_name.empty() || !halting_name.empty()) {
        if (initial_name.empty() || halting_name.empty()) {
            throw ParseError("compiled shift file needs both initial and halting markers");
        }
        file.enc = ConfigEncoding::from_names(file.gs.alphabet,
                                              file.gs.alphabet[file.gs.default_symbol],
                                              initial_name, halting_name, looping);
    }
    if (!embedded_digest.empty()) {
        std::string got = gshift_digest(file.gs, file.enc);
        if (embedded_digest != got) {
            throw ValidationError("gshift digest mismatch: file says " + embedded_digest +
                                  ", content is " + got);
        }
    }
    return file;
}

GShiftFile load_gshift(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open gshift file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_gshift(buf.str());
}

void save_gshift(const std::string& path, const GeneralizedShift& gs,
                 const std::optional<ConfigEncoding>& enc, const Provenance& prov) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write gshift file '" + path + "'");
    out << gshift_to_artifact_text(gs, enc, prov);
}

}  // namespace cantordyn
