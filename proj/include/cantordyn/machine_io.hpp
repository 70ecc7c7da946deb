#pragma once

#include <string>
#include <vector>

#include "cantordyn/machine.hpp"

namespace cantordyn {

// One applied transform in an artifact's history, oldest first.
struct ProvenanceEntry {
    std::string transform;
    std::string source_digest;
};

using Provenance = std::vector<ProvenanceEntry>;

struct MachineFile {
    TuringMachine machine;
    Provenance provenance;
};

// Canonical text form: fixed section order, no comments.  Digests are
// computed over this form.
std::string machine_to_text(const TuringMachine& m);

// Artifact form: canonical text plus header comments carrying the digest and
// provenance chain.
std::string machine_to_artifact_text(const TuringMachine& m, const Provenance& prov);

std::string machine_to_json(const TuringMachine& m, const Provenance& prov);

// Accepts both the text format and its JSON mirror (sniffed on the first
// non-space byte).  Re-verifies an embedded digest when present.
MachineFile parse_machine(const std::string& content);

MachineFile load_machine(const std::string& path);
void save_machine(const std::string& path, const TuringMachine& m, const Provenance& prov);

std::string machine_digest(const TuringMachine& m);

// Tape strings: symbols of the right half (positions 0,1,...) and optionally
// a left half before '|' (read outward-to-inward, so "ab|cd" puts a at -2,
// b at -1, c at 0, d at 1).  Symbols are single characters, or comma-separated
// tokens when any name is longer.  An empty string is the all-blank tape.
Sequence parse_sequence_over(const std::vector<std::string>& symbol_names, SymbolId def,
                             const std::string& text);
std::string sequence_to_string(const std::vector<std::string>& symbol_names,
                               const Sequence& s);

Tape parse_tape(const TuringMachine& m, const std::string& text);
std::string tape_to_string(const TuringMachine& m, const Tape& t);

}  // namespace cantordyn
