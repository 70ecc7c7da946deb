#pragma once

#include <optional>
#include <string>

#include "cantordyn/gshift.hpp"
#include "cantordyn/machine_io.hpp"

namespace cantordyn {

struct GShiftFile {
    GeneralizedShift gs;
    std::optional<ConfigEncoding> enc;  // present for compiled artifacts
    Provenance provenance;
};

// Canonical text: alphabet, default, optional encoding markers, D_F, D_G,
// then one f/g line per table row in lexicographic domain order.
std::string gshift_to_text(const GeneralizedShift& gs,
                           const std::optional<ConfigEncoding>& enc = std::nullopt);
std::string gshift_to_artifact_text(const GeneralizedShift& gs,
                                    const std::optional<ConfigEncoding>& enc,
                                    const Provenance& prov);
std::string gshift_digest(const GeneralizedShift& gs,
                          const std::optional<ConfigEncoding>& enc = std::nullopt);

GShiftFile parse_gshift(const std::string& content);
GShiftFile load_gshift(const std::string& path);
void save_gshift(const std::string& path, const GeneralizedShift& gs,
                 const std::optional<ConfigEncoding>& enc, const Provenance& prov);

}  // namespace cantordyn
