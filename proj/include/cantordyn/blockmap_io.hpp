#pragma once

#include <optional>
#include <string>

#include "cantordyn/cantor.hpp"
#include "cantordyn/machine_io.hpp"

namespace cantordyn {

struct BlockMapFile {
    BlockMap bm;
    bool bijective_flag = false;
    std::optional<CompiledBlockMap> compiled;  // encoding sections present
    Provenance provenance;
};

std::string blockmap_to_text(const BlockMap& bm, bool bijective,
                             const CompiledBlockMap* compiled = nullptr);
std::string blockmap_to_artifact_text(const BlockMap& bm, bool bijective,
                                      const CompiledBlockMap* compiled,
                                      const Provenance& prov);
std::string blockmap_digest(const BlockMap& bm, bool bijective,
                            const CompiledBlockMap* compiled = nullptr);

BlockMapFile parse_blockmap(const std::string& content);
BlockMapFile load_blockmap(const std::string& path);
void save_blockmap(const std::string& path, const BlockMap& bm, bool bijective,
                   const CompiledBlockMap* compiled, const Provenance& prov);

// Point serialization: two digit strings over {0,2}, '-' when empty.
std::string point_to_string(const CantorPoint& p);
CantorPoint parse_point(const std::string& text);

}  // namespace cantordyn
