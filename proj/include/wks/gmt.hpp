#pragma once

#include <istream>
#include <string>
#include <vector>

namespace wks {

struct GeneSet {
    std::string name;
    std::string description;
    std::vector<std::string> members;
};

/// Reads GMT: `name<TAB>description<TAB>gene<TAB>gene...` per line. Blank
/// lines are skipped; a line without a description column is malformed.
std::vector<GeneSet> load_gmt(std::istream& in);
std::vector<GeneSet> load_gmt_file(const std::string& path);

} // namespace wks
