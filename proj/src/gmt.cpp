#include "wks/gmt.hpp"

#include "wks/errors.hpp"

#include <fstream>
#include <string_view>

namespace wks {

std::vector<GeneSet> load_gmt(std::istream& in) {
    std::vector<GeneSet> sets;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
        if (s.find_first_not_of(" \t") == std::string_view::npos) continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto tab = s.find('\t', start);
            fields.push_back(s.substr(start, tab == std::string_view::npos ? s.npos : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (fields.size() < 2) throw MalformedLine(lineno, "GMT line needs name and description");
        if (fields[0].empty()) throw MalformedLine(lineno, "empty gene set name");

        GeneSet set{std::string(fields[0]), std::string(fields[1]), {}};
        for (std::size_t i = 2; i < fields.size(); ++i)
            if (!fields[i].empty()) set.members.emplace_back(fields[i]);
        sets.push_back(std::move(set));
    }
    return sets;
}

std::vector<GeneSet> load_gmt_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open GMT file " + path);
    try {
        return load_gmt(in);
    } catch (const MalformedLine& e) {
        throw MalformedLine(e.line(), e.reason(), path);
    }
}

} // namespace wks
