#include "fielde/config.hpp"

#include <fstream>
#include <istream>

#include "fielde/errors.hpp"

namespace fielde {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

ConfigPairs parse_flat_config(std::istream& in, const std::string& origin) {
    ConfigPairs pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty())
            throw ParseError(origin + ":" + std::to_string(line_no) + ": empty key");
        const std::string value = unquote(trim(stripped.substr(eq + 1)));

        // Last occurrence wins.
        bool replaced = false;
        for (auto& [k, v] : pairs) {
            if (k == key) {
                v = value;
                replaced = true;
                break;
            }
        }
        if (!replaced) pairs.emplace_back(key, value);
    }
    return pairs;
}

ConfigPairs load_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    return parse_flat_config(in, path);
}

}  // namespace fielde
