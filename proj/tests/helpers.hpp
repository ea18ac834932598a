#pragma once
// Shared test utilities: scratch files under the working directory and a
// small XML well-formedness scan for the SVG exports.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::path("scratch") / name;
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("test setup: cannot write " + path.string());
    return path.string();
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("test setup: cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

// Matched open/close tags, balanced attribute quotes; declarations, comments,
// and self-closing tags tolerated. Enough to catch truncated or mismatched
// markup without a real XML parser.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    bool seen_element = false;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            const auto end = text.find("-->", i + 4);
            if (end == std::string::npos) return false;
            i = end + 3;
            continue;
        }
        if (i + 1 < n && text[i + 1] == '?') {
            const auto end = text.find("?>", i + 2);
            if (end == std::string::npos) return false;
            i = end + 2;
            continue;
        }
        std::size_t j = i + 1;
        char quote = 0;
        while (j < n && (quote != 0 || text[j] != '>')) {
            if (quote == 0 && (text[j] == '"' || text[j] == '\'')) {
                quote = text[j];
            } else if (quote != 0 && text[j] == quote) {
                quote = 0;
            }
            ++j;
        }
        if (j >= n || quote != 0) return false;
        std::string tag = text.substr(i + 1, j - i - 1);
        if (tag.empty()) return false;
        if (tag[0] == '/') {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else {
            const bool self_closing = tag.back() == '/';
            if (self_closing) tag.pop_back();
            const std::size_t sp = tag.find_first_of(" \t\r\n");
            const std::string name = sp == std::string::npos ? tag : tag.substr(0, sp);
            if (name.empty()) return false;
            seen_element = true;
            if (!self_closing) stack.push_back(name);
        }
        i = j + 1;
    }
    return stack.empty() && seen_element;
}

}  // namespace testutil
