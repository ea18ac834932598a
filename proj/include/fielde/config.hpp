#pragma once
// Flat key=value configuration files: one `key=value` pair per line, '#'
// starts a comment (full-line or trailing), blank lines are skipped, keys and
// values are whitespace-trimmed, values may be single- or double-quoted.
// Duplicate keys keep the last value.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fielde {

using ConfigPairs = std::vector<std::pair<std::string, std::string>>;

// Throws ParseError (tagged origin:line) on a line without '=' or with an
// empty key.
ConfigPairs parse_flat_config(std::istream& in, const std::string& origin);
ConfigPairs load_flat_config(const std::string& path);

}  // namespace fielde
