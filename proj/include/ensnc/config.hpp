#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace ensnc {

/// Flat `key = value` text: one entry per line, '#' starts a comment, blank
/// lines ignored, surrounding whitespace trimmed. Duplicate keys and lines
/// without '=' throw std::invalid_argument naming the line.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);

double parse_double(const std::string& key, const std::string& value);
long parse_long(const std::string& key, const std::string& value);
bool parse_bool(const std::string& key, const std::string& value);

}  // namespace ensnc
