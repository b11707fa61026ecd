#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ilpg {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Collapses runs of whitespace (incl. newlines) to single spaces and trims.
std::string collapse_ws(std::string_view s);

// Lowercases and strips Latin-1 accents from UTF-8 input (e.g. "Sanità" -> "sanita").
std::string fold_accents_lower(std::string_view s);

// Whole-word containment, case-insensitive; word boundaries are
// non-alphanumeric bytes. `word` must already be lowercase.
bool contains_word_ci(std::string_view text, std::string_view word);

std::vector<std::string> split(std::string_view s, char sep);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
bool contains_ci(std::string_view haystack, std::string_view needle);

std::string xml_escape(std::string_view s);

} // namespace ilpg
