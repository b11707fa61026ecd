#include "util/text.hpp"

#include <cctype>

namespace ilpg {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

} // namespace

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (unsigned char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

std::string fold_accents_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        unsigned char c = s[i];
        if (c < 0x80) {
            out.push_back(static_cast<char>(std::tolower(c)));
            continue;
        }
        // two-byte UTF-8 sequences in the Latin-1 supplement
        if ((c == 0xC3) && i + 1 < s.size()) {
            unsigned char d = s[++i];
            unsigned cp = 0xC0 + (d & 0x3F);
            char base = 0;
            if ((cp >= 0xC0 && cp <= 0xC5) || (cp >= 0xE0 && cp <= 0xE5)) base = 'a';
            else if (cp == 0xC7 || cp == 0xE7) base = 'c';
            else if ((cp >= 0xC8 && cp <= 0xCB) || (cp >= 0xE8 && cp <= 0xEB)) base = 'e';
            else if ((cp >= 0xCC && cp <= 0xCF) || (cp >= 0xEC && cp <= 0xEF)) base = 'i';
            else if (cp == 0xD1 || cp == 0xF1) base = 'n';
            else if ((cp >= 0xD2 && cp <= 0xD6) || (cp >= 0xF2 && cp <= 0xF6)) base = 'o';
            else if ((cp >= 0xD9 && cp <= 0xDC) || (cp >= 0xF9 && cp <= 0xFC)) base = 'u';
            else if (cp == 0xDD || cp == 0xFD || cp == 0xFF) base = 'y';
            if (base) {
                out.push_back(base);
                continue;
            }
            out.push_back(static_cast<char>(c));
            out.push_back(static_cast<char>(d));
            continue;
        }
        out.push_back(static_cast<char>(c));
    }
    return out;
}

bool contains_word_ci(std::string_view text, std::string_view word) {
    if (word.empty()) return false;
    std::string lowered = to_lower(text);
    size_t pos = 0;
    while ((pos = lowered.find(word, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !is_word_char(lowered[pos - 1]);
        size_t end = pos + word.size();
        bool right_ok = end >= lowered.size() || !is_word_char(lowered[end]);
        if (left_ok && right_ok) return true;
        pos += 1;
    }
    return false;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t b = 0;
    while (true) {
        size_t e = s.find(sep, b);
        if (e == std::string_view::npos) {
            out.emplace_back(s.substr(b));
            break;
        }
        out.emplace_back(s.substr(b, e - b));
        b = e + 1;
    }
    return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
    return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

} // namespace ilpg
