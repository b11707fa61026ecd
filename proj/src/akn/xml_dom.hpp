#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ilpg::akn {

// Minimal DOM over expat: element names are namespace-prefix stripped,
// text nodes keep document order relative to child elements.
struct XmlElement {
    std::string name;
    std::map<std::string, std::string> attrs;
    XmlElement* parent = nullptr;
    std::vector<std::variant<std::unique_ptr<XmlElement>, std::string>> children;

    const std::string* attr(const std::string& key) const;

    // Recursive text content, raw (no whitespace normalization).
    std::string text() const;

    // All descendant elements with the given name, document order.
    std::vector<const XmlElement*> find_all(std::string_view name) const;
    const XmlElement* find_first(std::string_view name) const;

    // Direct child element by name.
    const XmlElement* child(std::string_view name) const;

    bool has_ancestor(std::string_view name) const;
    // Closest ancestor (or self) whose name is in `names`.
    const XmlElement* enclosing(const std::vector<std::string_view>& names) const;
};

struct XmlDocument {
    std::unique_ptr<XmlElement> root;
};

// Throws Error(MalformedXml) with the expat diagnostic on bad input.
XmlDocument parse_xml(std::string_view bytes);

} // namespace ilpg::akn
