#include "akn/xml_dom.hpp"

#include "util/errors.hpp"

#include <expat.h>

namespace ilpg::akn {

namespace {

std::string strip_prefix(const char* qname) {
    std::string_view s(qname);
    auto colon = s.rfind(':');
    if (colon != std::string_view::npos) s = s.substr(colon + 1);
    return std::string(s);
}

struct BuildState {
    XmlDocument doc;
    XmlElement* current = nullptr;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** atts) {
    auto* st = static_cast<BuildState*>(user);
    auto elem = std::make_unique<XmlElement>();
    elem->name = strip_prefix(name);
    for (int i = 0; atts[i]; i += 2) elem->attrs[strip_prefix(atts[i])] = atts[i + 1];
    elem->parent = st->current;
    XmlElement* raw = elem.get();
    if (st->current) {
        st->current->children.emplace_back(std::move(elem));
    } else if (!st->doc.root) {
        st->doc.root = std::move(elem);
    }
    st->current = raw;
}

void XMLCALL on_end(void* user, const XML_Char*) {
    auto* st = static_cast<BuildState*>(user);
    if (st->current) st->current = st->current->parent;
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
    auto* st = static_cast<BuildState*>(user);
    if (!st->current || len <= 0) return;
    auto& kids = st->current->children;
    if (!kids.empty() && std::holds_alternative<std::string>(kids.back()))
        std::get<std::string>(kids.back()).append(s, len);
    else
        kids.emplace_back(std::string(s, len));
}

} // namespace

const std::string* XmlElement::attr(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? nullptr : &it->second;
}

std::string XmlElement::text() const {
    std::string out;
    for (const auto& child : children) {
        if (const auto* s = std::get_if<std::string>(&child))
            out += *s;
        else
            out += std::get<std::unique_ptr<XmlElement>>(child)->text();
    }
    return out;
}

std::vector<const XmlElement*> XmlElement::find_all(std::string_view wanted) const {
    std::vector<const XmlElement*> out;
    for (const auto& child : children) {
        if (const auto* p = std::get_if<std::unique_ptr<XmlElement>>(&child)) {
            const XmlElement* el = p->get();
            if (el->name == wanted) out.push_back(el);
            auto sub = el->find_all(wanted);
            out.insert(out.end(), sub.begin(), sub.end());
        }
    }
    return out;
}

const XmlElement* XmlElement::find_first(std::string_view wanted) const {
    for (const auto& child : children) {
        if (const auto* p = std::get_if<std::unique_ptr<XmlElement>>(&child)) {
            const XmlElement* el = p->get();
            if (el->name == wanted) return el;
            if (const XmlElement* found = el->find_first(wanted)) return found;
        }
    }
    return nullptr;
}

const XmlElement* XmlElement::child(std::string_view wanted) const {
    for (const auto& c : children) {
        if (const auto* p = std::get_if<std::unique_ptr<XmlElement>>(&c))
            if ((*p)->name == wanted) return p->get();
    }
    return nullptr;
}

bool XmlElement::has_ancestor(std::string_view wanted) const {
    for (const XmlElement* p = parent; p; p = p->parent)
        if (p->name == wanted) return true;
    return false;
}

const XmlElement* XmlElement::enclosing(const std::vector<std::string_view>& names) const {
    for (const XmlElement* p = this; p; p = p->parent)
        for (std::string_view n : names)
            if (p->name == n) return p;
    return nullptr;
}

XmlDocument parse_xml(std::string_view bytes) {
    XML_Parser parser = XML_ParserCreate(nullptr);
    if (!parser) throw Error(ErrorCode::IoError, "cannot create XML parser");
    BuildState state;
    XML_SetUserData(parser, &state);
    XML_SetElementHandler(parser, on_start, on_end);
    XML_SetCharacterDataHandler(parser, on_text);

    XML_Status status =
        XML_Parse(parser, bytes.data(), static_cast<int>(bytes.size()), /*isFinal=*/1);
    if (status != XML_STATUS_OK) {
        std::string msg = XML_ErrorString(XML_GetErrorCode(parser));
        auto line = XML_GetCurrentLineNumber(parser);
        XML_ParserFree(parser);
        throw Error(ErrorCode::MalformedXml,
                    "malformed XML at line " + std::to_string(line) + ": " + msg);
    }
    XML_ParserFree(parser);
    if (!state.doc.root) throw Error(ErrorCode::MalformedXml, "empty XML document");
    return std::move(state.doc);
}

} // namespace ilpg::akn
