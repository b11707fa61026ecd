#include "akn/parser.hpp"

#include "akn/xml_dom.hpp"
#include "util/errors.hpp"
#include "util/text.hpp"

#include <cctype>
#include <map>

namespace ilpg::akn {

namespace {

const std::vector<std::string_view> kArticleTags = {"article", "section", "rule"};
const std::vector<std::string_view> kSuppressingSpans = {"mod", "activeMod", "quotedStructure",
                                                         "quotedText"};

bool is_article_tag(std::string_view name) {
    for (auto t : kArticleTags)
        if (name == t) return true;
    return false;
}

// First "<digits>[-<latin>]" token in a num tag like "Art. 3-bis".
std::string extract_number(std::string_view text) {
    size_t i = 0;
    while (i < text.size() && !std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) return {};
    std::string out;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        out.push_back(text[i++]);
    if (i + 1 < text.size() && text[i] == '-' &&
        std::isalpha(static_cast<unsigned char>(text[i + 1]))) {
        out.push_back('-');
        ++i;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i++]))));
    }
    return out;
}

std::string number_from_eid(std::string_view eid) {
    auto us = eid.rfind('_');
    if (us == std::string_view::npos) return {};
    std::string cand(eid.substr(us + 1));
    return valid_article_number(cand) ? cand : std::string{};
}

// Document-order basic units (article/section/rule), skipping attachment
// subtrees; nested subdivisions stay part of their outermost unit.
std::vector<const XmlElement*> collect_articles(const XmlElement* scope) {
    std::vector<const XmlElement*> ordered;
    struct Walker {
        std::vector<const XmlElement*>& out;
        void walk(const XmlElement* el) {
            for (const auto& c : el->children) {
                if (const auto* p = std::get_if<std::unique_ptr<XmlElement>>(&c)) {
                    const XmlElement* kid = p->get();
                    if (kid->name == "attachments") continue;
                    if (is_article_tag(kid->name)) {
                        out.push_back(kid);
                        continue;
                    }
                    walk(kid);
                }
            }
        }
    } walker{ordered};
    walker.walk(scope);
    return ordered;
}

AttachmentKind infer_kind(const std::string& heading,
                          const std::vector<std::pair<std::string, AttachmentKind>>& table) {
    std::string folded = fold_accents_lower(heading);
    for (const auto& [keyword, kind] : table) {
        if (folded.find(keyword) != std::string::npos) return kind;
    }
    return AttachmentKind::Other;
}

} // namespace

std::vector<std::pair<std::string, AttachmentKind>> default_attachment_kinds() {
    return {{"tabella", AttachmentKind::Table},
            {"allegato", AttachmentKind::Annex},
            {"schema", AttachmentKind::Schema},
            {"testo", AttachmentKind::Text}};
}

TargetExpr parse_target_expr(std::string_view expr) {
    TargetExpr out;
    auto hash = expr.find('#');
    if (hash == std::string_view::npos) {
        out.law_iri = std::string(expr);
        return out;
    }
    out.law_iri = std::string(expr.substr(0, hash));
    std::string fragment(expr.substr(hash + 1));
    auto para = fragment.find("__para_");
    if (para != std::string::npos) {
        out.paragraph = fragment.substr(para + 2); // keep "para_N"
        fragment = fragment.substr(0, para);
    }
    out.fragment = fragment;
    if (starts_with(fragment, "art_")) {
        out.is_article = true;
        out.article_number = fragment.substr(4);
    } else if (!fragment.empty()) {
        // attachment fragments look like "<Kind> <ordinal>"
        auto space = fragment.find(' ');
        if (space != std::string::npos &&
            attachment_kind_from_string(fragment.substr(0, space)))
            out.is_attachment = true;
    }
    return out;
}

AknDocument parse_document(std::string_view xml_bytes, const ParserOptions& opts) {
    XmlDocument xml = parse_xml(xml_bytes);
    const XmlElement* root = xml.root.get();
    const XmlElement* act = root->name == "act" ? root : root->find_first("act");
    if (!act) act = root;

    AknDocument doc;

    const XmlElement* frbr_this = act->find_first("FRBRthis");
    const std::string* work_id = frbr_this ? frbr_this->attr("value") : nullptr;
    if (!work_id || work_id->empty())
        throw Error(ErrorCode::MissingIdentifier, "document carries no work identifier");
    doc.akn_id = *work_id;

    if (const XmlElement* frbr_date = act->find_first("FRBRdate")) {
        const std::string* value = frbr_date->attr("date");
        if (value) doc.publication_date = Date::parse_flexible(trim(*value));
        if (!doc.publication_date)
            doc.quality_flags.push_back(
                {QualityCode::UnparsableDate, "publication date: " + (value ? *value : "")});
    } else {
        doc.quality_flags.push_back({QualityCode::UnparsableDate, "publication date missing"});
    }

    if (const XmlElement* dt = act->find_first("docType")) doc.doc_type = collapse_ws(dt->text());
    if (doc.doc_type.empty())
        if (const std::string* name = act->attr("name")) doc.doc_type = *name;
    if (const XmlElement* title = act->find_first("docTitle"))
        doc.title = collapse_ws(title->text());

    for (const XmlElement* note : act->find_all("authorialNote")) {
        std::string kind;
        if (const std::string* marker = note->attr("marker")) kind = *marker;
        else if (const std::string* place = note->attr("placement")) kind = *place;
        else if (const std::string* eid = note->attr("eId")) kind = *eid;
        doc.authorial_notes.emplace_back(kind, collapse_ws(note->text()));
    }

    // --- structure ---------------------------------------------------------
    const XmlElement* meta = act->child("meta");
    const XmlElement* body = act->child("body");
    if (!body) {
        const XmlElement* found = act->find_first("body");
        if (found && !found->has_ancestor("attachments")) body = found;
    }
    const XmlElement* attachments_el = act->child("attachments");
    if (!attachments_el) {
        const XmlElement* found = act->find_first("attachments");
        if (found) attachments_el = found;
    }

    std::vector<const XmlElement*> article_elems =
        body ? collect_articles(body) : std::vector<const XmlElement*>{};

    for (size_t i = 0; i < article_elems.size(); ++i) {
        const XmlElement* el = article_elems[i];
        ArticleUnit unit;
        if (const XmlElement* num = el->child("num")) unit.number = extract_number(num->text());
        if (const std::string* eid = el->attr("eId")) unit.eid = *eid;
        if (unit.number.empty() && !unit.eid.empty()) unit.number = number_from_eid(unit.eid);
        if (unit.number.empty()) unit.number = std::to_string(i + 1);
        if (unit.eid.empty()) unit.eid = "art_" + unit.number;
        if (const XmlElement* heading = el->child("heading")) {
            std::string h = collapse_ws(heading->text());
            if (!h.empty()) unit.epigraph = h;
        }
        unit.text = collapse_ws(el->text());
        doc.articles.push_back(std::move(unit));
    }

    std::map<AttachmentKind, int> kind_counters;
    std::vector<std::pair<const XmlElement*, size_t>> attachment_elems; // element, index
    if (attachments_el) {
        for (const auto& c : attachments_el->children) {
            if (const auto* p = std::get_if<std::unique_ptr<XmlElement>>(&c)) {
                if ((*p)->name != "attachment" && (*p)->name != "component") continue;
                const XmlElement* el = p->get();
                AttachmentUnit unit;
                std::string heading;
                if (const XmlElement* t = el->find_first("docTitle")) heading = collapse_ws(t->text());
                if (heading.empty())
                    if (const XmlElement* h = el->find_first("heading"))
                        heading = collapse_ws(h->text());
                if (!heading.empty()) unit.heading = heading;
                unit.kind = infer_kind(heading, opts.attachment_kinds);
                unit.ordinal = ++kind_counters[unit.kind];
                unit.is_tabular = unit.kind == AttachmentKind::Table;
                unit.text = collapse_ws(el->text());
                doc.attachments.push_back(std::move(unit));
                attachment_elems.emplace_back(el, doc.attachments.size() - 1);
            }
        }
    }

    // --- preamble / conclusions --------------------------------------------
    const XmlElement* preamble = act->child("preamble");
    if (!preamble) {
        const XmlElement* found = act->find_first("preamble");
        if (found && !found->has_ancestor("attachments")) preamble = found;
    }
    const XmlElement* conclusions = act->child("conclusions");
    if (!conclusions) {
        const XmlElement* found = act->find_first("conclusions");
        if (found && !found->has_ancestor("attachments")) conclusions = found;
    }

    if (preamble) doc.preamble_text = collapse_ws(preamble->text());
    if (conclusions) doc.conclusions_text = collapse_ws(conclusions->text());

    if (!preamble || !conclusions) {
        // split the running text at the first/last article boundary
        std::string before, after;
        bool article_seen = false;
        struct Splitter {
            std::string& before;
            std::string& after;
            bool& article_seen;
            void walk(const XmlElement* el) {
                for (const auto& c : el->children) {
                    if (const auto* s = std::get_if<std::string>(&c)) {
                        (article_seen ? after : before) += *s;
                        continue;
                    }
                    const XmlElement* kid =
                        std::get<std::unique_ptr<XmlElement>>(c).get();
                    if (kid->name == "meta" || kid->name == "attachments" ||
                        kid->name == "preface" || kid->name == "preamble" ||
                        kid->name == "conclusions")
                        continue;
                    if (is_article_tag(kid->name)) {
                        article_seen = true;
                        after.clear();
                        continue;
                    }
                    walk(kid);
                }
            }
        } splitter{before, after, article_seen};
        splitter.walk(act);
        if (!preamble) {
            doc.preamble_text = collapse_ws(before);
            doc.quality_flags.push_back({QualityCode::MissingPreamble, "no preamble tag"});
            doc.quality_flags.push_back(
                {QualityCode::HeuristicSplitApplied, "preamble from text before first article"});
        }
        if (!conclusions) {
            doc.conclusions_text = collapse_ws(after);
            doc.quality_flags.push_back({QualityCode::MissingConclusions, "no conclusions tag"});
            doc.quality_flags.push_back(
                {QualityCode::HeuristicSplitApplied, "conclusions from text after last article"});
        }
    }

    // --- references ---------------------------------------------------------
    if (preamble) {
        for (const XmlElement* ref : preamble->find_all("ref")) {
            const std::string* href = ref->attr("href");
            if (!href || href->empty()) continue;
            RawReference r;
            r.kind = ReferenceKind::PreambleCitation;
            r.target_expr = *href;
            r.paragraph = parse_target_expr(*href).paragraph;
            doc.references.push_back(std::move(r));
        }
    }

    const XmlElement* mod_scope = meta ? meta : act;
    for (const XmlElement* mod : mod_scope->find_all("textualMod")) {
        const std::string* type = mod->attr("type");
        auto mod_type = type ? mod_type_from_string(*type) : std::nullopt;
        if (!mod_type)
            throw Error(ErrorCode::MalformedXml,
                        "textualMod with unknown type: " + (type ? *type : "<missing>"));
        const XmlElement* source = mod->child("source");
        const std::string* source_href = source ? source->attr("href") : nullptr;
        if (!source_href || !starts_with(*source_href, "#"))
            throw Error(ErrorCode::MalformedXml, "textualMod without local source href");
        int destinations = 0;
        for (const auto& c : mod->children) {
            const auto* p = std::get_if<std::unique_ptr<XmlElement>>(&c);
            if (!p || (*p)->name != "destination") continue;
            const std::string* dest_href = (*p)->attr("href");
            if (!dest_href || dest_href->empty())
                throw Error(ErrorCode::MalformedXml, "textualMod destination without href");
            ++destinations;
            RawReference r;
            r.kind = ReferenceKind::TextualMod;
            r.mod_type = mod_type;
            r.source_eid = source_href->substr(1);
            r.target_expr = *dest_href;
            r.paragraph = parse_target_expr(*dest_href).paragraph;
            doc.references.push_back(std::move(r));
        }
        if (destinations == 0)
            throw Error(ErrorCode::MalformedXml, "textualMod without destination");
        if (destinations > 1) ++doc.multi_destination_mods;
    }

    auto collect_inline = [&](const XmlElement* scope, const std::string& source_eid) {
        for (const XmlElement* ref : scope->find_all("ref")) {
            if (ref->enclosing(kSuppressingSpans)) continue; // restates a textualMod
            const std::string* href = ref->attr("href");
            if (!href || href->empty()) continue;
            RawReference r;
            r.kind = ReferenceKind::InlineRef;
            r.target_expr = *href;
            r.source_eid = source_eid;
            r.paragraph = parse_target_expr(*href).paragraph;
            doc.references.push_back(std::move(r));
        }
    };
    for (size_t i = 0; i < article_elems.size(); ++i)
        collect_inline(article_elems[i], doc.articles[i].eid);
    for (const auto& [el, idx] : attachment_elems)
        collect_inline(el, doc.attachments[idx].fragment());

    // --- in-force date -------------------------------------------------------
    InForceNote note_status = InForceNote::NoNote;
    doc.in_force_date = extract_in_force_date(doc, opts.in_force_marker, &note_status);
    if (note_status == InForceNote::Unparsable)
        doc.quality_flags.push_back({QualityCode::UnparsableDate, "in-force note"});

    return doc;
}

} // namespace ilpg::akn
