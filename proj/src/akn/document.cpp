#include "akn/document.hpp"

#include "util/errors.hpp"
#include "util/text.hpp"

#include <cctype>
#include <set>

namespace ilpg::akn {

namespace {

const char* kAttachmentKindNames[] = {"Table", "Annex", "Schema", "Text", "Other"};
const char* kModTypeNames[] = {"substitution", "insertion", "split",
                               "join",         "renumbering", "repeal"};
const char* kQualityNames[] = {"MissingPreamble", "MissingConclusions", "UnparsableDate",
                               "DanglingFragment", "HeuristicSplitApplied"};

} // namespace

const char* to_string(AttachmentKind kind) {
    return kAttachmentKindNames[static_cast<int>(kind)];
}

std::optional<AttachmentKind> attachment_kind_from_string(std::string_view name) {
    for (int i = 0; i < 5; ++i)
        if (name == kAttachmentKindNames[i]) return static_cast<AttachmentKind>(i);
    return std::nullopt;
}

std::string attachment_fragment(AttachmentKind kind, int ordinal) {
    return std::string(to_string(kind)) + " " + std::to_string(ordinal);
}

const char* to_string(ModType type) { return kModTypeNames[static_cast<int>(type)]; }

std::optional<ModType> mod_type_from_string(std::string_view name) {
    for (int i = 0; i < 6; ++i)
        if (name == kModTypeNames[i]) return static_cast<ModType>(i);
    return std::nullopt;
}

const char* to_string(QualityCode code) { return kQualityNames[static_cast<int>(code)]; }

bool has_latin_suffix(std::string_view number) {
    auto dash = number.find('-');
    return dash != std::string_view::npos && dash + 1 < number.size();
}

bool valid_article_number(std::string_view number) {
    if (number.empty()) return false;
    size_t i = 0;
    while (i < number.size() && std::isdigit(static_cast<unsigned char>(number[i]))) ++i;
    if (i == 0) return false;
    bool positive = false;
    for (size_t k = 0; k < i; ++k) positive = positive || number[k] != '0';
    if (!positive) return false;
    if (i == number.size()) return true;
    if (number[i] != '-' || i + 1 == number.size()) return false;
    for (size_t k = i + 1; k < number.size(); ++k)
        if (!std::islower(static_cast<unsigned char>(number[k]))) return false;
    return true;
}

bool AknDocument::has_flag(QualityCode code) const {
    for (const auto& f : quality_flags)
        if (f.code == code) return true;
    return false;
}

std::vector<std::pair<ElementKind, std::string>> enumerate_element_ids(const AknDocument& doc) {
    std::vector<std::pair<ElementKind, std::string>> out;
    std::set<std::string> seen;
    auto emit = [&](ElementKind kind, std::string id) {
        if (!seen.insert(id).second)
            throw Error(ErrorCode::DuplicateElementId, "duplicate element id: " + id);
        out.emplace_back(kind, std::move(id));
    };
    for (const ArticleUnit& a : doc.articles)
        emit(ElementKind::Article, doc.akn_id + "#art_" + a.number);
    for (const AttachmentUnit& att : doc.attachments)
        emit(ElementKind::Attachment, doc.akn_id + "#" + att.fragment());
    return out;
}

std::optional<Date> extract_in_force_date(const AknDocument& doc, std::string_view marker,
                                          InForceNote* status) {
    for (const auto& [kind, text] : doc.authorial_notes) {
        (void)kind;
        std::string body = trim(text);
        if (!starts_with(body, marker)) continue;
        std::string rest = trim(body.substr(marker.size()));
        if (starts_with(rest, ":")) rest = trim(rest.substr(1));
        // date may be followed by trailing prose
        if (rest.size() > 10) rest = trim(rest.substr(0, 10));
        auto date = Date::parse_flexible(rest);
        if (status) *status = date ? InForceNote::Parsed : InForceNote::Unparsable;
        return date;
    }
    if (status) *status = InForceNote::NoNote;
    return std::nullopt;
}

} // namespace ilpg::akn
