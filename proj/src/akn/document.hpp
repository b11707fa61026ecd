#pragma once

#include "util/dates.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ilpg::akn {

enum class AttachmentKind { Table, Annex, Schema, Text, Other };
const char* to_string(AttachmentKind kind);
std::optional<AttachmentKind> attachment_kind_from_string(std::string_view name);

// Fragment identifier of an attachment within its law, e.g. "Table 1".
std::string attachment_fragment(AttachmentKind kind, int ordinal);

enum class ReferenceKind { PreambleCitation, TextualMod, InlineRef };

enum class ModType { Substitution, Insertion, Split, Join, Renumbering, Repeal };
const char* to_string(ModType type);
std::optional<ModType> mod_type_from_string(std::string_view name);

enum class QualityCode {
    MissingPreamble,
    MissingConclusions,
    UnparsableDate,
    DanglingFragment,
    HeuristicSplitApplied,
};
const char* to_string(QualityCode code);

struct QualityIssue {
    QualityCode code;
    std::string detail;
};

struct ArticleUnit {
    std::string number;  // digits with optional Latin suffix, e.g. "3-bis"
    std::string eid;
    std::optional<std::string> epigraph;
    std::string text;
};

// True for numbers like "4-bis" introduced into an existing sequence.
bool has_latin_suffix(std::string_view article_number);
bool valid_article_number(std::string_view number);

struct AttachmentUnit {
    int ordinal = 1; // per-kind counter, 1-based
    AttachmentKind kind = AttachmentKind::Other;
    std::optional<std::string> heading;
    bool is_tabular = false;
    std::string text;

    std::string fragment() const { return attachment_fragment(kind, ordinal); }
};

struct RawReference {
    ReferenceKind kind = ReferenceKind::InlineRef;
    // href/identifier, possibly with a fragment (article, attachment,
    // paragraph)
    std::string target_expr;
    std::optional<ModType> mod_type;           // present iff kind == TextualMod
    std::optional<std::string> source_eid;     // absent for preamble citations
    std::optional<std::string> paragraph;
};

struct AknDocument {
    std::string akn_id;
    std::string doc_type;
    std::string title;
    std::optional<Date> publication_date;
    std::optional<Date> in_force_date;
    std::vector<std::pair<std::string, std::string>> authorial_notes; // (kind, text)
    std::string preamble_text;
    std::string conclusions_text;
    std::vector<ArticleUnit> articles;
    std::vector<AttachmentUnit> attachments;
    std::vector<RawReference> references;
    std::vector<QualityIssue> quality_flags;
    // modification blocks fanning out to several destinations (one
    // reference is emitted per destination)
    int multi_destination_mods = 0;

    bool has_flag(QualityCode code) const;
};

enum class ElementKind { Article, Attachment };

// Global identifiers: articles as "<akn_id>#art_<number>", attachments as
// "<akn_id>#<Kind> <ordinal>". Throws DuplicateElementId on collision.
std::vector<std::pair<ElementKind, std::string>> enumerate_element_ids(const AknDocument& doc);

enum class InForceNote { NoNote, Parsed, Unparsable };

// Date stated in the authorial note whose text starts with the in-force
// marker phrase; absent when no such note or its payload is unparsable.
// `status` (optional) distinguishes the two absent cases.
std::optional<Date> extract_in_force_date(const AknDocument& doc,
                                          std::string_view marker =
                                              "Entrata in vigore del provvedimento",
                                          InForceNote* status = nullptr);

} // namespace ilpg::akn
