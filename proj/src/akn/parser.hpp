#pragma once

#include "akn/document.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ilpg::akn {

std::vector<std::pair<std::string, AttachmentKind>> default_attachment_kinds();

struct ParserOptions {
    std::string in_force_marker = "Entrata in vigore del provvedimento";
    // heading keyword (lowercase, accent-folded) -> kind; first match wins
    std::vector<std::pair<std::string, AttachmentKind>> attachment_kinds =
        default_attachment_kinds();
};

// Parses one act. Articles/attachments are extracted in document order;
// every citation/modification/inline-ref tag becomes a RawReference, with
// refs nested inside modification spans suppressed in favor of the
// textual modification they restate. Missing preamble/conclusions tags
// fall back to a split at the first/last article and are flagged.
AknDocument parse_document(std::string_view xml_bytes, const ParserOptions& opts = {});

// Target grammar for reference hrefs: "<law-iri>[#<fragment>]" where the
// fragment is an article eId ("art_3"), an attachment fragment ("Table 1"),
// or a paragraph inside an article ("art_3__para_2").
struct TargetExpr {
    std::string law_iri;
    std::string fragment;          // normalized: paragraph part stripped
    std::optional<std::string> paragraph;
    bool is_article = false;
    bool is_attachment = false;
    std::string article_number;    // when is_article
};

TargetExpr parse_target_expr(std::string_view expr);

} // namespace ilpg::akn
