#pragma once

#include "akn/parser.hpp"
#include "context/context.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace ilpg {

enum class DanglingPolicy { Drop, Stub };

// Pipeline and CLI configuration; every list may be overridden via the
// JSON config file or command-line flags.
struct Config {
    std::string db_path;
    std::string input_dir;
    ctx::ContextPaths context;

    std::string in_force_marker = "Entrata in vigore del provvedimento";
    std::vector<std::string> constitutional_types = {"costituzione", "legge costituzionale"};
    std::vector<std::string> simplification_ids = {"2008/112", "2010/66", "2010/212"};
    std::vector<std::string> decree_types = {"decreto-legge"};
    int conversion_window_days = 60;
    std::string conversion_title_keyword = "conversione";

    DanglingPolicy dangling_policy = DanglingPolicy::Drop;
    // unresolved targets on this list become stub Law nodes (pre-republican
    // codes that stay heavily cited)
    std::vector<std::string> whitelist = {"/akn/it/act/1942/262", "/akn/it/act/1930/1398"};

    std::vector<std::pair<std::string, akn::AttachmentKind>> attachment_kinds =
        akn::default_attachment_kinds();

    akn::ParserOptions parser_options() const;

    bool is_constitutional_type(std::string_view doc_type) const;
    bool is_decree_type(std::string_view doc_type) const;
    bool is_simplification(std::string_view akn_id) const;
    bool is_whitelisted(std::string_view law_iri) const;

    void apply_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    static Config load_file(const std::string& path);
};

} // namespace ilpg
