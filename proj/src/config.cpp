#include "config.hpp"

#include "util/errors.hpp"
#include "util/text.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace ilpg {

using nlohmann::json;

akn::ParserOptions Config::parser_options() const {
    akn::ParserOptions opts;
    opts.in_force_marker = in_force_marker;
    opts.attachment_kinds = attachment_kinds;
    return opts;
}

bool Config::is_constitutional_type(std::string_view doc_type) const {
    std::string lowered = to_lower(trim(doc_type));
    for (const auto& t : constitutional_types)
        if (lowered == to_lower(t)) return true;
    return false;
}

bool Config::is_decree_type(std::string_view doc_type) const {
    std::string lowered = to_lower(trim(doc_type));
    for (const auto& t : decree_types)
        if (lowered == to_lower(t)) return true;
    return false;
}

bool Config::is_simplification(std::string_view akn_id) const {
    for (const auto& entry : simplification_ids) {
        if (entry.empty()) continue;
        if (entry.front() == '/' ? akn_id == entry : ends_with(akn_id, "/" + entry)) return true;
    }
    return false;
}

bool Config::is_whitelisted(std::string_view law_iri) const {
    for (const auto& entry : whitelist)
        if (law_iri == entry) return true;
    return false;
}

void Config::apply_json(const json& j) {
    auto strings = [&](const char* key, std::vector<std::string>& into) {
        if (j.contains(key)) into = j.at(key).get<std::vector<std::string>>();
    };
    if (j.contains("db_path")) db_path = j.at("db_path").get<std::string>();
    if (j.contains("input_dir")) input_dir = j.at("input_dir").get<std::string>();
    if (j.contains("context")) {
        const json& c = j.at("context");
        if (c.contains("governments")) context.governments = c.at("governments");
        if (c.contains("ministers")) context.ministers = c.at("ministers");
        if (c.contains("legislatures")) context.legislatures = c.at("legislatures");
        if (c.contains("domains")) context.domains = c.at("domains");
    }
    if (j.contains("in_force_marker")) in_force_marker = j.at("in_force_marker");
    strings("constitutional_types", constitutional_types);
    strings("simplification_ids", simplification_ids);
    strings("decree_types", decree_types);
    if (j.contains("conversion_window_days"))
        conversion_window_days = j.at("conversion_window_days").get<int>();
    if (j.contains("conversion_title_keyword"))
        conversion_title_keyword = j.at("conversion_title_keyword");
    if (j.contains("dangling_policy")) {
        std::string p = j.at("dangling_policy");
        if (p == "drop") dangling_policy = DanglingPolicy::Drop;
        else if (p == "stub") dangling_policy = DanglingPolicy::Stub;
        else throw Error(ErrorCode::Usage, "dangling_policy must be 'drop' or 'stub'");
    }
    strings("whitelist", whitelist);
    if (j.contains("attachment_kinds")) {
        attachment_kinds.clear();
        for (const auto& [keyword, kind_name] : j.at("attachment_kinds").items()) {
            auto kind = akn::attachment_kind_from_string(kind_name.get<std::string>());
            if (!kind)
                throw Error(ErrorCode::Usage,
                            "unknown attachment kind: " + kind_name.get<std::string>());
            attachment_kinds.emplace_back(fold_accents_lower(keyword), *kind);
        }
    }
}

json Config::to_json() const {
    json j;
    j["db_path"] = db_path;
    j["input_dir"] = input_dir;
    j["context"] = {{"governments", context.governments},
                    {"ministers", context.ministers},
                    {"legislatures", context.legislatures},
                    {"domains", context.domains}};
    j["in_force_marker"] = in_force_marker;
    j["constitutional_types"] = constitutional_types;
    j["simplification_ids"] = simplification_ids;
    j["decree_types"] = decree_types;
    j["conversion_window_days"] = conversion_window_days;
    j["conversion_title_keyword"] = conversion_title_keyword;
    j["dangling_policy"] = dangling_policy == DanglingPolicy::Drop ? "drop" : "stub";
    j["whitelist"] = whitelist;
    json kinds = json::object();
    for (const auto& [keyword, kind] : attachment_kinds) kinds[keyword] = akn::to_string(kind);
    j["attachment_kinds"] = kinds;
    return j;
}

Config Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Usage, "bad config file " + path + ": " + e.what());
    }
    Config cfg;
    cfg.apply_json(j);
    return cfg;
}

} // namespace ilpg
