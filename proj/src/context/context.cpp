#include "context/context.hpp"

#include "util/csv.hpp"
#include "util/errors.hpp"
#include "util/text.hpp"

#include <algorithm>
#include <map>

namespace ilpg::ctx {

namespace {

Date require_date(const std::string& field, const std::string& where) {
    auto d = Date::parse_iso(trim(field));
    if (!d) throw Error(ErrorCode::SchemaError, where + ": bad ISO date '" + field + "'");
    return *d;
}

int require_column(const CsvTable& table, std::string_view name, const std::string& file) {
    int col = table.column(name);
    if (col < 0)
        throw Error(ErrorCode::SchemaError,
                    file + ": missing column '" + std::string(name) + "'");
    return col;
}

template <typename T>
void check_intervals(std::vector<T>& items, const std::string& what) {
    for (const T& item : items) {
        if (item.end < item.start)
            throw Error(ErrorCode::IntervalError,
                        what + " '" + item.name + "' has inverted interval");
    }
    std::sort(items.begin(), items.end(),
              [](const T& a, const T& b) { return a.start < b.start; });
    for (size_t i = 1; i < items.size(); ++i) {
        if (items[i].start <= items[i - 1].end)
            throw Error(ErrorCode::IntervalError, what + " '" + items[i].name +
                                                      "' overlaps '" + items[i - 1].name + "'");
    }
}

template <typename T>
const T* interval_at(const std::vector<T>& items, Date d) {
    for (const T& item : items)
        if (item.start <= d && d <= item.end) return &item;
    return nullptr;
}

} // namespace

const Government* ContextDataset::government_at(Date d) const {
    return interval_at(governments, d);
}

const Legislature* ContextDataset::legislature_at(Date d) const {
    return interval_at(legislatures, d);
}

std::set<std::string> ContextDataset::classes_for_department(std::string_view department) const {
    std::string folded = fold_accents_lower(department);
    std::set<std::string> classes;
    for (const auto& [keyword, cls] : domain_dictionary)
        if (contains_word_ci(folded, keyword)) classes.insert(cls);
    return classes;
}

ContextDataset load_context(const ContextPaths& paths) {
    ContextDataset ctx;

    CsvTable govs = read_csv_file(paths.governments);
    {
        int name = require_column(govs, "name", paths.governments);
        int start = require_column(govs, "start_date", paths.governments);
        int end = require_column(govs, "end_date", paths.governments);
        for (const auto& row : govs.rows) {
            Government g;
            g.name = trim(row.at(name));
            g.start = require_date(row.at(start), paths.governments);
            g.end = require_date(row.at(end), paths.governments);
            ctx.governments.push_back(std::move(g));
        }
    }
    check_intervals(ctx.governments, "government");

    CsvTable legs = read_csv_file(paths.legislatures);
    {
        int name = require_column(legs, "name", paths.legislatures);
        int start = require_column(legs, "start_date", paths.legislatures);
        int end = require_column(legs, "end_date", paths.legislatures);
        for (const auto& row : legs.rows) {
            Legislature l;
            l.name = trim(row.at(name));
            l.start = require_date(row.at(start), paths.legislatures);
            l.end = require_date(row.at(end), paths.legislatures);
            ctx.legislatures.push_back(std::move(l));
        }
    }
    check_intervals(ctx.legislatures, "legislature");

    CsvTable mins = read_csv_file(paths.ministers);
    {
        int gov = require_column(mins, "government", paths.ministers);
        int surname = require_column(mins, "surname", paths.ministers);
        int dept = require_column(mins, "department", paths.ministers);
        std::map<std::string, Government*> by_name;
        for (Government& g : ctx.governments) by_name[g.name] = &g;
        for (const auto& row : mins.rows) {
            auto it = by_name.find(trim(row.at(gov)));
            if (it == by_name.end())
                throw Error(ErrorCode::SchemaError,
                            paths.ministers + ": unknown government '" + row.at(gov) + "'");
            Minister m;
            m.surname = to_lower(trim(row.at(surname)));
            m.department = trim(row.at(dept));
            if (m.surname.empty())
                throw Error(ErrorCode::SchemaError, paths.ministers + ": empty surname");
            it->second->ministers.push_back(std::move(m));
        }
    }

    CsvTable doms = read_csv_file(paths.domains);
    {
        int keyword = require_column(doms, "keyword", paths.domains);
        int cls = require_column(doms, "class", paths.domains);
        for (const auto& row : doms.rows) {
            std::string kw = fold_accents_lower(trim(row.at(keyword)));
            std::string c = trim(row.at(cls));
            if (kw.empty() || c.empty())
                throw Error(ErrorCode::SchemaError, paths.domains + ": empty keyword or class");
            ctx.domain_dictionary.emplace_back(std::move(kw), std::move(c));
        }
    }

    return ctx;
}

std::set<std::string> classify_domains(std::string_view conclusions_text, Date publication_date,
                                       const ContextDataset& ctx) {
    std::set<std::string> classes;
    const Government* gov = ctx.government_at(publication_date);
    if (!gov) return classes;
    for (const Minister& m : gov->ministers) {
        if (!contains_word_ci(conclusions_text, m.surname)) continue;
        auto dept_classes = ctx.classes_for_department(m.department);
        classes.insert(dept_classes.begin(), dept_classes.end());
    }
    return classes;
}

} // namespace ilpg::ctx
