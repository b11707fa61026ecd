#pragma once

#include "util/dates.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ilpg::ctx {

struct Minister {
    std::string surname;     // lowercased, trimmed
    std::string department;  // as loaded
};

struct Government {
    std::string name;
    Date start;
    Date end; // closed interval, start <= end
    std::vector<Minister> ministers;
};

struct Legislature {
    std::string name;
    Date start;
    Date end;
};

struct ContextPaths {
    std::string governments;
    std::string ministers;
    std::string legislatures;
    std::string domains;
};

// Supplementary legislative context: cabinet intervals with minister
// rosters, parliament terms, and the department-keyword dictionary used
// for domain classification. Read-only after load.
class ContextDataset {
  public:
    std::vector<Government> governments;   // sorted by start, non-overlapping
    std::vector<Legislature> legislatures; // sorted by start, non-overlapping
    // keyword (lowercase, accent-folded) -> domain class; first match wins
    std::vector<std::pair<std::string, std::string>> domain_dictionary;

    const Government* government_at(Date d) const;
    const Legislature* legislature_at(Date d) const;

    // Classes whose keywords appear as whole words in the department name
    // (case-insensitive, accent-folded).
    std::set<std::string> classes_for_department(std::string_view department) const;

    bool empty() const { return governments.empty() && legislatures.empty(); }
};

// governments.csv: name,start_date,end_date; ministers.csv:
// government,surname,department; legislatures.csv: name,start_date,end_date;
// domains.csv: keyword,class. ISO dates, header row required.
ContextDataset load_context(const ContextPaths& paths);

// Domain classes of every minister of the government in charge at
// `publication_date` whose surname appears as a whole word in the
// conclusions text; empty when no government covers the date.
std::set<std::string> classify_domains(std::string_view conclusions_text, Date publication_date,
                                       const ContextDataset& ctx);

} // namespace ilpg::ctx
