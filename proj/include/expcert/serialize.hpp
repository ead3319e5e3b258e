#ifndef EXPCERT_SERIALIZE_HPP
#define EXPCERT_SERIALIZE_HPP

#include <string>

#include "expcert/certifier.hpp"
#include "expcert/search.hpp"

namespace expcert {

/// JSON documents, stamped with kSchemaVersion. Big integers are decimal
/// strings. indent < 0 gives a single line.
std::string instance_json(const Instance& inst, int indent = -1);
std::string certificate_json(const Certificate& cert, int indent = -1);
std::string search_report_json(const SearchReport& report, int indent = -1);
std::string elimination_json(const Instance& inst, const EliminationResult& res, int indent = -1);

}  // namespace expcert

#endif  // EXPCERT_SERIALIZE_HPP
