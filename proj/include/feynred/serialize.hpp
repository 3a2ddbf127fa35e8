/* serialize.hpp
 *
 * Structured (JSON) and human-readable renderings of traces, count reports,
 * classifications, and probe reports.  Output is deterministic: insertion
 * order is fixed and polynomials use the canonical text format.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "feynred/countfp.hpp"
#include "feynred/qseries.hpp"
#include "feynred/reduction.hpp"

namespace feynred {

using OrderedJson = nlohmann::ordered_json;

OrderedJson trace_to_json(const ReductionTrace& t);
std::string trace_to_text(const ReductionTrace& t);

OrderedJson classification_to_json(const Classification& c);
std::string classification_to_text(const Classification& c);

OrderedJson count_report_to_json(const CountReport& r);
std::string count_report_to_text(const CountReport& r);

OrderedJson probe_report_to_json(const ProbeReport& r);
std::string probe_report_to_text(const ProbeReport& r);

}  // namespace feynred
