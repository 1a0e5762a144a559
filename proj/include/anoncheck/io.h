#ifndef ANONCHECK_IO_H_
#define ANONCHECK_IO_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anoncheck/anonymity.h"
#include "anoncheck/evaluator.h"
#include "anoncheck/formula.h"
#include "anoncheck/prob.h"
#include "anoncheck/system.h"

namespace anoncheck::io {

// System file:
//   {"agents": [...], "horizon": H,
//    "runs": [{"id": ..., "states": [{"env": S, "locals": {agent: S}}],
//              "events": [[agent, action, time]]}],
//    "props": {name: [[run id, time]]},
//    "measure": {run id: "p/q"}}
// A state literal S that is not a string is kept as its compact JSON text.
// Runs with fewer than H+1 states are padded with their last state.
struct SystemFile {
  InterpretedSystem system;
  std::optional<RunMeasure> measure;
};

// Throws ParseError for malformed JSON or field types, ModelError for
// documents that do not describe a valid system or measure.
SystemFile parse_system(const nlohmann::json& doc);
SystemFile read_system(std::istream& in);

nlohmann::json system_to_json(const InterpretedSystem& system,
                              const RunMeasure* measure);

// Spec file: a JSON array whose entries are {"formula": text} or
// {"query": {"kind", "i", "a", "a2", "j", "I_A", "k", "alpha", "phi", "mode"}}.
struct SpecEntry {
  std::optional<Formula> formula;
  std::optional<AnonymityQuery> query;
};

// Queries without "mode" get `default_mode`.
std::vector<SpecEntry> parse_spec(const nlohmann::json& doc,
                                  PerformanceMode default_mode);
std::vector<SpecEntry> read_spec(std::istream& in, PerformanceMode default_mode);

nlohmann::json spec_to_json(const std::vector<SpecEntry>& entries);

struct EntryReport {
  std::string title;
  CheckReport check;
};

// Runs one entry. Formula entries report validity with an empty table.
EntryReport run_entry(const EvalContext& ctx, const SpecEntry& entry);

std::string render_text(const InterpretedSystem& system,
                        const std::vector<EntryReport>& reports);
nlohmann::json render_json(const InterpretedSystem& system,
                           const std::vector<EntryReport>& reports);

// Short description of a query, e.g. "up_to(i=0, a=paid, j=o, I_A={0,1})".
std::string describe(const AnonymityQuery& q);

}  // namespace anoncheck::io

#endif  // ANONCHECK_IO_H_
