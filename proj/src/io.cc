#include "anoncheck/io.h"

#include <algorithm>
#include <set>
#include <tuple>
#include <map>
#include <sstream>

#include "anoncheck/errors.h"
#include "anoncheck/parser.h"
#include "anoncheck/rational.h"

namespace anoncheck::io {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return *it;
}

std::string string_of(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

int int_of(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

const json& array_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  return v;
}

LocalState state_literal(const json& v) {
  return LocalState{v.is_string() ? v.get<std::string>() : v.dump()};
}

Rational rational_of(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return parse_rational(v.dump());
  throw ParseError(where + ": expected a rational");
}

json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const std::map<std::string, AnonymityKind, std::less<>>& kind_aliases() {
  static const std::map<std::string, AnonymityKind, std::less<>> aliases{
      {"Minimal", AnonymityKind::kMinimal},
      {"Total", AnonymityKind::kTotal},
      {"UpToSet", AnonymityKind::kUpToSet},
      {"KAnonymous", AnonymityKind::kKAnonymous},
      {"Alpha", AnonymityKind::kAlpha},
      {"StrongProbUpToSet", AnonymityKind::kStrongProbUpToSet},
      {"BeyondSuspicion", AnonymityKind::kBeyondSuspicion},
      {"Conditional", AnonymityKind::kConditional},
      {"ConditionalWrt", AnonymityKind::kConditionalWrt},
      {"MinUnlinkable", AnonymityKind::kMinUnlinkable},
  };
  return aliases;
}

PerformanceMode parse_mode(const std::string& text, const std::string& where) {
  if (text == "theta") return PerformanceMode::kTheta;
  if (text == "delta") return PerformanceMode::kDelta;
  throw ParseError(where + ": mode must be 'theta' or 'delta'");
}

AnonymityQuery parse_query(const json& obj, PerformanceMode default_mode,
                           const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  static const std::set<std::string> known{"kind", "i", "a", "a2", "j", "I_A",
                                           "k", "alpha", "phi", "mode"};
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      throw ParseError(where + ": unknown query field '" + key + "'");
    }
  }
  AnonymityQuery q;
  const std::string kind = string_of(field(obj, "kind", where), where + ".kind");
  if (auto k = parse_anonymity_kind(kind)) {
    q.kind = *k;
  } else if (auto it = kind_aliases().find(kind); it != kind_aliases().end()) {
    q.kind = it->second;
  } else {
    throw ParseError(where + ": unknown query kind '" + kind + "'");
  }
  q.actor = string_of(field(obj, "i", where), where + ".i");
  q.action = string_of(field(obj, "a", where), where + ".a");
  q.observer = string_of(field(obj, "j", where), where + ".j");
  if (obj.contains("a2")) q.second_action = string_of(obj["a2"], where + ".a2");
  if (obj.contains("I_A")) {
    std::vector<AgentId> set;
    for (const json& a : array_of(obj["I_A"], where + ".I_A")) {
      set.push_back(string_of(a, where + ".I_A"));
    }
    q.anonymity_set = std::move(set);
  }
  if (obj.contains("k")) q.k = int_of(obj["k"], where + ".k");
  if (obj.contains("alpha")) q.alpha = rational_of(obj["alpha"], where + ".alpha");
  if (obj.contains("phi")) {
    q.condition = parse_formula(string_of(obj["phi"], where + ".phi"));
  }
  q.mode = obj.contains("mode")
               ? parse_mode(string_of(obj["mode"], where + ".mode"), where)
               : default_mode;
  return q;
}

std::string join(const std::vector<AgentId>& items) {
  std::string s;
  for (const auto& item : items) {
    if (!s.empty()) s += ",";
    s += item;
  }
  return s;
}

}  // namespace

SystemFile parse_system(const json& doc) {
  const std::string top = "system";
  std::vector<AgentId> roster;
  for (const json& a : array_of(field(doc, "agents", top), "agents")) {
    roster.push_back(string_of(a, "agents"));
  }
  const int horizon = int_of(field(doc, "horizon", top), "horizon");
  if (horizon < 0) throw ModelError("horizon must be nonnegative");

  std::vector<Run> runs;
  for (const json& r : array_of(field(doc, "runs", top), "runs")) {
    Run run;
    run.id = string_of(field(r, "id", "run"), "run.id");
    const std::string where = "run " + run.id;
    for (const json& s : array_of(field(r, "states", where), where + ".states")) {
      GlobalState g;
      g.env = state_literal(field(s, "env", where));
      const json& locals = field(s, "locals", where);
      if (!locals.is_object()) throw ParseError(where + ": locals must be an object");
      for (const auto& [name, value] : locals.items()) {
        if (std::find(roster.begin(), roster.end(), name) == roster.end()) {
          throw ModelError(where + ": local state for unknown agent '" + name + "'");
        }
      }
      for (const AgentId& agent : roster) {
        auto it = locals.find(agent);
        if (it == locals.end()) {
          throw ModelError(where + ": no local state for agent '" + agent + "'");
        }
        g.locals.push_back(state_literal(*it));
      }
      run.states.push_back(std::move(g));
    }
    if (run.states.empty()) throw ModelError(where + ": a run needs at least one state");
    if (run.states.size() > static_cast<std::size_t>(horizon) + 1) {
      throw ModelError(where + ": more states than horizon + 1");
    }
    while (run.states.size() < static_cast<std::size_t>(horizon) + 1) {
      run.states.push_back(run.states.back());
    }
    if (r.contains("events")) {
      for (const json& e : array_of(r["events"], where + ".events")) {
        if (!e.is_array() || e.size() != 3) {
          throw ParseError(where + ": events are [agent, action, time]");
        }
        run.events.push_back(Event{string_of(e[0], where + ".events"),
                                   string_of(e[1], where + ".events"),
                                   int_of(e[2], where + ".events")});
      }
    }
    runs.push_back(std::move(run));
  }
  System system(std::move(roster), std::move(runs));

  InterpretedSystem::Interpretation interp;
  if (doc.contains("props")) {
    const json& props = doc["props"];
    if (!props.is_object()) throw ParseError("props must be an object");
    for (const auto& [name, points] : props.items()) {
      auto& list = interp[name];
      for (const json& p : array_of(points, "props." + name)) {
        if (!p.is_array() || p.size() != 2) {
          throw ParseError("props." + name + ": points are [run id, time]");
        }
        list.push_back(system.point(string_of(p[0], "props." + name),
                                    int_of(p[1], "props." + name)));
      }
    }
  }

  std::optional<std::map<std::string, Rational>> weights;
  if (doc.contains("measure")) {
    const json& m = doc["measure"];
    if (!m.is_object()) throw ParseError("measure must be an object");
    weights.emplace();
    for (const auto& [id, value] : m.items()) {
      weights->emplace(id, rational_of(value, "measure." + id));
    }
  }

  SystemFile file{InterpretedSystem(std::move(system), std::move(interp)),
                  std::nullopt};
  if (weights) file.measure.emplace(file.system.system(), *weights);
  return file;
}

SystemFile read_system(std::istream& in) {
  const json doc = parse_json(in);
  return parse_system(doc);
}

json system_to_json(const InterpretedSystem& system, const RunMeasure* measure) {
  const System& sys = system.system();
  json doc;
  doc["agents"] = sys.roster();
  doc["horizon"] = sys.horizon();
  json runs = json::array();
  for (const Run& run : sys.runs()) {
    json r;
    r["id"] = run.id;
    json states = json::array();
    for (const GlobalState& g : run.states) {
      json locals = json::object();
      for (std::size_t a = 0; a < sys.roster().size(); ++a) {
        locals[sys.roster()[a]] = g.locals[a].value;
      }
      states.push_back({{"env", g.env.value}, {"locals", locals}});
    }
    r["states"] = std::move(states);
    json events = json::array();
    std::vector<Event> sorted = run.events;
    std::sort(sorted.begin(), sorted.end(), [](const Event& a, const Event& b) {
      return std::tie(a.time, a.agent, a.action) < std::tie(b.time, b.agent, b.action);
    });
    for (const Event& e : sorted) events.push_back({e.agent, e.action, e.time});
    r["events"] = std::move(events);
    runs.push_back(std::move(r));
  }
  doc["runs"] = std::move(runs);
  json props = json::object();
  for (const auto& [name, points] : system.interpretation()) {
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    json list = json::array();
    for (Point p : sorted) list.push_back({sys.runs()[p.run].id, p.time});
    props[name] = std::move(list);
  }
  doc["props"] = std::move(props);
  if (measure != nullptr) {
    json m = json::object();
    for (const auto& [id, w] : measure->by_id()) m[id] = to_string(w);
    doc["measure"] = std::move(m);
  }
  return doc;
}

std::vector<SpecEntry> parse_spec(const json& doc, PerformanceMode default_mode) {
  std::vector<SpecEntry> entries;
  std::size_t index = 0;
  for (const json& e : array_of(doc, "spec")) {
    const std::string where = "spec entry " + std::to_string(++index);
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    SpecEntry entry;
    if (e.contains("formula") == e.contains("query")) {
      throw ParseError(where + ": needs exactly one of 'formula' or 'query'");
    }
    if (e.contains("formula")) {
      entry.formula = parse_formula(string_of(e["formula"], where));
    } else {
      entry.query = parse_query(e["query"], default_mode, where);
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<SpecEntry> read_spec(std::istream& in, PerformanceMode default_mode) {
  const json doc = parse_json(in);
  return parse_spec(doc, default_mode);
}

json spec_to_json(const std::vector<SpecEntry>& entries) {
  json doc = json::array();
  for (const SpecEntry& e : entries) {
    if (e.formula) {
      doc.push_back({{"formula", to_string(*e.formula)}});
      continue;
    }
    const AnonymityQuery& q = *e.query;
    json obj{{"kind", std::string(to_string(q.kind))},
             {"i", q.actor},
             {"a", q.action},
             {"j", q.observer},
             {"mode", std::string(to_string(q.mode))}};
    if (!q.second_action.empty()) obj["a2"] = q.second_action;
    if (q.anonymity_set) obj["I_A"] = *q.anonymity_set;
    if (q.k) obj["k"] = *q.k;
    if (q.alpha) obj["alpha"] = to_string(*q.alpha);
    if (q.condition) obj["phi"] = to_string(*q.condition);
    doc.push_back({{"query", std::move(obj)}});
  }
  return doc;
}

std::string describe(const AnonymityQuery& q) {
  std::string s = std::string(to_string(q.kind)) + "(i=" + q.actor +
                  ", a=" + q.action;
  if (!q.second_action.empty()) s += ", a2=" + q.second_action;
  s += ", j=" + q.observer;
  if (q.anonymity_set) s += ", I_A={" + join(*q.anonymity_set) + "}";
  if (q.k) s += ", k=" + std::to_string(*q.k);
  if (q.alpha) s += ", alpha=" + to_string(*q.alpha);
  if (q.condition) s += ", phi=" + to_string(*q.condition);
  if (q.mode == PerformanceMode::kDelta) s += ", mode=delta";
  return s + ")";
}

EntryReport run_entry(const EvalContext& ctx, const SpecEntry& entry) {
  if (entry.query) {
    return EntryReport{describe(*entry.query), check(ctx, *entry.query)};
  }
  const Validity v = valid_in(ctx, *entry.formula);
  CheckReport report;
  report.holds = v.holds;
  report.compiled = *entry.formula;
  report.witness = v.witness;
  return EntryReport{"formula", std::move(report)};
}

std::string render_text(const InterpretedSystem& system,
                        const std::vector<EntryReport>& reports) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (std::size_t n = 0; n < reports.size(); ++n) {
    const auto& [title, r] = reports[n];
    passed += r.holds ? 1 : 0;
    out << "[" << n + 1 << "] " << (r.holds ? "PASS" : "FAIL") << "  " << title
        << "\n    formula: " << to_string(r.compiled) << "\n";
    for (const std::string& note : r.notes) out << "    note: " << note << "\n";
    if (!r.witness) continue;
    out << "    witness: " << system.describe(*r.witness) << "\n";
    if (r.diagnostics.empty()) continue;
    out << "    agent  possible  posterior\n";
    for (const AgentDiagnostic& d : r.diagnostics) {
      std::string name = d.agent;
      name.resize(std::max<std::size_t>(name.size(), 5), ' ');
      out << "    " << name << "  " << (d.possible ? "yes" : "no ") << "       "
          << (d.probability ? to_string(*d.probability) : std::string("-"))
          << "\n";
    }
  }
  out << "summary: " << reports.size() << " entries, " << passed << " passed, "
      << reports.size() - passed << " failed\n";
  return out.str();
}

json render_json(const InterpretedSystem& system,
                 const std::vector<EntryReport>& reports) {
  json entries = json::array();
  std::size_t passed = 0;
  for (const auto& [title, r] : reports) {
    passed += r.holds ? 1 : 0;
    json e{{"title", title},
           {"holds", r.holds},
           {"formula", to_string(r.compiled)},
           {"notes", r.notes}};
    if (r.witness) {
      e["witness"] = {{"run", system.system().runs()[r.witness->run].id},
                      {"time", r.witness->time}};
      json table = json::array();
      for (const AgentDiagnostic& d : r.diagnostics) {
        table.push_back({{"agent", d.agent},
                         {"possible", d.possible},
                         {"probability", d.probability
                                             ? json(to_string(*d.probability))
                                             : json(nullptr)}});
      }
      e["diagnostics"] = std::move(table);
    } else {
      e["witness"] = nullptr;
    }
    entries.push_back(std::move(e));
  }
  return json{{"entries", std::move(entries)},
              {"passed", passed},
              {"failed", reports.size() - passed}};
}

}  // namespace anoncheck::io
