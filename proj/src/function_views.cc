#include "anoncheck/function_views.h"

#include <algorithm>

#include "anoncheck/anonymity.h"
#include "anoncheck/errors.h"
#include "anoncheck/evaluator.h"

namespace anoncheck::views {
namespace {

std::string fact_name(const std::string& x, const AgentId& y) {
  return "f." + x + "." + y;
}

template <typename T>
std::set<T> intersect(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

}  // namespace

std::vector<PointFunction> point_function(const InterpretedSystem& system,
                                          const std::set<std::string>& actions) {
  const System& sys = system.system();
  if (sys.find_agent(kNobody)) {
    throw ModelError("agent name 'N' is reserved for the nobody value");
  }
  std::vector<PointFunction> result;
  result.reserve(system.num_points());
  for (const Run& run : sys.runs()) {
    PointFunction f;
    for (const std::string& x : actions) f[x] = std::string(kNobody);
    for (const Event& e : run.events) {
      auto it = f.find(e.action);
      if (it == f.end()) continue;
      if (it->second != kNobody && it->second != e.agent) {
        throw HypothesisViolation("action '" + e.action +
                                  "' is performed by both " + it->second +
                                  " and " + e.agent + " in run " + run.id);
      }
      it->second = e.agent;
    }
    for (std::size_t m = 0; m < system.points_per_run(); ++m) result.push_back(f);
  }
  return result;
}

std::set<AgentId> image_of(const PointFunction& f) {
  std::set<AgentId> image;
  for (const auto& [x, y] : f) image.insert(y);
  return image;
}

std::set<std::pair<std::string, std::string>> kernel_of(const PointFunction& f) {
  std::set<std::pair<std::string, std::string>> kernel;
  for (const auto& [x, fx] : f) {
    for (const auto& [y, fy] : f) {
      if (fx == fy) kernel.emplace(x, y);
    }
  }
  return kernel;
}

FunctionKnowledge complete_knowledge(const PointFunction& f) {
  FunctionKnowledge view;
  for (const auto& [x, y] : f) view.graph[x] = {y};
  view.image = image_of(f);
  view.kernel = kernel_of(f);
  return view;
}

namespace {

FunctionKnowledge knowledge_at(const InterpretedSystem& system, std::size_t o,
                               std::size_t index,
                               const std::vector<PointFunction>& functions,
                               const std::set<std::string>& actions) {
  const KnowledgePartition& part = system.partition(o);
  const auto& members = part.members[part.class_of[index]];

  FunctionKnowledge view;
  bool first = true;
  for (std::size_t idx : members) {
    const PointFunction& f = functions[idx];
    for (const auto& [x, y] : f) view.graph[x].insert(y);
    if (first) {
      view.image = image_of(f);
      view.kernel = kernel_of(f);
      first = false;
    } else {
      view.image = intersect(view.image, image_of(f));
      view.kernel = intersect(view.kernel, kernel_of(f));
    }
  }
  for (const std::string& x : actions) view.graph[x];
  return view;
}

}  // namespace

FunctionKnowledge observer_knowledge(const InterpretedSystem& system,
                                     std::string_view observer, Point p,
                                     const std::set<std::string>& actions) {
  const System& sys = system.system();
  const std::size_t o = sys.agent_index(observer);
  if (!sys.contains(p)) throw ModelError("point is not in the system");
  return knowledge_at(system, o, system.index_of(p),
                      point_function(system, actions), actions);
}

bool is_consistent_with(const FunctionKnowledge& view, const PointFunction& f) {
  if (view.graph.size() != f.size() ||
      !std::equal(view.graph.begin(), view.graph.end(), f.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw ModelError("function view and function have different domains");
  }
  for (const auto& [x, y] : f) {
    if (!view.graph.at(x).contains(y)) return false;
  }
  const auto image = image_of(f);
  if (!std::includes(image.begin(), image.end(), view.image.begin(),
                     view.image.end())) {
    return false;
  }
  const auto kernel = kernel_of(f);
  return std::includes(kernel.begin(), kernel.end(), view.kernel.begin(),
                       view.kernel.end());
}

Opaqueness Opaqueness::k_value(std::size_t k) {
  return Opaqueness{Kind::kKValue, k, {}};
}

Opaqueness Opaqueness::z_value(std::set<AgentId> z) {
  return Opaqueness{Kind::kZValue, 0, std::move(z)};
}

Opaqueness Opaqueness::absolute(std::set<AgentId> codomain) {
  return Opaqueness{Kind::kAbsolute, 0, std::move(codomain)};
}

bool check_opaqueness(const FunctionKnowledge& view, const Opaqueness& variant) {
  return std::all_of(view.graph.begin(), view.graph.end(), [&](const auto& entry) {
    const std::set<AgentId>& fx = entry.second;
    if (variant.kind == Opaqueness::Kind::kKValue) return fx.size() >= variant.k;
    return std::includes(fx.begin(), fx.end(), variant.values.begin(),
                         variant.values.end());
  });
}

std::set<AgentId> codomain(const System& system) {
  std::set<AgentId> y(system.roster().begin(), system.roster().end());
  y.insert(std::string(kNobody));
  return y;
}

InterpretedSystem with_function_propositions(
    const InterpretedSystem& system, const std::set<std::string>& actions) {
  const auto functions = point_function(system, actions);
  InterpretedSystem::Interpretation interp = system.interpretation();
  for (const std::string& x : actions) {
    for (const AgentId& y : codomain(system.system())) {
      auto& points = interp[fact_name(x, y)];
      points.clear();
      for (std::size_t idx = 0; idx < functions.size(); ++idx) {
        if (functions[idx].at(x) == y) points.push_back(system.point_at(idx));
      }
    }
  }
  return InterpretedSystem(system.system(), std::move(interp));
}

EquivalenceResult prop52_check(const InterpretedSystem& system,
                               std::string_view observer,
                               const std::set<AgentId>& z,
                               const std::set<std::string>& actions) {
  const auto functions = point_function(system, actions);
  for (const std::string& x : actions) {
    for (const AgentId& y : codomain(system.system())) {
      const auto* truth = system.proposition(fact_name(x, y));
      for (std::size_t idx = 0; idx < functions.size(); ++idx) {
        const bool expected = functions[idx].at(x) == y;
        const bool actual = truth != nullptr && (*truth)[idx] != 0;
        if (expected != actual) {
          throw HypothesisViolation("proposition " + fact_name(x, y) +
                                    " does not match f at " +
                                    system.describe(system.point_at(idx)));
        }
      }
    }
  }

  std::vector<Formula> conjuncts;
  for (const std::string& x : actions) {
    for (const AgentId& value : z) {
      conjuncts.push_back(
          Formula::possible(std::string(observer), Formula::prop(fact_name(x, value))));
    }
  }
  const EvalContext ctx(system);
  const TruthVector rhs =
      conjuncts.empty() ? TruthVector(system.num_points(), 1)
                        : label(ctx, Formula::all_of(std::move(conjuncts)));
  const std::size_t o = system.system().agent_index(observer);
  const Opaqueness variant = Opaqueness::z_value(z);

  EquivalenceResult result{true, true, std::nullopt};
  for (std::size_t idx = 0; idx < system.num_points(); ++idx) {
    const Point p = system.point_at(idx);
    const bool opaque = check_opaqueness(
        knowledge_at(system, o, idx, functions, actions), variant);
    result.lhs = result.lhs && opaque;
    result.rhs = result.rhs && rhs[idx] != 0;
    if (opaque != (rhs[idx] != 0) && !result.disagreement) result.disagreement = p;
  }
  return result;
}

EquivalenceResult theorem53_check(const InterpretedSystem& system,
                                  std::string_view observer,
                                  const std::vector<AgentId>& anonymity_set,
                                  const std::string& action) {
  const std::set<std::string> actions{action};
  const auto functions = point_function(system, actions);
  const std::set<AgentId> members(anonymity_set.begin(), anonymity_set.end());
  const Opaqueness variant = Opaqueness::z_value(members);
  const std::size_t o = system.system().agent_index(observer);

  EquivalenceResult result{true, true, std::nullopt};
  for (std::size_t idx = 0; idx < system.num_points() && result.lhs; ++idx) {
    if (!members.contains(functions[idx].at(action))) continue;
    result.lhs = check_opaqueness(
        knowledge_at(system, o, idx, functions, actions), variant);
  }

  const EvalContext ctx(system);
  for (const AgentId& i : members) {
    AnonymityQuery q;
    q.kind = AnonymityKind::kUpToSet;
    q.actor = i;
    q.action = action;
    q.observer = std::string(observer);
    q.anonymity_set = anonymity_set;
    if (!check_up_to(ctx, q).holds) {
      result.rhs = false;
      break;
    }
  }
  return result;
}

}  // namespace anoncheck::views
