#include "anoncheck/anonymity.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "anoncheck/errors.h"

namespace anoncheck {
namespace {

constexpr std::array<std::pair<AnonymityKind, std::string_view>, 10> kKindNames{{
    {AnonymityKind::kMinimal, "minimal"},
    {AnonymityKind::kTotal, "total"},
    {AnonymityKind::kUpToSet, "up_to"},
    {AnonymityKind::kKAnonymous, "k"},
    {AnonymityKind::kAlpha, "alpha"},
    {AnonymityKind::kStrongProbUpToSet, "strong_prob_up_to"},
    {AnonymityKind::kBeyondSuspicion, "beyond_suspicion"},
    {AnonymityKind::kConditional, "conditional"},
    {AnonymityKind::kConditionalWrt, "conditional_wrt"},
    {AnonymityKind::kMinUnlinkable, "min_unlinkable"},
}};

Formula performs(const AgentId& agent, const std::string& action,
                 PerformanceMode mode) {
  return mode == PerformanceMode::kTheta ? Formula::theta(agent, action)
                                         : Formula::delta(agent, action);
}

const System& sys_of(const EvalContext& ctx) { return ctx.system().system(); }

void require_agent(const EvalContext& ctx, const AgentId& agent,
                   std::string_view role) {
  if (!sys_of(ctx).find_agent(agent)) {
    throw ModelError(std::string(role) + " '" + agent +
                     "' is not in the roster");
  }
}

void validate(const EvalContext& ctx, const AnonymityQuery& q) {
  require_agent(ctx, q.actor, "actor");
  require_agent(ctx, q.observer, "observer");
  if (!is_valid_token(q.action)) {
    throw ModelError("invalid action '" + q.action + "'");
  }
  if (q.anonymity_set) {
    for (const AgentId& a : *q.anonymity_set) {
      require_agent(ctx, a, "anonymity set member");
    }
  }
}

const std::vector<AgentId>& required_set(const AnonymityQuery& q) {
  if (!q.anonymity_set) {
    throw ModelError("query '" + std::string(to_string(q.kind)) +
                     "' needs an anonymity set I_A");
  }
  return *q.anonymity_set;
}

void require_measure(const EvalContext& ctx, const AnonymityQuery& q) {
  if (ctx.measure() == nullptr) {
    throw SemanticError("query '" + std::string(to_string(q.kind)) +
                        "' needs a run measure");
  }
}

// delta-based Pr formulas are only guaranteed measurable in synchronous
// systems.
void check_probabilistic_mode(const EvalContext& ctx, const AnonymityQuery& q,
                              CheckReport& report) {
  if (q.mode != PerformanceMode::kDelta) return;
  if (!is_synchronous(ctx.system())) {
    throw NonMeasurableEvent(
        "delta mode is not available for probabilistic anonymity in an "
        "asynchronous system");
  }
  report.notes.push_back(
      "delta mode accepted because the system is synchronous");
}

void note_common(const EvalContext& ctx, const AnonymityQuery& q,
                 CheckReport& report) {
  if (!sys_of(ctx).mentions_action(q.action)) {
    report.notes.push_back("action '" + q.action +
                           "' never occurs in any run; the property holds "
                           "vacuously");
  }
  if (q.anonymity_set &&
      std::find(q.anonymity_set->begin(), q.anonymity_set->end(),
                q.observer) != q.anonymity_set->end()) {
    report.notes.push_back("observer '" + q.observer +
                           "' is a member of the anonymity set");
  }
}

// theta(i,a) => AND_{i' in set} P_j[theta(i',a)]. An empty set falls back to
// the single conjunct P_j[theta(i,a)], which is valid under the antecedent.
Formula possibilistic_up_to(const AnonymityQuery& q,
                            const std::vector<AgentId>& set) {
  std::vector<Formula> conjuncts;
  for (const AgentId& other : set) {
    conjuncts.push_back(
        Formula::possible(q.observer, performs(other, q.action, q.mode)));
  }
  if (conjuncts.empty()) {
    conjuncts.push_back(
        Formula::possible(q.observer, performs(q.actor, q.action, q.mode)));
  }
  return Formula::implies(performs(q.actor, q.action, q.mode),
                          Formula::all_of(std::move(conjuncts)));
}

void add_diagnostics(const EvalContext& ctx, const AnonymityQuery& q,
                     CheckReport& report) {
  if (!report.witness) return;
  const Point w = *report.witness;
  for (const AgentId& agent : sys_of(ctx).roster()) {
    AgentDiagnostic row;
    row.agent = agent;
    const Formula perf = performs(agent, q.action, q.mode);
    row.possible = evaluate(ctx, w, Formula::possible(q.observer, perf));
    if (ctx.measure() != nullptr) {
      try {
        row.probability = point_probability(ctx, q.observer, w, perf);
      } catch (const SemanticError&) {
        row.probability.reset();
      }
    }
    report.diagnostics.push_back(std::move(row));
  }
}

CheckReport decide(const EvalContext& ctx, const AnonymityQuery& q,
                   Formula compiled, CheckReport report) {
  const Validity v = valid_in(ctx, compiled);
  report.holds = v.holds;
  report.witness = v.witness;
  report.compiled = std::move(compiled);
  add_diagnostics(ctx, q, report);
  return report;
}

// Observer posteriors of theta(i,a) over the classes where theta(i,a) holds.
std::set<Rational> actor_posteriors(const EvalContext& ctx,
                                    const AnonymityQuery& q) {
  const InterpretedSystem& system = ctx.system();
  const Formula perf = performs(q.actor, q.action, q.mode);
  const TruthVector antecedent = label(ctx, perf);
  const KnowledgePartition& part =
      system.partition(sys_of(ctx).agent_index(q.observer));
  std::set<Rational> values;
  std::vector<char> done(part.members.size(), 0);
  for (std::size_t idx = 0; idx < antecedent.size(); ++idx) {
    if (!antecedent[idx] || done[part.class_of[idx]]) continue;
    done[part.class_of[idx]] = 1;
    values.insert(point_probability(ctx, q.observer, system.point_at(idx), perf));
  }
  return values;
}

// For each i' in I_A: theta(i,a) => Pr_j[theta(i,a)] = Pr_j[theta(i',a)]
// (or <=). Pr compares against constants only, so the equality is expanded
// over the finitely many posteriors V the observer ever assigns to the
// actor: OR_{v in V} (Pr_j[theta(i,a)] = v & Pr_j[theta(i',a)] cmp v).
CheckReport compare_posteriors(const EvalContext& ctx, const AnonymityQuery& q,
                               Comparison other_cmp) {
  validate(ctx, q);
  require_measure(ctx, q);
  CheckReport report;
  check_probabilistic_mode(ctx, q, report);
  note_common(ctx, q, report);
  const std::vector<AgentId>& set = required_set(q);
  const Formula perf = performs(q.actor, q.action, q.mode);

  const std::set<Rational> values = actor_posteriors(ctx, q);
  if (values.empty()) {
    report.notes.push_back("'" + q.actor + "' never performs '" + q.action +
                           "'; the property holds vacuously");
    return decide(ctx, q, Formula::implies(perf, Formula::negation(perf)),
                  std::move(report));
  }
  if (set.empty()) {
    report.notes.push_back("empty anonymity set; the property holds vacuously");
    return decide(ctx, q, possibilistic_up_to(q, set), std::move(report));
  }
  std::vector<Formula> conjuncts;
  for (const AgentId& other : set) {
    std::vector<Formula> cases;
    for (const Rational& v : values) {
      cases.push_back(Formula::conjunction(
          Formula::probability(q.observer, perf, std::nullopt,
                               Comparison::kEqual, v),
          Formula::probability(q.observer,
                               performs(other, q.action, q.mode),
                               std::nullopt, other_cmp, v)));
    }
    conjuncts.push_back(
        Formula::implies(perf, Formula::any_of(std::move(cases))));
  }
  return decide(ctx, q, Formula::all_of(std::move(conjuncts)),
                std::move(report));
}

CheckReport conditional_against(const EvalContext& ctx,
                                const AnonymityQuery& q,
                                const Formula& allowed) {
  require_measure(ctx, q);
  CheckReport report;
  check_probabilistic_mode(ctx, q, report);
  note_common(ctx, q, report);
  const Rational prior =
      prior_probability(ctx, Formula::theta(q.actor, q.action), allowed);
  const Formula compiled = Formula::implies(
      Formula::knows(q.observer, allowed),
      Formula::probability(q.observer, performs(q.actor, q.action, q.mode),
                           std::nullopt, Comparison::kEqual, prior));
  return decide(ctx, q, compiled, std::move(report));
}

}  // namespace

std::string_view to_string(AnonymityKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<AnonymityKind> parse_anonymity_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(PerformanceMode mode) {
  return mode == PerformanceMode::kTheta ? "theta" : "delta";
}

CheckReport check(const EvalContext& ctx, const AnonymityQuery& q) {
  switch (q.kind) {
    case AnonymityKind::kMinimal:
      return check_minimal(ctx, q);
    case AnonymityKind::kTotal:
      return check_total(ctx, q);
    case AnonymityKind::kUpToSet:
      return check_up_to(ctx, q);
    case AnonymityKind::kKAnonymous:
      return check_k(ctx, q);
    case AnonymityKind::kAlpha:
      return check_alpha(ctx, q);
    case AnonymityKind::kStrongProbUpToSet:
      return check_strong_prob_up_to(ctx, q);
    case AnonymityKind::kBeyondSuspicion:
      return check_beyond_suspicion(ctx, q);
    case AnonymityKind::kConditional:
      return check_conditional(ctx, q);
    case AnonymityKind::kConditionalWrt:
      return check_conditional_wrt(ctx, q);
    case AnonymityKind::kMinUnlinkable:
      return check_min_unlinkability(ctx, q);
  }
  throw ModelError("unknown anonymity kind");
}

CheckReport check_minimal(const EvalContext& ctx, const AnonymityQuery& q) {
  validate(ctx, q);
  CheckReport report;
  note_common(ctx, q, report);
  return decide(ctx, q,
                Formula::negation(Formula::knows(
                    q.observer, performs(q.actor, q.action, q.mode))),
                std::move(report));
}

CheckReport check_total(const EvalContext& ctx, const AnonymityQuery& q) {
  validate(ctx, q);
  CheckReport report;
  note_common(ctx, q, report);
  std::vector<AgentId> others;
  for (const AgentId& a : sys_of(ctx).roster()) {
    if (a != q.observer) others.push_back(a);
  }
  if (others.empty() || (others.size() == 1 && others.front() == q.actor)) {
    report.notes.push_back(
        "degenerate: no agent other than the actor and the observer; total "
        "anonymity holds vacuously");
  }
  return decide(ctx, q, possibilistic_up_to(q, others), std::move(report));
}

CheckReport check_up_to(const EvalContext& ctx, const AnonymityQuery& q) {
  validate(ctx, q);
  const std::vector<AgentId>& set = required_set(q);
  CheckReport report;
  note_common(ctx, q, report);
  if (set.empty()) {
    report.notes.push_back("empty anonymity set; the property holds vacuously");
  }
  return decide(ctx, q, possibilistic_up_to(q, set), std::move(report));
}

Formula k_anonymity_formula(const EvalContext& ctx, const AnonymityQuery& q) {
  const auto& roster = sys_of(ctx).roster();
  const int n = static_cast<int>(roster.size());
  const int k = q.k.value_or(0);
  if (k < 1 || k > n) {
    throw ModelError("k = " + std::to_string(k) + " is outside [1, " +
                     std::to_string(n) + "]");
  }
  std::vector<Formula> disjuncts;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<Formula> conjuncts;
    for (int index : pick) {
      conjuncts.push_back(Formula::possible(
          q.observer,
          performs(roster[static_cast<std::size_t>(index)], q.action, q.mode)));
    }
    disjuncts.push_back(Formula::all_of(std::move(conjuncts)));
    // Next k-combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return Formula::implies(performs(q.actor, q.action, q.mode),
                          Formula::any_of(std::move(disjuncts)));
}

CheckReport check_k(const EvalContext& ctx, const AnonymityQuery& q) {
  validate(ctx, q);
  if (!q.k) throw ModelError("query 'k' needs a value for k");
  CheckReport report;
  note_common(ctx, q, report);
  report.compiled = k_anonymity_formula(ctx, q);

  // Some k-subset is possible iff at least k agents are possible.
  const TruthVector antecedent = label(ctx, performs(q.actor, q.action, q.mode));
  std::vector<int> count(antecedent.size(), 0);
  for (const AgentId& agent : sys_of(ctx).roster()) {
    const TruthVector possible = label(
        ctx, Formula::possible(q.observer, performs(agent, q.action, q.mode)),
        antecedent);
    for (std::size_t idx = 0; idx < possible.size(); ++idx) {
      if (antecedent[idx] && possible[idx]) ++count[idx];
    }
  }
  for (std::size_t idx = 0; idx < antecedent.size(); ++idx) {
    if (antecedent[idx] && count[idx] < *q.k) {
      report.holds = false;
      report.witness = ctx.system().point_at(idx);
      break;
    }
  }
  add_diagnostics(ctx, q, report);
  return report;
}

CheckReport check_alpha(const EvalContext& ctx, const AnonymityQuery& q) {
  validate(ctx, q);
  require_measure(ctx, q);
  if (!q.alpha) throw ModelError("query 'alpha' needs a value for alpha");
  if (*q.alpha <= 0 || *q.alpha > 1) {
    throw ModelError("alpha must lie in (0, 1]");
  }
  CheckReport report;
  check_probabilistic_mode(ctx, q, report);
  note_common(ctx, q, report);
  const Formula perf = performs(q.actor, q.action, q.mode);
  return decide(ctx, q,
                Formula::implies(perf, Formula::probability(
                                           q.observer, perf, std::nullopt,
                                           Comparison::kLess, *q.alpha)),
                std::move(report));
}

CheckReport check_strong_prob_up_to(const EvalContext& ctx,
                                    const AnonymityQuery& q) {
  return compare_posteriors(ctx, q, Comparison::kEqual);
}

CheckReport check_beyond_suspicion(const EvalContext& ctx,
                                   const AnonymityQuery& q) {
  return compare_posteriors(ctx, q, Comparison::kGreaterEqual);
}

CheckReport check_conditional(const EvalContext& ctx, const AnonymityQuery& q) {
  validate(ctx, q);
  return conditional_against(ctx, q,
                             Formula::theta_other(q.observer, q.action));
}

CheckReport check_conditional_wrt(const EvalContext& ctx,
                                  const AnonymityQuery& q) {
  validate(ctx, q);
  if (!q.condition) {
    throw ModelError("query 'conditional_wrt' needs a formula phi");
  }
  return conditional_against(ctx, q, *q.condition);
}

CheckReport check_min_unlinkability(const EvalContext& ctx,
                                    const AnonymityQuery& q) {
  validate(ctx, q);
  if (!is_valid_token(q.second_action)) {
    throw ModelError("query 'min_unlinkable' needs a second action");
  }
  const auto& roster = sys_of(ctx).roster();
  if (roster.size() < 2) {
    throw ModelError("unlinkability needs at least two agents");
  }
  CheckReport report;
  std::vector<Formula> first, second, split;
  for (const AgentId& a : roster) {
    first.push_back(Formula::theta(a, q.action));
    second.push_back(Formula::theta(a, q.second_action));
    for (const AgentId& b : roster) {
      if (a == b) continue;
      split.push_back(Formula::conjunction(Formula::theta(a, q.action),
                                           Formula::theta(b, q.second_action)));
    }
  }
  const Formula both = Formula::conjunction(Formula::any_of(std::move(first)),
                                            Formula::any_of(std::move(second)));
  if (satisfying_points(ctx, both).empty()) {
    report.notes.push_back("'" + q.action + "' and '" + q.second_action +
                           "' are never both performed; unlinkability holds "
                           "vacuously");
  }
  return decide(ctx, q,
                Formula::implies(both, Formula::possible(
                                           q.observer,
                                           Formula::any_of(std::move(split)))),
                std::move(report));
}

bool exclusivity_holds(const EvalContext& ctx, std::string_view action) {
  const System& sys = sys_of(ctx);
  for (const Run& run : sys.runs()) {
    std::set<std::string_view> performers;
    for (const Event& e : run.events) {
      if (e.action == action) performers.insert(e.agent);
    }
    if (performers.size() > 1) return false;
  }
  return true;
}

Rational prior_probability(const EvalContext& ctx, const Formula& target,
                           const Formula& given) {
  if (ctx.measure() == nullptr) {
    throw SemanticError("prior probabilities need a run measure");
  }
  const auto given_runs = satisfying_runs(ctx, given);
  const auto target_runs = satisfying_runs(ctx, target);
  std::set<std::string> given_set(given_runs.begin(), given_runs.end());
  std::set<std::string> joint;
  for (const std::string& id : target_runs) {
    if (given_set.contains(id)) joint.insert(id);
  }
  const Rational denominator = run_event_probability(*ctx.measure(), given_set);
  if (denominator == 0) {
    throw ZeroConditioningEvent("mu(e_r(" + to_string(given) + ")) = 0");
  }
  return run_event_probability(*ctx.measure(), joint) / denominator;
}

}  // namespace anoncheck
