#include "anoncheck/evaluator.h"

#include <algorithm>

#include "anoncheck/errors.h"
#include "parallel.h"

namespace anoncheck {
namespace {

using internal::parallel_for;

class Labeler {
 public:
  explicit Labeler(const EvalContext& ctx)
      : ctx_(ctx), system_(ctx.system()), sys_(system_.system()) {}

  TruthVector run(const Formula& f, const TruthVector& demand) {
    switch (f.kind()) {
      case Formula::Kind::kProp:
        return proposition(f, demand);
      case Formula::Kind::kNot: {
        TruthVector v = run(f.operand(), demand);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = demand[i] && !v[i];
        return v;
      }
      case Formula::Kind::kAnd:
      case Formula::Kind::kOr:
      case Formula::Kind::kImplies:
        return connective(f, demand);
      case Formula::Kind::kKnows:
      case Formula::Kind::kPossible:
        return modal(f, demand);
      case Formula::Kind::kTheta:
      case Formula::Kind::kDelta:
      case Formula::Kind::kThetaOther:
        return performance(f, demand);
      case Formula::Kind::kProbability:
        return probability(f, demand);
    }
    throw ModelError("unknown formula kind");
  }

 private:
  TruthVector proposition(const Formula& f, const TruthVector& demand) {
    TruthVector v(system_.num_points(), 0);
    if (const TruthVector* truth = system_.proposition(f.name())) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = demand[i] && (*truth)[i];
    }
    return v;
  }

  TruthVector connective(const Formula& f, const TruthVector& demand) {
    TruthVector left = run(f.lhs(), demand);
    // Where does the left operand leave the result open?
    TruthVector open(left.size(), 0);
    const bool open_when_true = f.kind() != Formula::Kind::kOr;
    for (std::size_t i = 0; i < left.size(); ++i) {
      open[i] = demand[i] && (static_cast<bool>(left[i]) == open_when_true);
    }
    TruthVector right = run(f.rhs(), open);
    TruthVector v(left.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!demand[i]) continue;
      switch (f.kind()) {
        case Formula::Kind::kAnd:
          v[i] = left[i] && right[i];
          break;
        case Formula::Kind::kOr:
          v[i] = left[i] || right[i];
          break;
        default:
          v[i] = !left[i] || right[i];
          break;
      }
    }
    return v;
  }

  std::vector<std::size_t> demanded_classes(const KnowledgePartition& part,
                                            const TruthVector& demand) {
    std::vector<char> marked(part.members.size(), 0);
    for (std::size_t i = 0; i < demand.size(); ++i) {
      if (demand[i]) marked[part.class_of[i]] = 1;
    }
    std::vector<std::size_t> classes;
    for (std::size_t c = 0; c < marked.size(); ++c) {
      if (marked[c]) classes.push_back(c);
    }
    return classes;
  }

  TruthVector modal(const Formula& f, const TruthVector& demand) {
    const KnowledgePartition& part =
        system_.partition(sys_.agent_index(f.name()));
    const std::vector<std::size_t> classes = demanded_classes(part, demand);
    TruthVector inner(demand.size(), 0);
    for (std::size_t c : classes) {
      for (std::size_t idx : part.members[c]) inner[idx] = 1;
    }
    const TruthVector operand = run(f.operand(), inner);
    const bool knows = f.kind() == Formula::Kind::kKnows;
    TruthVector v(demand.size(), 0);
    parallel_for(classes.size(), [&](std::size_t k) {
      const auto& members = part.members[classes[k]];
      bool value = knows;
      for (std::size_t idx : members) {
        if (static_cast<bool>(operand[idx]) != knows) {
          value = !knows;
          break;
        }
      }
      for (std::size_t idx : members) v[idx] = value;
    });
    return v;
  }

  TruthVector performance(const Formula& f, const TruthVector& demand) {
    const std::size_t agent = sys_.agent_index(f.name());
    const std::size_t runs = sys_.runs().size();
    const std::size_t roster = sys_.roster().size();
    // Earliest performance time per run (-1: never).
    std::vector<int> first(runs, -1);
    for (std::size_t r = 0; r < runs; ++r) {
      if (f.kind() == Formula::Kind::kThetaOther) {
        for (std::size_t other = 0; other < roster; ++other) {
          if (other == agent) continue;
          if (auto t = sys_.first_performance(r, other, f.action())) {
            if (first[r] < 0 || *t < first[r]) first[r] = *t;
          }
        }
      } else if (auto t = sys_.first_performance(r, agent, f.action())) {
        first[r] = *t;
      }
    }
    const bool by_now = f.kind() == Formula::Kind::kDelta;
    TruthVector v(demand.size(), 0);
    parallel_for(demand.size(), [&](std::size_t idx) {
      if (!demand[idx]) return;
      const Point p = system_.point_at(idx);
      const int t = first[p.run];
      v[idx] = t >= 0 && (!by_now || t <= p.time);
    });
    return v;
  }

  TruthVector probability(const Formula& f, const TruthVector& demand) {
    const RunMeasure* measure = ctx_.measure();
    if (measure == nullptr) {
      throw SemanticError("formula uses Pr_" + f.name() +
                          " but no run measure was supplied");
    }
    const KnowledgePartition& part =
        system_.partition(sys_.agent_index(f.name()));
    const std::vector<std::size_t> classes = demanded_classes(part, demand);
    const Formula* condition = f.condition();
    const bool run_stable =
        is_run_formula(f.target()) && (!condition || is_run_formula(*condition));

    TruthVector inner(demand.size(), 0);
    for (std::size_t c : classes) {
      std::size_t last_run = static_cast<std::size_t>(-1);
      for (std::size_t idx : part.members[c]) {
        const std::size_t run = system_.point_at(idx).run;
        if (!run_stable || run != last_run) inner[idx] = 1;
        last_run = run;
      }
    }
    const TruthVector target = run(f.target(), inner);
    TruthVector cond;
    if (condition) cond = run(*condition, inner);

    TruthVector v(demand.size(), 0);
    parallel_for(classes.size(), [&](std::size_t k) {
      const auto& members = part.members[classes[k]];
      const Rational pr = internal::class_probability(
          system_, *measure, members, target, condition ? &cond : nullptr,
          run_stable);
      const bool value = compare(pr, f.comparison(), f.bound());
      for (std::size_t idx : members) v[idx] = value;
    });
    return v;
  }

  const EvalContext& ctx_;
  const InterpretedSystem& system_;
  const System& sys_;
};

}  // namespace

TruthVector label(const EvalContext& ctx, const Formula& formula,
                  const TruthVector& demand) {
  if (demand.size() != ctx.system().num_points()) {
    throw ModelError("demand vector does not match the number of points");
  }
  return Labeler(ctx).run(formula, demand);
}

TruthVector label(const EvalContext& ctx, const Formula& formula) {
  return label(ctx, formula, TruthVector(ctx.system().num_points(), 1));
}

bool evaluate(const EvalContext& ctx, Point p, const Formula& formula) {
  if (!ctx.system().system().contains(p)) {
    throw ModelError("point outside the system");
  }
  TruthVector demand(ctx.system().num_points(), 0);
  const std::size_t idx = ctx.system().index_of(p);
  demand[idx] = 1;
  return label(ctx, formula, demand)[idx];
}

Validity valid_in(const EvalContext& ctx, const Formula& formula) {
  const TruthVector v = label(ctx, formula);
  auto it = std::find(v.begin(), v.end(), 0);
  if (it == v.end()) return Validity{true, std::nullopt};
  return Validity{false, ctx.system().point_at(
                             static_cast<std::size_t>(it - v.begin()))};
}

std::vector<Point> satisfying_points(const EvalContext& ctx,
                                     const Formula& formula) {
  const TruthVector v = label(ctx, formula);
  std::vector<Point> points;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) points.push_back(ctx.system().point_at(i));
  }
  return points;
}

std::vector<std::string> satisfying_runs(const EvalContext& ctx,
                                         const Formula& formula) {
  std::vector<std::string> runs;
  for (const Point& p : satisfying_points(ctx, formula)) {
    const std::string& id = ctx.system().system().runs()[p.run].id;
    if (runs.empty() || runs.back() != id) runs.push_back(id);
  }
  return runs;
}

}  // namespace anoncheck
