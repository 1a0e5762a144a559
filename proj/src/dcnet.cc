#include "anoncheck/dcnet.h"

#include "anoncheck/anonymity.h"
#include "anoncheck/errors.h"
#include "anoncheck/evaluator.h"

namespace anoncheck::dcnet {
namespace {

std::string bits(const std::vector<int>& v) {
  std::string s;
  for (int b : v) s.push_back(static_cast<char>('0' + b));
  return s;
}

AgentId crypto(int i, int n) { return std::to_string(((i % n) + n) % n); }

void validate_priors(const DcConfig& cfg) {
  if (!cfg.priors) return;
  Rational total = 0;
  for (const auto& [key, p] : *cfg.priors) {
    bool known = key == kNsa;
    for (int i = 0; i < cfg.n && !known; ++i) known = key == std::to_string(i);
    if (!known) throw ModelError("prior for unknown payer '" + key + "'");
    if (p < 0) throw ModelError("negative prior for payer '" + key + "'");
    total += p;
  }
  if (total != 1) {
    throw ModelError("payer priors sum to " + to_string(total) + ", not 1");
  }
}

Rational prior_of(const DcConfig& cfg, const std::string& payer) {
  auto it = cfg.priors->find(payer);
  return it == cfg.priors->end() ? Rational(0) : it->second;
}

}  // namespace

Formula someone_paid(int n) {
  std::vector<Formula> payers;
  for (int i = 0; i < n; ++i) {
    payers.push_back(Formula::theta(crypto(i, n), std::string(kPaid)));
  }
  return Formula::any_of(std::move(payers));
}

DcSystem build_dc_system(const DcConfig& cfg) {
  if (cfg.n < 3) throw ModelError("a DC-net needs at least 3 cryptographers");
  if (cfg.n > 16) throw ModelError("ring size above 16 is not supported");
  validate_priors(cfg);
  const int n = cfg.n;

  std::vector<AgentId> roster;
  for (int i = 0; i < n; ++i) roster.push_back(crypto(i, n));
  if (cfg.include_outsider) roster.emplace_back(kOutsider);

  std::vector<Run> runs;
  std::vector<DcRunInfo> infos;
  std::map<std::string, Rational> weights;
  const Rational coin_weight(1, 1LL << n);

  for (int payer = -1; payer < n; ++payer) {
    const std::string payer_name = payer < 0 ? std::string(kNsa) : crypto(payer, n);
    Rational prior = 0;
    if (cfg.priors) {
      prior = prior_of(cfg, payer_name);
      if (prior == 0) continue;
    }
    for (int mask = 0; mask < (1 << n); ++mask) {
      DcRunInfo info;
      if (payer >= 0) info.payer = payer;
      info.coins.resize(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) info.coins[static_cast<std::size_t>(k)] = (mask >> (n - 1 - k)) & 1;
      auto coin = [&](int k) { return info.coins[static_cast<std::size_t>(((k % n) + n) % n)]; };
      for (int i = 0; i < n; ++i) {
        info.announcements.push_back(coin(i - 1) ^ coin(i) ^ (payer == i ? 1 : 0));
      }
      info.id = "p" + payer_name + "_c" + bits(info.coins);

      const std::string ann = bits(info.announcements);
      const std::string env = "payer=" + payer_name + ";coins=" + bits(info.coins);
      Run run;
      run.id = info.id;
      for (int t = 0; t <= 1; ++t) {
        GlobalState g;
        g.env = LocalState{env};
        for (int i = 0; i < n; ++i) {
          std::string s = "t=" + std::to_string(t) +
                          ";paid=" + std::to_string(payer == i ? 1 : 0) +
                          ";coins=" + std::to_string(coin(i - 1)) +
                          std::to_string(coin(i));
          if (t == 1) s += ";ann=" + ann;
          g.locals.push_back(LocalState{std::move(s)});
        }
        if (cfg.include_outsider) {
          g.locals.push_back(LocalState{t == 0 ? "t=0" : "t=1;ann=" + ann});
        }
        run.states.push_back(std::move(g));
      }
      if (payer >= 0) {
        run.events.push_back(Event{crypto(payer, n), std::string(kPaid), 0});
      }
      if (cfg.priors) weights.emplace(run.id, prior * coin_weight);
      runs.push_back(std::move(run));
      infos.push_back(std::move(info));
    }
  }

  System system(std::move(roster), std::move(runs));
  // Reorder metadata to the system's canonical run order.
  std::vector<DcRunInfo> ordered(infos.size());
  for (DcRunInfo& info : infos) {
    ordered[*system.find_run(info.id)] = std::move(info);
  }
  std::optional<RunMeasure> measure;
  if (cfg.priors) measure.emplace(system, weights);
  return DcSystem{InterpretedSystem(std::move(system)), std::move(ordered),
                  std::move(measure)};
}

std::vector<Formula> dc_spec_formulas(const DcConfig& cfg) {
  if (cfg.n < 3) throw ModelError("a DC-net needs at least 3 cryptographers");
  const int n = cfg.n;
  const std::string paid(kPaid);
  std::vector<Formula> result;
  for (int i = 0; i < n; ++i) {
    std::vector<Formula> conjuncts;
    for (int d = 1; d < n; ++d) {
      for (int e = 1; e < n; ++e) {
        if ((d + e) % n == 0) continue;  // the payer itself
        conjuncts.push_back(Formula::possible(
            crypto(i + d, n), Formula::theta(crypto(i + d + e, n), paid)));
      }
    }
    if (cfg.include_outsider) {
      for (int d = 1; d < n; ++d) {
        conjuncts.push_back(Formula::possible(
            std::string(kOutsider), Formula::theta(crypto(i + d, n), paid)));
      }
    }
    result.push_back(Formula::implies(Formula::theta(crypto(i, n), paid),
                                      Formula::all_of(std::move(conjuncts))));
  }
  return result;
}

DcConditionalSpec dc_conditional_spec(const DcConfig& cfg) {
  if (!cfg.priors) {
    throw ModelError("the conditional specification needs payer priors");
  }
  const DcSystem dc = build_dc_system(cfg);
  const EvalContext ctx(dc.system, &*dc.measure);
  const int n = cfg.n;
  const std::string paid(kPaid);

  DcConditionalSpec spec;
  const Formula gamma = someone_paid(n);
  for (int i = 0; i < n; ++i) {
    spec.alpha.emplace(crypto(i, n),
                       prior_probability(ctx, Formula::theta(crypto(i, n), paid),
                                         gamma));
  }

  for (int i = 0; i < n; ++i) {
    const AgentId payer = crypto(i, n);
    std::vector<Formula> conjuncts;
    for (int d = 1; d < n; ++d) {
      const AgentId observer = crypto(i + d, n);
      Rational denominator = 0;
      for (int k = 0; k < n; ++k) {
        if (crypto(k, n) != observer) denominator += spec.alpha.at(crypto(k, n));
      }
      ConditionalEntry entry{payer, observer, std::nullopt};
      if (denominator == 0) {
        spec.problems.push_back("alpha(" + payer + "," + observer +
                                ") has a zero denominator; conjunct omitted");
      } else {
        entry.value = spec.alpha.at(payer) / denominator;
        conjuncts.push_back(Formula::implies(
            Formula::knows(observer, Formula::theta_other(observer, paid)),
            Formula::probability(observer, Formula::theta(payer, paid),
                                 std::nullopt, Comparison::kEqual,
                                 *entry.value)));
      }
      spec.entries.push_back(std::move(entry));
    }
    if (cfg.include_outsider) {
      const AgentId o(kOutsider);
      spec.entries.push_back(ConditionalEntry{payer, o, spec.alpha.at(payer)});
      conjuncts.push_back(Formula::implies(
          Formula::knows(o, Formula::theta_other(o, paid)),
          Formula::probability(o, Formula::theta(payer, paid), std::nullopt,
                               Comparison::kEqual, spec.alpha.at(payer))));
    }
    if (conjuncts.empty()) {
      spec.problems.push_back("no defined conjunct for cryptographer " + payer);
      continue;
    }
    spec.formulas.push_back(Formula::all_of(std::move(conjuncts)));
  }
  return spec;
}

}  // namespace anoncheck::dcnet
