#ifndef ANONCHECK_DCNET_H_
#define ANONCHECK_DCNET_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anoncheck/formula.h"
#include "anoncheck/prob.h"
#include "anoncheck/rational.h"
#include "anoncheck/system.h"

namespace anoncheck::dcnet {

inline constexpr std::string_view kPaid = "paid";
inline constexpr std::string_view kNsa = "NSA";
inline constexpr std::string_view kOutsider = "o";

// Cryptographers are agents "0" .. "n-1" seated in a ring; coin k is shared
// by cryptographers k and k+1 (mod n). The payer is a cryptographer or the
// NSA, which is not an agent.
struct DcConfig {
  int n = 3;
  bool include_outsider = true;
  // Keys "0".."n-1" and "NSA". Runs whose payer has prior 0 are omitted.
  std::optional<std::map<std::string, Rational>> priors;
};

struct DcRunInfo {
  std::string id;
  std::optional<int> payer;  // nullopt: the NSA paid
  std::vector<int> coins;
  std::vector<int> announcements;
};

struct DcSystem {
  InterpretedSystem system;
  std::vector<DcRunInfo> runs;  // parallel to system.system().runs()
  std::optional<RunMeasure> measure;
};

// All (payer, coin vector) combinations over horizon 1. At time 0 each
// cryptographer sees its two coins and whether it paid; at time 1 all
// announcements (coin XOR coin XOR paid) become public. The outsider sees
// only the announcements. Throws ModelError for n < 3 or invalid priors.
DcSystem build_dc_system(const DcConfig& cfg);

// Paying is anonymous up to C - {j} for each other cryptographer j and up to
// C for the outsider: one formula per cryptographer i.
std::vector<Formula> dc_spec_formulas(const DcConfig& cfg);

struct ConditionalEntry {
  AgentId payer;     // i
  AgentId observer;  // j (a cryptographer or the outsider)
  // alpha(i, j); nullopt when its denominator vanishes.
  std::optional<Rational> value;
};

struct DcConditionalSpec {
  std::vector<Formula> formulas;           // one per cryptographer i
  std::map<AgentId, Rational> alpha;       // alpha(i) = mu(theta(i) | gamma)
  std::vector<ConditionalEntry> entries;   // alpha(i, j)
  std::vector<std::string> problems;       // zero denominators, skipped conjuncts
};

// Conditional anonymity requirements with
//   alpha(i)   = mu(e_r(theta(i,paid)) | e_r(gamma)),
//   alpha(i,o) = alpha(i),
//   alpha(i,j) = alpha(i) / sum_{k != j} alpha(k)   (cryptographers j != i).
// Needs priors; throws ZeroConditioningEvent if no cryptographer can pay.
DcConditionalSpec dc_conditional_spec(const DcConfig& cfg);

// gamma: some cryptographer paid.
Formula someone_paid(int n);

}  // namespace anoncheck::dcnet

#endif  // ANONCHECK_DCNET_H_
