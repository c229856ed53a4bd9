#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmdf/flow.hpp"
#include "rmdf/graph.hpp"

namespace rmdf {

// Channels x actors matrix of signed rates: production positive at the
// producer column, consumption negative at the consumer column. Self-loop
// rows cancel on one column and are excluded from the null-space rows.
// Parametric rates are substituted by the given mode's values, so rows of a
// gated-off branch may carry a zero on one side.
struct TopologyMatrix {
  std::vector<std::string> channel_ids;  // row labels
  std::vector<std::string> actor_ids;    // column labels
  std::vector<std::vector<Rational>> entries;
  std::vector<std::string> excluded_self_loops;
};

TopologyMatrix topology_matrix(const Graph& g,
                               const std::optional<std::string>& mode = std::nullopt);

// Smallest positive integer job counts balancing every channel. Actors that
// a mode gates off entirely are omitted (their count is zero). Without a
// mode argument on a parametric graph, the per-mode vectors are merged
// (entry-wise maximum after aligning shared actors), so every actor carries
// its count in the modes where it is active.
struct RepetitionVector {
  std::vector<std::pair<std::string, long long>> counts;  // declaration order

  long long count(const std::string& actor) const;
  bool contains(const std::string& actor) const { return count(actor) > 0; }
};

struct InconsistencyReport {
  std::vector<std::string> conflicts;
  std::string str() const;
};

using RepetitionResult = std::variant<RepetitionVector, InconsistencyReport>;

RepetitionResult repetition_vector(const Graph& g,
                                   const std::optional<std::string>& mode = std::nullopt);

// Rational gcd of all timed periods and nonzero phases; the time quantum of
// symbolic execution. Requires at least one timed actor.
Rational compute_tick(const Graph& g);

struct Hyperperiod {
  Rational length_ms;
  RepetitionVector jobs;
};

using HyperperiodResult = std::variant<Hyperperiod, InconsistencyReport>;

// Smallest span that is an integer multiple of every period and over which
// the timed job counts extend to integral counts for all actors.
HyperperiodResult compute_hyperperiod(const Graph& g);

struct BlockedLink {
  std::string actor;
  long long job = 0;
  std::string channel;
  Rational deficit;
};

struct DeadlockInfo {
  long long tick = 0;
  Rational time_ms;
  std::string actor;
  long long job = 0;
  std::string channel;
  Rational deficit;  // minimal extra initial tokens unblocking the job
  std::string context;             // mode valuation under which it occurred
  std::vector<BlockedLink> chain;  // blocked dependency chain from the
                                   // mandatory firing to the root
};

struct LivenessReport {
  bool live = false;
  std::optional<DeadlockInfo> deadlock;
  std::optional<InconsistencyReport> inconsistency;
  std::vector<std::string> contexts;  // valuations checked
  std::vector<std::string> notes;
};

// Symbolic tick-by-tick execution over one hyperperiod. Timed actors must
// fire at their activation instants; untimed actors fire as soon as data
// allows, up to their hyperperiod counts. With an empty mode_sequence every
// constant mode valuation is checked plus rotating sequences; a non-empty
// sequence is applied to every mode decider, cycled when exhausted.
LivenessReport check_liveness(const Graph& g,
                              const std::vector<std::string>& mode_sequence = {});

}  // namespace rmdf
