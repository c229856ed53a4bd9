#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmdf/graph.hpp"
#include "rmdf/rational.hpp"

namespace rmdf {

// Normalized per-channel flow semantics shared by the static analyses, the
// timing propagation and the simulator.
//
// A channel adjacent to a controlled splitter (producer side) or controlled
// joiner (consumer side) that carries a parametric rate is a gated branch:
// the parameter marks which branch a mode activates, the constant port fixes
// the token amount. The gate applies at the routing actor's port, job by job,
// driven by that actor's control tokens. Both published orientations of the
// parameter (branch-side or routing-side port) normalize to the same
// semantics here.
struct FlowChannel {
  int channel = -1;   // index into Graph::channels
  int producer = -1;  // actor indices
  int consumer = -1;
  Rational prod_rate;      // ungated amount per producer job
  Rational cons_rate;      // ungated amount per consumer job
  std::string prod_gate;   // parameter gating production ("" = ungated)
  std::string cons_gate;   // parameter gating consumption ("" = ungated)
  Rational initial;        // initial tokens (may be fractional)
  bool control = false;
  bool self_loop = false;
};

// Lexicographic distribution of a plain splitter (outputs) or joiner
// (inputs): one token moves per job, cycling through the member channels in
// lexicographic id order, n_i consecutive jobs per channel, where n_i is the
// numerator of the member rate and total = sum of numerators.
struct Rotation {
  int actor = -1;
  bool output_side = true;           // splitter outputs vs joiner inputs
  std::vector<int> channels;         // flow-channel indices, lexicographic
  std::vector<long long> counts;     // tokens per cycle on each member
  std::vector<long long> prefix;     // exclusive prefix sums of counts
  long long total = 0;

  int position_of(int flow_channel) const;
  // Job (1-based) that moves token t (1-based) on the member at `pos`.
  long long job_for_token(int pos, long long t) const;
  // The member position the given job serves, and the token index it moves.
  std::pair<int, long long> token_for_job(long long job) const;
  // Tokens moved on member `pos` after `jobs` jobs.
  long long moved_after(int pos, long long jobs) const;
};

// Graph + normalized channels + rotations + control wiring, built once and
// shared read-only by the engines.
class Flow {
public:
  explicit Flow(const Graph& g);

  const Graph& graph() const { return *g_; }
  const std::vector<FlowChannel>& channels() const { return channels_; }
  const FlowChannel& channel(int i) const { return channels_[i]; }

  const std::vector<int>& inputs(int actor) const { return in_[actor]; }
  const std::vector<int>& outputs(int actor) const { return out_[actor]; }

  // Rotation the channel takes part in, keyed by flow-channel index;
  // nullptr when the producer/consumer is not a plain splitter/joiner.
  const Rotation* producer_rotation(int flow_channel) const;
  const Rotation* consumer_rotation(int flow_channel) const;

  // Mode decider governing a controlled splitter/joiner (actor index),
  // -1 when none.
  int decider_of(int actor) const { return decider_of_[actor]; }

  int actor_count() const { return static_cast<int>(g_->actors.size()); }

private:
  const Graph* g_;
  std::vector<FlowChannel> channels_;
  std::vector<std::vector<int>> in_, out_;
  std::vector<Rotation> rotations_;
  std::map<int, int> prod_rotation_;  // flow-channel -> rotation index
  std::map<int, int> cons_rotation_;
  std::vector<int> decider_of_;
};

// Per-mode gate valuation helper: value of a gate parameter in a mode
// (1 when the gate is empty).
int gate_value(const Graph& g, const std::string& mode, const std::string& gate);

}  // namespace rmdf
