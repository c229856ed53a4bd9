#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rmdf/rational.hpp"

namespace rmdf {

enum class ActorKind {
  Usual,
  Timed,
  Duplicater,
  Splitter,
  Joiner,
  ControlledSplitter,
  ControlledJoiner,
  ModeDecider,
};

// Routing actors move tokens without computing; they execute in zero time.
bool is_routing(ActorKind k);
const char* kind_name(ActorKind k);
std::optional<ActorKind> kind_from_name(const std::string& name);

struct Actor {
  std::string id;
  ActorKind kind = ActorKind::Usual;
  Rational frequency_hz;  // Timed only; > 0
  Rational phase_ms;      // Timed only; 0 <= phase < period
  Rational bcet_ms;
  Rational wcet_ms;

  bool timed() const { return kind == ActorKind::Timed; }
  bool routing() const { return is_routing(kind); }
  Rational period_ms() const { return Rational(1000) / frequency_hz; }
};

// A port rate: either a constant positive rational or a parameter name bound
// by the graph's mode table (branch gating).
struct Rate {
  Rational value;         // meaningful when parameter is empty
  std::string parameter;  // non-empty => parametric

  bool parametric() const { return !parameter.empty(); }
  static Rate constant(Rational v) { return Rate{std::move(v), {}}; }
  static Rate param(std::string name) { return Rate{Rational(0), std::move(name)}; }
  bool operator==(const Rate& o) const {
    return parameter == o.parameter && (parametric() || value == o.value);
  }
};

enum class ChannelClass { Data, Control };

struct Channel {
  std::string id;
  std::string producer;
  std::string consumer;
  Rate prod_rate;
  Rate cons_rate;
  Rational initial_tokens;  // may be fractional; symbolic accounting only
  ChannelClass klass = ChannelClass::Data;

  bool control() const { return klass == ChannelClass::Control; }
  bool self_loop() const { return producer == consumer; }
};

struct ModeTable {
  std::vector<std::string> modes;                        // declaration order
  std::map<std::pair<std::string, std::string>, int> assignment;  // (mode, param) -> 0/1

  bool empty() const { return modes.empty(); }
  std::optional<int> value(const std::string& mode, const std::string& param) const;
  std::set<std::string> parameters() const;
  int mode_index(const std::string& mode) const;  // -1 when unknown
};

struct Graph {
  std::vector<Actor> actors;      // declaration order preserved
  std::vector<Channel> channels;  // declaration order preserved
  ModeTable mode_table;

  int actor_index(const std::string& id) const;    // -1 when unknown
  int channel_index(const std::string& id) const;  // -1 when unknown
  const Actor* find_actor(const std::string& id) const;
  const Channel* find_channel(const std::string& id) const;

  std::vector<int> in_channels(int actor) const;
  std::vector<int> out_channels(int actor) const;

  bool has_parametric_rates() const;
  bool structurally_equal(const Graph& other) const;
};

struct Violation {
  std::string code;     // stable identifier, e.g. "uncontrolled routing actor"
  std::string message;  // human-readable detail
  std::string actor;    // offending actor id, when applicable
  std::string channel;  // offending channel id, when applicable
};

struct ValidationReport {
  std::vector<Violation> violations;  // canonical order: code, actor, channel
  bool ok() const { return violations.empty(); }
};

// Reports all invariant violations as data. Idempotent and insensitive to
// declaration order: the result is canonically sorted.
ValidationReport validate_graph(const Graph& g);

// All actors conditioned by the given mode decider: everything on data paths
// between its governed controlled splitters and joiners, routing actors
// excluded. Throws UsageError when the id is not a ModeDecider.
std::set<std::string> control_area(const Graph& g, const std::string& decider_id);

// Controlled splitters/joiners governed by the decider (reached by its
// control tokens through duplicaters).
std::set<std::string> governed_routing(const Graph& g, const std::string& decider_id);

}  // namespace rmdf
