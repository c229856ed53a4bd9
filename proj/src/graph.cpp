#include "rmdf/graph.hpp"

#include <algorithm>
#include <deque>

namespace rmdf {

bool is_routing(ActorKind k) {
  switch (k) {
    case ActorKind::Duplicater:
    case ActorKind::Splitter:
    case ActorKind::Joiner:
    case ActorKind::ControlledSplitter:
    case ActorKind::ControlledJoiner:
      return true;
    default:
      return false;
  }
}

const char* kind_name(ActorKind k) {
  switch (k) {
    case ActorKind::Usual: return "usual";
    case ActorKind::Timed: return "timed";
    case ActorKind::Duplicater: return "duplicater";
    case ActorKind::Splitter: return "splitter";
    case ActorKind::Joiner: return "joiner";
    case ActorKind::ControlledSplitter: return "controlled-splitter";
    case ActorKind::ControlledJoiner: return "controlled-joiner";
    case ActorKind::ModeDecider: return "mode-decider";
  }
  return "?";
}

std::optional<ActorKind> kind_from_name(const std::string& name) {
  static const std::pair<const char*, ActorKind> table[] = {
      {"usual", ActorKind::Usual},
      {"timed", ActorKind::Timed},
      {"duplicater", ActorKind::Duplicater},
      {"splitter", ActorKind::Splitter},
      {"joiner", ActorKind::Joiner},
      {"controlled-splitter", ActorKind::ControlledSplitter},
      {"controlled-joiner", ActorKind::ControlledJoiner},
      {"mode-decider", ActorKind::ModeDecider},
  };
  for (const auto& [n, k] : table)
    if (name == n) return k;
  return std::nullopt;
}

std::optional<int> ModeTable::value(const std::string& mode, const std::string& param) const {
  auto it = assignment.find({mode, param});
  if (it == assignment.end()) return std::nullopt;
  return it->second;
}

std::set<std::string> ModeTable::parameters() const {
  std::set<std::string> out;
  for (const auto& [key, _] : assignment) out.insert(key.second);
  return out;
}

int ModeTable::mode_index(const std::string& mode) const {
  for (size_t i = 0; i < modes.size(); ++i)
    if (modes[i] == mode) return static_cast<int>(i);
  return -1;
}

int Graph::actor_index(const std::string& id) const {
  for (size_t i = 0; i < actors.size(); ++i)
    if (actors[i].id == id) return static_cast<int>(i);
  return -1;
}

int Graph::channel_index(const std::string& id) const {
  for (size_t i = 0; i < channels.size(); ++i)
    if (channels[i].id == id) return static_cast<int>(i);
  return -1;
}

const Actor* Graph::find_actor(const std::string& id) const {
  int i = actor_index(id);
  return i < 0 ? nullptr : &actors[i];
}

const Channel* Graph::find_channel(const std::string& id) const {
  int i = channel_index(id);
  return i < 0 ? nullptr : &channels[i];
}

std::vector<int> Graph::in_channels(int actor) const {
  std::vector<int> out;
  for (size_t i = 0; i < channels.size(); ++i)
    if (channels[i].consumer == actors[actor].id) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Graph::out_channels(int actor) const {
  std::vector<int> out;
  for (size_t i = 0; i < channels.size(); ++i)
    if (channels[i].producer == actors[actor].id) out.push_back(static_cast<int>(i));
  return out;
}

bool Graph::has_parametric_rates() const {
  for (const auto& c : channels)
    if (c.prod_rate.parametric() || c.cons_rate.parametric()) return true;
  return false;
}

bool Graph::structurally_equal(const Graph& other) const {
  if (actors.size() != other.actors.size()) return false;
  if (channels.size() != other.channels.size()) return false;
  for (size_t i = 0; i < actors.size(); ++i) {
    const Actor& a = actors[i];
    const Actor& b = other.actors[i];
    if (a.id != b.id || a.kind != b.kind || a.bcet_ms != b.bcet_ms || a.wcet_ms != b.wcet_ms)
      return false;
    if (a.timed() && (a.frequency_hz != b.frequency_hz || a.phase_ms != b.phase_ms))
      return false;
  }
  for (size_t i = 0; i < channels.size(); ++i) {
    const Channel& a = channels[i];
    const Channel& b = other.channels[i];
    if (a.id != b.id || a.producer != b.producer || a.consumer != b.consumer ||
        !(a.prod_rate == b.prod_rate) || !(a.cons_rate == b.cons_rate) ||
        a.initial_tokens != b.initial_tokens || a.klass != b.klass)
      return false;
  }
  return mode_table.modes == other.mode_table.modes &&
         mode_table.assignment == other.mode_table.assignment;
}

namespace {

struct Validator {
  const Graph& g;
  std::vector<Violation> out;

  void add(std::string code, std::string message, std::string actor = {},
           std::string channel = {}) {
    out.push_back({std::move(code), std::move(message), std::move(actor), std::move(channel)});
  }

  void check_actors() {
    std::set<std::string> seen;
    for (const auto& a : g.actors) {
      if (!seen.insert(a.id).second)
        add("duplicate actor id", "actor '" + a.id + "' declared more than once", a.id);
      if (a.bcet_ms.is_negative())
        add("negative execution time", "actor '" + a.id + "' has bcet < 0", a.id);
      if (a.bcet_ms > a.wcet_ms)
        add("bcet exceeds wcet", "actor '" + a.id + "' has bcet > wcet", a.id);
      if (a.routing() && (!a.bcet_ms.is_zero() || !a.wcet_ms.is_zero()))
        add("routing actor with nonzero execution time",
            "routing actor '" + a.id + "' must have execution time 0", a.id);
      if (a.timed()) {
        if (!a.frequency_hz.is_positive())
          add("nonpositive frequency", "timed actor '" + a.id + "' needs frequency > 0", a.id);
        else if (a.phase_ms.is_negative() || a.phase_ms >= a.period_ms())
          add("phase out of range",
              "timed actor '" + a.id + "' needs 0 <= phase < period", a.id);
      }
    }
  }

  void check_channels() {
    std::set<std::string> seen;
    for (const auto& c : g.channels) {
      if (!seen.insert(c.id).second)
        add("duplicate channel id", "channel '" + c.id + "' declared more than once", {}, c.id);
      if (g.actor_index(c.producer) < 0)
        add("unknown actor reference",
            "channel '" + c.id + "' references undeclared producer '" + c.producer + "'", {},
            c.id);
      if (g.actor_index(c.consumer) < 0)
        add("unknown actor reference",
            "channel '" + c.id + "' references undeclared consumer '" + c.consumer + "'", {},
            c.id);
      for (const Rate* r : {&c.prod_rate, &c.cons_rate}) {
        if (!r->parametric() && !r->value.is_positive())
          add("nonpositive rate", "channel '" + c.id + "' has a rate <= 0", {}, c.id);
      }
      if (c.initial_tokens.is_negative())
        add("negative initial tokens", "channel '" + c.id + "' has init < 0", {}, c.id);
    }
  }

  // Parametric rates may only gate a controlled splitter's outputs or a
  // controlled joiner's inputs, and their parameters must be bound in every
  // mode of the table.
  void check_parameters() {
    for (const auto& c : g.channels) {
      const Actor* p = g.find_actor(c.producer);
      const Actor* k = g.find_actor(c.consumer);
      bool gated_position = (p && p->kind == ActorKind::ControlledSplitter) ||
                            (k && k->kind == ActorKind::ControlledJoiner);
      for (const Rate* r : {&c.prod_rate, &c.cons_rate}) {
        if (!r->parametric()) continue;
        if (!gated_position)
          add("parametric rate outside control area",
              "channel '" + c.id + "' has parametric rate '" + r->parameter +
                  "' but is not a controlled splitter output or controlled joiner input",
              {}, c.id);
        if (g.mode_table.empty()) {
          add("unbound mode parameter",
              "parameter '" + r->parameter + "' on channel '" + c.id +
                  "' but the graph has no mode table",
              {}, c.id);
          continue;
        }
        for (const auto& m : g.mode_table.modes) {
          auto v = g.mode_table.value(m, r->parameter);
          if (!v)
            add("unbound mode parameter",
                "parameter '" + r->parameter + "' has no value in mode '" + m + "'", {}, c.id);
          else if (*v != 0 && *v != 1)
            add("parameter value not 0/1",
                "parameter '" + r->parameter + "' is " + std::to_string(*v) + " in mode '" + m +
                    "'; branch gates are one-hot",
                {}, c.id);
        }
      }
    }
  }

  // Control channels must originate (through duplicaters) at a mode decider
  // and terminate (through duplicaters) at controlled splitters/joiners.
  void check_control_channels() {
    for (const auto& c : g.channels) {
      if (!c.control()) continue;
      const Actor* p = g.find_actor(c.producer);
      const Actor* k = g.find_actor(c.consumer);
      if (p && p->kind != ActorKind::ModeDecider && p->kind != ActorKind::Duplicater)
        add("control channel origin",
            "control channel '" + c.id + "' starts at '" + c.producer +
                "', not a mode decider or duplicater",
            {}, c.id);
      if (k && k->kind != ActorKind::ControlledSplitter &&
          k->kind != ActorKind::ControlledJoiner && k->kind != ActorKind::Duplicater)
        add("control channel target",
            "control channel '" + c.id + "' ends at '" + c.consumer +
                "', not a controlled splitter/joiner or duplicater",
            {}, c.id);
    }
    // Duplicaters on a control path must trace back to a decider.
    for (size_t i = 0; i < g.actors.size(); ++i) {
      const Actor& a = g.actors[i];
      if (a.kind != ActorKind::ControlledSplitter && a.kind != ActorKind::ControlledJoiner)
        continue;
      int control_inputs = 0;
      bool reaches_decider = false;
      for (int ci : g.in_channels(static_cast<int>(i))) {
        if (!g.channels[ci].control()) continue;
        ++control_inputs;
        // walk upstream through duplicaters
        std::string cur = g.channels[ci].producer;
        std::set<std::string> guard;
        while (guard.insert(cur).second) {
          const Actor* pa = g.find_actor(cur);
          if (!pa) break;
          if (pa->kind == ActorKind::ModeDecider) { reaches_decider = true; break; }
          if (pa->kind != ActorKind::Duplicater) break;
          int pi = g.actor_index(cur);
          std::string next;
          for (int up : g.in_channels(pi))
            if (g.channels[up].control()) { next = g.channels[up].producer; break; }
          if (next.empty()) break;
          cur = next;
        }
      }
      if (control_inputs == 0)
        add("uncontrolled routing actor",
            "'" + a.id + "' has no incoming control channel", a.id);
      else if (control_inputs > 1)
        add("multiple control inputs",
            "'" + a.id + "' has " + std::to_string(control_inputs) +
                " incoming control channels",
            a.id);
      else if (!reaches_decider)
        add("control channel origin",
            "control input of '" + a.id + "' does not trace back to a mode decider", a.id);
    }
  }

  // One-hot gating: per controlled splitter (resp. joiner), in every mode
  // exactly one outgoing (resp. incoming) branch parameter values 1.
  void check_one_hot() {
    if (g.mode_table.empty()) return;
    for (size_t i = 0; i < g.actors.size(); ++i) {
      const Actor& a = g.actors[i];
      bool splitter = a.kind == ActorKind::ControlledSplitter;
      bool joiner = a.kind == ActorKind::ControlledJoiner;
      if (!splitter && !joiner) continue;
      auto branch_channels =
          splitter ? g.out_channels(static_cast<int>(i)) : g.in_channels(static_cast<int>(i));
      std::vector<std::string> gates;
      for (int ci : branch_channels) {
        const Channel& c = g.channels[ci];
        if (c.control()) continue;
        if (c.prod_rate.parametric())
          gates.push_back(c.prod_rate.parameter);
        else if (c.cons_rate.parametric())
          gates.push_back(c.cons_rate.parameter);
        else
          add("ungated branch",
              "channel '" + c.id + "' on '" + a.id + "' carries no branch parameter", a.id,
              c.id);
      }
      for (const auto& m : g.mode_table.modes) {
        int ones = 0;
        for (const auto& p : gates) {
          auto v = g.mode_table.value(m, p);
          if (v && *v == 1) ++ones;
        }
        if (!gates.empty() && ones != 1)
          add("branch gating not one-hot",
              "'" + a.id + "' has " + std::to_string(ones) + " active branches in mode '" + m +
                  "'",
              a.id);
      }
    }
  }

  // Every gated branch must run from a controlled splitter output to a
  // controlled joiner input governed by the same decider.
  void check_branch_closure() {
    for (size_t i = 0; i < g.actors.size(); ++i) {
      if (g.actors[i].kind != ActorKind::ModeDecider) continue;
      auto governed = governed_routing(g, g.actors[i].id);
      std::set<std::string> joiners, splitters;
      for (const auto& id : governed) {
        const Actor* a = g.find_actor(id);
        if (a && a->kind == ActorKind::ControlledSplitter) splitters.insert(id);
        if (a && a->kind == ActorKind::ControlledJoiner) joiners.insert(id);
      }
      for (const auto& sid : splitters) {
        int si = g.actor_index(sid);
        for (int ci : g.out_channels(si)) {
          if (g.channels[ci].control()) continue;
          // follow the branch forward until a controlled joiner
          std::set<std::string> visited;
          std::deque<std::string> work{g.channels[ci].consumer};
          bool closed = false, escaped = false;
          while (!work.empty()) {
            std::string cur = work.front();
            work.pop_front();
            if (!visited.insert(cur).second) continue;
            const Actor* a = g.find_actor(cur);
            if (!a) continue;
            if (a->kind == ActorKind::ControlledJoiner) {
              if (joiners.count(cur)) closed = true;
              else escaped = true;
              continue;
            }
            int ai = g.actor_index(cur);
            auto outs = g.out_channels(ai);
            bool any_out = false;
            for (int oc : outs) {
              if (g.channels[oc].control()) continue;
              any_out = true;
              work.push_back(g.channels[oc].consumer);
            }
            if (!any_out) escaped = true;  // branch dead-ends outside a joiner
          }
          if (!closed || escaped)
            add("branch escapes control area",
                "branch from '" + sid + "' via channel '" + g.channels[ci].id +
                    "' does not close at a controlled joiner of the same control area",
                sid, g.channels[ci].id);
        }
      }
    }
  }

  // Plain splitters consume one token per job and distribute by the
  // numerators of their output rates; mirrored for joiners.
  void check_distributors() {
    for (size_t i = 0; i < g.actors.size(); ++i) {
      const Actor& a = g.actors[i];
      if (a.kind == ActorKind::Splitter || a.kind == ActorKind::Joiner) {
        bool splitter = a.kind == ActorKind::Splitter;
        auto fan = splitter ? g.out_channels(static_cast<int>(i))
                            : g.in_channels(static_cast<int>(i));
        auto single = splitter ? g.in_channels(static_cast<int>(i))
                               : g.out_channels(static_cast<int>(i));
        Rational sum = 0;
        bool parametric = false;
        for (int ci : fan) {
          const Rate& r = splitter ? g.channels[ci].prod_rate : g.channels[ci].cons_rate;
          if (r.parametric()) { parametric = true; continue; }
          sum += r.value;
        }
        if (parametric)
          add("parametric rate outside control area",
              "plain splitter/joiner '" + a.id + "' has a parametric rate", a.id);
        else if (!fan.empty() && sum != Rational(1))
          add("distribution rates do not sum to one",
              "'" + a.id + "' fan rates sum to " + sum.str() + ", expected 1", a.id);
        for (int ci : single) {
          const Rate& r = splitter ? g.channels[ci].cons_rate : g.channels[ci].prod_rate;
          if (r.parametric() || r.value != Rational(1))
            add("distributor unit rate",
                "'" + a.id + "' must move one token per job on channel '" + g.channels[ci].id +
                    "'",
                a.id, g.channels[ci].id);
        }
      }
      if (a.kind == ActorKind::Duplicater) {
        for (int ci : g.in_channels(static_cast<int>(i))) {
          const Rate& r = g.channels[ci].cons_rate;
          if (r.parametric() || r.value != Rational(1))
            add("duplicater unit rate",
                "duplicater '" + a.id + "' must consume rate 1 on '" + g.channels[ci].id + "'",
                a.id, g.channels[ci].id);
        }
        for (int ci : g.out_channels(static_cast<int>(i))) {
          const Rate& r = g.channels[ci].prod_rate;
          if (r.parametric() || r.value != Rational(1))
            add("duplicater unit rate",
                "duplicater '" + a.id + "' must produce rate 1 on '" + g.channels[ci].id + "'",
                a.id, g.channels[ci].id);
        }
      }
    }
  }

  void check_modes() {
    std::set<std::string> names;
    for (const auto& m : g.mode_table.modes)
      if (!names.insert(m).second)
        add("duplicate mode", "mode '" + m + "' declared more than once");
  }
};

}  // namespace

ValidationReport validate_graph(const Graph& g) {
  Validator v{g};
  v.check_actors();
  v.check_channels();
  v.check_parameters();
  v.check_control_channels();
  v.check_one_hot();
  v.check_branch_closure();
  v.check_distributors();
  v.check_modes();
  std::sort(v.out.begin(), v.out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.code, a.actor, a.channel, a.message) <
           std::tie(b.code, b.actor, b.channel, b.message);
  });
  v.out.erase(std::unique(v.out.begin(), v.out.end(),
                          [](const Violation& a, const Violation& b) {
                            return a.code == b.code && a.actor == b.actor &&
                                   a.channel == b.channel && a.message == b.message;
                          }),
              v.out.end());
  return ValidationReport{std::move(v.out)};
}

std::set<std::string> governed_routing(const Graph& g, const std::string& decider_id) {
  const Actor* d = g.find_actor(decider_id);
  if (!d || d->kind != ActorKind::ModeDecider)
    throw UsageError("'" + decider_id + "' is not a mode decider");
  std::set<std::string> governed;
  std::set<std::string> visited;
  std::deque<std::string> work{decider_id};
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    if (!visited.insert(cur).second) continue;
    int ai = g.actor_index(cur);
    for (int ci : g.out_channels(ai)) {
      if (!g.channels[ci].control()) continue;
      const std::string& target = g.channels[ci].consumer;
      const Actor* t = g.find_actor(target);
      if (!t) continue;
      if (t->kind == ActorKind::Duplicater) work.push_back(target);
      if (t->kind == ActorKind::ControlledSplitter || t->kind == ActorKind::ControlledJoiner)
        governed.insert(target);
    }
  }
  return governed;
}

std::set<std::string> control_area(const Graph& g, const std::string& decider_id) {
  auto governed = governed_routing(g, decider_id);
  std::set<std::string> joiners;
  std::set<std::string> area;
  for (const auto& id : governed) {
    const Actor* a = g.find_actor(id);
    if (a && a->kind == ActorKind::ControlledJoiner) joiners.insert(id);
  }
  for (const auto& sid : governed) {
    const Actor* s = g.find_actor(sid);
    if (!s || s->kind != ActorKind::ControlledSplitter) continue;
    std::set<std::string> visited;
    std::deque<std::string> work;
    int si = g.actor_index(sid);
    for (int ci : g.out_channels(si))
      if (!g.channels[ci].control()) work.push_back(g.channels[ci].consumer);
    while (!work.empty()) {
      std::string cur = work.front();
      work.pop_front();
      if (joiners.count(cur)) continue;
      if (!visited.insert(cur).second) continue;
      const Actor* a = g.find_actor(cur);
      if (!a) continue;
      if (!a->routing()) area.insert(cur);
      int ai = g.actor_index(cur);
      for (int oc : g.out_channels(ai))
        if (!g.channels[oc].control()) work.push_back(g.channels[oc].consumer);
    }
  }
  return area;
}

}  // namespace rmdf
