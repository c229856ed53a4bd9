#include "rmdf/flow.hpp"

#include <algorithm>

namespace rmdf {

int Rotation::position_of(int flow_channel) const {
  for (size_t i = 0; i < channels.size(); ++i)
    if (channels[i] == flow_channel) return static_cast<int>(i);
  return -1;
}

long long Rotation::job_for_token(int pos, long long t) const {
  long long cycle = (t - 1) / counts[pos];
  long long within = (t - 1) % counts[pos];
  return cycle * total + prefix[pos] + within + 1;
}

std::pair<int, long long> Rotation::token_for_job(long long job) const {
  long long cycle = (job - 1) / total;
  long long slot = (job - 1) % total;
  int pos = 0;
  while (pos + 1 < static_cast<int>(prefix.size()) && prefix[pos + 1] <= slot) ++pos;
  long long t = cycle * counts[pos] + (slot - prefix[pos]) + 1;
  return {pos, t};
}

long long Rotation::moved_after(int pos, long long jobs) const {
  if (jobs <= 0) return 0;
  long long cycles = jobs / total;
  long long slot = jobs % total;
  long long extra = std::clamp(slot - prefix[pos], 0LL, counts[pos]);
  return cycles * counts[pos] + extra;
}

int gate_value(const Graph& g, const std::string& mode, const std::string& gate) {
  if (gate.empty()) return 1;
  auto v = g.mode_table.value(mode, gate);
  if (!v) throw UsageError("parameter '" + gate + "' unbound in mode '" + mode + "'");
  return *v;
}

Flow::Flow(const Graph& g) : g_(&g) {
  int n = static_cast<int>(g.actors.size());
  in_.resize(n);
  out_.resize(n);
  decider_of_.assign(n, -1);

  channels_.reserve(g.channels.size());
  for (size_t i = 0; i < g.channels.size(); ++i) {
    const Channel& c = g.channels[i];
    FlowChannel f;
    f.channel = static_cast<int>(i);
    f.producer = g.actor_index(c.producer);
    f.consumer = g.actor_index(c.consumer);
    f.initial = c.initial_tokens;
    f.control = c.control();
    f.self_loop = c.self_loop();
    bool pp = c.prod_rate.parametric();
    bool cp = c.cons_rate.parametric();
    if (!pp && !cp) {
      f.prod_rate = c.prod_rate.value;
      f.cons_rate = c.cons_rate.value;
    } else {
      // The constant port fixes the token amount; 1 when both parametric.
      Rational amount = pp ? (cp ? Rational(1) : c.cons_rate.value) : c.prod_rate.value;
      f.prod_rate = amount;
      f.cons_rate = amount;
      std::string param = pp ? c.prod_rate.parameter : c.cons_rate.parameter;
      bool attached = false;
      if (f.producer >= 0 && g.actors[f.producer].kind == ActorKind::ControlledSplitter) {
        f.prod_gate = param;
        attached = true;
      }
      if (f.consumer >= 0 && g.actors[f.consumer].kind == ActorKind::ControlledJoiner) {
        f.cons_gate = param;
        attached = true;
      }
      if (!attached) {
        // Invalid per validation; keep the gate on the declared port so the
        // structure is still inspectable.
        (pp ? f.prod_gate : f.cons_gate) = param;
      }
    }
    if (f.producer >= 0) out_[f.producer].push_back(static_cast<int>(channels_.size()));
    if (f.consumer >= 0) in_[f.consumer].push_back(static_cast<int>(channels_.size()));
    channels_.push_back(std::move(f));
  }

  // Rotations for plain splitters (outputs) and joiners (inputs).
  for (int a = 0; a < n; ++a) {
    ActorKind k = g.actors[a].kind;
    if (k != ActorKind::Splitter && k != ActorKind::Joiner) continue;
    bool output_side = k == ActorKind::Splitter;
    std::vector<int> members = output_side ? out_[a] : in_[a];
    if (members.empty()) continue;
    std::sort(members.begin(), members.end(), [&](int x, int y) {
      return g.channels[channels_[x].channel].id < g.channels[channels_[y].channel].id;
    });
    Rotation rot;
    rot.actor = a;
    rot.output_side = output_side;
    // counts are the numerators over the common cycle; the cycle length is
    // the lcm of member-rate denominators.
    std::vector<Rational> rates;
    for (int m : members)
      rates.push_back(output_side ? channels_[m].prod_rate : channels_[m].cons_rate);
    mpz_class cycle = 1;
    for (const auto& r : rates) {
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), cycle.get_mpz_t(), r.den().get_mpz_t());
      cycle = l;
    }
    long long total = 0;
    for (size_t i = 0; i < members.size(); ++i) {
      mpz_class cnt = rates[i].num() * (cycle / rates[i].den());
      long long c = cnt.get_si();
      rot.channels.push_back(members[i]);
      rot.counts.push_back(c);
      rot.prefix.push_back(total);
      total += c;
    }
    rot.total = total == 0 ? 1 : total;
    int idx = static_cast<int>(rotations_.size());
    for (int m : rot.channels)
      (output_side ? prod_rotation_ : cons_rotation_)[m] = idx;
    rotations_.push_back(std::move(rot));
  }

  // Governing deciders for controlled splitters/joiners.
  for (int a = 0; a < n; ++a) {
    ActorKind k = g.actors[a].kind;
    if (k != ActorKind::ControlledSplitter && k != ActorKind::ControlledJoiner) continue;
    for (int ci : in_[a]) {
      if (!channels_[ci].control) continue;
      int cur = channels_[ci].producer;
      std::set<int> guard;
      while (cur >= 0 && guard.insert(cur).second) {
        if (g.actors[cur].kind == ActorKind::ModeDecider) {
          decider_of_[a] = cur;
          break;
        }
        if (g.actors[cur].kind != ActorKind::Duplicater) break;
        int next = -1;
        for (int up : in_[cur])
          if (channels_[up].control) { next = channels_[up].producer; break; }
        cur = next;
      }
      if (decider_of_[a] >= 0) break;
    }
  }
}

const Rotation* Flow::producer_rotation(int flow_channel) const {
  auto it = prod_rotation_.find(flow_channel);
  return it == prod_rotation_.end() ? nullptr : &rotations_[it->second];
}

const Rotation* Flow::consumer_rotation(int flow_channel) const {
  auto it = cons_rotation_.find(flow_channel);
  return it == cons_rotation_.end() ? nullptr : &rotations_[it->second];
}

}  // namespace rmdf
