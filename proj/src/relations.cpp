#include "resim/relations.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "resim/errors.hpp"

namespace resim {

std::string_view to_string(Counterexample::Kind k) {
  switch (k) {
    case Counterexample::Kind::order_violation: return "order_violation";
    case Counterexample::Kind::missing_move: return "missing_move";
    case Counterexample::Kind::unmatched_action: return "unmatched_action";
    case Counterexample::Kind::no_initial_match: return "no_initial_match";
  }
  return "?";
}

std::string_view to_string(CapabilityOrder o) {
  switch (o) {
    case CapabilityOrder::r2_below_r: return "r2_below_r";
    case CapabilityOrder::r_below_r2: return "r_below_r2";
    case CapabilityOrder::equi: return "equi";
    case CapabilityOrder::both_infeasible_equi: return "both_infeasible_equi";
    case CapabilityOrder::incomparable_never: return "incomparable_never";
  }
  return "?";
}

namespace {

double project(const TimeEnergyWeight& w, ObsProjection obs) {
  return obs == ObsProjection::energy ? w.energy : w.time;
}

// Transitions of one system bucketed by action id, per state.
struct MoveIndex {
  explicit MoveIndex(const WeightedTS& ts)
      : moves(ts.num_states(),
              std::vector<std::vector<StateId>>(ts.alphabet_size())) {
    for (StateId q = 0; q < ts.num_states(); ++q)
      for (const Transition& t : ts.transitions_from(q))
        moves[q][t.action].push_back(t.dst);
  }
  std::vector<std::vector<std::vector<StateId>>> moves;
};

// Shared state for the greatest-fixpoint relations.
struct FixpointCtx {
  const WeightedTS& t1;
  const WeightedTS& t2;
  MoveIndex idx1;
  MoveIndex idx2;
  std::vector<int> a1_to_a2;  // -1 when the label is absent from t2
  std::vector<char> rel;      // n1 x n2 membership

  FixpointCtx(const WeightedTS& t1_, const WeightedTS& t2_)
      : t1(t1_), t2(t2_), idx1(t1_), idx2(t2_) {
    if (!same_alphabet(t1, t2))
      throw InputError("transition systems have different alphabets");
    a1_to_a2.resize(t1.alphabet_size());
    for (std::size_t a = 0; a < t1.alphabet_size(); ++a)
      a1_to_a2[a] = t2.action_id(t1.action_label(static_cast<ActionId>(a)));
    rel.assign(static_cast<std::size_t>(t1.num_states()) * t2.num_states(), 0);
  }

  char& at(StateId p, StateId q) {
    return rel[static_cast<std::size_t>(p) * t2.num_states() + q];
  }
  bool in(StateId p, StateId q) const {
    return rel[static_cast<std::size_t>(p) * t2.num_states() + q] != 0;
  }

  template <typename OrderOk>
  void seed(const OrderOk& order_ok) {
    for (StateId p = 0; p < t1.num_states(); ++p)
      for (StateId q = 0; q < t2.num_states(); ++q)
        at(p, q) = order_ok(p, q) ? 1 : 0;
  }

  // Removes pairs violating the matching clause until stable.
  // `universal` selects the betterment clause (a move must exist and
  // every right move must stay in the relation).
  void refine(bool universal) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (StateId p = 0; p < t1.num_states(); ++p) {
        for (StateId q = 0; q < t2.num_states(); ++q) {
          if (!in(p, q)) continue;
          if (pair_ok(p, q, universal)) continue;
          at(p, q) = 0;
          changed = true;
        }
      }
    }
  }

  bool pair_ok(StateId p, StateId q, bool universal) const {
    for (std::size_t a1 = 0; a1 < t1.alphabet_size(); ++a1) {
      const std::vector<StateId>& targets1 = idx1.moves[p][a1];
      if (targets1.empty()) continue;
      int a2 = a1_to_a2[a1];
      const std::vector<StateId>* targets2 =
          a2 < 0 ? nullptr : &idx2.moves[q][a2];
      if (targets2 == nullptr || targets2->empty()) return false;
      for (StateId p2 : targets1) {
        if (universal) {
          for (StateId q2 : *targets2)
            if (!in(p2, q2)) return false;
        } else {
          bool matched = false;
          for (StateId q2 : *targets2)
            if (in(p2, q2)) { matched = true; break; }
          if (!matched) return false;
        }
      }
    }
    return true;
  }

  std::vector<std::pair<StateId, StateId>> surviving_pairs() const {
    std::vector<std::pair<StateId, StateId>> out;
    for (StateId p = 0; p < t1.num_states(); ++p)
      for (StateId q = 0; q < t2.num_states(); ++q)
        if (in(p, q)) out.emplace_back(p, q);
    return out;
  }
};

// Shortest refutation line from a failing initial pair: walk removed
// pairs along guilty moves until a locally violating pair is reached.
template <typename OrderOk>
Counterexample build_fixpoint_counterexample(const FixpointCtx& ctx, StateId p0,
                                             StateId q0, bool universal,
                                             const OrderOk& order_ok,
                                             ObsProjection obs) {
  struct Node {
    StateId p, q;
    int parent;
    std::string action;
  };
  std::vector<Node> nodes;
  std::map<std::pair<StateId, StateId>, bool> seen;
  std::deque<int> queue;
  nodes.push_back({p0, q0, -1, ""});
  seen[{p0, q0}] = true;
  queue.push_back(0);

  auto finish = [&](int node_idx, Counterexample ce) {
    std::vector<std::string> path;
    for (int i = node_idx; i > 0; i = nodes[i].parent) path.push_back(nodes[i].action);
    std::reverse(path.begin(), path.end());
    ce.path = std::move(path);
    return ce;
  };

  while (!queue.empty()) {
    int idx = queue.front();
    queue.pop_front();
    StateId p = nodes[idx].p, q = nodes[idx].q;

    if (!order_ok(p, q)) {
      Counterexample ce;
      ce.kind = Counterexample::Kind::order_violation;
      ce.p = p;
      ce.q = q;
      ce.left_obs = project(ctx.t1.observation(p), obs);
      ce.right_obs = project(ctx.t2.observation(q), obs);
      ce.message = "observation bound violated";
      return finish(idx, std::move(ce));
    }
    for (std::size_t a1 = 0; a1 < ctx.t1.alphabet_size(); ++a1) {
      const std::vector<StateId>& targets1 = ctx.idx1.moves[p][a1];
      if (targets1.empty()) continue;
      int a2 = ctx.a1_to_a2[a1];
      const std::string& label = ctx.t1.action_label(static_cast<ActionId>(a1));
      const std::vector<StateId>* targets2 =
          a2 < 0 ? nullptr : &ctx.idx2.moves[q][a2];
      if (targets2 == nullptr || targets2->empty()) {
        Counterexample ce;
        ce.kind = Counterexample::Kind::missing_move;
        ce.p = p;
        ce.q = q;
        ce.action = label;
        ce.message = "no matching move on action '" + label + "'";
        return finish(idx, std::move(ce));
      }
      for (StateId p2 : targets1) {
        if (universal) {
          // Any removed right successor individually justifies the step.
          for (StateId q2 : *targets2) {
            if (ctx.in(p2, q2) || seen.count({p2, q2})) continue;
            seen[{p2, q2}] = true;
            nodes.push_back({p2, q2, idx, label});
            queue.push_back(static_cast<int>(nodes.size()) - 1);
          }
        } else {
          bool guilty = true;
          for (StateId q2 : *targets2)
            if (ctx.in(p2, q2)) { guilty = false; break; }
          if (!guilty) continue;
          for (StateId q2 : *targets2) {
            if (seen.count({p2, q2})) continue;
            seen[{p2, q2}] = true;
            nodes.push_back({p2, q2, idx, label});
            queue.push_back(static_cast<int>(nodes.size()) - 1);
          }
        }
      }
    }
  }
  // Unreachable for genuinely removed pairs; keep a defined result.
  Counterexample ce;
  ce.kind = Counterexample::Kind::order_violation;
  ce.p = p0;
  ce.q = q0;
  ce.message = "relation does not hold";
  return ce;
}

template <typename OrderOk>
RelationVerdict fixpoint_relation(const WeightedTS& t1, const WeightedTS& t2,
                                  bool universal, ObsProjection obs,
                                  const OrderOk& order_ok) {
  FixpointCtx ctx(t1, t2);
  ctx.seed(order_ok);
  ctx.refine(universal);

  RelationVerdict verdict;
  verdict.holds = true;
  for (StateId p : t1.initial()) {
    if (universal) {
      for (StateId q : t2.initial()) {
        if (!ctx.in(p, q)) {
          verdict.holds = false;
          verdict.counterexample =
              build_fixpoint_counterexample(ctx, p, q, universal, order_ok, obs);
          break;
        }
      }
    } else {
      bool related = false;
      for (StateId q : t2.initial())
        if (ctx.in(p, q)) { related = true; break; }
      if (!related) {
        verdict.holds = false;
        if (t2.initial().empty()) {
          Counterexample ce;
          ce.kind = Counterexample::Kind::no_initial_match;
          ce.p = p;
          ce.message = "right system has no initial state";
          verdict.counterexample = std::move(ce);
        } else {
          verdict.counterexample = build_fixpoint_counterexample(
              ctx, p, t2.initial().front(), universal, order_ok, obs);
        }
      }
    }
    if (!verdict.holds) break;
  }
  if (verdict.holds) verdict.witness = ctx.surviving_pairs();
  return verdict;
}

}  // namespace

RelationVerdict largest_simulation(const WeightedTS& t1, const WeightedTS& t2,
                                   ObsProjection obs) {
  auto order_ok = [&](StateId p, StateId q) {
    return obs_leq(t2.observation(q), t1.observation(p), obs);
  };
  return fixpoint_relation(t1, t2, /*universal=*/false, obs, order_ok);
}

RelationVerdict largest_betterment(const WeightedTS& t1, const WeightedTS& t2,
                                   ObsProjection obs) {
  auto order_ok = [&](StateId p, StateId q) {
    return obs_leq(t2.observation(q), t1.observation(p), obs);
  };
  return fixpoint_relation(t1, t2, /*universal=*/true, obs, order_ok);
}

RelationVerdict check_c_simulation(const WeightedTS& t1, const WeightedTS& t2, double c,
                                   ObsProjection obs) {
  if (obs == ObsProjection::composite)
    throw InputError(
        "constant-factor simulation needs a scalar observation (time or energy)");
  if (!(c >= 0.0)) throw InputError("factor c must be a non-negative weight");
  auto order_ok = [&](StateId p, StateId q) {
    return approx_leq(project(t2.observation(q), obs),
                      c * project(t1.observation(p), obs));
  };
  return fixpoint_relation(t1, t2, /*universal=*/false, obs, order_ok);
}

RelationVerdict check_by_simulation(const WeightedTS& spec_ts,
                                    const WeightedTS& exec_ts) {
  for (StateId p = 0; p < spec_ts.num_states(); ++p) {
    std::vector<char> seen(spec_ts.alphabet_size(), 0);
    for (const Transition& t : spec_ts.transitions_from(p)) {
      if (seen[t.action])
        throw InputError("specification transition system must be deterministic");
      seen[t.action] = 1;
    }
  }
  if (spec_ts.initial().size() > 1)
    throw InputError("specification transition system must have one initial state");

  RelationVerdict verdict;
  verdict.holds = true;
  if (spec_ts.initial().empty() || exec_ts.initial().empty()) return verdict;
  StateId p0 = spec_ts.initial().front();

  struct Node {
    StateId p, q;
    int parent;
    std::string action;
  };
  std::vector<Node> nodes;
  std::map<std::pair<StateId, StateId>, bool> seen;
  std::deque<int> queue;
  for (StateId q0 : exec_ts.initial()) {
    if (seen.count({p0, q0})) continue;
    seen[{p0, q0}] = true;
    nodes.push_back({p0, q0, -1, ""});
    queue.push_back(static_cast<int>(nodes.size()) - 1);
  }

  auto fail = [&](int node_idx, Counterexample ce) {
    std::vector<std::string> path;
    for (int i = node_idx; i >= 0 && nodes[i].parent >= 0; i = nodes[i].parent)
      path.push_back(nodes[i].action);
    std::reverse(path.begin(), path.end());
    ce.path = std::move(path);
    verdict.holds = false;
    verdict.witness.clear();
    verdict.counterexample = std::move(ce);
  };

  while (!queue.empty()) {
    int idx = queue.front();
    queue.pop_front();
    StateId p = nodes[idx].p, q = nodes[idx].q;
    verdict.witness.emplace_back(p, q);

    const TimeEnergyWeight& op = spec_ts.observation(p);
    const TimeEnergyWeight& oq = exec_ts.observation(q);
    if (!approx_leq(oq.time, op.time)) {
      Counterexample ce;
      ce.kind = Counterexample::Kind::order_violation;
      ce.p = p;
      ce.q = q;
      ce.left_obs = op.time;
      ce.right_obs = oq.time;
      ce.message = "deadline exceeded: " + std::to_string(oq.time) + " > " +
                   std::to_string(op.time);
      fail(idx, std::move(ce));
      return verdict;
    }

    const std::vector<Transition>& spec_moves = spec_ts.transitions_from(p);
    if (spec_moves.empty()) continue;  // spec done; suffixes are unconstrained
    if (spec_moves.size() > 1) {
      Counterexample ce;
      ce.kind = Counterexample::Kind::missing_move;
      ce.p = p;
      ce.q = q;
      ce.message = "specification branches into several actions; no single path "
                   "can match them all";
      fail(idx, std::move(ce));
      return verdict;
    }
    const Transition& sm = spec_moves.front();
    const std::string& label = spec_ts.action_label(sm.action);

    bool any_match = false;
    for (const Transition& em : exec_ts.transitions_from(q)) {
      const std::string& elabel = exec_ts.action_label(em.action);
      if (elabel != label) {
        Counterexample ce;
        ce.kind = Counterexample::Kind::unmatched_action;
        ce.p = p;
        ce.q = q;
        ce.action = elabel;
        ce.message = "execution branches on action '" + elabel +
                     "' where the specification requires '" + label + "'";
        fail(idx, std::move(ce));
        return verdict;
      }
      any_match = true;
      if (!seen.count({sm.dst, em.dst})) {
        seen[{sm.dst, em.dst}] = true;
        nodes.push_back({sm.dst, em.dst, idx, label});
        queue.push_back(static_cast<int>(nodes.size()) - 1);
      }
    }
    if (!any_match) {
      Counterexample ce;
      ce.kind = Counterexample::Kind::missing_move;
      ce.p = p;
      ce.q = q;
      ce.action = label;
      ce.message = "execution has no move on action '" + label + "'";
      fail(idx, std::move(ce));
      return verdict;
    }
  }
  return verdict;
}

namespace {

double deterministic_max_ratio(const WeightedTS& t1, const WeightedTS& t2,
                               ObsProjection obs) {
  double best = -1.0;
  if (t1.initial().empty()) return best;
  if (t2.initial().empty())
    throw InputError(
        "no c-simulation exists at any factor: right system has no initial state");
  std::deque<std::pair<StateId, StateId>> queue{{t1.initial().front(),
                                                 t2.initial().front()}};
  std::map<std::pair<StateId, StateId>, bool> seen{{queue.front(), true}};
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    double o1 = project(t1.observation(p), obs);
    double o2 = project(t2.observation(q), obs);
    if (o1 <= kWeightTol) {
      if (o2 > kWeightTol)
        throw InputError("unbounded ratio: observation " + std::to_string(o2) +
                         " matched against zero");
      // 0/0 constrains nothing.
    } else {
      best = std::max(best, o2 / o1);
    }
    for (const Transition& tm : t1.transitions_from(p)) {
      auto succs = t2.successors(q, t1.action_label(tm.action));
      if (succs.empty())
        throw InputError("no c-simulation exists at any factor: move on '" +
                         t1.action_label(tm.action) + "' is unmatched");
      auto key = std::pair{tm.dst, succs.front().first};
      if (!seen.count(key)) {
        seen[key] = true;
        queue.push_back(key);
      }
    }
  }
  return best;
}

}  // namespace

double min_c_factor(const WeightedTS& t1, const WeightedTS& t2, ObsProjection obs) {
  if (obs == ObsProjection::composite)
    throw InputError("min_c_factor needs a scalar observation (time or energy)");
  if (!same_alphabet(t1, t2))
    throw InputError("transition systems have different alphabets");

  if (t1.deterministic() && t2.deterministic()) {
    double ratio = deterministic_max_ratio(t1, t2, obs);
    double c = ratio < 0.0 ? 1.0 : ratio;
    if (!check_c_simulation(t1, t2, c, obs).holds)
      throw InputError("internal: deterministic ratio bound failed verification");
    return c;
  }

  // Feasibility at any finite factor: pairs where a positive right
  // observation faces a zero left one can never be covered.
  auto finite_ok = [&](StateId p, StateId q) {
    return project(t1.observation(p), obs) > kWeightTol ||
           project(t2.observation(q), obs) <= kWeightTol;
  };
  FixpointCtx ctx(t1, t2);
  ctx.seed(finite_ok);
  ctx.refine(/*universal=*/false);
  if (!t1.initial().empty() && t2.initial().empty())
    throw InputError(
        "no c-simulation exists at any factor: right system has no initial state");
  for (StateId p : t1.initial()) {
    bool related = false;
    for (StateId q : t2.initial())
      if (ctx.in(p, q)) { related = true; break; }
    if (!related) throw InputError("unbounded ratio: no finite factor works");
  }
  double hi = 0.0;
  for (StateId p = 0; p < t1.num_states(); ++p)
    for (StateId q = 0; q < t2.num_states(); ++q) {
      if (!ctx.in(p, q)) continue;
      double o1 = project(t1.observation(p), obs);
      double o2 = project(t2.observation(q), obs);
      if (o1 > kWeightTol) hi = std::max(hi, o2 / o1);
    }
  if (hi <= 0.0) hi = 1.0;
  if (!check_c_simulation(t1, t2, hi, obs).holds)
    throw InputError("internal: upper bound failed verification in min_c_factor");
  double lo = 0.0;
  if (check_c_simulation(t1, t2, lo, obs).holds) return lo;
  while (hi - lo > 1e-9) {
    double mid = lo + (hi - lo) / 2.0;
    if (check_c_simulation(t1, t2, mid, obs).holds)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

CapabilityOrder capability_compare(std::string_view r, std::string_view r2,
                                   const WorkloadSpec& spec, const CostModel& m) {
  bool fr = feasible_on(r, spec, m);
  bool fr2 = feasible_on(r2, spec, m);
  if (fr && fr2) return CapabilityOrder::equi;
  if (!fr && !fr2) return CapabilityOrder::both_infeasible_equi;
  return fr ? CapabilityOrder::r2_below_r : CapabilityOrder::r_below_r2;
}

}  // namespace resim
