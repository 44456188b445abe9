// Copyright 2026 The Soar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "soar/lower_search.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <queue>

namespace soar {

namespace {

std::optional<Leg> TryLeg(const PlanningContext& ctx, const Pose& from,
                          Vec2 to) {
  try {
    return BuildLeg(from, to, ctx.constants(), ctx.limits());
  } catch (const NoSolution&) {
    return std::nullopt;
  }
}

// Waypoints available to one glider for one allocation: allocated
// interest points, then thermals, then the final position.
struct Table {
  std::vector<Waypoint> wps;
  std::vector<int> rank;  // position of each id in sorted id order
  int final_index = 0;
  int n_alloc = 0;

  Table(const Scenario& s, int glider, const Allocation& allocation) {
    for (const auto& id : allocation) {
      const Waypoint* w = s.FindWaypoint(id);
      if (w == nullptr || w->kind != WaypointKind::kInterestPoint) {
        throw std::invalid_argument("unknown interest point " + id);
      }
      wps.push_back(*w);
    }
    n_alloc = static_cast<int>(wps.size());
    for (const auto& t : s.thermals) wps.push_back(t);
    final_index = static_cast<int>(wps.size());
    wps.push_back(s.gliders.at(glider).final_waypoint());
    if (wps.size() > 64) {
      throw std::invalid_argument("more than 64 waypoints for one glider");
    }
    std::vector<int> idx(wps.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return wps[a].id < wps[b].id; });
    rank.assign(wps.size(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i) rank[idx[i]] = i;
  }
};

struct Node {
  int parent = -1;
  int wp = -1;
  Pose pose;
  double s_l = 0.0;
  double height = 0.0;  // start height plus credited thermal gains
  int visited = 0;      // allocated interest points in the order
  std::uint64_t mask = 0;
  bool goal = false;
};

class Search {
 public:
  Search(const PlanningContext& ctx, int glider, const Allocation& allocation)
      : ctx_(ctx),
        glider_(glider),
        table_(ctx.scenario(), glider, allocation),
        p_l_(PenaltyLower(ctx.scenario(), glider)) {}

  LowerSolution Run(const Allocation& allocation) {
    const GliderSpec& g = ctx_.scenario().gliders.at(glider_);
    Node root;
    root.pose = g.start;
    root.height = g.start_height;
    arena_.push_back(root);

    // Phase one: uniform-cost search over valid nodes.
    Queue open(Less{this, false});
    Queue weak_open(Less{this, true});
    open.push(0);
    int best = -1;
    while (!open.empty()) {
      const int n = open.top();
      open.pop();
      if (arena_[n].goal) {
        best = n;
        break;
      }
      ++stats_.phase1_expanded;
      ForEachChild(n, [&](int c) {
        if (Valid(c)) {
          assert(Cost(c) > Cost(n));
          open.push(c);
        } else if (WeaklyValid(c)) {
          weak_open.push(c);
        }
      });
    }
    if (best < 0) {
      throw Infeasible("glider " + g.id +
                       " cannot reach its final position");
    }

    // Phase two: weak-cost search from the weakly valid frontier. The
    // phase-one result competes as a candidate.
    const double best_weak = Weak(best);
    int weak = best;
    while (!weak_open.empty()) {
      const int n = weak_open.top();
      if (!(Weak(n) < best_weak)) break;
      weak_open.pop();
      if (arena_[n].goal) {
        weak = n;
        break;
      }
      ++stats_.phase2_expanded;
      ForEachChild(n, [&](int c) {
        if (WeaklyValid(c)) {
          assert(Weak(c) >= Weak(n));
          weak_open.push(c);
        }
      });
    }

    LowerSolution out;
    out.best = EvaluateOrder(ctx_, glider_, allocation, Ids(best));
    out.weak = weak == best ? out.best
                            : EvaluateOrder(ctx_, glider_, allocation,
                                            Ids(weak));
    out.s_l_best = arena_[best].s_l;
    out.k_l_best = K(best);
    out.s_l_weak = arena_[weak].s_l;
    out.k_l_weak = K(weak);
    out.cost_best = Cost(best);
    out.weak_cost = Weak(weak);
    out.stats = stats_;
    return out;
  }

 private:
  struct Less {
    const Search* s;
    bool weak;
    // priority_queue keeps the largest on top, so "less" means "worse".
    bool operator()(int a, int b) const { return s->Before(b, a, weak); }
  };
  using Queue = std::priority_queue<int, std::vector<int>, Less>;

  int K(int n) const { return table_.n_alloc - arena_[n].visited; }
  double Budget(int n) const {
    return arena_[n].height / ctx_.tan_gamma();
  }
  bool Valid(int n) const { return arena_[n].s_l < Budget(n); }
  bool WeaklyValid(int n) const {
    return arena_[n].s_l / ctx_.r_max() < Budget(n);
  }
  double Cost(int n) const {
    return NodeCost(arena_[n].s_l, K(n), arena_[n].goal, p_l_);
  }
  double Weak(int n) const {
    return WeakCost(arena_[n].s_l, K(n), arena_[n].goal, p_l_, ctx_.r_max());
  }

  // Ties: fewer unvisited, shorter, then lexicographic id sequence.
  bool Before(int a, int b, bool weak) const {
    const double ca = weak ? Weak(a) : Cost(a);
    const double cb = weak ? Weak(b) : Cost(b);
    if (ca != cb) return ca < cb;
    if (K(a) != K(b)) return K(a) < K(b);
    if (arena_[a].s_l != arena_[b].s_l) return arena_[a].s_l < arena_[b].s_l;
    const std::vector<int> sa = Ranks(a), sb = Ranks(b);
    if (sa != sb) return std::lexicographical_compare(sa.begin(), sa.end(),
                                                      sb.begin(), sb.end());
    return a < b;
  }

  std::vector<int> Ranks(int n) const {
    std::vector<int> out;
    for (; arena_[n].parent >= 0; n = arena_[n].parent) {
      out.push_back(table_.rank[arena_[n].wp]);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::vector<std::string> Ids(int n) const {
    std::vector<std::string> out;
    for (; arena_[n].parent >= 0; n = arena_[n].parent) {
      out.push_back(table_.wps[arena_[n].wp].id);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  template <typename F>
  void ForEachChild(int n, F&& f) {
    for (int w = 0; w < static_cast<int>(table_.wps.size()); ++w) {
      if (arena_[n].mask & (std::uint64_t{1} << w)) continue;
      const Waypoint& wp = table_.wps[w];
      std::optional<Leg> leg = TryLeg(ctx_, arena_[n].pose, wp.position);
      if (!leg) {
        ++stats_.dropped_legs;
        continue;
      }
      Node c;
      c.parent = n;
      c.wp = w;
      c.pose = leg->end_pose();
      c.s_l = arena_[n].s_l + leg->l_f;
      c.height = arena_[n].height + wp.height_gain;
      c.visited = arena_[n].visited + (w < table_.n_alloc ? 1 : 0);
      c.mask = arena_[n].mask | (std::uint64_t{1} << w);
      c.goal = w == table_.final_index;
      arena_.push_back(c);
      ++stats_.generated;
      f(static_cast<int>(arena_.size()) - 1);
    }
  }

  const PlanningContext& ctx_;
  int glider_;
  Table table_;
  double p_l_;
  std::vector<Node> arena_;
  LowerStats stats_;
};

}  // namespace

PlanningContext::PlanningContext(Scenario scenario)
    : scenario_(std::move(scenario)) {
  std::vector<Violation> violations = Validate(scenario_);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  constants_ = ComputeCcConstants(scenario_.limits);
  l_min_ = MinSpacing(scenario_).l_min;
  r_max_ = RatioBound(l_min_, constants_, scenario_.limits);
  tan_gamma_ = std::tan(scenario_.limits.gamma_d_min);
}

double PenaltyLower(const Scenario& scenario, int glider) {
  double h = scenario.gliders.at(glider).start_height;
  for (const auto& t : scenario.thermals) h += t.height_gain;
  return (h + 1.0) / std::tan(scenario.limits.gamma_d_min);
}

double MaxArclength(const Scenario& scenario, int glider,
                    const std::vector<std::string>& order) {
  double h = scenario.gliders.at(glider).start_height;
  for (const auto& id : order) {
    const Waypoint* w = scenario.FindWaypoint(id);
    if (w != nullptr) h += w->height_gain;
  }
  return h / std::tan(scenario.limits.gamma_d_min);
}

double NodeCost(double s_l, int k_l, bool is_goal, double p_l) {
  return is_goal ? s_l + k_l * p_l : s_l;
}

double WeakCost(double s_l, int k_l, bool is_goal, double p_l, double r_max) {
  return is_goal ? s_l / r_max + k_l * p_l : s_l / r_max;
}

VisitationOrder EvaluateOrder(const PlanningContext& ctx, int glider,
                              const Allocation& allocation,
                              const std::vector<std::string>& order) {
  const Scenario& s = ctx.scenario();
  const GliderSpec& g = s.gliders.at(glider);
  VisitationOrder out;
  out.glider_id = g.id;
  out.valid = true;
  out.weakly_valid = true;
  Pose pose = g.start;
  double height = g.start_height;  // physical height at the leg start
  double credited = g.start_height;
  int visited = 0;
  for (const auto& id : order) {
    if (out.is_goal) throw std::invalid_argument("order continues past final");
    Waypoint wp;
    if (id == g.final_id()) {
      wp = g.final_waypoint();
      out.is_goal = true;
    } else if (const Waypoint* w = s.FindWaypoint(id)) {
      wp = *w;
    } else {
      throw std::invalid_argument("unknown waypoint " + id);
    }
    if (std::find(out.waypoints.begin(), out.waypoints.end(), id) !=
        out.waypoints.end()) {
      throw std::invalid_argument("waypoint " + id + " repeated");
    }
    if (wp.kind == WaypointKind::kInterestPoint &&
        std::find(allocation.begin(), allocation.end(), id) !=
            allocation.end()) {
      ++visited;
    }
    Leg leg = BuildLeg(pose, wp.position, ctx.constants(), ctx.limits());
    out.s_l += leg.l_f;
    out.height_start.push_back(height);
    height -= ctx.tan_gamma() * leg.l_f;
    out.height_end.push_back(height);
    height += wp.height_gain;
    credited += wp.height_gain;
    const double budget = credited / ctx.tan_gamma();
    out.valid = out.valid && out.s_l < budget;
    out.weakly_valid = out.weakly_valid && out.s_l / ctx.r_max() < budget;
    pose = leg.end_pose();
    out.legs.push_back(std::move(leg));
    out.waypoints.push_back(id);
  }
  out.k_l = static_cast<int>(allocation.size()) - visited;
  return out;
}

std::vector<VisitationOrder> Expand(const PlanningContext& ctx, int glider,
                                    const Allocation& allocation,
                                    const VisitationOrder& node,
                                    std::size_t* dropped) {
  std::vector<VisitationOrder> out;
  if (node.is_goal) return out;
  const Scenario& s = ctx.scenario();
  std::vector<std::string> candidates = allocation;
  for (const auto& t : s.thermals) candidates.push_back(t.id);
  candidates.push_back(s.gliders.at(glider).final_id());
  for (const auto& id : candidates) {
    if (std::find(node.waypoints.begin(), node.waypoints.end(), id) !=
        node.waypoints.end()) {
      continue;
    }
    std::vector<std::string> order = node.waypoints;
    order.push_back(id);
    try {
      out.push_back(EvaluateOrder(ctx, glider, allocation, order));
    } catch (const NoSolution&) {
      if (dropped != nullptr) ++*dropped;
    }
  }
  return out;
}

LowerSolution SolveLower(const PlanningContext& ctx, int glider,
                         const Allocation& allocation) {
  Allocation sorted = allocation;
  std::sort(sorted.begin(), sorted.end());
  return Search(ctx, glider, sorted).Run(sorted);
}

std::string LowerCache::Key(int glider, const Allocation& allocation) {
  Allocation sorted = allocation;
  std::sort(sorted.begin(), sorted.end());
  std::string key = std::to_string(glider) + ":";
  for (const auto& id : sorted) key += id + ",";
  return key;
}

std::shared_ptr<const LowerSolution> LowerCache::Get(
    int glider, const Allocation& allocation) {
  const std::string key = Key(glider, allocation);
  {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  auto solved = std::make_shared<const LowerSolution>(
      SolveLower(ctx_, glider, allocation));
  std::unique_lock lock(mu_);
  return map_.try_emplace(key, std::move(solved)).first->second;
}

bool LowerCache::Contains(int glider, const Allocation& allocation) const {
  std::shared_lock lock(mu_);
  return map_.count(Key(glider, allocation)) > 0;
}

std::size_t LowerCache::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

}  // namespace soar
