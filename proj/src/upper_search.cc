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

#include "soar/upper_search.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <utility>

namespace soar {

namespace {

using Clock = std::chrono::steady_clock;

struct Request {
  int glider;
  Allocation allocation;
};

// Tracks which (glider, allocation) pairs one run asked for and solves
// the missing ones, optionally in parallel.
class LowerPool {
 public:
  LowerPool(const PlanningContext& ctx, const SolveOptions& options)
      : own_(options.cache == nullptr
                 ? std::make_unique<LowerCache>(ctx)
                 : nullptr),
        cache_(options.cache != nullptr ? *options.cache : *own_),
        threads_(std::max(1, options.threads)) {}

  LowerCache& cache() { return cache_; }
  std::size_t requested() const { return requested_.size(); }

  void Note(const Scenario& s, const AllocationMap& node) {
    for (std::size_t g = 0; g < node.size(); ++g) {
      requested_.insert(
          LowerCache::Key(static_cast<int>(g), AllocationIds(s, node[g])));
    }
  }

  // Solves every request not yet cached. Results are idempotent, so the
  // order in which workers finish does not matter.
  void Prefetch(const std::vector<Request>& requests) {
    std::vector<const Request*> missing;
    std::unordered_set<std::string> seen;
    for (const auto& r : requests) {
      const std::string key = LowerCache::Key(r.glider, r.allocation);
      if (seen.insert(key).second && !cache_.Contains(r.glider, r.allocation)) {
        missing.push_back(&r);
      }
    }
    const int workers =
        std::min<int>(threads_, static_cast<int>(missing.size()));
    if (workers <= 1) {
      for (const Request* r : missing) cache_.Get(r->glider, r->allocation);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < missing.size(); i = next++) {
          try {
            cache_.Get(missing[i]->glider, missing[i]->allocation);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (error) std::rethrow_exception(error);
  }

 private:
  std::unique_ptr<LowerCache> own_;
  LowerCache& cache_;
  int threads_;
  std::set<std::string> requested_;
};

std::vector<Request> RequestsFor(const Scenario& s,
                                 const std::vector<AllocationMap>& nodes) {
  std::vector<Request> out;
  for (const auto& node : nodes) {
    for (std::size_t g = 0; g < node.size(); ++g) {
      out.push_back({static_cast<int>(g), AllocationIds(s, node[g])});
    }
  }
  return out;
}

PlanResult Finish(std::string algorithm, AllocationSet best,
                  SearchStats stats, Clock::time_point t0) {
  PlanResult out;
  out.algorithm = std::move(algorithm);
  for (const auto& l : best.lower) out.orders.push_back(l->best);
  out.best = std::move(best);
  out.stats = std::move(stats);
  out.stats.wall_time_s =
      std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

}  // namespace

double PenaltyUpper(const Scenario& scenario) {
  double h = 0.0;
  for (const auto& g : scenario.gliders) h += g.start_height;
  for (const auto& t : scenario.thermals) h += t.height_gain;
  return (h + 1.0) / std::tan(scenario.limits.gamma_d_min);
}

std::vector<AllocationMap> ChildrenUpper(const AllocationMap& node, int n_ip) {
  std::vector<bool> taken(n_ip, false);
  for (const auto& a : node) {
    for (int ip : a) taken.at(ip) = true;
  }
  std::vector<AllocationMap> out;
  for (std::size_t g = 0; g < node.size(); ++g) {
    for (int ip = 0; ip < n_ip; ++ip) {
      if (taken[ip]) continue;
      AllocationMap child = node;
      auto& a = child[g];
      a.insert(std::upper_bound(a.begin(), a.end(), ip), ip);
      out.push_back(std::move(child));
    }
  }
  return out;
}

bool IsExhaustive(const AllocationMap& node, int n_ip) {
  std::size_t n = 0;
  for (const auto& a : node) n += a.size();
  return static_cast<int>(n) == n_ip;
}

std::string AllocationKey(const Scenario& scenario, const AllocationMap& node) {
  std::string key;
  for (std::size_t g = 0; g < node.size(); ++g) {
    if (g > 0) key += "|";
    key += scenario.gliders.at(g).id + "{";
    for (std::size_t i = 0; i < node[g].size(); ++i) {
      if (i > 0) key += ",";
      key += scenario.interest_points.at(node[g][i]).id;
    }
    key += "}";
  }
  return key;
}

Allocation AllocationIds(const Scenario& scenario,
                         const std::vector<int>& ips) {
  Allocation out;
  for (int ip : ips) out.push_back(scenario.interest_points.at(ip).id);
  std::sort(out.begin(), out.end());
  return out;
}

AllocationSet EvaluateAllocation(const PlanningContext& ctx, LowerCache& cache,
                                 const AllocationMap& node) {
  const Scenario& s = ctx.scenario();
  if (node.size() != s.gliders.size()) {
    throw std::invalid_argument("allocation does not cover every glider");
  }
  AllocationSet out;
  out.allocation = node;
  out.is_goal =
      IsExhaustive(node, static_cast<int>(s.interest_points.size()));
  for (std::size_t g = 0; g < node.size(); ++g) {
    auto lower = cache.Get(static_cast<int>(g), AllocationIds(s, node[g]));
    out.k_u += lower->k_l_best;
    out.s_u += lower->s_l_best;
    out.v_weak += lower->weak_cost;
    out.lower.push_back(std::move(lower));
  }
  out.v_u = out.s_u + PenaltyUpper(s) * out.k_u;
  return out;
}

bool AllocationBefore(const Scenario& scenario, const AllocationSet& a,
                      const AllocationSet& b) {
  if (a.v_u != b.v_u) return a.v_u < b.v_u;
  if (a.k_u != b.k_u) return a.k_u < b.k_u;
  if (a.s_u != b.s_u) return a.s_u < b.s_u;
  return AllocationKey(scenario, a.allocation) <
         AllocationKey(scenario, b.allocation);
}

PlanResult SolveBnb(const PlanningContext& ctx, const SolveOptions& options) {
  const auto t0 = Clock::now();
  const Scenario& s = ctx.scenario();
  const int n_ip = static_cast<int>(s.interest_points.size());
  LowerPool pool(ctx, options);
  SearchStats stats;

  const AllocationMap root_map(s.gliders.size());
  pool.Note(s, root_map);
  pool.Prefetch(RequestsFor(s, {root_map}));
  AllocationSet root = EvaluateAllocation(ctx, pool.cache(), root_map);
  ++stats.allocations_evaluated;
  if (root.is_goal) {
    stats.incumbent_history.push_back(root.v_u);
    stats.lower_solves = pool.requested();
    return Finish("bnb", std::move(root), std::move(stats), t0);
  }

  // Min-heap on the deterministic allocation order.
  auto worse = [&](const std::shared_ptr<AllocationSet>& a,
                   const std::shared_ptr<AllocationSet>& b) {
    return AllocationBefore(s, *b, *a);
  };
  std::priority_queue<std::shared_ptr<AllocationSet>,
                      std::vector<std::shared_ptr<AllocationSet>>,
                      decltype(worse)>
      open(worse);
  std::unordered_set<std::string> visited{AllocationKey(s, root_map)};
  open.push(std::make_shared<AllocationSet>(std::move(root)));

  double upper = std::numeric_limits<double>::infinity();
  std::shared_ptr<AllocationSet> incumbent;
  while (!open.empty()) {
    const std::shared_ptr<AllocationSet> node = open.top();
    open.pop();
    if (!(node->v_weak < upper)) {
      ++stats.pruned_count;
      continue;
    }
    ++stats.upper_nodes_expanded;
    std::vector<AllocationMap> children;
    for (auto& c : ChildrenUpper(node->allocation, n_ip)) {
      if (visited.insert(AllocationKey(s, c)).second) {
        children.push_back(std::move(c));
      }
    }
    for (const auto& c : children) pool.Note(s, c);
    pool.Prefetch(RequestsFor(s, children));
    for (const auto& c : children) {
      auto child = std::make_shared<AllocationSet>(
          EvaluateAllocation(ctx, pool.cache(), c));
      ++stats.allocations_evaluated;
      ++stats.upper_nodes_generated;
      if (child->is_goal && child->v_u < upper) {
        upper = child->v_u;
        incumbent = child;
        stats.incumbent_history.push_back(upper);
      }
      if (child->v_weak <= upper) {
        open.push(std::move(child));
      } else {
        ++stats.pruned_count;
      }
    }
  }
  stats.lower_solves = pool.requested();
  if (!incumbent) {
    // Unreachable: every exhaustive allocation has a finite cost.
    throw std::logic_error("branch and bound finished without a goal");
  }
  return Finish("bnb", *incumbent, std::move(stats), t0);
}

PlanResult SolveBrute(const PlanningContext& ctx, const SolveOptions& options) {
  const auto t0 = Clock::now();
  const Scenario& s = ctx.scenario();
  const int n_g = static_cast<int>(s.gliders.size());
  const int n_ip = static_cast<int>(s.interest_points.size());
  const double total = std::pow(static_cast<double>(n_g), n_ip);
  if (total > options.brute_guard) {
    throw TooLarge(std::to_string(n_g) + "^" + std::to_string(n_ip) +
                   " allocation sets exceed the enumeration guard");
  }
  LowerPool pool(ctx, options);
  SearchStats stats;

  // Owner digits in base n_g, interest point 0 least significant.
  std::vector<AllocationMap> all;
  std::vector<int> owner(n_ip, 0);
  for (std::size_t k = 0; k < static_cast<std::size_t>(total); ++k) {
    AllocationMap node(n_g);
    for (int ip = 0; ip < n_ip; ++ip) node[owner[ip]].push_back(ip);
    all.push_back(std::move(node));
    for (int ip = 0; ip < n_ip; ++ip) {
      if (++owner[ip] < n_g) break;
      owner[ip] = 0;
    }
  }
  for (const auto& node : all) pool.Note(s, node);
  pool.Prefetch(RequestsFor(s, all));

  std::optional<AllocationSet> best;
  for (const auto& node : all) {
    AllocationSet set = EvaluateAllocation(ctx, pool.cache(), node);
    ++stats.allocations_evaluated;
    if (!best || AllocationBefore(s, set, *best)) {
      best = std::move(set);
      stats.incumbent_history.push_back(best->v_u);
    }
  }
  stats.lower_solves = pool.requested();
  return Finish("brute", std::move(*best), std::move(stats), t0);
}

Plan MakePlan(const PlanningContext& ctx, const PlanResult& result,
              double sample_step) {
  const Scenario& s = ctx.scenario();
  Plan plan;
  plan.algorithm = result.algorithm;
  plan.k_u = result.best.k_u;
  plan.s_u = result.best.s_u;
  plan.v_u = result.best.v_u;
  for (std::size_t g = 0; g < s.gliders.size(); ++g) {
    const VisitationOrder& order = result.orders.at(g);
    GliderPlan gp;
    gp.glider_id = s.gliders[g].id;
    gp.allocation = AllocationIds(s, result.best.allocation.at(g));
    gp.order = order.waypoints;
    gp.s_l = order.s_l;
    gp.k_l = order.k_l;
    for (std::size_t j = 0; j < order.legs.size(); ++j) {
      const Leg& leg = order.legs[j];
      PlannedLeg pl;
      pl.from = j == 0 ? gp.glider_id : order.waypoints[j - 1];
      pl.to = order.waypoints[j];
      pl.start = leg.start;
      pl.beta = leg.beta;
      pl.side = leg.side;
      pl.l_e = leg.l_e();
      pl.l_cc = leg.l_cc;
      pl.l_f = leg.l_f;
      pl.height_start = order.height_start[j];
      pl.height_end = order.height_end[j];
      pl.profile = leg.profile;
      pl.samples = SampleLeg(leg, sample_step);
      gp.legs.push_back(std::move(pl));
    }
    plan.gliders.push_back(std::move(gp));
  }
  const SearchStats& st = result.stats;
  plan.stats = {{"upper_nodes_expanded", st.upper_nodes_expanded},
                {"upper_nodes_generated", st.upper_nodes_generated},
                {"allocations_evaluated", st.allocations_evaluated},
                {"lower_solves", st.lower_solves},
                {"pruned_count", st.pruned_count},
                {"r_max", ctx.r_max()},
                {"l_min", ctx.l_min()}};
  return plan;
}

}  // namespace soar
