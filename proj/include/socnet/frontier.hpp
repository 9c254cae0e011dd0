#pragma once

// Expansion frontier: FIFO, or by priority
//   phi = degree * exp(-alpha * age),  age = steps since the entry was queued.

#include "socnet/entity_catalog.hpp"

#include <cmath>
#include <concepts>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace socnet {

/// Anything that can report the current degree of a named node.
template <class G>
concept DegreeSource = requires(const G& g, std::string_view name) {
  { g.degree(name) } -> std::convertible_to<std::size_t>;
};

struct FrontierEntry {
  Entity entity;
  std::uint64_t inserted_at_step = 0;
  std::uint64_t sequence = 0;  // global insertion order
};

inline double compute_priority(std::size_t degree, std::uint64_t inserted_at_step,
                               std::uint64_t current_step, double alpha) {
  if (current_step < inserted_at_step) throw std::invalid_argument("entry inserted after current step");
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  const double age = static_cast<double>(current_step - inserted_at_step);
  return static_cast<double>(degree) * std::exp(-alpha * age);
}

template <DegreeSource G>
double compute_priority(const FrontierEntry& entry, const G& graph, std::uint64_t current_step,
                        double alpha) {
  return compute_priority(graph.degree(entry.entity.name), entry.inserted_at_step, current_step, alpha);
}

enum class FrontierMode { Fifo, Priority };

/// Pending expansion candidates. An entity is queued at most once and never
/// again after it has been popped.
///
/// In priority mode the relative order of two entries does not depend on
/// the current step (phi_a / phi_b = (rho_a / rho_b) * exp(alpha * (t_a - t_b))),
/// so entries sit in an ordered set keyed by log(rho) + alpha * t and only
/// need re-keying when their degree changes; callers report that via
/// refresh(). Equal priorities pop the earlier-queued entry first.
class Frontier {
 public:
  explicit Frontier(FrontierMode mode = FrontierMode::Fifo, double alpha = 0.0)
      : mode_(mode), alpha_(alpha) {
    if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  }

  FrontierMode mode() const { return mode_; }
  double alpha() const { return alpha_; }

  /// Queues an entity unless it is already queued or was popped before.
  bool push(const Entity& entity, std::uint64_t step, std::size_t degree = 0) {
    if (visited_.contains(entity.name) || queued_.contains(entity.name)) return false;
    FrontierEntry entry{entity, step, next_sequence_++};
    if (mode_ == FrontierMode::Fifo) {
      fifo_.push_back(entry);
      queued_.emplace(entity.name, Slot{});
    } else {
      const auto it = ordered_.insert(make_key(entry, degree)).first;
      queued_.emplace(entity.name, Slot{it});
    }
    return true;
  }

  /// Re-keys a queued entity after its degree changed; no-op otherwise.
  void refresh(std::string_view name, std::size_t degree) {
    if (mode_ != FrontierMode::Priority) return;
    const auto it = queued_.find(std::string(name));
    if (it == queued_.end()) return;
    const Key old = *it->second.position;
    if (old.degree == degree) return;
    ordered_.erase(it->second.position);
    it->second.position = ordered_.insert(make_key(old.entry, degree)).first;
  }

  /// Removes the next entry (earliest for FIFO, highest phi for priority)
  /// and marks it visited. Degrees are re-read from `graph` for every
  /// queued entry, so callers need not call refresh(). Empty frontier
  /// yields nullopt.
  template <DegreeSource G>
  std::optional<FrontierEntry> pop_next(const G& graph, std::uint64_t current_step) {
    if (mode_ == FrontierMode::Priority) {
      std::vector<std::pair<std::string, std::size_t>> moved;
      for (const auto& [name, slot] : queued_) {
        const std::size_t live = graph.degree(name);
        if (live != slot.position->degree) moved.emplace_back(name, live);
      }
      for (const auto& [name, degree] : moved) refresh(name, degree);
    }
    return pop_refreshed(current_step);
  }

  /// Like pop_next, for callers that report every degree change through
  /// refresh(): skips the per-pop rescan.
  std::optional<FrontierEntry> pop_refreshed(std::uint64_t current_step) {
    (void)current_step;
    if (mode_ == FrontierMode::Fifo) {
      if (fifo_.empty()) return std::nullopt;
      FrontierEntry entry = std::move(fifo_.front());
      fifo_.pop_front();
      finish(entry.entity.name);
      return entry;
    }
    if (ordered_.empty()) return std::nullopt;
    const FrontierEntry entry = ordered_.begin()->entry;
    ordered_.erase(ordered_.begin());
    finish(entry.entity.name);
    return entry;
  }

  bool empty() const { return queued_.empty(); }
  std::size_t size() const { return queued_.size(); }
  bool queued(std::string_view name) const { return queued_.contains(std::string(name)); }
  bool visited(std::string_view name) const { return visited_.contains(std::string(name)); }
  std::size_t visited_count() const { return visited_.size(); }

 private:
  struct Key {
    bool positive = false;
    double log_key = 0;  // log(rho) + alpha * t, meaningful when positive
    std::size_t degree = 0;
    FrontierEntry entry;
  };

  struct KeyOrder {
    bool operator()(const Key& a, const Key& b) const {
      if (a.positive != b.positive) return a.positive;
      if (a.positive && a.log_key != b.log_key) return a.log_key > b.log_key;
      if (a.entry.inserted_at_step != b.entry.inserted_at_step) {
        return a.entry.inserted_at_step < b.entry.inserted_at_step;
      }
      return a.entry.sequence < b.entry.sequence;
    }
  };

  using OrderedSet = std::set<Key, KeyOrder>;

  struct Slot {
    OrderedSet::iterator position{};
  };

  Key make_key(const FrontierEntry& entry, std::size_t degree) const {
    Key k;
    k.degree = degree;
    k.entry = entry;
    k.positive = degree > 0;
    if (k.positive) {
      k.log_key = std::log(static_cast<double>(degree)) +
                  alpha_ * static_cast<double>(entry.inserted_at_step);
    }
    return k;
  }

  void finish(const std::string& name) {
    queued_.erase(name);
    visited_.insert(name);
  }

  FrontierMode mode_;
  double alpha_;
  std::uint64_t next_sequence_ = 0;
  std::deque<FrontierEntry> fifo_;
  OrderedSet ordered_;
  std::unordered_map<std::string, Slot> queued_;
  std::unordered_set<std::string> visited_;
};

}  // namespace socnet
