#include "randsync/mapping.hpp"

#include <algorithm>
#include <functional>
#include <cstdint>
#include <stdexcept>


namespace randsync {

StateMapping::StateMapping(std::vector<State> targets) : targets_(std::move(targets)) {
  const auto n = targets_.size();
  for (const State t : targets_)
    if (t >= n) throw std::invalid_argument("mapping target out of range");
}

StateMapping StateMapping::identity(std::size_t n) {
  std::vector<State> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<State>(i);
  return StateMapping(std::move(t), Unchecked{});
}

StateMapping StateMapping::constant(std::size_t n, State value) {
  if (value >= n) throw std::invalid_argument("constant value out of range");
  return StateMapping(std::vector<State>(n, value), Unchecked{});
}

bool StateMapping::is_constant() const noexcept {
  return std::adjacent_find(targets_.begin(), targets_.end(), std::not_equal_to<>()) ==
         targets_.end();
}

StateMapping make_unchecked_mapping(std::vector<State> targets) {
  return StateMapping(std::move(targets), StateMapping::Unchecked{});
}

StateMapping compose(const StateMapping& f, const StateMapping& g) {
  if (f.size() != g.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<State> out(f.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = g.targets_[f.targets_[x]];
  return StateMapping(std::move(out), StateMapping::Unchecked{});
}

namespace {

// Cycles of f in discovery order; `cyclic` marks their members. Lighter than a
// full decomposition, which matters for the large mappings powered here.
std::vector<std::vector<State>> find_cycles(const StateMapping& f, std::vector<std::uint8_t>& cyclic) {
  enum : std::uint8_t { kWhite = 0, kGray = 1, kDone = 2, kCyclic = 3 };
  const std::size_t n = f.size();
  cyclic.assign(n, kWhite);
  std::vector<std::vector<State>> cycles;
  std::vector<State> path;
  for (State start = 0; start < n; ++start) {
    if (cyclic[start] != kWhite) continue;
    path.clear();
    State x = start;
    while (cyclic[x] == kWhite) {
      cyclic[x] = kGray;
      path.push_back(x);
      x = f[x];
    }
    std::size_t tail_end = path.size();
    if (cyclic[x] == kGray) {
      tail_end = static_cast<std::size_t>(std::find(path.begin(), path.end(), x) - path.begin());
      cycles.emplace_back(path.begin() + tail_end, path.end());
      for (const State y : cycles.back()) cyclic[y] = kCyclic;
    }
    for (std::size_t i = 0; i < tail_end; ++i) cyclic[path[i]] = kDone;
  }
  for (auto& c : cyclic) c = c == kCyclic;
  return cycles;
}

}  // namespace

StateMapping mapping_power(const StateMapping& f, std::uint64_t t) {
  const std::size_t n = f.size();
  if (t == 0) return StateMapping::identity(n);
  if (t == 1) return f;

  std::vector<std::uint8_t> cyclic;
  const auto cycles = find_cycles(f, cyclic);

  // Reverse forest: children of y are the non-cyclic preimages of y.
  std::vector<std::uint32_t> start(n + 1, 0);
  for (State x = 0; x < n; ++x)
    if (!cyclic[x]) ++start[f[x] + 1];
  for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
  std::vector<State> children(start[n]);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (State x = 0; x < n; ++x)
      if (!cyclic[x]) children[fill[f[x]]++] = x;
  }
  cyclic = {};

  std::vector<State> out(n);
  // path[h] is the ancestor at height h below the current node's root;
  // path[0] is the cyclic root.
  std::vector<State> path;
  std::vector<std::uint32_t> next_child;

  for (const auto& cycle : cycles) {
    const std::uint64_t len = cycle.size();
    for (std::uint64_t root_pos = 0; root_pos < len; ++root_pos) {
      const State root = cycle[root_pos];
      path.assign(1, root);
      next_child.assign(1, start[root]);
      out[root] = cycle[(root_pos + t % len) % len];

      while (!path.empty()) {
        const State y = path.back();
        if (next_child.back() == start[y + 1]) {
          path.pop_back();
          next_child.pop_back();
          continue;
        }
        const State x = children[next_child.back()++];
        path.push_back(x);
        next_child.push_back(start[x]);
        const std::uint64_t h = path.size() - 1;
        if (t < h) {
          out[x] = path[h - t];
        } else {
          out[x] = cycle[(root_pos + (t - h) % len) % len];
        }
      }
    }
  }
  return StateMapping(std::move(out), StateMapping::Unchecked{});
}

std::vector<State> image(const StateMapping& f) {
  std::vector<bool> seen(f.size(), false);
  for (const State y : f.targets()) seen[y] = true;
  std::vector<State> out;
  for (std::size_t y = 0; y < seen.size(); ++y)
    if (seen[y]) out.push_back(static_cast<State>(y));
  return out;
}

std::vector<State> image_of(const StateMapping& f, std::span<const State> states) {
  std::vector<State> out;
  out.reserve(states.size());
  for (const State x : states) out.push_back(f[x]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace randsync
