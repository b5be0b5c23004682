#include "randsync/funcgraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace randsync {

CycleDecomposition::CycleDecomposition(std::vector<StateRecord> records,
                                       std::vector<std::vector<State>> cycles)
    : records_(std::move(records)), cycles_(std::move(cycles)) {
  for (const auto& r : records_) {
    if (r.is_cyclic) ++cyclic_count_;
    max_height_ = std::max(max_height_, r.height);
  }
}

CycleDecomposition decompose(const StateMapping& f) {
  enum : std::uint8_t { kWhite = 0, kGray = 1, kBlack = 2 };

  const std::size_t n = f.size();
  std::vector<StateRecord> records(n);
  std::vector<std::vector<State>> cycles;
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<State> path;

  for (State start = 0; start < n; ++start) {
    if (color[start] != kWhite) continue;

    path.clear();
    State x = start;
    while (color[x] == kWhite) {
      color[x] = kGray;
      path.push_back(x);
      x = f[x];
    }

    // `x` is either on the current path (a new cycle) or already finished.
    std::size_t tail_end = path.size();
    if (color[x] == kGray) {
      const auto first = std::find(path.begin(), path.end(), x);
      tail_end = static_cast<std::size_t>(first - path.begin());
      const auto id = static_cast<std::uint32_t>(cycles.size());
      const auto length = static_cast<std::uint32_t>(path.size() - tail_end);
      std::vector<State> members(path.begin() + tail_end, path.end());
      for (std::uint32_t pos = 0; pos < length; ++pos) {
        StateRecord& r = records[members[pos]];
        r.is_cyclic = true;
        r.height = 0;
        r.cycle_id = id;
        r.cycle_position = pos;
        r.cycle_length = length;
        color[members[pos]] = kBlack;
      }
      cycles.push_back(std::move(members));
    }

    for (std::size_t i = tail_end; i-- > 0;) {
      const State y = path[i];
      records[y].height = records[f[y]].height + 1;
      color[y] = kBlack;
    }
  }
  return CycleDecomposition(std::move(records), std::move(cycles));
}

std::vector<State> cyclic_points(const StateMapping& f) {
  const auto d = decompose(f);
  std::vector<State> out;
  out.reserve(d.cyclic_count());
  for (State x = 0; x < d.size(); ++x)
    if (d[x].is_cyclic) out.push_back(x);
  return out;
}

std::uint32_t height(const StateMapping& f) { return decompose(f).max_height(); }

State SubMapping::operator()(State x) const {
  const auto i = index_of(x);
  if (i == kNoCycle)
    throw std::invalid_argument("state " + std::to_string(x) + " is not in the domain");
  return targets_[i];
}

std::uint32_t SubMapping::index_of(State x) const noexcept {
  const auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  if (it == domain_.end() || *it != x) return kNoCycle;
  return static_cast<std::uint32_t>(it - domain_.begin());
}

SubMapping sub_restrict(const StateMapping& f, std::span<const State> domain) {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] >= f.size())
      throw std::invalid_argument("domain state out of range");
    if (i > 0 && domain[i - 1] >= domain[i])
      throw std::invalid_argument("domain must be strictly increasing");
  }

  SubMapping out;
  out.domain_.assign(domain.begin(), domain.end());
  out.targets_.reserve(domain.size());
  std::vector<State> compact;
  compact.reserve(domain.size());
  for (const State x : domain) {
    const State y = f[x];
    const auto j = out.index_of(y);
    if (j == kNoCycle)
      throw std::domain_error("domain is not closed: " + std::to_string(x) + " -> " +
                              std::to_string(y));
    out.targets_.push_back(y);
    compact.push_back(j);
  }
  out.compact_ = make_unchecked_mapping(std::move(compact));
  return out;
}

CycleDecomposition decompose(const SubMapping& f) { return decompose(f.compact()); }

std::vector<State> cyclic_points(const SubMapping& f) {
  const auto local = cyclic_points(f.compact());
  std::vector<State> out;
  out.reserve(local.size());
  for (const State i : local) out.push_back(f.domain()[i]);
  return out;
}

std::uint32_t height(const SubMapping& f) { return height(f.compact()); }

}  // namespace randsync
