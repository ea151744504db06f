#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coalbranch {

// Piecewise-constant sample path: states[k] holds on [times[k], times[k+1)),
// and the last state holds from times.back() onward. `meta` carries a digest
// of the generating parameters, `seed` the stream that produced the path.
template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::uint64_t seed = 0;
  std::string meta;
  bool exploded = false;

  void record(double t, State s) {
    times.push_back(t);
    states.push_back(std::move(s));
  }

  const State& final_state() const {
    if (states.empty()) throw std::logic_error("trajectory is empty");
    return states.back();
  }

  // State in force at time t (last recorded state with times[k] <= t).
  const State& state_at(double t) const {
    if (states.empty()) throw std::logic_error("trajectory is empty");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return states.front();
    return states[static_cast<std::size_t>(it - times.begin()) - 1];
  }
};

}  // namespace coalbranch
