#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plg/su11.hpp"
#include "plg/trivial.hpp"

namespace plg::models {

inline Su11Model build_su11() { return Su11Model(); }

inline TrivialModel build_trivial(int n = 3, int k = 1) {
  return TrivialModel(n, k);
}

inline std::vector<std::string> names() { return {"su11", "trivial"}; }

/// Applies f to the model registered under the given name.
template <class F>
auto with_model(const std::string& name, F&& f) {
  if (name == "su11") {
    Su11Model m = build_su11();
    return f(m);
  }
  if (name == "trivial") {
    TrivialModel m = build_trivial();
    return f(m);
  }
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace plg::models
