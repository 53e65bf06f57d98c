#pragma once

#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/lasso.hpp"

namespace tt {

using namespace teamltl;

inline Lasso L(std::vector<Letter> prefix, std::vector<Letter> loop) {
  return Lasso(std::move(prefix), std::move(loop));
}

// Running example over {p}: T = {0 {p}^w, 0 0 {p}^w} and its destuttered T' = {0 {p}^w}.
inline ApList p_only() { return ApList({"p"}); }
inline Team example1() { return Team({L({0}, {1}), L({0, 0}, {1})}); }
inline Team example1_prime() { return Team({L({0}, {1})}); }

// Letter i of the infinite word, read straight off prefix and loop.
inline std::vector<Letter> unroll(const Lasso& l, std::size_t n) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < l.prefix().size() ? l.prefix()[i] : l.loop()[(i - l.prefix().size()) % l.loop().size()]);
  }
  return out;
}

}  // namespace tt
