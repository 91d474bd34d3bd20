// SPDX-License-Identifier: Apache-2.0
//
// Published partial augmentation tuples for M24, in VariableSpace order
// and sorted lexicographically.

#ifndef HELPKIT_TESTS_PUBLISHED_HPP
#define HELPKIT_TESTS_PUBLISHED_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace published {

using Tuples = std::vector<std::vector<std::int64_t>>;

inline Tuples sorted(Tuples t) {
  std::sort(t.begin(), t.end());
  return t;
}

// (2a, 2b)
inline Tuples order2() { return sorted({{0, 1}, {-2, 3}, {2, -1}, {1, 0}, {3, -2}, {-1, 2}}); }

// (3a, 3b)
inline Tuples order3() { return sorted({{0, 1}, {2, -1}, {1, 0}, {3, -2}, {-1, 2}, {4, -3}}); }

// (7a, 7b)
inline Tuples order7() { return sorted({{0, 1}, {2, -1}, {1, 0}, {-1, 2}}); }

// (2a, 2b, 5a, 10a)
inline Tuples order10() {
  return sorted({{-3, 1, 5, -2},
                 {-2, 0, 5, -2},
                 {-2, 2, 5, -4},
                 {-1, -1, 5, -2},
                 {-1, 1, 5, -4},
                 {0, -2, 0, 3},
                 {0, 0, 0, 1},
                 {0, 2, 0, -1},
                 {1, -1, 0, 1},
                 {1, 1, 0, -1},
                 {1, 3, 0, -3}});
}

// (3a, 3b, 5a, 15a, 15b)
inline Tuples order15() {
  return sorted({{-3, 0, 5, -1, 0},   {-3, 0, 5, 0, -1},   {-2, -1, 5, -1, 0},  {-2, -1, 5, 0, -1},
                 {-2, 2, 5, -2, -2},  {-1, 1, 5, -3, -1},  {-1, 1, 5, -2, -2},  {-1, 1, 5, -1, -3},
                 {0, 0, 0, 0, 1},     {0, 0, 0, 1, 0},     {0, 3, 0, -1, -1},   {1, -1, 0, 0, 1},
                 {1, -1, 0, 1, 0},    {1, 2, 0, -2, 0},    {1, 2, 0, -1, -1},   {1, 2, 0, 0, -2},
                 {2, 1, 0, -2, 0},    {2, 1, 0, -1, -1},   {2, 1, 0, 0, -2},    {2, 4, 0, -3, -2},
                 {2, 4, 0, -2, -3},   {3, 0, -5, 1, 2},    {3, 0, -5, 2, 1},    {3, 3, -5, 0, 0},
                 {4, -1, -5, 1, 2},   {4, -1, -5, 2, 1},   {4, 2, -5, -1, 1},   {4, 2, -5, 0, 0},
                 {4, 2, -5, 1, -1},   {5, 1, -5, -1, 1},   {5, 1, -5, 0, 0},    {5, 1, -5, 1, -1},
                 {5, 4, -5, -2, -1},  {5, 4, -5, -1, -2}});
}

// (3a, 3b, 7a, 7b, 21a, 21b)
inline Tuples order21() {
  return sorted({{0, 0, -3, 3, -1, 2},  {0, 0, -2, 2, 0, 1},   {0, 0, -1, 1, 0, 1},
                 {0, 0, 0, 0, 0, 1},    {0, 0, 0, 0, 1, 0},    {0, 0, 1, -1, 1, 0},
                 {0, 0, 2, -2, 1, 0},   {0, 0, 2, -2, 2, -1},  {0, 0, 3, -3, 2, -1},
                 {1, 2, -2, 2, -2, 0},  {1, 2, -1, 1, -2, 0},  {1, 2, -1, 1, -1, -1},
                 {1, 2, 0, 0, -1, -1},  {1, 2, 1, -1, -1, -1}, {1, 2, 1, -1, 0, -2},
                 {1, 2, 2, -2, 0, -2},  {4, 2, -4, -3, 0, 2},  {4, 2, -4, -3, 1, 1},
                 {4, 2, -3, -4, 1, 1},  {4, 2, -3, -4, 2, 0},  {0, 0, -2, 2, -1, 2}});
}

inline const std::vector<std::int64_t>& critical_orders() {
  static const std::vector<std::int64_t> ks{22, 33, 35, 46, 55, 69, 77, 115, 161, 253};
  return ks;
}

}  // namespace published

#endif  // HELPKIT_TESTS_PUBLISHED_HPP
