// Writes the standard stationarity battery for N = 1, 2, 3 as JSON.
#include "mpfbm/io.hpp"
#include "mpfbm/stationarity.hpp"

#include <iostream>

int main() {
  std::vector<mpfbm::Battery> list;
  for (Eigen::Index n = 1; n <= 3; ++n) list.push_back(mpfbm::standard_battery(n));
  std::cout << mpfbm::io::to_json(list).dump(2) << '\n';
}
