#include "atomroute/operating_point.hpp"

#include "atomroute/errors.hpp"

#include <string>

namespace atomroute {

void OperatingPoint::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw DegenerateInput(std::string(name) + " must be positive");
    }
  };
  auto probability = [](double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) {
      throw DegenerateInput(std::string(name) + " must lie in (0, 1]");
    }
  };
  positive(rbPhys, "r_b_phys");
  positive(dMinPhys, "d_min_phys");
  positive(t1Q, "t_1q");
  positive(tCZ, "t_cz");
  positive(tAct, "t_act");
  positive(vShuttle, "v_sh");
  positive(t1, "t1");
  positive(t2, "t2");
  positive(alphaGate, "alpha_g");
  positive(alphaShuttle, "alpha_s");
  probability(f1Q, "f_1q");
  probability(fCZ, "f_cz");
  probability(fShuttle, "f_sh");
}

double tEff(double t1, double t2) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) {
    throw DegenerateInput("T1 and T2 must be positive");
  }
  return (t1 * t2) / (t1 + t2);
}

double shuttleDuration(double pathLength, double scale, double tAct,
                       double vShuttle) {
  if (!(vShuttle > 0.0)) {
    throw DegenerateInput("shuttle speed must be positive");
  }
  if (pathLength < 0.0) {
    throw DegenerateInput("path length must be non-negative");
  }
  return 2.0 * tAct + scale * pathLength / vShuttle;
}

} // namespace atomroute
