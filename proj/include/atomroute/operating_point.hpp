#pragma once

namespace atomroute {

/// Physical device constants. Times in microseconds, distances in
/// micrometres. Defaults are the fixed evaluation operating point.
struct OperatingPoint {
  double rbPhys = 6.0;
  double dMinPhys = 2.0;
  double t1Q = 2.0;
  double tCZ = 0.8;
  double tAct = 100.0;
  double vShuttle = 0.55; // um per us
  double f1Q = 0.999;
  double fCZ = 0.995;
  double fShuttle = 1.0;
  double t1 = 1.0e8;
  double t2 = 1.5e6;
  double alphaGate = 1.0;    // scales SWAP-plan scores
  double alphaShuttle = 1.0; // scales shuttle-plan scores

  [[nodiscard]] double swapDuration() const { return 3.0 * tCZ + 4.0 * t1Q; }

  /// Throws DegenerateInput if any duration, rate or fidelity is out of range.
  void validate() const;
};

/// Effective coherence time (T1*T2)/(T1+T2).
double tEff(double t1, double t2);

inline double tEff(const OperatingPoint& op) { return tEff(op.t1, op.t2); }

/// 2*t_act + s*d/v_sh, for a normalized path length d and scale s (um/unit).
double shuttleDuration(double pathLength, double scale, double tAct,
                       double vShuttle);

} // namespace atomroute
