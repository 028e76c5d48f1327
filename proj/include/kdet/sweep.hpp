#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdet/baselines.hpp"
#include "kdet/criteria.hpp"
#include "kdet/state.hpp"

namespace kdet {

/// One criterion to evaluate: which inequality, at which level k, with which
/// fiducials. Missing fiducials fall back to the family presets
/// (default_swap_fiducial / default_element_fiducial).
struct CriterionSpec {
  enum class Kind { thm1, thm2, thm2k1, thm3, thm4, crit_I, crit_II, crit_III, crit_IV };

  Kind kind = Kind::thm1;
  int k = 2;
  std::optional<SwapFiducial> phi;
  std::optional<ElementFiducial> element;

  static Kind parse_kind(const std::string& token);
  static const char* kind_name(Kind kind);
  const char* name() const { return kind_name(kind); }
  bool uses_swap_fiducial() const { return kind == Kind::thm1 || kind == Kind::thm3; }
  bool uses_element_fiducial() const {
    return kind == Kind::thm2 || kind == Kind::thm4 || kind == Kind::thm2k1;
  }
  bool uses_k() const { return kind != Kind::thm2k1 && kind != Kind::crit_III; }
};

/// Presets: Phi = (0..0, (d_1-1)..(d_N-1)); base 0..0 with Omega = {1..d-1}.
SwapFiducial default_swap_fiducial(const DimensionVector& dims);
ElementFiducial default_element_fiducial(const DimensionVector& dims);

/// Evaluates one criterion on a fixed state, applying fiducial presets when
/// the spec leaves them empty. thm2k1 is not a single-verdict criterion and
/// is rejected here (the CLI expands it itself).
CriterionVerdict evaluate_criterion(const DensityOperator& rho, const CriterionSpec& spec);

/// Margin of one criterion over the family simplex, staged once per
/// (family, criterion) so that sweeps and bisections reuse the
/// parameter-independent structure. Theorem 1/3 on basis fiducials stage the
/// per-subset component overlaps and reduce each point with the SIMD kernels;
/// everything else evaluates the criterion directly per point. Calls are
/// thread-safe.
class MarginFunction {
 public:
  MarginFunction(const ParamFamily& family, const CriterionSpec& spec);
  double operator()(double p, double q) const;

  bool staged() const { return staged_; }

 private:
  const ParamFamily& family_;
  CriterionSpec spec_;
  bool staged_ = false;
  // Staged Theorem 1/3 data.
  double prefactor_ = 0.0;
  double inv_total_dim_ = 0.0;
  bool phi_equal_ = false;
  std::array<cplx, 2> lhs_coeff_{};              // <phi1|c_m><c_m|phi2>
  std::array<std::vector<double>, 2> weight_a_;  // |<a(alpha)|c_m>|^2 per subset
  std::array<std::vector<double>, 2> weight_b_;
};

/// Criterion margins over the (p,q) simplex at resolution R (grid step
/// 1/(R-1) on both axes; points with p+q > 1 carry NaN).
struct SweepGrid {
  std::string family;
  std::string criterion;
  int k = 0;
  int resolution = 0;
  std::vector<double> margins;  // row-major, index ip * R + iq

  double value(int ip, int iq) const { return margins[static_cast<std::size_t>(ip) * resolution + iq]; }
  double coord(int idx) const { return static_cast<double>(idx) / (resolution - 1); }
  bool inside(int ip, int iq) const { return coord(ip) + coord(iq) <= 1.0 + 1e-12; }
};

SweepGrid grid_sweep(const ParamFamily& family, const CriterionSpec& spec, int resolution,
                     int workers = 1);

struct Ray {
  double origin_p = 0.0;
  double origin_q = 0.0;
  double dir_p = 1.0;
  double dir_q = 0.0;
};

/// Bisects the margin sign change along a ray clipped to the simplex;
/// requires opposite signs at the two endpoints. The returned point is
/// located within tol_bisect in parameter distance.
std::array<double, 2> threshold_bisect(const ParamFamily& family, const CriterionSpec& spec,
                                       const Ray& ray, double tol_bisect = 1e-6);

/// Zero-margin polyline extracted along a fan of rays from the origin,
/// ordered by ray angle. Rays without a sign change are skipped and recorded.
struct ThresholdCurve {
  std::string family;
  std::string criterion;
  int k = 0;
  int total_rays = 0;
  std::vector<std::array<double, 2>> points;
  std::vector<int> rays_without_crossing;
};

ThresholdCurve threshold_curve(const ParamFamily& family, const CriterionSpec& spec, int rays,
                               double tol_bisect = 1e-6, int workers = 1);

// Byte-deterministic exports.
std::string grid_to_csv(const SweepGrid& grid);
std::string curve_to_csv(const ThresholdCurve& curve);
std::string curves_to_svg(std::span<const ThresholdCurve> curves);

}  // namespace kdet
