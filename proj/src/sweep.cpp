#include "kdet/sweep.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "kdet/kernels.hpp"
#include "kdet/parallel.hpp"
#include "kdet/twocopy.hpp"

namespace kdet {

CriterionSpec::Kind CriterionSpec::parse_kind(const std::string& token) {
  std::string t;
  t.reserve(token.size());
  for (char c : token) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "thm1") return Kind::thm1;
  if (t == "thm2") return Kind::thm2;
  if (t == "thm2k1") return Kind::thm2k1;
  if (t == "thm3") return Kind::thm3;
  if (t == "thm4") return Kind::thm4;
  if (t == "criti" || t == "crit1") return Kind::crit_I;
  if (t == "critii" || t == "crit2") return Kind::crit_II;
  if (t == "critiii" || t == "crit3") return Kind::crit_III;
  if (t == "critiv" || t == "crit4") return Kind::crit_IV;
  throw std::invalid_argument("unknown criterion: " + token);
}

const char* CriterionSpec::kind_name(Kind kind) {
  switch (kind) {
    case Kind::thm1: return "thm1";
    case Kind::thm2: return "thm2";
    case Kind::thm2k1: return "thm2k1";
    case Kind::thm3: return "thm3";
    case Kind::thm4: return "thm4";
    case Kind::crit_I: return "critI";
    case Kind::crit_II: return "critII";
    case Kind::crit_III: return "critIII";
    case Kind::crit_IV: return "critIV";
  }
  return "unknown";
}

SwapFiducial default_swap_fiducial(const DimensionVector& dims) {
  std::vector<int> top(static_cast<std::size_t>(dims.site_count()));
  for (int i = 0; i < dims.site_count(); ++i) top[static_cast<std::size_t>(i)] = dims.dim(i) - 1;
  return SwapFiducial::from_labels(dims, uniform_label(dims.site_count(), 0),
                                   ProductLabel(std::move(top)));
}

ElementFiducial default_element_fiducial(const DimensionVector& dims) {
  const int d = dims.uniform_dim();
  std::vector<int> omega(static_cast<std::size_t>(d) - 1);
  for (int w = 1; w < d; ++w) omega[static_cast<std::size_t>(w) - 1] = w;
  return ElementFiducial(uniform_label(dims.site_count(), 0), std::move(omega));
}

namespace {

CriterionSpec resolve_fiducials(const DimensionVector& dims, const CriterionSpec& spec) {
  CriterionSpec out = spec;
  if (out.uses_swap_fiducial() && !out.phi) out.phi = default_swap_fiducial(dims);
  if (out.uses_element_fiducial() && !out.element) out.element = default_element_fiducial(dims);
  return out;
}

}  // namespace

CriterionVerdict evaluate_criterion(const DensityOperator& rho, const CriterionSpec& spec) {
  const CriterionSpec s = resolve_fiducials(rho.dims(), spec);
  switch (s.kind) {
    case CriterionSpec::Kind::thm1: return theorem1_evaluate(rho, *s.phi, s.k);
    case CriterionSpec::Kind::thm3: return theorem3_evaluate(rho, *s.phi, s.k);
    case CriterionSpec::Kind::thm2: return theorem2_evaluate(rho, *s.element, s.k);
    case CriterionSpec::Kind::thm4: return theorem4_evaluate(rho, *s.element, s.k);
    case CriterionSpec::Kind::thm2k1:
      throw std::invalid_argument(
          "thm2k1 yields one verdict per pair; call theorem2_k1_evaluate directly");
    case CriterionSpec::Kind::crit_I: return criterion_I(rho, s.k);
    case CriterionSpec::Kind::crit_II: return criterion_II(rho, s.k);
    case CriterionSpec::Kind::crit_III: return criterion_III(rho);
    case CriterionSpec::Kind::crit_IV: return criterion_IV(rho, s.k);
  }
  throw std::logic_error("evaluate_criterion: unreachable");
}

// ---------------------------------------------------------------------------
// MarginFunction

MarginFunction::MarginFunction(const ParamFamily& family, const CriterionSpec& spec)
    : family_(family), spec_(resolve_fiducials(family.dims(), spec)) {
  const DimensionVector& dims = family.dims();
  const int n = dims.site_count();
  if (!spec_.uses_swap_fiducial()) return;
  if (!spec_.phi->phi1.is_basis() || !spec_.phi->phi2.is_basis()) return;
  if (n > caps::staged_sweep_sites || n > caps::subset_sum_sites) return;

  if (spec_.kind == CriterionSpec::Kind::thm1) {
    if (spec_.k < 1 || spec_.k > n - 1) throw std::invalid_argument("thm1: need 1 <= k <= N-1");
    prefactor_ = std::exp2(r_of(n, spec_.k)) - 2.0;
  } else {
    if (spec_.k < 2 || spec_.k > n) throw std::invalid_argument("thm3: need 2 <= k <= N");
    prefactor_ = std::exp2(spec_.k) - 2.0;
  }
  inv_total_dim_ = 1.0 / static_cast<double>(dims.total_dimension());

  const std::uint64_t fx = spec_.phi->phi1.flat();
  const std::uint64_t fy = spec_.phi->phi2.flat();
  phi_equal_ = fx == fy;
  for (int m = 0; m < 2; ++m) {
    const PureStateSparse& comp = family.component(m);
    lhs_coeff_[static_cast<std::size_t>(m)] =
        comp.amplitude_at(fx) * std::conj(comp.amplitude_at(fy));
  }

  // Per-subset squared overlaps of the swapped patterns with each component,
  // in the same Gray order subset_sqrt_sum walks.
  const std::uint64_t count = (std::uint64_t(1) << n) - 2;
  for (int m = 0; m < 2; ++m) {
    weight_a_[static_cast<std::size_t>(m)].reserve(count);
    weight_b_[static_cast<std::size_t>(m)].reserve(count);
  }
  for (PartitionMask alpha : ProperSubsets(n)) {
    const std::uint64_t flat_a = spec_.phi->phi1.mixed_with(spec_.phi->phi2, alpha.bits()).flat();
    const std::uint64_t flat_b = fx + fy - flat_a;
    for (int m = 0; m < 2; ++m) {
      const PureStateSparse& comp = family.component(m);
      weight_a_[static_cast<std::size_t>(m)].push_back(std::norm(comp.amplitude_at(flat_a)));
      weight_b_[static_cast<std::size_t>(m)].push_back(std::norm(comp.amplitude_at(flat_b)));
    }
  }
  staged_ = true;
}

double MarginFunction::operator()(double p, double q) const {
  if (!staged_) {
    return evaluate_criterion(family_.at(p, q), spec_).margin;
  }
  const double noise = (1.0 - p - q) * inv_total_dim_;
  const std::size_t count = weight_a_[0].size();
  std::vector<double> diag_a(count), diag_b(count);
  const double coeffs[2] = {p, q};
  const double* cols_a[2] = {weight_a_[0].data(), weight_a_[1].data()};
  const double* cols_b[2] = {weight_b_[0].data(), weight_b_[1].data()};
  kernels::affine_combine(diag_a, noise, std::span<const double* const>(cols_a, 2),
                          std::span<const double>(coeffs, 2));
  kernels::affine_combine(diag_b, noise, std::span<const double* const>(cols_b, 2),
                          std::span<const double>(coeffs, 2));
  const double rhs = kernels::sum_sqrt_prod(diag_a, diag_b);
  cplx element = p * lhs_coeff_[0] + q * lhs_coeff_[1];
  if (phi_equal_) element += noise;
  const double lhs = prefactor_ * std::abs(element);
  return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Grid sweep and threshold extraction

SweepGrid grid_sweep(const ParamFamily& family, const CriterionSpec& spec, int resolution,
                     int workers) {
  if (resolution < 2) throw std::invalid_argument("grid_sweep: resolution must be >= 2");
  const MarginFunction margin(family, spec);
  SweepGrid grid;
  grid.family = family.name();
  grid.criterion = spec.name();
  grid.k = spec.uses_k() ? spec.k : 2;
  grid.resolution = resolution;
  grid.margins.assign(static_cast<std::size_t>(resolution) * resolution,
                      std::numeric_limits<double>::quiet_NaN());
  parallel_for(static_cast<std::size_t>(resolution), workers, [&](std::size_t ip) {
    const double p = static_cast<double>(ip) / (resolution - 1);
    for (int iq = 0; iq < resolution; ++iq) {
      const double q = static_cast<double>(iq) / (resolution - 1);
      if (p + q > 1.0 + 1e-12) continue;
      grid.margins[ip * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(iq)] =
          margin(p, q);
    }
  });
  return grid;
}

namespace {

double simplex_exit_t(const Ray& ray) {
  if (ray.origin_p < -1e-12 || ray.origin_q < -1e-12 ||
      ray.origin_p + ray.origin_q > 1.0 + 1e-12) {
    throw std::invalid_argument("threshold_bisect: ray origin outside the simplex");
  }
  double t_max = std::numeric_limits<double>::infinity();
  if (ray.dir_p < 0.0) t_max = std::min(t_max, -ray.origin_p / ray.dir_p);
  if (ray.dir_q < 0.0) t_max = std::min(t_max, -ray.origin_q / ray.dir_q);
  const double ds = ray.dir_p + ray.dir_q;
  if (ds > 0.0) t_max = std::min(t_max, (1.0 - ray.origin_p - ray.origin_q) / ds);
  if (!std::isfinite(t_max) || t_max <= 0.0) {
    throw std::invalid_argument("threshold_bisect: ray does not traverse the simplex");
  }
  return t_max;
}

std::optional<std::array<double, 2>> bisect_on_ray(const MarginFunction& margin, const Ray& ray,
                                                   double tol_bisect) {
  const double t_max = simplex_exit_t(ray);
  const auto at = [&](double t) {
    return std::array<double, 2>{ray.origin_p + t * ray.dir_p, ray.origin_q + t * ray.dir_q};
  };
  const auto f = [&](double t) {
    const auto pq = at(t);
    return margin(pq[0], pq[1]);
  };
  double lo = 0.0, hi = t_max;
  const bool lo_pos = f(lo) > 0.0;
  if ((f(hi) > 0.0) == lo_pos) return std::nullopt;
  const double dir_norm = std::hypot(ray.dir_p, ray.dir_q);
  for (int iter = 0; iter < 60 && (hi - lo) * dir_norm > tol_bisect; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == lo_pos) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return at(0.5 * (lo + hi));
}

}  // namespace

std::array<double, 2> threshold_bisect(const ParamFamily& family, const CriterionSpec& spec,
                                       const Ray& ray, double tol_bisect) {
  const MarginFunction margin(family, spec);
  const auto point = bisect_on_ray(margin, ray, tol_bisect);
  if (!point) throw std::domain_error("threshold_bisect: margin has no sign change on the ray");
  return *point;
}

ThresholdCurve threshold_curve(const ParamFamily& family, const CriterionSpec& spec, int rays,
                               double tol_bisect, int workers) {
  if (rays < 2) throw std::invalid_argument("threshold_curve: need at least 2 rays");
  const MarginFunction margin(family, spec);
  ThresholdCurve curve;
  curve.family = family.name();
  curve.criterion = spec.name();
  curve.k = spec.uses_k() ? spec.k : 2;
  curve.total_rays = rays;

  std::vector<std::optional<std::array<double, 2>>> found(static_cast<std::size_t>(rays));
  parallel_for(static_cast<std::size_t>(rays), workers, [&](std::size_t i) {
    const double theta = static_cast<double>(i) * (M_PI / 2.0) / (rays - 1);
    Ray ray;
    ray.dir_p = std::cos(theta);
    ray.dir_q = std::sin(theta);
    found[i] = bisect_on_ray(margin, ray, tol_bisect);
  });
  for (int i = 0; i < rays; ++i) {
    if (found[static_cast<std::size_t>(i)]) {
      curve.points.push_back(*found[static_cast<std::size_t>(i)]);
    } else {
      curve.rays_without_crossing.push_back(i);
    }
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Exports

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out += buf;
}

}  // namespace

std::string grid_to_csv(const SweepGrid& grid) {
  std::string out = "p,q,margin\n";
  for (int ip = 0; ip < grid.resolution; ++ip) {
    for (int iq = 0; iq < grid.resolution; ++iq) {
      if (!grid.inside(ip, iq)) continue;
      append_number(out, grid.coord(ip));
      out += ',';
      append_number(out, grid.coord(iq));
      out += ',';
      append_number(out, grid.value(ip, iq));
      out += '\n';
    }
  }
  return out;
}

std::string curve_to_csv(const ThresholdCurve& curve) {
  std::string out = "p,q\n";
  for (const auto& pt : curve.points) {
    append_number(out, pt[0]);
    out += ',';
    append_number(out, pt[1]);
    out += '\n';
  }
  return out;
}

std::string curves_to_svg(std::span<const ThresholdCurve> curves) {
  constexpr double size = 800.0;
  constexpr double left = 70.0, bottom = 70.0, top = 30.0, right = 30.0;
  constexpr double w = size - left - right, h = size - top - bottom;
  static const char* palette[] = {"#c0392b", "#2980b9", "#e67e22", "#27ae60",
                                  "#8e44ad", "#16a085", "#d35400", "#7f8c8d"};
  const auto x_of = [](double p) { return left + p * w; };
  const auto y_of = [](double q) { return size - bottom - q * h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  svg += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

  // Axes and ticks every 0.2.
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                x_of(0.0), y_of(0.0), x_of(1.0), y_of(0.0));
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                x_of(0.0), y_of(0.0), x_of(0.0), y_of(1.0));
  svg += buf;
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  x_of(v), y_of(0.0), x_of(v), y_of(0.0) + 6.0);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"middle\">%.1f</text>\n",
                  x_of(v), y_of(0.0) + 24.0, v);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  x_of(0.0), y_of(v), x_of(0.0) - 6.0, y_of(v));
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"end\">%.1f</text>\n",
                  x_of(0.0) - 10.0, y_of(v) + 5.0, v);
    svg += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"gray\" "
                "stroke-dasharray=\"6,4\"/>\n",
                x_of(1.0), y_of(0.0), x_of(0.0), y_of(1.0));
  svg += buf;
  svg += "<text x=\"400\" y=\"780\" font-size=\"16\" text-anchor=\"middle\">p</text>\n";
  svg += "<text x=\"20\" y=\"400\" font-size=\"16\" text-anchor=\"middle\">q</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const ThresholdCurve& curve = curves[c];
    const char* color = palette[c % (sizeof(palette) / sizeof(palette[0]))];
    if (!curve.points.empty()) {
      svg += "<polyline fill=\"none\" stroke=\"";
      svg += color;
      svg += "\" stroke-width=\"2\" points=\"";
      for (const auto& pt : curve.points) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x_of(pt[0]), y_of(pt[1]));
        svg += buf;
      }
      svg += "\"/>\n";
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" fill=\"%s\">%s %s k=%d%s</text>\n",
                  x_of(1.0) - 170.0, y_of(1.0) + 20.0 * static_cast<double>(c), color,
                  curve.family.c_str(), curve.criterion.c_str(), curve.k,
                  curve.points.empty() ? " (no crossing)" : "");
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace kdet
