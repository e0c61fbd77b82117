#include "windguide/wind.hpp"

#include <cmath>

#include "windguide/errors.hpp"

namespace windguide {

const char* error_name(Error code) {
  switch (code) {
    case Error::InvalidInput: return "InvalidInput";
    case Error::UnsupportedWindModel: return "UnsupportedWindModel";
    case Error::NotPlanar: return "NotPlanar";
    case Error::NoAdmissibleRoot: return "NoAdmissibleRoot";
    case Error::AllCoefficientsZero: return "AllCoefficientsZero";
    case Error::NonPositiveTgo: return "NonPositiveTgo";
    case Error::OutOfHorizon: return "OutOfHorizon";
    case Error::ZeroInitialOffset: return "ZeroInitialOffset";
    case Error::ZeroJerkCostate: return "ZeroJerkCostate";
    case Error::InvalidReferenceTime: return "InvalidReferenceTime";
    case Error::DivergedBeyondMaxTime: return "DivergedBeyondMaxTime";
  }
  return "Unknown";
}

bool is_consistent(const BoundaryConditions& bc) {
  if (!is_finite(bc.r0) || !is_finite(bc.rf) || !is_finite(bc.vg0)) return false;
  if (bc.kind == ProblemKind::Rendezvous) {
    return bc.vgf.has_value() && is_finite(*bc.vgf);
  }
  return !bc.vgf.has_value();
}

namespace {

// Active segment for time t: the last segment with t_start <= t.
const PiecewiseLinearWind::Segment& segment_at(const PiecewiseLinearWind& pw, double t) {
  std::size_t i = pw.segments.size();
  while (i > 1 && pw.segments[i - 1].t_start > t) --i;
  return pw.segments[i - 1];
}

}  // namespace

void validate(const WindModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantWind>) {
          if (!is_finite(m.w0)) throw GuidanceError(Error::InvalidInput, "wind.w0 not finite");
        } else if constexpr (std::is_same_v<T, LinearInTimeWind>) {
          if (!is_finite(m.w0) || !is_finite(m.k))
            throw GuidanceError(Error::InvalidInput, "wind.w0/k not finite");
        } else if constexpr (std::is_same_v<T, CrossTrackShearWind>) {
          if (!std::isfinite(m.k_shear))
            throw GuidanceError(Error::InvalidInput, "wind.k_shear not finite");
        } else if constexpr (std::is_same_v<T, PiecewiseLinearWind>) {
          if (m.segments.empty())
            throw GuidanceError(Error::InvalidInput, "piecewise wind needs at least one segment");
          if (m.segments.front().t_start != 0.0)
            throw GuidanceError(Error::InvalidInput, "first piecewise segment must start at t=0");
          for (std::size_t i = 0; i < m.segments.size(); ++i) {
            const auto& s = m.segments[i];
            if (!std::isfinite(s.t_start) || !is_finite(s.w0) || !is_finite(s.k))
              throw GuidanceError(Error::InvalidInput, "piecewise segment not finite");
            if (i > 0 && !(s.t_start > m.segments[i - 1].t_start))
              throw GuidanceError(Error::InvalidInput,
                                  "piecewise segment start times must be strictly increasing");
          }
        } else if constexpr (std::is_same_v<T, SpatialFieldWind>) {
          for (double v : {m.wx.c00, m.wx.c10, m.wx.c01, m.wx.c20, m.wx.c11, m.wx.c02, m.wy.c00,
                           m.wy.c10, m.wy.c01, m.wy.c20, m.wy.c11, m.wy.c02}) {
            if (!std::isfinite(v))
              throw GuidanceError(Error::InvalidInput, "spatial field coefficient not finite");
          }
        }
      },
      model);
}

Vec3 wind_at(const WindModel& model, double t, const Vec3& r) {
  return std::visit(
      [&](const auto& m) -> Vec3 {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantWind>) {
          return m.w0;
        } else if constexpr (std::is_same_v<T, LinearInTimeWind>) {
          return m.w0 + t * m.k;
        } else if constexpr (std::is_same_v<T, CrossTrackShearWind>) {
          return {m.k_shear * r.y, 0.0, 0.0};
        } else if constexpr (std::is_same_v<T, PiecewiseLinearWind>) {
          const auto& s = segment_at(m, t);
          return s.w0 + (t - s.t_start) * s.k;
        } else {
          return {m.wx.eval(r.x, r.y), m.wy.eval(r.x, r.y), 0.0};
        }
      },
      model);
}

bool is_time_integrable(const WindModel& model) {
  return std::holds_alternative<ConstantWind>(model) ||
         std::holds_alternative<LinearInTimeWind>(model) ||
         std::holds_alternative<PiecewiseLinearWind>(model);
}

WindIntegrals wind_integrals_at(const WindModel& model, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw GuidanceError(Error::InvalidInput, "wind integral time must be >= 0");
  return std::visit(
      [&](const auto& m) -> WindIntegrals {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantWind>) {
          return {t * m.w0, {}, {}};
        } else if constexpr (std::is_same_v<T, LinearInTimeWind>) {
          // I_w = w0 t + k t^2/2, Delta_w = k t, varpi = k t^2/2
          return {t * m.w0 + (0.5 * t * t) * m.k, t * m.k, (0.5 * t * t) * m.k};
        } else if constexpr (std::is_same_v<T, PiecewiseLinearWind>) {
          Vec3 iw{};
          for (std::size_t i = 0; i < m.segments.size(); ++i) {
            const auto& s = m.segments[i];
            if (s.t_start >= t) break;
            const double t_end =
                (i + 1 < m.segments.size()) ? std::min(m.segments[i + 1].t_start, t) : t;
            const double d = t_end - s.t_start;
            iw += d * s.w0 + (0.5 * d * d) * s.k;
          }
          const Vec3 w0 = wind_at(model, 0.0, {});
          const Vec3 wt = wind_at(model, t, {});
          return {iw, wt - w0, iw - t * w0};
        } else {
          throw GuidanceError(Error::UnsupportedWindModel,
                              "wind integrals need a time-integrable model (constant, "
                              "linear-in-time or piecewise-linear)");
        }
      },
      model);
}

WindIntegrals wind_integrals(const WindModel& model, double tf) {
  if (!(tf > 0.0)) throw GuidanceError(Error::InvalidInput, "tf must be > 0");
  return wind_integrals_at(model, tf);
}

}  // namespace windguide
