#include "windguide/zemzev.hpp"

#include <cmath>

#include "windguide/errors.hpp"

namespace windguide::zemzev {

namespace {

void require_positive_tgo(double t_go) {
  if (!(t_go > 0.0) || !std::isfinite(t_go))
    throw GuidanceError(Error::NonPositiveTgo, "t_go must be finite and > 0");
}

}  // namespace

ZemZevErrors compute_errors(const Vec3& r, const Vec3& vg, const BoundaryConditions& bc,
                            const Vec3& k, double t_go) {
  require_positive_tgo(t_go);
  ZemZevErrors e;
  e.t_go = t_go;
  e.zem = bc.rf - r - t_go * vg - (0.5 * t_go * t_go) * k;
  if (bc.kind == ProblemKind::Rendezvous && bc.vgf) {
    e.zev = *bc.vgf - vg - t_go * k;
  } else {
    e.zev = {};  // intercept: terminal velocity free, only the miss matters
  }
  return e;
}

Vec3 rendezvous_command(const ZemZevErrors& e) {
  require_positive_tgo(e.t_go);
  return (6.0 / (e.t_go * e.t_go)) * e.zem - (2.0 / e.t_go) * e.zev;
}

Vec3 intercept_command(const ZemZevErrors& e) {
  require_positive_tgo(e.t_go);
  return (3.0 / (e.t_go * e.t_go)) * e.zem;
}

Vec3 rendezvous_command_rate(const ZemZevErrors& e) {
  require_positive_tgo(e.t_go);
  return (12.0 / (e.t_go * e.t_go * e.t_go)) * ((0.5 * e.t_go) * e.zev - e.zem);
}

Vec3 intercept_command_rate(const ZemZevErrors& e) {
  require_positive_tgo(e.t_go);
  return (-3.0 / (e.t_go * e.t_go * e.t_go)) * e.zem;
}

}  // namespace windguide::zemzev
