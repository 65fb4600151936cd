#include "ensnc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ensnc/errors.hpp"
#include "ensnc/quadrature.hpp"

namespace ensnc {

namespace {

constexpr int kWallGaussPoints = 3;

Point map_to_cell(const Mesh& mesh, int triangle, const std::array<double, 3>& l) {
  const auto& tri = mesh.triangles[triangle];
  Point p{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    p.x += l[i] * mesh.vertices[tri[i]].x;
    p.y += l[i] * mesh.vertices[tri[i]].y;
  }
  return p;
}

void require_kind(const FeSpace& space, SpaceKind kind, const char* where) {
  if (space.kind() != kind) {
    throw std::invalid_argument(std::string(where) + ": expected a " + to_string(kind) + " space");
  }
}

}  // namespace

std::vector<WallSample> nusselt_local(const FeSpace& temperature, const Eigen::VectorXd& T, BoundaryTag wall) {
  require_kind(temperature, SpaceKind::ScalarP2, "nusselt_local");
  if (wall != BoundaryTag::HotWall && wall != BoundaryTag::ColdWall) {
    throw std::invalid_argument("nusselt_local: wall must be the hot or the cold wall");
  }
  const Mesh& mesh = temperature.mesh();
  const LineRule& rule = gauss_line_rule(kWallGaussPoints);
  std::vector<WallSample> out;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag != wall) continue;
    const Point a = mesh.vertices[e.vertices[0]];
    const Point b = mesh.vertices[e.vertices[1]];
    for (double s : rule.points) {
      const Point q{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      const auto l = mesh.barycentric(e.triangle, q);
      const auto g = gradient_in_cell(temperature, T, e.triangle, l);
      out.push_back({q.y, -g[0]});
    }
  }
  std::sort(out.begin(), out.end(), [](const WallSample& x, const WallSample& y) { return x.y < y.y; });
  return out;
}

double nusselt_avg(const FeSpace& temperature, const Eigen::VectorXd& T) {
  require_kind(temperature, SpaceKind::ScalarP2, "nusselt_avg");
  const Mesh& mesh = temperature.mesh();
  const LineRule& rule = gauss_line_rule(kWallGaussPoints);
  double total = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag != BoundaryTag::HotWall) continue;
    const Point a = mesh.vertices[e.vertices[0]];
    const Point b = mesh.vertices[e.vertices[1]];
    const double length = std::hypot(b.x - a.x, b.y - a.y);
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const double s = rule.points[k];
      const Point q{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      const auto g = gradient_in_cell(temperature, T, e.triangle, mesh.barycentric(e.triangle, q));
      total += rule.weights[k] * length * -g[0];
    }
  }
  return total;
}

LineMax midline_max(const FeSpace& velocity, const Eigen::VectorXd& u, int component, MidLine line,
                    int samples) {
  require_kind(velocity, SpaceKind::VectorP2, "midline_max");
  if (component < 0 || component > 1) throw std::invalid_argument("midline_max: component must be 0 or 1");
  if (samples < 2) throw std::invalid_argument("midline_max: need at least two samples");
  LineMax best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    const Point p = line == MidLine::VerticalCentre ? Point{0.5, s} : Point{s, 0.5};
    const double v = evaluate(velocity, u, p, component);
    if (v > best.value) {
      best.value = v;
      best.location = p;
    }
  }
  return best;
}

LevelErrors level_errors(const Discretization& disc, const Eigen::VectorXd& u, const Eigen::VectorXd& T,
                         const Eigen::VectorXd& p, const ExactSolution& exact, double t) {
  const FeSpace& vs = disc.velocity();
  const FeSpace& ts = disc.temperature();
  const FeSpace& ps = disc.pressure();
  if (u.size() != vs.dof_count() || T.size() != ts.dof_count() || p.size() != ps.dof_count()) {
    throw std::invalid_argument("level_errors: field sizes do not match the discretization");
  }
  const Mesh& mesh = disc.mesh();
  const QuadratureRule& rule = triangle_rule(6);
  double u_l2 = 0.0, u_grad = 0.0, t_l2 = 0.0, t_grad = 0.0, p_l2 = 0.0;
  for (int c = 0; c < mesh.triangle_count(); ++c) {
    const double jac = 2.0 * mesh.signed_area(c);
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const auto& l = rule.points[q];
      const double w = rule.weights[q] * jac;
      const Point x = map_to_cell(mesh, c, l);
      const auto ue = exact.u(x, t);
      const Tensor2 ge = exact.grad_u(x, t);
      for (int k = 0; k < 2; ++k) {
        const double d = evaluate_in_cell(vs, u, c, l, k) - ue[k];
        const auto g = gradient_in_cell(vs, u, c, l, k);
        u_l2 += w * d * d;
        u_grad += w * ((g[0] - ge[k][0]) * (g[0] - ge[k][0]) + (g[1] - ge[k][1]) * (g[1] - ge[k][1]));
      }
      const double dT = evaluate_in_cell(ts, T, c, l) - exact.T(x, t);
      const auto gT = gradient_in_cell(ts, T, c, l);
      const auto gTe = exact.grad_T(x, t);
      t_l2 += w * dT * dT;
      t_grad += w * ((gT[0] - gTe[0]) * (gT[0] - gTe[0]) + (gT[1] - gTe[1]) * (gT[1] - gTe[1]));
      const double dp = evaluate_in_cell(ps, p, c, l) - exact.p(x, t);
      p_l2 += w * dp * dp;
    }
  }
  return {t, std::sqrt(u_l2), std::sqrt(u_grad), std::sqrt(t_l2), std::sqrt(t_grad), std::sqrt(p_l2)};
}

ErrorHistory::ErrorHistory(double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ErrorHistory: dt must be positive");
}

ErrorNorms ErrorHistory::norms() const {
  ErrorNorms n;
  double u_grad = 0.0, t_grad = 0.0, p_sq = 0.0;
  for (const auto& e : levels_) {
    n.u_linf_l2 = std::max(n.u_linf_l2, e.u_l2);
    n.T_linf_l2 = std::max(n.T_linf_l2, e.T_l2);
    u_grad += e.u_grad * e.u_grad;
    t_grad += e.T_grad * e.T_grad;
    p_sq += e.p_l2 * e.p_l2;
  }
  n.u_l2_grad = std::sqrt(dt_ * u_grad);
  n.T_l2_grad = std::sqrt(dt_ * t_grad);
  n.p_l2_l2 = std::sqrt(dt_ * p_sq);
  return n;
}

double convergence_rate(double e1, double e2, double dt1, double dt2) {
  if (!(e1 > 0.0) || !(e2 > 0.0)) throw UndefinedRateError("convergence_rate: errors must be positive");
  if (!(dt1 > 0.0) || !(dt2 > 0.0)) throw UndefinedRateError("convergence_rate: steps must be positive");
  if (dt1 == dt2) throw UndefinedRateError("convergence_rate: steps must differ");
  return std::log2(e1 / e2) / std::log2(dt1 / dt2);
}

MemberState ensemble_average(const EnsembleState& state) {
  if (state.members.empty()) throw std::invalid_argument("ensemble_average: empty ensemble");
  MemberState avg = state.members.front();
  for (std::size_t j = 1; j < state.members.size(); ++j) {
    const auto& m = state.members[j];
    avg.u_prev += m.u_prev;
    avg.u_curr += m.u_curr;
    avg.T_prev += m.T_prev;
    avg.T_curr += m.T_curr;
    avg.p_curr += m.p_curr;
  }
  const double inv = 1.0 / static_cast<double>(state.members.size());
  avg.u_prev *= inv;
  avg.u_curr *= inv;
  avg.T_prev *= inv;
  avg.T_curr *= inv;
  avg.p_curr *= inv;
  return avg;
}

double discrete_energy(const Discretization& disc, const MemberState& m) {
  const double u_n = disc.velocity_l2(m.u_curr);
  const double u_e = disc.velocity_l2(2.0 * m.u_curr - m.u_prev);
  const double t_n = disc.temperature_l2(m.T_curr);
  const double t_e = disc.temperature_l2(2.0 * m.T_curr - m.T_prev);
  return u_n * u_n + u_e * u_e + 0.5 * (t_n * t_n + t_e * t_e);
}

void write_wall_profile_csv(std::ostream& out, std::span<const WallSample> profile) {
  out << "y,nu_local\n";
  const auto old = out.precision(12);
  for (const auto& s : profile) out << s.y << ',' << s.value << '\n';
  out.precision(old);
}

}  // namespace ensnc
