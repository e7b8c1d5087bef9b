#include "uavtraj/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace uavtraj::oracle {

namespace {

constexpr int min_intervals = 8;

// Interior gradient of discrete_action, indexed 0..N (ends left at zero).
std::vector<Vec2> action_gradient(const DiscreteTrajectory& traj, const Potential& u, double k) {
  const int n = traj.intervals();
  const double dt = traj.step();
  std::vector<Vec2> mid_gradient(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    mid_gradient[static_cast<std::size_t>(i)] = u.gradient(0.5 * (traj[i] + traj[i + 1]));
  }
  std::vector<Vec2> g(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i < n; ++i) {
    const Vec2 kinetic = (k / dt) * (2.0 * traj[i] - traj[i - 1] - traj[i + 1]);
    const Vec2 potential = (0.5 * dt) * (mid_gradient[static_cast<std::size_t>(i - 1)] +
                                         mid_gradient[static_cast<std::size_t>(i)]);
    g[static_cast<std::size_t>(i)] = kinetic - potential;
  }
  return g;
}

// Sum of the absolute terms of discrete_action; sets its rounding scale.
double action_magnitude(const DiscreteTrajectory& traj, const Potential& u, double k) {
  const double dt = traj.step();
  double total = 0.0;
  for (int i = 0; i < traj.intervals(); ++i) {
    const Vec2 v = (traj[i + 1] - traj[i]) / dt;
    total += dt * (0.5 * k * norm2(v) + std::abs(u.value(0.5 * (traj[i] + traj[i + 1]))));
  }
  return total;
}

double l2(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (const auto& x : v) s += norm2(x);
  return std::sqrt(s);
}

// Solves (k/dt) tridiag(-1, 2, -1) x = rhs on interior nodes, componentwise.
std::vector<Vec2> kinetic_solve(const std::vector<Vec2>& rhs, double k, double dt) {
  const std::size_t n = rhs.size() - 1;
  const std::size_t m = n - 1;  // unknowns 1..n-1
  std::vector<double> c(m);
  std::vector<double> dx(m);
  std::vector<double> dy(m);
  const double scale = dt / k;
  // Thomas algorithm with diagonal 2 and off-diagonals -1.
  double denom = 2.0;
  c[0] = -1.0 / denom;
  dx[0] = scale * rhs[1].x() / denom;
  dy[0] = scale * rhs[1].y() / denom;
  for (std::size_t i = 1; i < m; ++i) {
    denom = 2.0 + c[i - 1];
    c[i] = -1.0 / denom;
    dx[i] = (scale * rhs[i + 1].x() + dx[i - 1]) / denom;
    dy[i] = (scale * rhs[i + 1].y() + dy[i - 1]) / denom;
  }
  std::vector<Vec2> out(n + 1);
  double x = dx[m - 1];
  double y = dy[m - 1];
  out[m] = Vec2{x, y};
  for (std::size_t i = m - 1; i-- > 0;) {
    x = dx[i] - c[i] * x;
    y = dy[i] - c[i] * y;
    out[i + 1] = Vec2{x, y};
  }
  return out;
}

}  // namespace

DiscreteTrajectory::DiscreteTrajectory(const BoundaryConditions& bc, std::vector<Vec2> positions)
    : bc_(bc), positions_(std::move(positions)) {
  if (static_cast<int>(positions_.size()) - 1 < min_intervals) {
    throw Error(ErrorKind::InvalidArgument, "discrete trajectory needs N >= 8 intervals");
  }
  if (!(positions_.front() == bc_.z0) || !(positions_.back() == bc_.zT)) {
    throw Error(ErrorKind::InvalidArgument, "discrete trajectory endpoints must match the boundary conditions");
  }
}

DiscreteTrajectory DiscreteTrajectory::straight_line(const BoundaryConditions& bc, int intervals) {
  if (intervals < min_intervals) {
    throw Error(ErrorKind::InvalidArgument, "discrete trajectory needs N >= 8 intervals");
  }
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    pts.push_back(i == intervals ? bc.zT : lerp(bc.z0, bc.zT, static_cast<double>(i) / intervals));
  }
  return DiscreteTrajectory(bc, std::move(pts));
}

DiscreteTrajectory DiscreteTrajectory::sample(const ClosedFormTrajectory& traj, int intervals) {
  if (intervals < min_intervals) {
    throw Error(ErrorKind::InvalidArgument, "discrete trajectory needs N >= 8 intervals");
  }
  const BoundaryConditions& bc = traj.boundary();
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(intervals) + 1);
  pts.push_back(bc.z0);
  for (int i = 1; i < intervals; ++i) {
    pts.push_back(traj.position(bc.t0() + bc.duration() * i / intervals));
  }
  pts.push_back(bc.zT);
  return DiscreteTrajectory(bc, std::move(pts));
}

double DiscreteTrajectory::time(int i) const noexcept {
  return i == intervals() ? bc_.T() : bc_.t0() + bc_.duration() * i / intervals();
}

void DiscreteTrajectory::set_interior(int i, const Vec2& z) {
  if (i <= 0 || i >= intervals()) {
    throw Error(ErrorKind::InvalidArgument, "only interior nodes can move");
  }
  positions_[static_cast<std::size_t>(i)] = z;
}

Potential Potential::of(const QuadraticPhase& phase) {
  return {[phase](const Vec2& z) { return traffic_intensity(phase, z); },
          [phase](const Vec2& z) { return traffic_gradient(phase, z); }};
}

Potential Potential::zero() {
  return {[](const Vec2&) { return 0.0; }, [](const Vec2&) { return Vec2{}; }};
}

double discrete_action(const DiscreteTrajectory& traj, const std::function<double(const Vec2&)>& potential_at,
                       double k) {
  const double dt = traj.step();
  double total = 0.0;
  for (int i = 0; i < traj.intervals(); ++i) {
    const Vec2 v = (traj[i + 1] - traj[i]) / dt;
    total += dt * (0.5 * k * norm2(v) - potential_at(0.5 * (traj[i] + traj[i + 1])));
  }
  return total;
}

DirectResult direct_optimize(const Potential& potential, double k, const BoundaryConditions& bc,
                             const DirectOptions& options) {
  if (!(k > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "direct_optimize requires K > 0");
  }
  DiscreteTrajectory traj = DiscreteTrajectory::straight_line(bc, options.intervals);
  const int n = traj.intervals();
  const double dt = traj.step();

  double action = discrete_action(traj, potential.value, k);
  std::vector<Vec2> g = action_gradient(traj, potential, k);
  double gnorm = l2(g);
  int iter = 0;

  while (iter < options.max_iters && gnorm > options.gradient_tol * (1.0 + std::abs(action))) {
    ++iter;
    const std::vector<Vec2> dir = kinetic_solve(g, k, dt);
    double slope = 0.0;
    for (int i = 1; i < n; ++i) slope += dot(g[static_cast<std::size_t>(i)], dir[static_cast<std::size_t>(i)]);

    // Armijo backtracking along -dir. Once the predicted decrease drops below
    // the rounding noise of the action, a step is accepted if it shrinks the
    // gradient instead.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + action_magnitude(traj, potential, k));
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      DiscreteTrajectory trial = traj;
      for (int i = 1; i < n; ++i) {
        trial.set_interior(i, traj[i] - step * dir[static_cast<std::size_t>(i)]);
      }
      const double trial_action = discrete_action(trial, potential.value, k);
      if (trial_action <= action - 1e-4 * step * slope) {
        traj = std::move(trial);
        action = trial_action;
        g = action_gradient(traj, potential, k);
        accepted = true;
        break;
      }
      if (step * slope < noise) {
        std::vector<Vec2> trial_g = action_gradient(trial, potential, k);
        if (l2(trial_g) < gnorm) {
          traj = std::move(trial);
          action = trial_action;
          g = std::move(trial_g);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
    gnorm = l2(g);
  }

  const bool converged = gnorm <= options.gradient_tol * (1.0 + std::abs(action));
  return DirectResult{std::move(traj), action, gnorm, iter, converged};
}

double euler_lagrange_residual(const DiscreteTrajectory& samples, const QuadraticPhase& phase) {
  const double dt = samples.step();
  double worst = 0.0;
  for (int i = 1; i < samples.intervals(); ++i) {
    const Vec2 accel = (samples[i - 1] - 2.0 * samples[i] + samples[i + 1]) / (dt * dt);
    const Vec2 r = phase.k() * accel + phase.u0() * (samples[i] - phase.center());
    worst = std::max(worst, norm(r));
  }
  return worst;
}

double max_deviation(const DiscreteTrajectory& a, const DiscreteTrajectory& b) {
  if (a.intervals() != b.intervals()) {
    throw Error(ErrorKind::InvalidArgument, "trajectories must share a grid");
  }
  double worst = 0.0;
  for (int i = 0; i <= a.intervals(); ++i) worst = std::max(worst, norm(a[i] - b[i]));
  return worst;
}

}  // namespace uavtraj::oracle
