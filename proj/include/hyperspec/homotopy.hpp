#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "hyperspec/error.hpp"
#include "hyperspec/polynomial.hpp"

namespace hyperspec {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct TrackerOptions {
  double initial_step = 0.05;
  double min_step = 1e-14;
  double max_step = 0.1;
  unsigned max_corrector_iterations = 3;
  double corrector_tolerance = 1e-10;  // relative to |Z|_inf
  std::size_t max_steps_per_segment = 20000;

  double endgame_start = 0.9;  // value of t where the endgame takes over
  std::size_t direct_step_budget = 400;
  unsigned samples_per_loop = 16;
  unsigned max_winding = 16;
  double endgame_shrink = 0.25;
  double endgame_tolerance = 1e-10;
  double endgame_residual = 1e-9;  // target residual an accepted estimate must reach
  double min_radius = 1e-10;

  double singular_condition = 1e12;
  double infinity_threshold = 1e-8;
  unsigned refinement_iterations = 12;
  std::size_t workers = 1;
};

enum class PathStatus { Finite, AtInfinity, Failed };

/// Outcome of one homotopy path in affine coordinates.
struct PathResult {
  std::size_t path_index = 0;
  PathStatus status = PathStatus::Failed;
  std::vector<Complex> endpoint;  // affine solution; empty unless Finite
  bool singular = false;
  unsigned winding_estimate = 1;
  double condition_estimate = 0.0;
  double residual = std::numeric_limits<double>::infinity();  // target system, max-norm
  bool converged = false;  // set by the caller's acceptance test
};

/// Square target system F(z) = 0 in m affine variables, tracked in
/// projective coordinates Z = (z0, z) on the random patch a . Z = 1 via
/// H(Z, t) = (1 - t) gamma S(Z) + t F(Z), S_i = Z_{i+1}^{d_i} - Z_0^{d_i}.
class Homotopy {
 public:
  Homotopy(const std::vector<Polynomial>& target, Complex gamma, CVec patch) : gamma_(gamma), patch_(std::move(patch)) {
    m_ = target.size();
    if (m_ == 0 || target[0].num_vars() != m_) {
      throw Error(ErrorCode::DimensionMismatch, "homotopy target must be square");
    }
    if (static_cast<std::size_t>(patch_.size()) != m_ + 1) throw Error(ErrorCode::DimensionMismatch, "patch length");
    for (const auto& p : target) {
      const unsigned d = std::max(1U, p.degree());
      degrees_.push_back(d);
      compiled_.emplace_back(p, d);
    }
    target_ = target;
  }

  std::size_t num_affine() const { return m_; }
  std::size_t dim() const { return m_ + 1; }
  const std::vector<unsigned>& degrees() const { return degrees_; }
  const std::vector<Polynomial>& target() const { return target_; }

  std::uint64_t path_count() const {
    std::uint64_t c = 1;
    for (auto d : degrees_) c *= d;
    return c;
  }

  CVec start_point(std::uint64_t index) const {
    CVec z(m_ + 1);
    z[0] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const unsigned d = degrees_[i];
      const auto digit = index % d;
      index /= d;
      z[static_cast<Eigen::Index>(i + 1)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(digit) / d);
    }
    return z / patch_.cwiseProduct(z).sum();
  }

  /// H, dH/dZ and dH/dt at (Z, t); the last row is the patch equation.
  void evaluate(const CVec& z, Complex t, CVec& h, CMat& hz, CVec* ht) const {
    const auto n = static_cast<Eigen::Index>(m_ + 1);
    h.resize(n);
    hz.setZero(n, n);
    if (ht) ht->resize(n);
    std::vector<Complex> grad(m_ + 1);
    const Complex one_minus = 1.0 - t;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      std::fill(grad.begin(), grad.end(), Complex(0));
      const Complex f = compiled_[i].evaluate({z.data(), m_ + 1}, grad, t);
      const unsigned d = degrees_[i];
      const Complex zi = z[row + 1], z0 = z[0];
      Complex zi_pow(1), z0_pow(1);
      for (unsigned q = 1; q < d; ++q) {
        zi_pow *= zi;
        z0_pow *= z0;
      }
      const Complex s = zi_pow * zi - z0_pow * z0;
      for (std::size_t v = 0; v <= m_; ++v) hz(row, static_cast<Eigen::Index>(v)) = grad[v];
      const Complex gs = one_minus * gamma_;
      hz(row, row + 1) += gs * static_cast<double>(d) * zi_pow;
      hz(row, 0) -= gs * static_cast<double>(d) * z0_pow;
      h[row] = gs * s + t * f;
      if (ht) (*ht)[row] = f - gamma_ * s;
    }
    h[n - 1] = patch_.cwiseProduct(z).sum() - 1.0;
    hz.row(n - 1) = patch_.transpose();
    if (ht) (*ht)[n - 1] = 0.0;
  }

  /// Target system value and Jacobian in affine coordinates.
  void evaluate_affine(const CVec& x, CVec& f, CMat& jac) const {
    const auto m = static_cast<Eigen::Index>(m_);
    f.resize(m);
    jac.setZero(m, m);
    CVec z(m + 1);
    z[0] = 1.0;
    z.tail(m) = x;
    std::vector<Complex> grad(m_ + 1);
    for (std::size_t i = 0; i < m_; ++i) {
      std::fill(grad.begin(), grad.end(), Complex(0));
      f[static_cast<Eigen::Index>(i)] = compiled_[i].evaluate({z.data(), m_ + 1}, grad, 1.0);
      for (std::size_t v = 0; v < m_; ++v) jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)) = grad[v + 1];
    }
  }

 private:
  std::size_t m_ = 0;
  Complex gamma_;
  CVec patch_;
  std::vector<unsigned> degrees_;
  std::vector<HomogeneousPolynomial> compiled_;
  std::vector<Polynomial> target_;
};

/// A parametrized piece of the t-path, tau in [0, 1]: either a straight
/// segment or an arc of the circle |1 - t| = radius.
struct Segment {
  bool arc = false;
  Complex t0, t1;                       // line
  double radius = 0, theta0 = 0, theta1 = 0;  // arc

  static Segment line(Complex a, Complex b) { return Segment{false, a, b, 0, 0, 0}; }
  static Segment circle(double r, double a, double b) { return Segment{true, 0, 0, r, a, b}; }

  Complex t(double tau) const {
    if (!arc) return tau >= 1.0 ? t1 : t0 + tau * (t1 - t0);
    return 1.0 - std::polar(radius, theta0 + tau * (theta1 - theta0));
  }
  Complex dt(double tau) const {
    if (!arc) return t1 - t0;
    const double th = theta0 + tau * (theta1 - theta0);
    return -Complex(0, 1) * (theta1 - theta0) * std::polar(radius, th);
  }
};

enum class TrackStatus { Success, MinStep, StepBudget };

class PathTracker {
 public:
  PathTracker(const Homotopy& h, const TrackerOptions& opt) : hom_(h), opt_(opt) {}

  const Homotopy& homotopy() const { return hom_; }

  /// Tracks z along the segment; z is updated in place.
  /// Steps are in units of tau; the defaults are the options' t-steps.
  TrackStatus track(const Segment& seg, CVec& z, std::size_t budget, std::optional<double> initial = std::nullopt,
                    std::optional<double> max_step = std::nullopt, std::size_t* steps_out = nullptr) {
    double tau = 0.0;
    double step = initial.value_or(opt_.initial_step);
    const double cap = max_step.value_or(opt_.max_step);
    std::size_t steps = 0;
    while (tau < 1.0) {
      if (steps++ >= budget) {
        if (steps_out) *steps_out = steps;
        return TrackStatus::StepBudget;
      }
      const double h = std::min({step, 1.0 - tau, cap});
      const double next = (h >= 1.0 - tau) ? 1.0 : tau + h;
      CVec pred = z;
      unsigned iters = 0;
      bool ok = predict(seg, tau, next - tau, pred) && correct(pred, seg.t(next), iters);
      if (ok) {
        z = pred;
        tau = next;
        if (iters <= 1) {
          step = h * 2.0;
        } else if (iters == 2) {
          step = h * 1.25;
        } else {
          step = h;
        }
      } else {
        step = h * 0.5;
        if (step < opt_.min_step) {
          if (steps_out) *steps_out = steps;
          return TrackStatus::MinStep;
        }
      }
    }
    if (steps_out) *steps_out = steps;
    return TrackStatus::Success;
  }

  /// Newton at fixed t; returns false unless the update norm drops below
  /// tolerance within the iteration cap while contracting.
  bool correct(CVec& z, Complex t, unsigned& iters) {
    double prev = std::numeric_limits<double>::infinity();
    for (iters = 1; iters <= opt_.max_corrector_iterations; ++iters) {
      hom_.evaluate(z, t, h_, hz_, nullptr);
      lu_.compute(hz_);
      CVec delta = lu_.solve(-h_);
      const double dn = delta.cwiseAbs().maxCoeff();
      if (!std::isfinite(dn)) return false;
      const double zn = z.cwiseAbs().maxCoeff();
      if (iters == 1 && dn > 0.1 * zn) return false;
      if (iters > 1 && dn > 0.5 * prev) return false;
      z += delta;
      if (dn <= opt_.corrector_tolerance * std::max(1.0, zn)) return true;
      prev = dn;
    }
    iters = opt_.max_corrector_iterations;
    return false;
  }

 private:
  bool velocity(const Segment& seg, double tau, const CVec& z, CVec& v) {
    hom_.evaluate(z, seg.t(tau), h_, hz_, &ht_);
    lu_.compute(hz_);
    v = lu_.solve(-ht_ * seg.dt(tau));
    return v.allFinite();
  }

  bool predict(const Segment& seg, double tau, double h, CVec& z) {
    CVec k1, k2, k3, k4;
    if (!velocity(seg, tau, z, k1)) return false;
    if (!velocity(seg, tau + 0.5 * h, z + 0.5 * h * k1, k2)) return false;
    if (!velocity(seg, tau + 0.5 * h, z + 0.5 * h * k2, k3)) return false;
    if (!velocity(seg, tau + h, z + h * k3, k4)) return false;
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return z.allFinite();
  }

  const Homotopy& hom_;
  const TrackerOptions& opt_;
  CVec h_, ht_;
  CMat hz_;
  Eigen::PartialPivLU<CMat> lu_;
};

namespace detail {

inline double inf_norm(const CVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline double condition_number(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0.0;
  const double smin = s[s.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

struct EndgameResult {
  bool ok = false;
  CVec point;
  unsigned winding = 1;
};

/// max_i |F_i(Z)| / |Z|_inf^{d_i}, the target residual in projective form.
inline double projective_residual(const Homotopy& hom, const CVec& z) {
  CVec h;
  CMat hz;
  hom.evaluate(z, 1.0, h, hz, nullptr);
  const double scale = std::max(inf_norm(z), 1e-300);
  double r = 0.0;
  for (std::size_t i = 0; i < hom.num_affine(); ++i) {
    r = std::max(r, std::abs(h[static_cast<Eigen::Index>(i)]) / std::pow(scale, hom.degrees()[i]));
  }
  return r;
}

/// Cauchy endgame: loops around t = 1 at shrinking radii, averaging P
/// samples per loop over the c loops needed to close. An estimate is
/// accepted once two successive radii agree and it solves the target
/// system; agreement alone is not enough because a circle that also
/// encloses a nearby branch point gives radius-independent averages.
inline EndgameResult cauchy_endgame(PathTracker& tracker, CVec z, double radius, const TrackerOptions& opt) {
  EndgameResult out;
  std::optional<CVec> previous;
  const unsigned p = opt.samples_per_loop;
  const double dtheta = 2.0 * std::numbers::pi / p;
  while (true) {
    // z sits on the real axis at t = 1 - radius.
    CVec w = z;
    CVec sum = CVec::Zero(z.size());
    unsigned loops = 0;
    bool closed = false, tracked = true;
    while (tracked && !closed && loops < opt.max_winding) {
      for (unsigned s = 0; s < p && tracked; ++s) {
        sum += w;
        auto seg = Segment::circle(radius, s * dtheta, (s + 1) * dtheta);
        tracked = tracker.track(seg, w, opt.max_steps_per_segment, 0.5, 1.0) == TrackStatus::Success;
      }
      ++loops;
      closed = tracked && inf_norm(w - z) <= 1e-8 * std::max(1.0, inf_norm(z));
    }
    if (closed) {
      CVec estimate = sum / static_cast<double>(p * loops);
      out.winding = loops;
      out.point = estimate;
      if (previous && inf_norm(estimate - *previous) <= opt.endgame_tolerance * std::max(1.0, inf_norm(estimate)) &&
          projective_residual(tracker.homotopy(), estimate) <= opt.endgame_residual) {
        out.ok = true;
        return out;
      }
      previous = estimate;
    } else {
      // The circle met trouble, typically other branch points inside it;
      // retry closer to t = 1.
      previous.reset();
    }
    const double next = radius * opt.endgame_shrink;
    if (next < opt.min_radius ||
        tracker.track(Segment::line(1.0 - radius, 1.0 - next), z, opt.max_steps_per_segment, 0.25, 1.0) !=
            TrackStatus::Success) {
      // Best available point; the caller verifies it.
      if (out.point.size() == 0) out.point = z;
      out.ok = true;
      return out;
    }
    radius = next;
  }
}

/// Newton (well-conditioned) or minimum-norm Gauss-Newton (otherwise) on
/// the affine target system; a step is kept only if the residual drops.
inline void refine(const Homotopy& hom, CVec& x, const TrackerOptions& opt, double& cond, double& res) {
  CVec f;
  CMat jac;
  hom.evaluate_affine(x, f, jac);
  res = inf_norm(f);
  cond = condition_number(jac);
  for (unsigned it = 0; it < opt.refinement_iterations && res > 0.0; ++it) {
    CVec delta;
    if (cond < opt.singular_condition) {
      delta = jac.partialPivLu().solve(-f);
    } else {
      delta = jac.completeOrthogonalDecomposition().solve(-f);
    }
    if (!delta.allFinite()) break;
    CVec trial = x + delta;
    CVec ft;
    CMat jt;
    hom.evaluate_affine(trial, ft, jt);
    const double rt = inf_norm(ft);
    if (!(rt < res)) break;
    x = trial;
    f = ft;
    jac = jt;
    res = rt;
    cond = condition_number(jac);
    if (inf_norm(delta) <= 1e-15 * std::max(1.0, inf_norm(x))) break;
  }
}

inline PathResult finish_path(const Homotopy& hom, const CVec& z, unsigned winding, const TrackerOptions& opt) {
  PathResult r;
  r.winding_estimate = winding;
  const double scale = inf_norm(z);
  if (!(scale > 0.0) || !z.allFinite()) return r;
  if (std::abs(z[0]) < opt.infinity_threshold * scale) {
    r.status = PathStatus::AtInfinity;
    return r;
  }
  CVec x = z.tail(z.size() - 1) / z[0];
  double cond = 0.0, res = 0.0;
  refine(hom, x, opt, cond, res);
  r.status = PathStatus::Finite;
  r.endpoint.assign(x.data(), x.data() + x.size());
  r.condition_estimate = cond;
  r.residual = res;
  r.singular = winding > 1 || !(cond < opt.singular_condition);
  return r;
}

}  // namespace detail

/// Tracks one start path to t = 1: direct tracking to the end when the
/// endpoint is regular, the Cauchy endgame otherwise.
inline PathResult track_path(const Homotopy& hom, std::uint64_t index, const TrackerOptions& opt) {
  PathTracker tracker(hom, opt);
  CVec z = hom.start_point(index);
  PathResult failed;
  failed.path_index = index;
  const double span = opt.endgame_start;
  if (tracker.track(Segment::line(0.0, span), z, opt.max_steps_per_segment, opt.initial_step / span,
                    opt.max_step / span) != TrackStatus::Success) {
    return failed;
  }
  CVec direct = z;
  const double rest = 1.0 - opt.endgame_start;
  if (tracker.track(Segment::line(opt.endgame_start, 1.0), direct, opt.direct_step_budget, opt.initial_step / rest,
                    1.0) == TrackStatus::Success &&
      std::abs(direct[0]) >= opt.infinity_threshold * detail::inf_norm(direct)) {
    auto r = detail::finish_path(hom, direct, 1, opt);
    if (r.status == PathStatus::Finite && !r.singular) {
      r.path_index = index;
      return r;
    }
  }
  auto eg = detail::cauchy_endgame(tracker, z, 1.0 - opt.endgame_start, opt);
  if (!eg.ok) return failed;
  auto r = detail::finish_path(hom, eg.point, eg.winding, opt);
  r.path_index = index;
  return r;
}

/// Tracks every start path with `opt.workers` threads; results are indexed
/// by path and do not depend on scheduling.
inline std::vector<PathResult> track_all(const Homotopy& hom, const TrackerOptions& opt) {
  const std::uint64_t total = hom.path_count();
  std::vector<PathResult> results(total);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < total; i = next++) results[i] = track_path(hom, i, opt);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(opt.workers, total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace hyperspec
