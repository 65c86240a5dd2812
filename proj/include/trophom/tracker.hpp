#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <thread>

#include "trophom/homotopy.hpp"

namespace trophom {

struct TrackOptions {
  double initial_step = 1e-2;
  double min_step = 1e-14;
  double newton_tol = 1e-12;
  int max_newton_iters = 10;
  long max_steps = 100000;
  double start_parameter = 0.0;  // eps-offset start when the t=0 Jacobian is singular
  double endpoint_residual_tol = 1e-8;
  double divergence_bound = 1e12;
  double epsilon_offset = 1e-4;
  double singular_cond = 1e14;
  int threads = 0;  // 0: hardware concurrency
};

enum class PathStatus { SUCCESS, DIVERGED, SINGULAR, STEP_UNDERFLOW, MAX_STEPS };

inline const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::SUCCESS: return "SUCCESS";
    case PathStatus::DIVERGED: return "DIVERGED";
    case PathStatus::SINGULAR: return "SINGULAR";
    case PathStatus::STEP_UNDERFLOW: return "STEP_UNDERFLOW";
    case PathStatus::MAX_STEPS: return "MAX_STEPS";
  }
  return "?";
}

struct PathResult {
  PathStatus status = PathStatus::DIVERGED;
  std::vector<std::complex<double>> endpoint;  // empty when absent
  double residual = std::numeric_limits<double>::infinity();
  long steps = 0;
  std::vector<Rational> w;
};

struct SolutionSet {
  struct Cluster {
    std::vector<std::complex<double>> coords;  // representative (x variables)
    size_t size = 1;
    double residual = 0;
  };
  std::vector<Cluster> solutions;
  std::vector<PathResult> paths;
  size_t successes = 0;
};

// max over polynomials of |f(point)| / (1 + sum |term values|)
inline double residual(const std::vector<LaurentPoly>& system,
                       const std::vector<std::complex<double>>& point, double t0) {
  double worst = 0;
  for (const auto& f : system) {
    std::complex<double> v = 0;
    double scale = 1.0;
    for (const auto& [e, c] : f.terms) {
      std::complex<double> m = c.eval(t0);
      for (size_t i = 0; i < f.nvars; ++i)
        if (e[i] != 0) m *= std::pow(point[i], double(e[i]));
      v += m;
      scale += std::abs(m);
    }
    worst = std::max(worst, std::abs(v) / scale);
  }
  return worst;
}

namespace detail {

struct CompiledTerm {
  std::complex<double> coeff;
  long sexp;
  std::vector<long> xexp;
};

struct CompiledHomotopy {
  size_t n = 0;
  std::vector<std::vector<CompiledTerm>> polys;

  static CompiledHomotopy compile(const Homotopy& H) {
    CompiledHomotopy C;
    C.n = H.nvars;
    for (const auto& f : H.polys) {
      std::vector<CompiledTerm> ts;
      for (const auto& [e, c] : f.terms)
        for (const auto& t : c.terms) {
          CompiledTerm ct;
          ct.coeff = t.coeff.to_complex();
          ct.sexp = t.exp.convert_to<long>();
          ct.xexp.assign(e.begin(), e.end());
          ts.push_back(std::move(ct));
        }
      C.polys.push_back(std::move(ts));
    }
    return C;
  }

  static std::complex<double> xpow(const std::complex<double>& z, long e) {
    if (e == 0) return {1.0, 0.0};
    if (e < 0) return 1.0 / xpow(z, -e);
    std::complex<double> r{1.0, 0.0}, b = z;
    long k = e;
    while (k) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  void eval(const std::complex<double>& s, const Eigen::VectorXcd& x,
            Eigen::VectorXcd& F) const {
    F.setZero(polys.size());
    for (size_t i = 0; i < polys.size(); ++i)
      for (const auto& t : polys[i]) {
        std::complex<double> m = t.coeff * xpow(s, t.sexp);
        for (size_t j = 0; j < n; ++j)
          if (t.xexp[j] != 0) m *= xpow(x[j], t.xexp[j]);
        F[i] += m;
      }
  }

  void jacobian(const std::complex<double>& s, const Eigen::VectorXcd& x,
                Eigen::MatrixXcd& J) const {
    J.setZero(polys.size(), n);
    for (size_t i = 0; i < polys.size(); ++i)
      for (const auto& t : polys[i]) {
        std::complex<double> base = t.coeff * xpow(s, t.sexp);
        for (size_t k = 0; k < n; ++k) {
          if (t.xexp[k] == 0) continue;
          std::complex<double> m = base * double(t.xexp[k]) * xpow(x[k], t.xexp[k] - 1);
          for (size_t j = 0; j < n; ++j)
            if (j != k && t.xexp[j] != 0) m *= xpow(x[j], t.xexp[j]);
          J(i, k) += m;
        }
      }
  }

  void dds(const std::complex<double>& s, const Eigen::VectorXcd& x,
           Eigen::VectorXcd& v) const {
    v.setZero(polys.size());
    for (size_t i = 0; i < polys.size(); ++i)
      for (const auto& t : polys[i]) {
        if (t.sexp == 0) continue;
        std::complex<double> m = t.coeff * double(t.sexp) * xpow(s, t.sexp - 1);
        for (size_t j = 0; j < n; ++j)
          if (t.xexp[j] != 0) m *= xpow(x[j], t.xexp[j]);
        v[i] += m;
      }
  }
};

struct NewtonOutcome {
  bool converged = false;
  int iters = 0;
  double cond = 0;
};

inline NewtonOutcome newton_correct(const CompiledHomotopy& C, const std::complex<double>& s,
                                    Eigen::VectorXcd& x, const TrackOptions& opts,
                                    double max_move = -1) {
  NewtonOutcome out;
  Eigen::VectorXcd x0 = x;
  Eigen::VectorXcd F(C.n);
  Eigen::MatrixXcd J(C.n, C.n);
  for (int it = 0; it < opts.max_newton_iters; ++it) {
    C.eval(s, x, F);
    if (!F.allFinite()) return out;
    C.jacobian(s, x, J);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
    double dmax = 0, dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < J.rows(); ++i) {
      double d = std::abs(lu.matrixLU()(i, i));
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    out.cond = dmin == 0 ? std::numeric_limits<double>::infinity() : dmax / dmin;
    Eigen::VectorXcd dx = lu.solve(-F);
    if (!dx.allFinite()) return out;
    x += dx;
    out.iters = it + 1;
    // corrector must stay near the predictor; a large move means the Newton
    // basin was left (branch jump), so the step has to be rejected
    if (max_move > 0 && (x - x0).norm() > max_move) return out;
    if (dx.norm() <= opts.newton_tol * (1.0 + x.norm())) {
      out.converged = true;
      return out;
    }
  }
  // accept when the final residual is tiny even if the step norm test missed
  C.eval(s, x, F);
  out.converged = F.allFinite() && F.norm() <= opts.newton_tol * 10;
  return out;
}

}  // namespace detail

// Predictor-corrector continuation from the start parameter to s = 1 along
// the complex detour arc s(tau) = tau (1 + gamma (1 - tau)), which leaves the
// real discriminant locus for generic gamma while fixing s(0) = 0, s(1) = 1.
// Predictor: classical fourth-order Runge-Kutta on the Davidenko system
// x'(tau) = -J^{-1} dH/ds s'(tau); corrector: Newton at the new tau.
inline PathResult track_path(const Homotopy& H, const std::vector<std::complex<double>>& start,
                             const TrackOptions& opts) {
  detail::CompiledHomotopy C = detail::CompiledHomotopy::compile(H);
  PathResult res;
  res.w = H.w;
  size_t n = C.n;
  Eigen::VectorXcd x(n);
  for (size_t i = 0; i < n; ++i) x[i] = start[i];

  const std::complex<double> gamma(0.41421356, 0.71238898);
  auto arc = [&](double tau) { return tau * (1.0 + gamma * (1.0 - tau)); };
  auto darc = [&](double tau) { return 1.0 + gamma - 2.0 * gamma * tau; };

  double tau = opts.start_parameter;
  if (tau > 0) {  // eps-offset start: correct onto the path first
    detail::newton_correct(C, arc(tau), x, opts);
  }
  bool s_constant = true;
  for (const auto& poly : C.polys)
    for (const auto& t : poly)
      if (t.sexp != 0) s_constant = false;
  if (s_constant) {  // nothing moves along the path
    tau = 1.0;
    res.steps = 1;
  }
  double h = opts.initial_step;
  int easy_streak = 0, singular_streak = 0;

  auto davidenko = [&](double tv, const Eigen::VectorXcd& xv, Eigen::VectorXcd& dx) -> bool {
    Eigen::MatrixXcd J(n, n);
    Eigen::VectorXcd v(n);
    C.jacobian(arc(tv), xv, J);
    C.dds(arc(tv), xv, v);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
    dx = lu.solve(-v) * darc(tv);
    return dx.allFinite();
  };

  while (tau < 1.0) {
    if (res.steps++ > opts.max_steps) {
      res.status = PathStatus::MAX_STEPS;
      return res;
    }
    h = std::min(h, 1.0 - tau);
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n);
    Eigen::VectorXcd xp = x;
    bool pred_ok = davidenko(tau, x, k1) && davidenko(tau + h / 2, x + (h / 2) * k1, k2) &&
                   davidenko(tau + h / 2, x + (h / 2) * k2, k3) &&
                   davidenko(tau + h, x + h * k3, k4);
    if (pred_ok) xp = x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);

    double max_move = 0.5 * (1.0 + xp.norm());
    detail::NewtonOutcome nc = detail::newton_correct(C, arc(tau + h), xp, opts, max_move);
    bool infinite = !xp.allFinite() || xp.lpNorm<Eigen::Infinity>() > opts.divergence_bound;
    if (nc.converged && !infinite) {
      tau += h;
      x = xp;
      singular_streak = 0;
      if (++easy_streak >= 2 && nc.iters <= 3) {
        h = std::min(h * 2, 0.1);
        easy_streak = 0;
      }
      if (x.lpNorm<Eigen::Infinity>() > opts.divergence_bound) {
        res.status = PathStatus::DIVERGED;
        return res;
      }
      continue;
    }
    easy_streak = 0;
    if (infinite) {
      res.status = PathStatus::DIVERGED;
      return res;
    }
    if (nc.cond > opts.singular_cond && ++singular_streak >= 3) {
      res.status = PathStatus::SINGULAR;
      return res;
    }
    h /= 2;
    if (h < opts.min_step) {
      // step collapse with a large solution is the signature of a path
      // escaping the torus
      res.status = x.lpNorm<Eigen::Infinity>() > 1e6 ? PathStatus::DIVERGED
                                                     : PathStatus::STEP_UNDERFLOW;
      return res;
    }
  }

  detail::NewtonOutcome polish =
      detail::newton_correct(C, {1.0, 0.0}, x, opts, 0.1 * (1.0 + x.norm()));
  (void)polish;
  if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > opts.divergence_bound) {
    res.status = PathStatus::DIVERGED;
    return res;
  }
  res.endpoint.assign(n, {});
  for (size_t i = 0; i < n; ++i) res.endpoint[i] = x[i];
  std::vector<LaurentPoly> at1 = homotopy_at(H, GaussianRational(1));
  res.residual = residual(at1, res.endpoint, 1.0);
  res.status = res.residual <= opts.endpoint_residual_tol ? PathStatus::SUCCESS
                                                          : PathStatus::SINGULAR;
  return res;
}

// Tracks every start solution of every bundle (in parallel), projects the
// endpoints to the original variables, validates them against the target,
// and clusters nearby endpoints.
inline SolutionSet solve_all(const std::vector<StartBundle>& bundles,
                             const std::vector<Homotopy>& homotopies, const ConcreteSystem& sys,
                             const TrackOptions& opts) {
  if (bundles.size() != homotopies.size())
    fail("DimensionError", "bundles and homotopies must align");
  struct Job {
    size_t bundle, sol;
  };
  std::vector<Job> jobs;
  for (size_t b = 0; b < bundles.size(); ++b)
    for (size_t s = 0; s < bundles[b].start_solutions.size(); ++s) jobs.push_back({b, s});

  SolutionSet out;
  out.paths.resize(jobs.size());

  // decide per-homotopy start parameter: t = 0 needs an invertible Jacobian
  std::vector<TrackOptions> per(bundles.size(), opts);
  for (size_t b = 0; b < bundles.size(); ++b) {
    detail::CompiledHomotopy C = detail::CompiledHomotopy::compile(homotopies[b]);
    bool all_regular = true;
    for (const auto& z : bundles[b].start_solutions) {
      Eigen::VectorXcd x(C.n);
      for (size_t i = 0; i < C.n; ++i) x[i] = z[i];
      Eigen::MatrixXcd J(C.n, C.n);
      C.jacobian({0.0, 0.0}, x, J);
      Eigen::VectorXcd F(C.n);
      C.eval({0.0, 0.0}, x, F);
      double startres = F.norm();
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
      double dmin = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < J.rows(); ++i)
        dmin = std::min(dmin, std::abs(lu.matrixLU()(i, i)));
      if (!(startres < 1e-8) || !(dmin > 1e-10)) all_regular = false;
    }
    per[b].start_parameter = all_regular ? 0.0 : opts.epsilon_offset;
  }

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const Job& job = jobs[j];
      PathResult r =
          track_path(homotopies[job.bundle], bundles[job.bundle].start_solutions[job.sol],
                     per[job.bundle]);
      if (r.status == PathStatus::SUCCESS) {
        try {
          std::vector<std::complex<double>> xpt =
              substitute_back_point(r.endpoint, sys, 1.0);
          double res_target = residual(sys.target, xpt, 1.0);
          r.endpoint = xpt;
          r.residual = res_target;
          if (res_target > opts.endpoint_residual_tol) r.status = PathStatus::SINGULAR;
        } catch (const Error&) {
          r.status = PathStatus::SINGULAR;
        }
      }
      out.paths[j] = std::move(r);
    }
  };
  size_t nthreads = opts.threads > 0 ? size_t(opts.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min(nthreads, jobs.size() ? jobs.size() : size_t(1));
  std::vector<std::thread> pool;
  for (size_t i = 0; i + 1 < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // deterministic merge: sort successful endpoints, then cluster
  std::vector<size_t> ok;
  for (size_t j = 0; j < out.paths.size(); ++j)
    if (out.paths[j].status == PathStatus::SUCCESS) ok.push_back(j);
  out.successes = ok.size();
  auto key = [&](size_t j) {
    std::vector<std::pair<double, double>> k;
    for (const auto& z : out.paths[j].endpoint) {
      auto round12 = [](double v) { return std::round(v * 1e12) / 1e12; };
      k.push_back({round12(z.real()), round12(z.imag())});
    }
    return k;
  };
  std::sort(ok.begin(), ok.end(), [&](size_t a, size_t b) { return key(a) < key(b); });
  for (size_t j : ok) {
    const auto& pt = out.paths[j].endpoint;
    bool merged = false;
    for (auto& cl : out.solutions) {
      double dist = 0, scale = 1e-300;
      for (size_t i = 0; i < pt.size(); ++i) {
        dist = std::max(dist, std::abs(pt[i] - cl.coords[i]));
        scale = std::max(scale, std::abs(cl.coords[i]));
      }
      if (dist <= 1e-8 * std::max(1.0, scale)) {
        cl.size++;
        merged = true;
        break;
      }
    }
    if (!merged) out.solutions.push_back({pt, 1, out.paths[j].residual});
  }
  return out;
}

}  // namespace trophom
