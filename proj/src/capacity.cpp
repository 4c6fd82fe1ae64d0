#include "cyclicity/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace cyc {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd to_real(const Eigen::VectorXcd& z) {
  Eigen::VectorXd x(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    x(2 * j) = z(j).real();
    x(2 * j + 1) = z(j).imag();
  }
  return x;
}

Eigen::VectorXcd random_sphere_point(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd z(d);
  for (int j = 0; j < d; ++j) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z(j) = Complex(re, im);
  }
  return z / z.norm();
}

struct Gradient {
  std::vector<Polynomial> partials;
  explicit Gradient(const Polynomial& f) {
    for (int j = 0; j < f.dim(); ++j) partials.push_back(partial_derivative(f, j));
  }
  Eigen::VectorXcd at(const Eigen::VectorXcd& z) const {
    Eigen::VectorXcd g(static_cast<Eigen::Index>(partials.size()));
    for (std::size_t j = 0; j < partials.size(); ++j) g(static_cast<Eigen::Index>(j)) = evaluate(partials[j], z);
    return g;
  }
};

// Minimum-norm Newton step for f(z + delta) = 0.
Eigen::VectorXcd newton_step(const Polynomial& f, const Gradient& grad, const Eigen::VectorXcd& z) {
  const Complex v = evaluate(f, z);
  const Eigen::VectorXcd g = grad.at(z);
  const double gg = g.squaredNorm();
  if (gg == 0.0) return Eigen::VectorXcd::Zero(z.size());
  return -v * g.conjugate() / gg;
}

}  // namespace

BoundaryCloud::BoundaryCloud(int d, Eigen::MatrixXd points, double sourceTol)
    : d_(d), points_(std::move(points)), sourceTol_(sourceTol) {
  if (d < 1) throw ArgumentError("BoundaryCloud: d must be >= 1");
  if (points_.rows() != 2 * d) throw ArgumentError("BoundaryCloud: points must have 2d coordinates");
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    const double r = points_.col(i).norm();
    if (!(r > 0.0) || !std::isfinite(r)) throw ArgumentError("BoundaryCloud: zero or non-finite point");
    points_.col(i) /= r;
  }
}

Eigen::VectorXcd BoundaryCloud::complex_point(Eigen::Index i) const {
  Eigen::VectorXcd z(d_);
  for (int j = 0; j < d_; ++j) z(j) = Complex(points_(2 * j, i), points_(2 * j + 1, i));
  return z;
}

BoundaryCloud BoundaryCloud::deduplicated(double tol) const {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < size(); ++i) {
    bool dup = false;
    for (Eigen::Index k : keep) {
      if ((points_.col(i) - points_.col(k)).norm() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(i);
  }
  Eigen::MatrixXd p(2 * d_, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) p.col(static_cast<Eigen::Index>(k)) = points_.col(keep[k]);
  return BoundaryCloud(d_, std::move(p), sourceTol_);
}

BoundaryCloud BoundaryCloud::merged(const BoundaryCloud& other) const {
  if (other.d_ != d_) throw ArgumentError("BoundaryCloud: dimension mismatch");
  Eigen::MatrixXd p(2 * d_, size() + other.size());
  p << points_, other.points_;
  return BoundaryCloud(d_, std::move(p), std::max(sourceTol_, other.sourceTol_));
}

BoundaryCloud circle_cloud(Eigen::Index n) {
  Eigen::MatrixXd p(2, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    p(0, k) = std::cos(t);
    p(1, k) = std::sin(t);
  }
  return BoundaryCloud(1, std::move(p));
}

BoundaryCloud arc_cloud(Eigen::Index n, double angle) {
  if (n < 1) return BoundaryCloud::empty(1);
  Eigen::MatrixXd p(2, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : angle * static_cast<double>(k) / static_cast<double>(n - 1);
    p(0, k) = std::cos(t);
    p(1, k) = std::sin(t);
  }
  return BoundaryCloud(1, std::move(p));
}

BoundaryCloud sphere_patch_cloud(Eigen::Index n, double capAngle) {
  // Fibonacci lattice on the cap {polar angle <= capAngle} of S^2.
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double zMin = std::cos(capAngle);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(4, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double z = 1.0 - (1.0 - zMin) * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double t = golden * static_cast<double>(k);
    p(0, k) = r * std::cos(t);
    p(1, k) = r * std::sin(t);
    p(2, k) = z;
  }
  return BoundaryCloud(2, std::move(p));
}

BoundaryCloud sample_zero_set(const Polynomial& f, const ZeroSetOptions& options) {
  if (f.is_zero()) throw DegenerateInputError("sample_zero_set: f = 0");
  if (options.resolution < 1) throw ArgumentError("sample_zero_set: resolution must be >= 1");
  const int d = f.dim();
  const double tol = options.tol.value_or(d == 1 ? 1e-9 : 1e-4);
  const Gradient grad(f);
  std::vector<Eigen::VectorXd> found;

  if (d == 1) {
    const int m = options.resolution;
    std::vector<double> modulus(static_cast<std::size_t>(m));
    auto at = [&](double t) { return Eigen::VectorXcd::Constant(1, std::polar(1.0, t)); };
    for (int k = 0; k < m; ++k) modulus[static_cast<std::size_t>(k)] = std::abs(evaluate(f, at(2.0 * kPi * k / m)));
    for (int k = 0; k < m; ++k) {
      const double here = modulus[static_cast<std::size_t>(k)];
      const double prev = modulus[static_cast<std::size_t>((k + m - 1) % m)];
      const double next = modulus[static_cast<std::size_t>((k + 1) % m)];
      if (here > prev || here > next) continue;
      // Gauss-Newton on theta for g(theta) = f(e^{i theta}).
      double t = 2.0 * kPi * k / m;
      for (int it = 0; it < 60; ++it) {
        const Complex e = std::polar(1.0, t);
        const Complex g = evaluate(f, at(t));
        if (g == Complex(0.0)) break;
        const Complex dg = Complex(0.0, 1.0) * e * grad.at(at(t))(0);
        const double n2 = std::norm(dg);
        if (n2 == 0.0) break;
        const double step = -(std::conj(dg) * g).real() / n2;
        t += step;
        if (std::abs(step) < 1e-15) break;
      }
      if (std::abs(evaluate(f, at(t))) < tol) found.push_back(to_real(at(t)));
    }
  } else {
    std::mt19937_64 rng(options.seed);
    for (int s = 0; s < options.resolution; ++s) {
      Eigen::VectorXcd z = random_sphere_point(d, rng);
      for (int it = 0; it < 10; ++it) {
        z += newton_step(f, grad, z);
        z /= z.norm();
      }
      if (std::abs(evaluate(f, z)) < tol) found.push_back(to_real(z));
    }
  }

  Eigen::MatrixXd p(2 * d, static_cast<Eigen::Index>(found.size()));
  for (std::size_t i = 0; i < found.size(); ++i) p.col(static_cast<Eigen::Index>(i)) = found[i];
  return BoundaryCloud(d, std::move(p), tol).deduplicated(1e-9);
}

double riesz_kernel(double distance, double alpha) {
  return alpha > 0.0 ? std::pow(distance, -alpha) : -std::log(distance);
}

Eigen::VectorXd self_distances(const BoundaryCloud& cloud) {
  const Eigen::Index n = cloud.size();
  Eigen::VectorXd out(n);
  const auto& x = cloud.points();
  for (Eigen::Index i = 0; i < n; ++i) {
    double first = std::numeric_limits<double>::infinity(), second = first;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double r = (x.col(i) - x.col(j)).norm();
      if (r < first) {
        second = first;
        first = r;
      } else if (r < second) {
        second = r;
      }
    }
    const double spacing = std::isfinite(second) ? 0.5 * (first + second) : first;
    out(i) = std::exp(-1.5) * spacing;
  }
  return out;
}

EquilibriumResult riesz_equilibrium(const BoundaryCloud& input, double alpha, const EquilibriumOptions& options) {
  if (!(alpha >= 0.0)) throw ArgumentError("riesz_equilibrium: alpha must be >= 0");
  if (options.maxIter < 1 || !(options.tol > 0.0)) throw ArgumentError("riesz_equilibrium: bad solver options");
  const BoundaryCloud cloud = input.deduplicated(1e-12);
  const Eigen::Index n = cloud.size();

  EquilibriumResult res;
  res.alpha = alpha;
  res.pointsUsed = n;
  if (n < 2) {
    res.degenerate = true;
    res.weights = Eigen::VectorXd::Ones(n);
    res.energy = std::numeric_limits<double>::infinity();
    res.uniformEnergy = res.energy;
    res.capacity = 0.0;
    res.converged = true;
    return res;
  }

  const auto& x = cloud.points();
  const Eigen::VectorXd self = self_distances(cloud);
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    K(j, j) = riesz_kernel(self(j), alpha);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      K(i, j) = K(j, i) = riesz_kernel((x.col(i) - x.col(j)).norm(), alpha);
    }
  }

  // Away-step conditional gradient on the simplex for E(w) = w^T K w.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd Kw = K * w;
  double energy = w.dot(Kw);
  res.uniformEnergy = energy;
  int it = 0;
  for (; it < options.maxIter; ++it) {
    if (it > 0 && it % 1000 == 0) {
      Kw.noalias() = K * w;
      energy = w.dot(Kw);
    }
    // Gradient is 2 Kw; work with Kw and scale gaps by 2.
    Eigen::Index s = 0, v = -1;
    Kw.minCoeff(&s);
    double awayVal = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w(i) > 0.0 && Kw(i) > awayVal) {
        awayVal = Kw(i);
        v = i;
      }
    }
    const double fwGap = 2.0 * (energy - Kw(s));
    const double awayGap = 2.0 * (awayVal - energy);
    if (fwGap <= options.tol) break;

    if (fwGap >= awayGap || w(v) >= 1.0) {
      // d = e_s - w
      const double slope = 2.0 * (Kw(s) - energy);
      const double curv = K(s, s) - 2.0 * Kw(s) + energy;
      double gamma = curv > 0.0 ? std::min(1.0, -slope / (2.0 * curv)) : 1.0;
      gamma = std::max(gamma, 0.0);
      w *= (1.0 - gamma);
      w(s) += gamma;
      Kw = (1.0 - gamma) * Kw + gamma * K.col(s);
    } else {
      // d = w - e_v
      const double gammaMax = w(v) / (1.0 - w(v));
      const double slope = 2.0 * (energy - Kw(v));
      const double curv = energy - 2.0 * Kw(v) + K(v, v);
      double gamma = curv > 0.0 ? std::min(gammaMax, -slope / (2.0 * curv)) : gammaMax;
      gamma = std::max(gamma, 0.0);
      w *= (1.0 + gamma);
      w(v) -= gamma;
      if (gamma == gammaMax) w(v) = 0.0;
      Kw = (1.0 + gamma) * Kw - gamma * K.col(v);
    }
    w = w.cwiseMax(0.0);
    energy = w.dot(Kw);
  }
  Kw.noalias() = K * w;
  energy = w.dot(Kw);
  res.weights = w / w.sum();
  res.energy = energy;
  res.iterations = it;
  res.kktGap = 2.0 * (energy - Kw.minCoeff());
  res.converged = res.kktGap <= options.tol;
  res.capacity = alpha > 0.0 ? (energy > 0.0 ? 1.0 / energy : std::numeric_limits<double>::infinity())
                             : std::exp(-energy);
  return res;
}

double paper_capacity(const BoundaryCloud& cloud, double alpha, double epsNbhd, const NeighbourhoodOptions& options) {
  if (!(alpha > 0.0)) throw ArgumentError("paper_capacity: alpha must be > 0");
  if (!(epsNbhd > 0.0)) throw ArgumentError("paper_capacity: epsNbhd must be > 0");
  if (options.samples < 1) throw ArgumentError("paper_capacity: samples must be >= 1");
  if (cloud.is_empty()) return 0.0;
  const int d = cloud.dim();
  std::size_t hits = 0;

  if (d == 1) {
    // Chord distance <= eps  <=>  angular distance <= 2 asin(eps / 2).
    if (epsNbhd >= 2.0) return 1.0;
    const double reach = 2.0 * std::asin(epsNbhd / 2.0);
    std::vector<double> angles;
    for (Eigen::Index i = 0; i < cloud.size(); ++i) {
      double t = std::atan2(cloud.points()(1, i), cloud.points()(0, i));
      if (t < 0.0) t += 2.0 * kPi;
      angles.push_back(t);
    }
    std::sort(angles.begin(), angles.end());
    auto circularGap = [](double a, double b) {
      const double g = std::abs(a - b);
      return std::min(g, 2.0 * kPi - g);
    };
    for (int k = 0; k < options.samples; ++k) {
      const double t = 2.0 * kPi * (k + 0.5) / options.samples;
      auto it = std::lower_bound(angles.begin(), angles.end(), t);
      const double after = it == angles.end() ? angles.front() : *it;
      const double before = it == angles.begin() ? angles.back() : *std::prev(it);
      if (std::min(circularGap(t, after), circularGap(t, before)) <= reach) ++hits;
    }
  } else {
    std::mt19937_64 rng(options.seed);
    const auto& x = cloud.points();
    for (int k = 0; k < options.samples; ++k) {
      const Eigen::VectorXd y = to_real(random_sphere_point(d, rng));
      const double nearest = (x.colwise() - y).colwise().norm().minCoeff();
      if (nearest <= epsNbhd) ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(options.samples);
}

BoxDimension box_dimension(const BoundaryCloud& cloud, int jMin, int jMax) {
  if (jMin < 1 || jMax <= jMin) throw ArgumentError("box_dimension: need jMax > jMin >= 1");
  if (cloud.is_empty()) throw DegenerateInputError("box_dimension: empty cloud");
  BoxDimension out;
  const auto& x = cloud.points();
  for (int j = jMin; j <= jMax; ++j) {
    const double scale = std::ldexp(1.0, j);
    std::set<std::vector<std::int64_t>> boxes;
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      std::vector<std::int64_t> key(static_cast<std::size_t>(x.rows()));
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        key[static_cast<std::size_t>(r)] = static_cast<std::int64_t>(std::floor((x(r, i) + 1.0) * scale));
      }
      boxes.insert(std::move(key));
    }
    out.scales.push_back(j);
    out.counts.push_back(boxes.size());
  }
  // Slope of log2 N(j) against j.
  const auto m = static_cast<Eigen::Index>(out.scales.size());
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = out.scales[static_cast<std::size_t>(i)];
    y(i) = std::log2(static_cast<double>(out.counts[static_cast<std::size_t>(i)]));
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  out.dimension = coef(1);
  const double tss = (y.array() - y.mean()).square().sum();
  const double rss = (y - A * coef).squaredNorm();
  out.rSquared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
  return out;
}

InteriorZeroProbe interior_zero_probe(const Polynomial& f, double rMax, std::uint64_t seed) {
  if (!(rMax > 0.0) || rMax >= 1.0) throw ArgumentError("interior_zero_probe: rMax must lie in (0, 1)");
  const int d = f.dim();
  std::vector<Eigen::VectorXcd> candidates;
  candidates.push_back(Eigen::VectorXcd::Zero(d));
  if (d == 1) {
    for (int k = 1; k <= 40; ++k) {
      for (int a = 0; a < 128; ++a) {
        candidates.push_back(Eigen::VectorXcd::Constant(1, std::polar(rMax * k / 40.0, 2.0 * kPi * a / 128.0)));
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < 4000; ++s) {
      const double r = rMax * std::pow(unit(rng), 1.0 / (2.0 * d));
      candidates.push_back(r * random_sphere_point(d, rng));
    }
  }
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < candidates.size(); ++i) ranked.emplace_back(std::abs(evaluate(f, candidates[i])), i);
  std::sort(ranked.begin(), ranked.end());

  const Gradient grad(f);
  InteriorZeroProbe probe;
  probe.minModulus = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < std::min<std::size_t>(8, ranked.size()); ++c) {
    Eigen::VectorXcd z = candidates[ranked[c].second];
    for (int it = 0; it < 50; ++it) {
      z += newton_step(f, grad, z);
      if (z.norm() > rMax) z *= rMax / z.norm();
    }
    const double m = std::abs(evaluate(f, z));
    if (m < probe.minModulus) {
      probe.minModulus = m;
      probe.point = z;
    }
  }
  probe.found = probe.minModulus < 1e-8;
  return probe;
}

std::string to_string(ObstructionVerdict v) {
  switch (v) {
    case ObstructionVerdict::ObstructionDetected: return "obstruction detected";
    case ObstructionVerdict::ConsistentWithCyclicity: return "consistent with cyclicity";
    case ObstructionVerdict::Tension: return "tension";
  }
  return "tension";
}

ObstructionReport obstruction_report(const SpaceSpec& spec, const Polynomial& f, int nMax, double alpha,
                                     const ObstructionOptions& options) {
  ObstructionReport rep;
  rep.sweep = index_sweep(spec, f, nMax, options.sweep);
  const BoundaryCloud cloud = sample_zero_set(f, options.zeroSet);
  rep.cloudSize = cloud.size();
  rep.equilibrium = riesz_equilibrium(cloud, alpha, options.equilibrium);
  // The neighbourhood measure does not depend on the exponent; alpha = 0 selects 1.
  rep.paperCapacity = paper_capacity(cloud, alpha > 0.0 ? alpha : 1.0, options.epsNbhd);
  if (!cloud.is_empty()) rep.boxDimension = box_dimension(cloud, options.jMin, options.jMax);
  rep.interior = interior_zero_probe(f, 0.95, options.zeroSet.seed);

  const auto& r = rep.sweep.residuals;
  bool strictlyDecreasing = r.size() >= 2;
  for (std::size_t i = 1; i < r.size(); ++i) strictlyDecreasing = strictlyDecreasing && r[i] < r[i - 1];
  rep.sweepDecreasing = rep.sweep.verdict == Verdict::NumericallyCyclic || strictlyDecreasing;

  const bool bigZeroSet = rep.equilibrium.capacity > options.capacityThreshold;
  if ((bigZeroSet || rep.interior.found) && rep.sweep.verdict == Verdict::Plateau) {
    rep.verdict = ObstructionVerdict::ObstructionDetected;
  } else if (!bigZeroSet && !rep.interior.found && rep.sweepDecreasing) {
    rep.verdict = ObstructionVerdict::ConsistentWithCyclicity;
  } else {
    rep.verdict = ObstructionVerdict::Tension;
  }
  return rep;
}

}  // namespace cyc
