#include "mabbob/bbob.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mabbob/rng.hpp"
#include "mabbob/simd/kernels.hpp"
#include "workspace.hpp"

namespace mabbob {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array<std::string_view, kNumFunctions> kNames{
    "Sphere",
    "Ellipsoidal separable",
    "Rastrigin separable",
    "Bueche-Rastrigin",
    "Linear slope",
    "Attractive sector",
    "Step ellipsoidal",
    "Rosenbrock",
    "Rosenbrock rotated",
    "Ellipsoidal",
    "Discus",
    "Bent cigar",
    "Sharp ridge",
    "Different powers",
    "Rastrigin",
    "Weierstrass",
    "Schaffers F7",
    "Schaffers F7 ill-conditioned",
    "Composite Griewank-Rosenbrock",
    "Schwefel",
    "Gallagher 101 peaks",
    "Gallagher 21 peaks",
    "Katsuura",
    "Lunacek bi-Rastrigin",
};

// Column-major square matrix.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit Matrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[j * n + i]; }
  double operator()(std::size_t i, std::size_t j) const { return a[j * n + i]; }
};

Matrix multiply(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.n);
  for (std::size_t i = 0; i < lhs.n; ++i) {
    for (std::size_t j = 0; j < lhs.n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < lhs.n; ++k) {
        acc += lhs(i, k) * rhs(k, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

// diag(d) * m
Matrix scale_rows(std::span<const double> d, Matrix m) {
  for (std::size_t j = 0; j < m.n; ++j) {
    for (std::size_t i = 0; i < m.n; ++i) {
      m(i, j) *= d[i];
    }
  }
  return m;
}

// Gram-Schmidt on the columns of a standard-normal matrix.
Matrix random_rotation(Rng& rng, std::size_t n) {
  Matrix q(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) {
        q(i, j) = rng.normal();
      }
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dot += q(i, j) * q(i, k);
        }
        for (std::size_t i = 0; i < n; ++i) {
          q(i, j) -= dot * q(i, k);
        }
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        norm += q(i, j) * q(i, j);
      }
      norm = std::sqrt(norm);
      if (norm > 1e-10) {
        for (std::size_t i = 0; i < n; ++i) {
          q(i, j) /= norm;
        }
        break;
      }
    }
  }
  return q;
}

// i / (D - 1), with the single-coordinate case pinned to 0.
double position(std::size_t i, std::size_t dim) {
  return dim > 1 ? static_cast<double>(i) / static_cast<double>(dim - 1) : 0.0;
}

// Diagonal of the conditioning matrix Lambda^alpha.
std::vector<double> conditioning(double alpha, std::size_t dim) {
  std::vector<double> d(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    d[i] = std::pow(alpha, 0.5 * position(i, dim));
  }
  return d;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

double oscillate(double x) {
  if (x == 0.0) {
    return 0.0;
  }
  const double xhat = std::log(std::max(std::abs(x), kTiny));
  const double c1 = x > 0.0 ? 10.0 : 5.5;
  const double c2 = x > 0.0 ? 7.9 : 3.1;
  return std::copysign(std::exp(xhat + 0.049 * (std::sin(c1 * xhat) + std::sin(c2 * xhat))), x);
}

void oscillate(std::span<double> x) {
  for (auto& v : x) {
    v = oscillate(v);
  }
}

void asymmetric(std::span<double> x, double beta) {
  const std::size_t dim = x.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] > 0.0) {
      x[i] = std::pow(x[i], 1.0 + beta * position(i, dim) * std::sqrt(x[i]));
    }
  }
}

double boundary_penalty(std::span<const double> x) {
  double sum = 0.0;
  for (const double v : x) {
    const double excess = std::abs(v) - 5.0;
    if (excess > 0.0) {
      sum += excess * excess;
    }
  }
  return sum;
}

double sum_of_squares(std::span<const double> z) {
  double sum = 0.0;
  for (const double v : z) {
    sum += v * v;
  }
  return sum;
}

double weighted_squares(std::span<const double> w, std::span<const double> z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum += w[i] * z[i] * z[i];
  }
  return sum;
}

double rastrigin(std::span<const double> z) {
  double cosines = 0.0;
  for (const double v : z) {
    cosines += std::cos(kTwoPi * v);
  }
  return 10.0 * (static_cast<double>(z.size()) - cosines) + sum_of_squares(z);
}

double rosenbrock(std::span<const double> z) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i] * z[i] - z[i + 1];
    const double b = z[i] - 1.0;
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

constexpr int kWeierstrassTerms = 12;

double weierstrass_sum(double v) {
  double sum = 0.0;
  double amp = 1.0;
  double freq = 1.0;
  for (int k = 0; k < kWeierstrassTerms; ++k) {
    sum += amp * std::cos(kTwoPi * freq * (v + 0.5));
    amp *= 0.5;
    freq *= 3.0;
  }
  return sum;
}

struct Gallagher {
  std::size_t peaks = 0;
  std::vector<double> centers;  // rotated peak centres, SoA [coord][peak]
  std::vector<double> cond;     // per-peak axis scaling, SoA [coord][peak]
  std::vector<double> bias;     // log of peak heights
};

constexpr double kSchwefelOptimum = 4.2096874633;
constexpr double kLunacekMu0 = 2.5;

}  // namespace

FunctionId::FunctionId(int id) : id_(id) {
  if (id < 1 || id > kNumFunctions) {
    throw std::invalid_argument("fid: must be in [1, 24], got " + std::to_string(id));
  }
}

InstanceId::InstanceId(std::int64_t id) : id_(id) {
  if (id < 1) {
    throw std::invalid_argument("iid: must be >= 1, got " + std::to_string(id));
  }
}

std::string_view function_name(FunctionId fid) noexcept { return kNames[fid.index()]; }

struct ComponentProblem::Params {
  FunctionId fid;
  InstanceId iid;
  std::size_t dim;

  std::vector<double> xopt;     // shift used inside the transformation
  std::vector<double> optimum;  // point of zero precision
  Matrix first;                 // linear map applied to the shifted input
  Matrix second;                // linear map applied after a nonlinearity
  std::vector<double> weights;  // per-coordinate weights of the final sum
  std::vector<double> signs;
  double factor = 1.0;
  Gallagher gallagher;
  double value_at_optimum = 0.0;

  Params(FunctionId f, InstanceId i, std::size_t d) : fid(f), iid(i), dim(d) {}

  double base(std::span<const double> x) const noexcept;
  std::size_t scratch_size() const noexcept { return 4 * dim; }
};

double ComponentProblem::Params::base(std::span<const double> x) const noexcept {
  const auto& k = simd::active();
  const std::size_t n = dim;
  const auto d = static_cast<double>(n);
  detail::Workspace ws(scratch_size());
  auto t = ws.take(n);
  auto z = ws.take(n);

  auto shifted = [&](std::span<double> out) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = x[i] - xopt[i];
    }
  };
  auto apply = [&](const Matrix& m, std::span<const double> in, std::span<double> out) {
    k.matvec(m.a.data(), in.data(), out.data(), n, n);
  };

  switch (fid.value()) {
    case 1: {
      shifted(z);
      return sum_of_squares(z);
    }
    case 2: {
      shifted(z);
      oscillate(z);
      return weighted_squares(weights, z);
    }
    case 3: {
      shifted(t);
      oscillate(t);
      asymmetric(t, 0.2);
      k.scale(t.data(), weights.data(), z.data(), n);
      return rastrigin(z);
    }
    case 4: {
      shifted(z);
      oscillate(z);
      for (std::size_t i = 0; i < n; ++i) {
        const double s = (z[i] > 0.0 && i % 2 == 0) ? 10.0 * weights[i] : weights[i];
        z[i] *= s;
      }
      return rastrigin(z) + 100.0 * boundary_penalty(x);
    }
    case 5: {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double zi = x[i] * xopt[i] < 25.0 ? x[i] : xopt[i];
        sum += 5.0 * std::abs(weights[i]) - weights[i] * zi;
      }
      return sum;
    }
    case 6: {
      shifted(t);
      apply(first, t, z);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = z[i] * xopt[i] > 0.0 ? 100.0 : 1.0;
        sum += (s * z[i]) * (s * z[i]);
      }
      return std::pow(oscillate(sum), 0.9);
    }
    case 7: {
      shifted(t);
      auto zhat = ws.take(n);
      apply(first, t, zhat);
      for (std::size_t i = 0; i < n; ++i) {
        t[i] = std::abs(zhat[i]) > 0.5 ? std::floor(0.5 + zhat[i])
                                       : std::floor(0.5 + 10.0 * zhat[i]) / 10.0;
      }
      apply(second, t, z);
      return 0.1 * std::max(std::abs(zhat[0]) / 1e4, weighted_squares(weights, z)) +
             boundary_penalty(x);
    }
    case 8: {
      for (std::size_t i = 0; i < n; ++i) {
        z[i] = factor * (x[i] - xopt[i]) + 1.0;
      }
      return rosenbrock(z);
    }
    case 9: {
      shifted(t);
      apply(first, t, z);
      for (auto& v : z) {
        v += 1.0;
      }
      return rosenbrock(z);
    }
    case 10:
    case 11: {
      shifted(t);
      apply(first, t, z);
      oscillate(z);
      return weighted_squares(weights, z);
    }
    case 12: {
      shifted(t);
      apply(first, t, z);
      asymmetric(z, 0.5);
      apply(first, z, t);
      return weighted_squares(weights, t);
    }
    case 13: {
      shifted(t);
      apply(first, t, z);
      double tail = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        tail += z[i] * z[i];
      }
      return z[0] * z[0] + 100.0 * std::sqrt(tail);
    }
    case 14: {
      shifted(t);
      apply(first, t, z);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += std::pow(std::abs(z[i]), weights[i]);
      }
      return std::sqrt(sum);
    }
    case 15: {
      shifted(t);
      apply(first, t, z);
      oscillate(z);
      asymmetric(z, 0.2);
      apply(second, z, t);
      return rastrigin(t);
    }
    case 16: {
      shifted(t);
      apply(first, t, z);
      oscillate(z);
      apply(second, z, t);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += weierstrass_sum(t[i]);
      }
      const double inner = sum / d - factor;
      return 10.0 * inner * inner * inner + 10.0 / d * boundary_penalty(x);
    }
    case 17:
    case 18: {
      shifted(t);
      apply(first, t, z);
      asymmetric(z, 0.5);
      apply(second, z, t);
      if (n < 2) {
        return 10.0 * boundary_penalty(x);
      }
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = std::sqrt(t[i] * t[i] + t[i + 1] * t[i + 1]);
        const double root = std::sqrt(s);
        const double wave = std::sin(50.0 * std::pow(std::max(s, kTiny), 0.2));
        sum += root + root * wave * wave;
      }
      const double mean = sum / (d - 1.0);
      return mean * mean + 10.0 * boundary_penalty(x);
    }
    case 19: {
      if (n < 2) {
        return 0.0;
      }
      shifted(t);
      apply(first, t, z);
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double zi = z[i] + 1.0;
        const double zn = z[i + 1] + 1.0;
        const double a = zi * zi - zn;
        const double b = zi - 1.0;
        const double s = 100.0 * a * a + b * b;
        sum += s / 4000.0 - std::cos(s);
      }
      return 10.0 * sum / (d - 1.0) + 10.0;
    }
    case 20: {
      for (std::size_t i = 0; i < n; ++i) {
        t[i] = 2.0 * signs[i] * x[i];
      }
      z[0] = t[0];
      for (std::size_t i = 1; i < n; ++i) {
        z[i] = t[i] + 0.25 * (t[i - 1] - kSchwefelOptimum);
      }
      double sum = 0.0;
      double penalty = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double zi = 100.0 * (weights[i] * (z[i] - kSchwefelOptimum) + kSchwefelOptimum);
        sum += zi * std::sin(std::sqrt(std::abs(zi)));
        const double excess = std::abs(zi / 100.0) - 5.0;
        if (excess > 0.0) {
          penalty += excess * excess;
        }
      }
      return -sum / (100.0 * d) + 4.189828872724339 + 100.0 * penalty;
    }
    case 21:
    case 22: {
      apply(first, x, z);
      const auto& g = gallagher;
      const double top =
          k.peak_max(z.data(), g.centers.data(), g.cond.data(), g.bias.data(), g.peaks, n,
                     -0.5 / d);
      const double osc = oscillate(10.0 - std::exp(top));
      return osc * osc + boundary_penalty(x);
    }
    case 23: {
      shifted(t);
      apply(first, t, z);
      const double exponent = 10.0 / std::pow(d, 1.2);
      double product = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        double p = 2.0;
        for (int j = 1; j <= 32; ++j) {
          const double v = p * z[i];
          sum += std::abs(v - std::round(v)) / p;
          p *= 2.0;
        }
        product *= std::pow(1.0 + static_cast<double>(i + 1) * sum, exponent);
      }
      const double scale = 10.0 / (d * d);
      return scale * product - scale + boundary_penalty(x);
    }
    case 24: {
      const double s = 1.0 - 1.0 / (2.0 * std::sqrt(d + 20.0) - 8.2);
      const double mu1 = -std::sqrt((kLunacekMu0 * kLunacekMu0 - 1.0) / s);
      double near = 0.0;
      double far = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double xhat = 2.0 * signs[i] * x[i];
        t[i] = xhat - kLunacekMu0;
        near += t[i] * t[i];
        far += (xhat - mu1) * (xhat - mu1);
      }
      apply(first, t, z);
      double cosines = 0.0;
      for (const double v : z) {
        cosines += std::cos(kTwoPi * v);
      }
      return std::min(near, d + s * far) + 10.0 * (d - cosines) + 1e4 * boundary_penalty(x);
    }
    default:
      break;
  }
  assert(false && "unreachable function id");
  return 0.0;
}

namespace {

void build(ComponentProblem::Params& p, Rng& rng);

}  // namespace

ComponentProblem::ComponentProblem(FunctionId fid, InstanceId iid, std::size_t dim) {
  if (dim == 0) {
    throw std::invalid_argument("dim: must be >= 1, got 0");
  }
  auto params = std::make_shared<Params>(fid, iid, dim);
  Rng rng(derive_seed({0xBB0BULL, static_cast<std::uint64_t>(fid.value()),
                       static_cast<std::uint64_t>(iid.value()), dim}));
  build(*params, rng);
  params->value_at_optimum = 0.0;
  params->value_at_optimum = params->base(params->optimum);
  params_ = std::move(params);
}

FunctionId ComponentProblem::function() const noexcept { return params_->fid; }
InstanceId ComponentProblem::instance() const noexcept { return params_->iid; }
std::size_t ComponentProblem::dim() const noexcept { return params_->dim; }

std::span<const double> ComponentProblem::optimum_location() const noexcept {
  return params_->optimum;
}

double ComponentProblem::precision(std::span<const double> x) const noexcept {
  double value = params_->base(x);
  if (!std::isfinite(value)) {
    // Overflow far from the box, or inf - inf inside a transform.
    value = std::numeric_limits<double>::max();
  }
  return std::max(0.0, value - params_->value_at_optimum);
}

double ComponentProblem::evaluate_raw(std::span<const double> x) const {
  if (x.size() != params_->dim) {
    throw std::invalid_argument("x: expected " + std::to_string(params_->dim) +
                                " coordinates, got " + std::to_string(x.size()));
  }
  for (const double v : x) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("x: coordinates must be finite");
    }
  }
  return precision(x);
}

namespace {

void build(ComponentProblem::Params& p, Rng& rng) {
  const std::size_t n = p.dim;
  const auto d = static_cast<double>(n);
  const int fid = p.fid.value();

  p.xopt.resize(n);
  for (auto& v : p.xopt) {
    v = rng.uniform(-4.0, 4.0);
  }
  const Matrix r = random_rotation(rng, n);
  const Matrix q = random_rotation(rng, n);
  p.optimum = p.xopt;

  auto powers = [&](double base, double scale) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = std::pow(base, scale * position(i, n));
    }
    return w;
  };

  switch (fid) {
    case 1:
      break;
    case 2:
      p.weights = powers(10.0, 6.0);
      break;
    case 3:
      p.weights = conditioning(10.0, n);
      break;
    case 4:
      for (std::size_t i = 0; i < n; i += 2) {
        p.xopt[i] = std::abs(p.xopt[i]);
      }
      p.optimum = p.xopt;
      p.weights = conditioning(10.0, n);
      break;
    case 5:
      p.weights.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        p.xopt[i] = 5.0 * sign_of(p.xopt[i]);
        p.weights[i] = sign_of(p.xopt[i]) * std::pow(10.0, position(i, n));
      }
      p.optimum = p.xopt;
      break;
    case 6:
    case 13:
      p.first = multiply(q, scale_rows(conditioning(10.0, n), r));
      break;
    case 7:
      p.first = scale_rows(conditioning(10.0, n), r);
      p.second = q;
      p.weights = powers(10.0, 2.0);
      break;
    case 8:
      p.factor = std::max(1.0, std::sqrt(d) / 8.0);
      for (auto& v : p.xopt) {
        v *= 0.75;
      }
      p.optimum = p.xopt;
      break;
    case 9:
    case 19: {
      const double c = std::max(1.0, std::sqrt(d) / 8.0);
      p.first = r;
      for (auto& v : p.first.a) {
        v *= c;
      }
      // c R O = 1/2 (all ones) puts the optimum of z = c R x + 1/2 at O.
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          sum += r(j, i);
        }
        p.xopt[i] = sum / (2.0 * c);
      }
      p.optimum = p.xopt;
      break;
    }
    case 10:
      p.first = r;
      p.weights = powers(10.0, 6.0);
      break;
    case 11:
      p.first = r;
      p.weights.assign(n, 1.0);
      p.weights[0] = 1e6;
      break;
    case 12:
      p.first = r;
      p.weights.assign(n, 1e6);
      p.weights[0] = 1.0;
      break;
    case 14:
      p.first = r;
      p.weights.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        p.weights[i] = 2.0 + 4.0 * position(i, n);
      }
      break;
    case 15:
      p.first = r;
      p.second = multiply(r, scale_rows(conditioning(10.0, n), q));
      break;
    case 16: {
      p.first = r;
      p.second = multiply(r, scale_rows(conditioning(0.01, n), q));
      p.factor = weierstrass_sum(0.0);
      break;
    }
    case 17:
    case 18:
      p.first = r;
      p.second = scale_rows(conditioning(fid == 17 ? 10.0 : 1000.0, n), q);
      break;
    case 20:
      p.signs.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        p.signs[i] = sign_of(p.xopt[i]);
        p.xopt[i] = 0.5 * kSchwefelOptimum * p.signs[i];
      }
      p.optimum = p.xopt;
      p.weights = conditioning(10.0, n);
      break;
    case 21:
    case 22: {
      const bool many = fid == 21;
      const std::size_t peaks = many ? 101 : 21;
      const double radius = many ? 5.0 : 4.9;
      const double top_alpha = many ? 1000.0 : 1e6;
      auto& g = p.gallagher;
      g.peaks = peaks;
      g.centers.assign(n * peaks, 0.0);
      g.cond.assign(n * peaks, 0.0);
      g.bias.assign(peaks, 0.0);

      std::vector<std::size_t> alpha_order(peaks - 1);
      for (std::size_t i = 0; i < alpha_order.size(); ++i) {
        alpha_order[i] = i;
      }
      rng.shuffle(std::span(alpha_order));

      std::vector<double> y(n);
      std::vector<double> ry(n);
      std::vector<std::size_t> axes(n);
      for (std::size_t pk = 0; pk < peaks; ++pk) {
        const double extent = pk == 0 ? 0.8 * radius : radius;
        for (auto& v : y) {
          v = rng.uniform(-extent, extent);
        }
        if (pk == 0) {
          p.xopt = y;
          p.optimum = y;
        }
        simd::scalar_kernels().matvec(r.a.data(), y.data(), ry.data(), n, n);

        const double alpha =
            pk == 0 ? top_alpha
                    : std::pow(1000.0, 2.0 * static_cast<double>(alpha_order[pk - 1]) /
                                           static_cast<double>(peaks - 2));
        for (std::size_t j = 0; j < n; ++j) {
          axes[j] = j;
        }
        rng.shuffle(std::span(axes));
        const double norm = std::pow(alpha, 0.25);
        for (std::size_t j = 0; j < n; ++j) {
          g.centers[j * peaks + pk] = ry[j];
          g.cond[j * peaks + pk] = std::pow(alpha, 0.5 * position(axes[j], n)) / norm;
        }
        const double height =
            pk == 0 ? 10.0
                    : 1.1 + 8.0 * static_cast<double>(pk - 1) / static_cast<double>(peaks - 2);
        g.bias[pk] = std::log(height);
      }
      p.first = r;
      break;
    }
    case 23:
      p.first = multiply(q, scale_rows(conditioning(100.0, n), r));
      break;
    case 24:
      p.signs.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        p.signs[i] = sign_of(p.xopt[i]);
        p.xopt[i] = 0.5 * kLunacekMu0 * p.signs[i];
      }
      p.optimum = p.xopt;
      p.first = multiply(q, scale_rows(conditioning(100.0, n), r));
      break;
    default:
      break;
  }
}

}  // namespace
}  // namespace mabbob
