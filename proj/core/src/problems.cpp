#include "moeadps/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "moeadps/errors.hpp"

namespace moeadps {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(const std::vector<double>& x, const std::string& key) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite decision variable passed to " + key);
    }
  }
}

// Shared DTLZ distance functions over the trailing D-m+1 variables.
double dtlz_g_rastrigin(const std::vector<double>& x, int m) {
  const int k = static_cast<int>(x.size()) - m + 1;
  double g = k;
  for (std::size_t i = x.size() - k; i < x.size(); ++i) {
    const double z = x[i] - 0.5;
    g += z * z - std::cos(20.0 * kPi * z);
  }
  return 100.0 * g;
}

double dtlz_g_sphere(const std::vector<double>& x, int m) {
  const int k = static_cast<int>(x.size()) - m + 1;
  double g = 0.0;
  for (std::size_t i = x.size() - k; i < x.size(); ++i) {
    const double z = x[i] - 0.5;
    g += z * z;
  }
  return g;
}

// DTLZ1-4 at m=2, optionally inverted per the published rule:
// DTLZ1: f' = 0.5(1+g) - f; DTLZ2-4: f' = (1+g) - f.
std::vector<double> eval_dtlz(int id, bool inverted,
                              const std::vector<double>& x) {
  double g = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  switch (id) {
    case 1:
      g = dtlz_g_rastrigin(x, 2);
      f1 = 0.5 * x[0] * (1.0 + g);
      f2 = 0.5 * (1.0 - x[0]) * (1.0 + g);
      break;
    case 2:
    case 3:
    case 4: {
      g = (id == 3) ? dtlz_g_rastrigin(x, 2) : dtlz_g_sphere(x, 2);
      const double pos = (id == 4) ? std::pow(x[0], 100.0) : x[0];
      f1 = (1.0 + g) * std::cos(pos * kPi / 2.0);
      f2 = (1.0 + g) * std::sin(pos * kPi / 2.0);
      break;
    }
    default:
      throw ConfigError("dtlz id out of range");
  }
  if (inverted) {
    const double top = (id == 1) ? 0.5 * (1.0 + g) : (1.0 + g);
    f1 = top - f1;
    f2 = top - f2;
  }
  return {f1, f2};
}

// UF1-10 as defined for the CEC 2009 competition, with n = dimension. The
// sums run over the 1-based index sets J1/J2(/J3) used by those definitions.
std::vector<double> eval_uf(int id, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());

  if (id <= 7) {
    double sum1 = 0.0, sum2 = 0.0;
    double prod1 = 1.0, prod2 = 1.0;
    int count1 = 0, count2 = 0;
    for (int j = 2; j <= n; ++j) {
      const double xj = x[j - 1];
      double y = 0.0;
      switch (id) {
        case 2: {
          const double a =
              0.3 * x[0] * x[0] * std::cos(24.0 * kPi * x[0] + 4.0 * j * kPi / n) +
              0.6 * x[0];
          y = (j % 2 == 1) ? xj - a * std::cos(6.0 * kPi * x[0] + j * kPi / n)
                           : xj - a * std::sin(6.0 * kPi * x[0] + j * kPi / n);
          break;
        }
        case 3:
          y = xj - std::pow(x[0], 0.5 * (1.0 + 3.0 * (j - 2) / (n - 2.0)));
          break;
        default:
          y = xj - std::sin(6.0 * kPi * x[0] + j * kPi / n);
          break;
      }

      double term = 0.0;
      switch (id) {
        case 4: {
          const double t = std::abs(y);
          term = t / (1.0 + std::exp(2.0 * t));
          break;
        }
        case 5:
          term = 2.0 * y * y - std::cos(4.0 * kPi * y) + 1.0;
          break;
        default:
          term = y * y;
          break;
      }

      const bool needs_product = (id == 3 || id == 6);
      if (j % 2 == 1) {
        sum1 += term;
        if (needs_product)
          prod1 *= std::cos(20.0 * y * kPi / std::sqrt(static_cast<double>(j)));
        ++count1;
      } else {
        sum2 += term;
        if (needs_product)
          prod2 *= std::cos(20.0 * y * kPi / std::sqrt(static_cast<double>(j)));
        ++count2;
      }
    }

    double f1 = 0.0, f2 = 0.0;
    switch (id) {
      case 1:
      case 2:
        f1 = x[0] + 2.0 * sum1 / count1;
        f2 = 1.0 - std::sqrt(x[0]) + 2.0 * sum2 / count2;
        break;
      case 3:
        f1 = x[0] + 2.0 * (4.0 * sum1 - 2.0 * prod1 + 2.0) / count1;
        f2 = 1.0 - std::sqrt(x[0]) + 2.0 * (4.0 * sum2 - 2.0 * prod2 + 2.0) / count2;
        break;
      case 4:
        f1 = x[0] + 2.0 * sum1 / count1;
        f2 = 1.0 - x[0] * x[0] + 2.0 * sum2 / count2;
        break;
      case 5: {
        const double hump = (0.05 + 0.1) * std::abs(std::sin(20.0 * kPi * x[0]));
        f1 = x[0] + hump + 2.0 * sum1 / count1;
        f2 = 1.0 - x[0] + hump + 2.0 * sum2 / count2;
        break;
      }
      case 6: {
        const double hump =
            std::max(0.0, 2.0 * (0.25 + 0.1) * std::sin(4.0 * kPi * x[0]));
        f1 = x[0] + hump + 2.0 * (4.0 * sum1 - 2.0 * prod1 + 2.0) / count1;
        f2 = 1.0 - x[0] + hump + 2.0 * (4.0 * sum2 - 2.0 * prod2 + 2.0) / count2;
        break;
      }
      case 7: {
        const double root = std::pow(x[0], 0.2);
        f1 = root + 2.0 * sum1 / count1;
        f2 = 1.0 - root + 2.0 * sum2 / count2;
        break;
      }
      default:
        throw ConfigError("uf id out of range");
    }
    return {f1, f2};
  }

  // UF8-10: three objectives, index sets by j mod 3.
  double sum1 = 0.0, sum2 = 0.0, sum3 = 0.0;
  int count1 = 0, count2 = 0, count3 = 0;
  for (int j = 3; j <= n; ++j) {
    const double y =
        x[j - 1] - 2.0 * x[1] * std::sin(2.0 * kPi * x[0] + j * kPi / n);
    const double term =
        (id == 10) ? 4.0 * y * y - std::cos(8.0 * kPi * y) + 1.0 : y * y;
    if (j % 3 == 1) {
      sum1 += term;
      ++count1;
    } else if (j % 3 == 2) {
      sum2 += term;
      ++count2;
    } else {
      sum3 += term;
      ++count3;
    }
  }

  double f1 = 0.0, f2 = 0.0, f3 = 0.0;
  if (id == 8 || id == 10) {
    f1 = std::cos(0.5 * x[0] * kPi) * std::cos(0.5 * x[1] * kPi) + 2.0 * sum1 / count1;
    f2 = std::cos(0.5 * x[0] * kPi) * std::sin(0.5 * x[1] * kPi) + 2.0 * sum2 / count2;
    f3 = std::sin(0.5 * x[0] * kPi) + 2.0 * sum3 / count3;
  } else if (id == 9) {
    const double eps = 0.1;
    const double hump =
        std::max(0.0, (1.0 + eps) * (1.0 - 4.0 * (2.0 * x[0] - 1.0) * (2.0 * x[0] - 1.0)));
    f1 = 0.5 * (hump + 2.0 * x[0]) * x[1] + 2.0 * sum1 / count1;
    f2 = 0.5 * (hump - 2.0 * x[0] + 2.0) * x[1] + 2.0 * sum2 / count2;
    f3 = 1.0 - x[1] + 2.0 * sum3 / count3;
  } else {
    throw ConfigError("uf id out of range");
  }
  return {f1, f2, f3};
}

}  // namespace

ProblemDescriptor make_problem(ProblemFamily family, int id, int num_objectives,
                               int dimension) {
  ProblemDescriptor p;
  p.family = family;
  p.id = id;
  p.num_objectives = num_objectives;
  p.dimension = dimension;

  if (dimension < 3) {
    throw ConfigError("problem dimension must be at least 3");
  }

  switch (family) {
    case ProblemFamily::dtlz:
    case ProblemFamily::dtlz_inverted: {
      if (id < 1 || id > 4 || num_objectives != 2) {
        throw ConfigError("dtlz variants support id 1-4 with 2 objectives");
      }
      p.lower.assign(dimension, 0.0);
      p.upper.assign(dimension, 1.0);
      p.key = "dtlz" + std::to_string(id) +
              (family == ProblemFamily::dtlz_inverted ? "_inv" : "");
      break;
    }
    case ProblemFamily::uf: {
      const int expected_m = (id >= 8) ? 3 : 2;
      if (id < 1 || id > 10 || num_objectives != expected_m) {
        throw ConfigError("uf" + std::to_string(id) + " requires " +
                          std::to_string(expected_m) + " objectives");
      }
      if (id == 3) {
        p.lower.assign(dimension, 0.0);
        p.upper.assign(dimension, 1.0);
      } else if (id == 4 || id >= 8) {
        p.lower.assign(dimension, -2.0);
        p.upper.assign(dimension, 2.0);
      } else {
        p.lower.assign(dimension, -1.0);
        p.upper.assign(dimension, 1.0);
      }
      // Position variables always live in [0,1].
      p.lower[0] = 0.0;
      p.upper[0] = 1.0;
      if (id >= 8) {
        p.lower[1] = 0.0;
        p.upper[1] = 1.0;
      }
      p.key = "uf" + std::to_string(id);
      break;
    }
  }
  return p;
}

ProblemDescriptor make_problem(const std::string& key, int dimension) {
  auto starts_with = [&](const std::string& prefix) {
    return key.rfind(prefix, 0) == 0;
  };
  try {
    if (starts_with("dtlz")) {
      const bool inverted = key.size() > 5 && key.substr(5) == "_inv";
      const int id = std::stoi(key.substr(4, 1));
      if (key != "dtlz" + std::to_string(id) + (inverted ? "_inv" : "")) {
        throw ConfigError("unknown problem key: " + key);
      }
      return make_problem(
          inverted ? ProblemFamily::dtlz_inverted : ProblemFamily::dtlz, id, 2,
          dimension);
    }
    if (starts_with("uf")) {
      const int id = std::stoi(key.substr(2));
      if (key != "uf" + std::to_string(id)) {
        throw ConfigError("unknown problem key: " + key);
      }
      return make_problem(ProblemFamily::uf, id, id >= 8 ? 3 : 2, dimension);
    }
  } catch (const std::invalid_argument&) {
    // fall through to the error below
  } catch (const std::out_of_range&) {
  }
  throw ConfigError("unknown problem key: " + key);
}

std::vector<std::string> problem_keys() {
  std::vector<std::string> keys;
  for (int id = 1; id <= 4; ++id) keys.push_back("dtlz" + std::to_string(id));
  for (int id = 1; id <= 4; ++id)
    keys.push_back("dtlz" + std::to_string(id) + "_inv");
  for (int id = 1; id <= 10; ++id) keys.push_back("uf" + std::to_string(id));
  return keys;
}

std::vector<double> evaluate(const ProblemDescriptor& problem,
                             const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != problem.dimension) {
    throw EvaluationError("decision vector length mismatch for " + problem.key);
  }
  check_finite(x, problem.key);
  switch (problem.family) {
    case ProblemFamily::dtlz:
      return eval_dtlz(problem.id, false, x);
    case ProblemFamily::dtlz_inverted:
      return eval_dtlz(problem.id, true, x);
    case ProblemFamily::uf:
      return eval_uf(problem.id, x);
  }
  throw ConfigError("unreachable problem family");
}

std::vector<std::vector<double>> true_front_sample(
    const ProblemDescriptor& problem, int k) {
  if (problem.family == ProblemFamily::uf) {
    throw AnalysisError("analytic front unavailable for " + problem.key);
  }
  if (k < 2) {
    throw ConfigError("front sample needs at least 2 points");
  }

  std::vector<std::vector<double>> front;
  front.reserve(k);
  const bool inverted = problem.family == ProblemFamily::dtlz_inverted;
  for (int i = 0; i < k; ++i) {
    const double t = static_cast<double>(i) / (k - 1);
    double f1 = 0.0, f2 = 0.0;
    if (problem.id == 1) {
      f1 = 0.5 * t;
      f2 = 0.5 * (1.0 - t);
      if (inverted) {
        f1 = 0.5 - f1;
        f2 = 0.5 - f2;
      }
    } else {
      f1 = std::sin(t * kPi / 2.0);
      f2 = std::cos(t * kPi / 2.0);
      if (inverted) {
        f1 = 1.0 - f1;
        f2 = 1.0 - f2;
      }
    }
    front.push_back({f1, f2});
  }
  return front;
}

}  // namespace moeadps
