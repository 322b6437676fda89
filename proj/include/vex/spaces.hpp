#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vex/fields.hpp"

namespace vex {

struct NormResult {
  enum class Method { Bisection, LevelScan, ClosedForm };
  double value = 0.0;
  Method method = Method::Bisection;
  // Bisection: |modular(f/value) - 1| at the returned value.
  // LevelScan: one-sided grid-gap bound (ratio between adjacent lambdas - 1).
  double residual = 0.0;
};

std::string to_string(NormResult::Method m);

/// Record of a level scan: lambda grid and, per lambda, the weak modular
/// integral over {|f| > lambda}.
struct LevelScan {
  std::vector<double> lambdas;
  std::vector<double> modular_values;
  double sup_value = 0.0;
  double argmax_lambda = 0.0;
};

struct ScanSpec {
  int points = 200;  // log-spaced
  std::optional<double> lambda_min;  // auto-bracketed from f when absent
  std::optional<double> lambda_max;
};

double modular(const ScalarField& f, const ExponentField& p);

NormResult luxemburg_norm(const ScalarField& f, const ExponentField& p,
                          double tol = 1e-8);

// sup over the lambda grid of lambda * ||chi_{|f|>lambda}||_{p(.)}.
NormResult weak_norm(const ScalarField& f, const ExponentField& p,
                     const ScanSpec& scan = {});

LevelScan weak_modular_sup(const ScalarField& f, const ExponentField& p,
                           const ScanSpec& scan = {});

struct EmbeddingReport {
  double q_modular = 0.0;
  double bound = 0.0;
  double weak_norm_p = 0.0;
  double gap_min = 0.0;  // (p-q)^- over samples
  bool holds = false;
};

// Weak-to-strong embedding: the q-modular against the constructive bound
// 2^{q+} max{W^{p+}, W^{p-}} sum_i 2^{-i(p-q)^-} + |Omega|, W the weak norm.
EmbeddingReport embedding_check(const ScalarField& f, const ExponentField& p,
                                const ExponentField& q,
                                const ScanSpec& scan = {});

// weak_norm(|f|^q, p/q) for constant q > 0; coincides with weak_norm(f,p)^q
// up to scan tolerance.
NormResult power_rescale(const ScalarField& f, double q,
                         const ExponentField& p, const ScanSpec& scan = {});

enum class AdversarialBranch { SmallValues, LargeValues };

// The pointwise exponent q with (1/2)^{1/q} = min{|f|,1}/2 (small-value
// branch; q = 1 where f = 0), or 2^{1/q} = max{|f|,1}/2 restricted to
// {|f| > 2} (large-value branch; q = 1 elsewhere).
ExponentField adversarial_exponent(const ScalarField& f,
                                   AdversarialBranch branch =
                                       AdversarialBranch::SmallValues);

// Weak-modular term of |f|^{q(.)} in w-L^{p/q} at the branch's level
// (lambda = 1/2 resp. 2), evaluated in closed form on the samples.
double adversarial_level_modular(const ScalarField& f, const ExponentField& p,
                                 AdversarialBranch branch =
                                     AdversarialBranch::SmallValues);

// Modular-norm sandwich on a computed (modular, norm) pair, with the output's
// own residual as the only slack.
bool sandwich_holds(double modular_value, const NormResult& norm,
                    const ExponentField& p);

}  // namespace vex
