#include "dnaadv/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dnaadv/errors.hpp"

namespace dnaadv {

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw LengthMismatch(xs.size(), ys.size());
  if (xs.size() < 2) throw TooFewPoints();
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> gc_correlation(std::span<const DnaSequence> originals,
                                     std::span<const DnaSequence> adversarials) {
  if (originals.size() != adversarials.size())
    throw LengthMismatch(originals.size(), adversarials.size());
  std::vector<double> a, b;
  a.reserve(originals.size());
  b.reserve(originals.size());
  for (std::size_t i = 0; i < originals.size(); ++i) {
    a.push_back(gc_content(originals[i]));
    b.push_back(gc_content(adversarials[i]));
  }
  return pearson(a, b);
}

double accuracy(std::span<const AttackOutcome> outcomes) {
  if (outcomes.empty()) throw InvalidArgument("accuracy of no outcomes");
  const auto hits = std::count_if(outcomes.begin(), outcomes.end(), [](const AttackOutcome& o) {
    return o.final_prediction == o.true_label;
  });
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

double success_rate(std::span<const AttackOutcome> outcomes) {
  std::size_t baseline = 0, flipped = 0;
  for (const auto& o : outcomes) {
    baseline += o.original_prediction == o.true_label;
    flipped += o.success;
  }
  if (baseline == 0) throw NoCorrectBaseline();
  return static_cast<double>(flipped) / static_cast<double>(baseline);
}

std::string_view to_string(GridAxis axis) noexcept {
  return axis == GridAxis::Epsilon ? "epsilon" : "iterations";
}

GridAxis parse_grid_axis(std::string_view name) {
  if (name == "epsilon") return GridAxis::Epsilon;
  if (name == "iterations") return GridAxis::Iterations;
  throw InvalidArgument("unknown grid axis '" + std::string(name) + "'");
}

CampaignRow summarize(double grid_value, std::span<const AttackOutcome> outcomes) {
  CampaignRow row;
  row.grid_value = grid_value;
  row.attacked_acc = accuracy(outcomes);
  std::size_t clean = 0;
  double queries = 0.0;
  std::vector<DnaSequence> originals, adversarials;
  for (const auto& o : outcomes) {
    clean += o.original_prediction == o.true_label;
    queries += static_cast<double>(o.queries);
    originals.push_back(o.original);
    adversarials.push_back(o.adversarial);
  }
  const double n = static_cast<double>(outcomes.size());
  row.clean_acc = static_cast<double>(clean) / n;
  row.mean_queries = queries / n;
  if (clean > 0) row.success_rate = success_rate(outcomes);
  if (outcomes.size() >= 2) row.gc_pearson = gc_correlation(originals, adversarials);
  return row;
}

}  // namespace dnaadv
