#include "dnaadv/campaign.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "dnaadv/errors.hpp"
#include "dnaadv/rng.hpp"

namespace dnaadv {

void CampaignGrid::validate() const {
  if (values.empty()) throw InvalidArgument("campaign grid has no values");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) throw InvalidArgument("grid values must be strictly increasing");
  if (kind == AttackKind::Backtranslation && axis != GridAxis::Iterations)
    throw InvalidArgument("backtranslation campaigns sweep iterations only");
  const auto check_iterations = [](double v) {
    if (!(v >= 1.0) || v != std::floor(v)) throw InvalidArgument("iterations must be positive integers");
  };
  const auto check_epsilon = [](double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("epsilon must lie in [0,1]");
  };
  for (double v : values) axis == GridAxis::Epsilon ? check_epsilon(v) : check_iterations(v);
  axis == GridAxis::Epsilon ? check_iterations(fixed_value) : check_epsilon(fixed_value);
}

AttackConfig CampaignGrid::config_at(const AttackConfig& base, double value) const {
  AttackConfig cfg = base;
  if (axis == GridAxis::Epsilon) {
    cfg.epsilon = value;
    cfg.iterations = static_cast<std::size_t>(fixed_value);
  } else {
    cfg.iterations = static_cast<std::size_t>(value);
    cfg.epsilon = fixed_value;
  }
  return cfg;
}

std::size_t default_thread_count() noexcept {
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        if (stop.load()) return;
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop.store(true);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

CampaignReport run_campaign(ClassifierOracle& oracle, const LabeledDataset& test_set,
                            const CampaignGrid& grid, const AttackConfig& base,
                            const CampaignOptions& options) {
  grid.validate();
  base.validate();
  if (test_set.empty()) throw InvalidArgument("campaign test set is empty");

  CampaignReport report;
  report.metadata = {grid.kind, grid.axis, grid.fixed_value, base.seed, options.victim_id};

  for (double value : grid.values) {
    const AttackConfig cfg = grid.config_at(base, value);
    std::vector<std::optional<AttackOutcome>> outcomes(test_set.size());
    try {
      parallel_for(test_set.size(), options.threads, [&](std::size_t i) {
        const auto& rec = test_set[i];
        AttackConfig own = cfg;
        own.seed = derive_seed(base.seed, rec.id);
        outcomes[i] = run_attack(grid.kind, oracle, rec.seq, rec.label, own);
      });
    } catch (const OracleFailure& e) {
      report.complete = false;
      report.incomplete_reason = e.what();
      return report;
    }

    std::vector<AttackOutcome> done;
    done.reserve(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = *outcomes[i];
      report.samples.push_back({value, test_set[i].id, o.true_label, o.original_prediction,
                                o.final_prediction, o.success, o.queries, o.edits.size(),
                                hamming(o.original, o.adversarial), gc_content(o.original),
                                gc_content(o.adversarial), o.final_true_prob});
      done.push_back(std::move(*outcomes[i]));
    }
    report.rows.push_back(summarize(value, done));
  }
  return report;
}

}  // namespace dnaadv
