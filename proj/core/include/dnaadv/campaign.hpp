#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dnaadv/attack.hpp"
#include "dnaadv/dataset.hpp"
#include "dnaadv/metrics.hpp"
#include "dnaadv/oracle.hpp"

namespace dnaadv {

/// One sweep axis. For the epsilon axis `fixed_value` is the iteration count; for the
/// iterations axis it is epsilon. Backtranslation only sweeps iterations.
struct CampaignGrid {
  AttackKind kind = AttackKind::Nucleotide;
  GridAxis axis = GridAxis::Epsilon;
  std::vector<double> values;
  double fixed_value = 0.0;

  /// Throws InvalidArgument.
  void validate() const;
  /// `base` with this grid's point `value` and fixed value applied.
  AttackConfig config_at(const AttackConfig& base, double value) const;
};

struct CampaignOptions {
  std::size_t threads = 1;
  std::string victim_id;
};

/// Attacks every sample at every grid value. Each sample's seed is derived from
/// (base.seed, sample id), so results do not depend on thread count or order.
/// An oracle failure stops the sweep: finished rows are kept and the report is
/// flagged incomplete.
CampaignReport run_campaign(ClassifierOracle& oracle, const LabeledDataset& test_set,
                            const CampaignGrid& grid, const AttackConfig& base,
                            const CampaignOptions& options = {});

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers. The first exception thrown
/// stops the remaining work and is rethrown.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

std::size_t default_thread_count() noexcept;

}  // namespace dnaadv
