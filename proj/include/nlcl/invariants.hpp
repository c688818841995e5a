/* Copyright 2026 The nlcl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NLCL_INVARIANTS_HPP
#define NLCL_INVARIANTS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nlcl/simulator.hpp"

namespace nlcl {

struct InvariantTolerances {
  double conservation = 1e-10;  // relative to initial mass
  double monotone_mass = 1e-12;  // relative round-off slack on mass(t_n) <= mass(t_{n-1})
  double positivity = 1e-12;
  double envelope = 1e-12;  // relative slack on the sup-norm envelope
};

struct InvariantCheck {
  std::string name;
  bool pass = true;
  double worst = 0.0;  // worst observed violation measure
  double limit = 0.0;
};

/// Checks a diagnostics series for the discrete conservation ledger, zero wall
/// flux, positivity and the sup-norm envelope sup(t) <= sup(0) exp(G t), with G
/// the largest logged |div_h u|. `mass_nonincreasing` is meaningful only for
/// nonnegative data.
inline std::vector<InvariantCheck> check_invariants(const std::vector<DiagnosticsRecord>& series,
                                                    const InvariantTolerances& tol = {}) {
  InvariantCheck ledger{"conservation ledger", true, 0.0, tol.conservation};
  InvariantCheck monotone{"mass non-increasing", true, 0.0, tol.monotone_mass};
  InvariantCheck wall{"wall flux zero", true, 0.0, 0.0};
  InvariantCheck positive{"positivity", true, 0.0, tol.positivity};
  InvariantCheck envelope{"sup-norm envelope", true, 0.0, tol.envelope};
  if (series.empty()) return {ledger, monotone, wall, positive, envelope};

  const auto& first = series.front();
  double g = 0.0;
  for (std::size_t n = 1; n < series.size(); ++n) {
    for (const auto& p : series[n].populations) g = std::max(g, p.max_div);
  }
  for (std::size_t i = 0; i < first.populations.size(); ++i) {
    const double m0 = first.populations[i].mass;
    const double s0 = first.populations[i].sup;
    const double scale = std::max(m0, 1e-300);
    positive.worst = std::max(positive.worst, -first.populations[i].min);
    for (std::size_t n = 1; n < series.size(); ++n) {
      const auto& p = series[n].populations[i];
      const auto& q = series[n - 1].populations[i];
      ledger.worst = std::max(ledger.worst, std::abs(p.mass + p.outflux - m0) / scale);
      ledger.worst = std::max(ledger.worst, std::abs(p.mass - q.mass + p.step_outflow) / scale);
      monotone.worst = std::max(monotone.worst, (p.mass - q.mass) / scale);
      wall.worst = std::max(wall.worst, std::abs(p.wall_flux));
      positive.worst = std::max(positive.worst, -p.min);
      const double bound = s0 * std::exp(g * (series[n].t - first.t));
      if (bound > 0.0) envelope.worst = std::max(envelope.worst, (p.sup - bound) / bound);
      else envelope.worst = std::max(envelope.worst, p.sup);
    }
  }
  ledger.pass = ledger.worst <= ledger.limit;
  monotone.pass = monotone.worst <= monotone.limit;
  wall.pass = wall.worst == 0.0;
  positive.pass = positive.worst <= positive.limit;
  envelope.pass = envelope.worst <= envelope.limit;
  return {ledger, monotone, wall, positive, envelope};
}

}  // namespace nlcl

#endif  // NLCL_INVARIANTS_HPP
