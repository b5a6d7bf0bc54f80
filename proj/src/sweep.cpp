// Copyright 2026 The dicke-critic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dicke/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "dicke/response.hpp"

namespace dicke::critical {

SweepAxis parse_axis(std::string_view name) {
  if (name == "gamma") return SweepAxis::Gamma;
  if (name == "sz") return SweepAxis::Sz;
  if (name == "T") return SweepAxis::Temperature;
  if (name == "t") return SweepAxis::Mixing;
  if (name == "omega_z") return SweepAxis::OmegaZ;
  if (name == "omega0") return SweepAxis::Omega0;
  if (name == "kappa") return SweepAxis::Kappa;
  throw Error(ErrorKind::InvalidArgument, "unknown sweep axis '" + std::string(name) + "'");
}

const char* to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::Sz: return "sz";
    case SweepAxis::Temperature: return "T";
    case SweepAxis::Mixing: return "t";
    case SweepAxis::OmegaZ: return "omega_z";
    case SweepAxis::Omega0: return "omega0";
    case SweepAxis::Kappa: return "kappa";
  }
  return "?";
}

std::optional<double> SweepRow::ratio() const {
  if (auto g = result.coupling()) return *g / g0;
  return std::nullopt;
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DICKE_CRITIC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

void apply_axis(PointSetup& setup, SweepAxis axis, double value) {
  auto wrong = [axis]() {
    return Error(ErrorKind::InvalidArgument,
                 std::string("axis '") + to_string(axis) + "' does not apply to this bath");
  };
  switch (axis) {
    case SweepAxis::OmegaZ: setup.omega_z = value; return;
    case SweepAxis::Omega0: setup.cavity.omega0 = value; return;
    case SweepAxis::Kappa: setup.cavity.kappa = value; return;
    case SweepAxis::Gamma:
      if (auto* d = std::get_if<baths::Dephasing>(&setup.bath)) d->gamma_phi = value;
      else if (auto* th = std::get_if<baths::Thermal>(&setup.bath)) th->gamma_T = value;
      else if (auto* g = std::get_if<baths::Generalized>(&setup.bath)) g->gamma_t = value;
      else throw wrong();
      return;
    case SweepAxis::Sz:
      if (auto* d = std::get_if<baths::Dephasing>(&setup.bath)) d->sz = value;
      else throw wrong();
      return;
    case SweepAxis::Temperature:
      if (auto* th = std::get_if<baths::Thermal>(&setup.bath)) th->temperature = value;
      else throw wrong();
      return;
    case SweepAxis::Mixing:
      if (auto* g = std::get_if<baths::Generalized>(&setup.bath)) g->t = value;
      else throw wrong();
      return;
  }
}

SweepRow evaluate_point(const PointSetup& setup, baths::GcMode mode, ChiRoute route) {
  SweepRow row;
  row.g0 = polarized_gc(setup.omega_z, setup.cavity);
  if (route == ChiRoute::Numeric) {
    const auto corr = lindblad::two_time_sx(baths::spin_model(setup.bath, setup.omega_z));
    row.chi0 = response::chi_from_correlator(corr, 0.0).real();
    row.result = solve_gc(row.chi0, setup.cavity);
  } else {
    row.chi0 = baths::closed_form_chi0(setup.bath, setup.omega_z, mode);
    row.result = baths::closed_form_gc(setup.bath, setup.omega_z, setup.cavity, mode);
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepPlan& plan) {
  if (plan.axes.empty() || plan.axes.size() > 2) {
    throw Error(ErrorKind::InvalidArgument, "a sweep needs one or two axes");
  }
  std::size_t total = 1;
  for (const auto& [axis, grid] : plan.axes) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty sweep grid");
    total *= grid.size();
  }

  std::vector<SweepRow> rows(total);
  auto compute = [&](std::size_t index) {
    PointSetup setup{plan.bath, plan.omega_z, plan.cavity};
    std::vector<double> values(plan.axes.size());
    std::size_t rem = index;
    for (std::size_t a = plan.axes.size(); a-- > 0;) {
      const auto& grid = plan.axes[a].second;
      values[a] = grid[rem % grid.size()];
      rem /= grid.size();
    }
    for (std::size_t a = 0; a < plan.axes.size(); ++a) {
      apply_axis(setup, plan.axes[a].first, values[a]);
    }
    SweepRow row = evaluate_point(setup, plan.mode, plan.route);
    row.values = std::move(values);
    rows[index] = std::move(row);
  };

  const unsigned workers = std::min<std::size_t>(worker_count(plan.threads), total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) compute(i);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < total; i = next++) {
        try {
          compute(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace dicke::critical
