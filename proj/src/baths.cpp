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

#include "dicke/baths.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

namespace dicke::baths {

using qops::Axis;
using qops::LindbladChannel;
using qops::pauli;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, message);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

// tanh(omega_z / 2T), equal to 1 at T = 0.
double thermal_tanh(double omega_z, double temperature) {
  if (temperature == 0.0) return 1.0;
  return std::tanh(omega_z / (2.0 * temperature));
}

void require_thermal_frequency(const BathSpec& bath, double omega_z) {
  if (std::holds_alternative<Thermal>(bath) && !(omega_z > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "thermal bath requires omega_z > 0");
  }
}

}  // namespace

void validate(const BathSpec& bath) {
  std::visit(overloaded{
                 [](const Dephasing& b) {
                   require(finite_nonneg(b.gamma_phi), "dephasing gamma must be >= 0");
                   require(std::abs(b.sz) <= 0.5, "dephasing sz must lie in [-1/2, 1/2]");
                 },
                 [](const Thermal& b) {
                   require(std::isfinite(b.gamma_T) && b.gamma_T > 0.0,
                           "thermal gamma must be > 0");
                   require(finite_nonneg(b.temperature), "temperature must be >= 0");
                 },
                 [](const Generalized& b) {
                   require(std::isfinite(b.gamma_t) && b.gamma_t > 0.0,
                           "generalized gamma must be > 0");
                   require(b.t >= 0.0 && b.t <= 1.0, "generalized t must lie in [0, 1]");
                 },
                 [](const Custom& b) {
                   for (const auto& ch : b.channels) {
                     if (ch.op.dim() != 2) {
                       throw Error(ErrorKind::DimensionMismatch, "custom channel must be 2x2");
                     }
                     if (!std::isfinite(ch.rate)) {
                       throw Error(ErrorKind::InvalidArgument, "custom rate not finite");
                     }
                     if (ch.rate < 0.0) {
                       throw Error(ErrorKind::NegativeRate, "custom rate is negative");
                     }
                   }
                 },
             },
             bath);
}

double bose_occupation(double omega_z, double temperature) {
  require(finite_nonneg(temperature), "temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  require(omega_z > 0.0, "Bose occupation requires omega_z > 0");
  return 1.0 / std::expm1(omega_z / temperature);
}

std::vector<LindbladChannel> channels_of(const BathSpec& bath, double omega_z) {
  validate(bath);
  require_thermal_frequency(bath, omega_z);
  return std::visit(
      overloaded{
          [](const Dephasing& b) {
            return std::vector<LindbladChannel>{{pauli(Axis::Z), b.gamma_phi}};
          },
          [omega_z](const Thermal& b) {
            const double n = bose_occupation(omega_z, b.temperature);
            return std::vector<LindbladChannel>{{pauli(Axis::Minus), (1.0 + n) * b.gamma_T},
                                                {pauli(Axis::Plus), n * b.gamma_T}};
          },
          [](const Generalized& b) {
            return std::vector<LindbladChannel>{
                {pauli(Axis::Minus) + qops::cplx(b.t) * pauli(Axis::Plus), b.gamma_t}};
          },
          [](const Custom& b) { return b.channels; },
      },
      bath);
}

lindblad::SpinModel spin_model(const BathSpec& bath, double omega_z) {
  lindblad::SpinModel model;
  model.omega_z = omega_z;
  model.channels = channels_of(bath, omega_z);
  if (const auto* d = std::get_if<Dephasing>(&bath)) model.initial_sz = d->sz;
  if (const auto* c = std::get_if<Custom>(&bath)) model.initial_sz = c->initial_sz;
  return model;
}

TransverseRates transverse_rates(const BathSpec& bath, double omega_z) {
  validate(bath);
  require_thermal_frequency(bath, omega_z);
  return std::visit(
      overloaded{
          [](const Dephasing& b) { return TransverseRates{b.gamma_phi, b.gamma_phi}; },
          [omega_z](const Thermal& b) {
            const double g = b.gamma_T / thermal_tanh(omega_z, b.temperature);
            return TransverseRates{g, g};
          },
          [](const Generalized& b) {
            return TransverseRates{b.gamma_t * (1.0 - b.t) * (1.0 - b.t),
                                   b.gamma_t * (1.0 + b.t) * (1.0 + b.t)};
          },
          [](const Custom&) -> TransverseRates {
            throw Error(ErrorKind::NoClosedForm, "custom bath has no closed-form rates");
          },
      },
      bath);
}

double effective_rate(const BathSpec& bath, double omega_z) {
  const TransverseRates r = transverse_rates(bath, omega_z);
  if (const auto* g = std::get_if<Generalized>(&bath)) return g->gamma_t * (1.0 - g->t * g->t);
  return std::sqrt(r.x * r.y);
}

double steady_sz(const BathSpec& bath, double omega_z) {
  validate(bath);
  require_thermal_frequency(bath, omega_z);
  return std::visit(
      overloaded{
          [](const Dephasing& b) { return b.sz; },
          [omega_z](const Thermal& b) { return -0.5 * thermal_tanh(omega_z, b.temperature); },
          [](const Generalized& b) {
            const double t2 = b.t * b.t;
            return -0.5 * (1.0 - t2) / (1.0 + t2);
          },
          [omega_z](const Custom& b) {
            const auto ss = lindblad::steady_state(spin_model(b, omega_z));
            return ss.rho.expectation(pauli(Axis::Z)).real();
          },
      },
      bath);
}

const char* to_string(GcMode mode) noexcept {
  return mode == GcMode::PaperLiteral ? "paper-literal" : "self-consistent";
}

GcMode parse_mode(std::string_view text) {
  if (text == "paper-literal" || text == "paper_literal" || text == "PaperLiteral") {
    return GcMode::PaperLiteral;
  }
  if (text == "self-consistent" || text == "self_consistent" || text == "SelfConsistent") {
    return GcMode::SelfConsistent;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + std::string(text) + "'");
}

double closed_form_chi0(const BathSpec& bath, double omega_z, GcMode mode) {
  require(std::isfinite(omega_z), "omega_z must be finite");
  const double sz = steady_sz(bath, omega_z);
  double damping_sq = 0.0;  // product entering the denominator
  if (mode == GcMode::PaperLiteral && std::holds_alternative<Generalized>(bath)) {
    const auto& b = std::get<Generalized>(bath);
    damping_sq = b.gamma_t * b.gamma_t * (1.0 - b.t) * (1.0 - b.t);
  } else {
    const TransverseRates r = transverse_rates(bath, omega_z);
    damping_sq = r.x * r.y;
  }
  const double denom = omega_z * omega_z + damping_sq;
  if (denom == 0.0) {
    throw Error(ErrorKind::NotIntegrable, "undamped spin at omega_z = 0 has no static response");
  }
  return 4.0 * sz * omega_z / denom;
}

critical::CriticalResult closed_form_gc(const BathSpec& bath, double omega_z,
                                        const CavityParams& cavity, GcMode mode) {
  validate(cavity);
  const double chi0 = closed_form_chi0(bath, omega_z, mode);
  if (mode == GcMode::SelfConsistent) return critical::solve_gc(chi0, cavity);

  // Printed closed forms, evaluated as written.
  const double sz = steady_sz(bath, omega_z);
  if (sz * omega_z == 0.0) return critical::NoTransition{critical::NoTransitionReason::Unpolarized};
  if (sz * omega_z > 0.0) {
    return critical::NoTransition{critical::NoTransitionReason::WrongSignPolarization};
  }
  const double cav = (cavity.omega0 * cavity.omega0 + cavity.kappa * cavity.kappa) / cavity.omega0;
  const double wz2 = omega_z * omega_z;
  double inner = 0.0;
  if (const auto* d = std::get_if<Dephasing>(&bath)) {
    inner = (wz2 + d->gamma_phi * d->gamma_phi) / (-2.0 * d->sz * omega_z);
  } else if (const auto* th = std::get_if<Thermal>(&bath)) {
    const double th_t = thermal_tanh(omega_z, th->temperature);
    inner = (wz2 * th_t * th_t + th->gamma_T * th->gamma_T) / (omega_z * th_t * th_t * th_t);
  } else if (const auto* g = std::get_if<Generalized>(&bath)) {
    const double t = g->t;
    inner = (1.0 + t * t) * (wz2 + g->gamma_t * g->gamma_t * (1.0 - t) * (1.0 - t)) /
            ((1.0 - t * t) * omega_z);
  } else {
    throw Error(ErrorKind::NoClosedForm, "custom bath has no printed closed form");
  }
  return critical::Transition{0.5 * std::sqrt(inner * cav)};
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class BathParser {
 public:
  explicit BathParser(std::string_view text) : s_(text) {}

  BathSpec parse() {
    skip_ws();
    const std::size_t name_at = pos_;
    const std::string name = identifier();
    skip_ws();
    expect('(');
    std::map<std::string, std::pair<double, std::size_t>> args;
    skip_ws();
    if (peek() != ')') {
      for (;;) {
        skip_ws();
        const std::size_t key_at = pos_;
        const std::string key = identifier();
        skip_ws();
        expect('=');
        skip_ws();
        const double value = number();
        if (!args.emplace(key, std::make_pair(value, key_at)).second) {
          fail(key_at, "duplicate argument '" + key + "'");
        }
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(')');
    skip_ws();
    if (pos_ != s_.size()) fail(pos_, "unexpected trailing input");

    const std::map<std::string, std::vector<std::string>> expected = {
        {"dephasing", {"gamma", "sz"}}, {"thermal", {"gamma", "T"}}, {"generalized", {"gamma", "t"}}};
    const auto known = expected.find(name);
    if (known == expected.end()) {
      fail(name_at, "unknown bath '" + name + "' (expected dephasing, thermal, generalized)");
    }
    for (const auto& [key, rec] : args) {
      const auto& keys = known->second;
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail(rec.second, name + ": unknown argument '" + key + "'");
      }
    }

    auto take = [&](const char* key) {
      auto it = args.find(key);
      if (it == args.end()) fail(name_at, name + ": missing argument '" + key + "'");
      const double v = it->second.first;
      args.erase(it);
      return v;
    };

    BathSpec spec;
    if (name == "dephasing") {
      spec = Dephasing{take("gamma"), take("sz")};
    } else if (name == "thermal") {
      spec = Thermal{take("gamma"), take("T")};
    } else if (name == "generalized") {
      spec = Generalized{take("gamma"), take("t")};
    }
    try {
      validate(spec);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(name_at, e.what());
    }
    return spec;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& message) const {
    throw ParseError(0, static_cast<int>(at) + 1, message);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail(start, "expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  double number() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (first != last && *first == '+') ++first;
    double value = 0.0;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || !std::isfinite(value)) fail(pos_, "expected finite number");
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return value;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_bath(const BathSpec& bath) {
  return std::visit(
      overloaded{
          [](const Dephasing& b) {
            return "dephasing(gamma=" + format_number(b.gamma_phi) +
                   ", sz=" + format_number(b.sz) + ")";
          },
          [](const Thermal& b) {
            return "thermal(gamma=" + format_number(b.gamma_T) +
                   ", T=" + format_number(b.temperature) + ")";
          },
          [](const Generalized& b) {
            return "generalized(gamma=" + format_number(b.gamma_t) +
                   ", t=" + format_number(b.t) + ")";
          },
          [](const Custom& b) {
            return "custom(channels=" + std::to_string(b.channels.size()) + ")";
          },
      },
      bath);
}

BathSpec parse_bath(std::string_view text) { return BathParser(text).parse(); }

}  // namespace dicke::baths
