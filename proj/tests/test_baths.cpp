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

#include <doctest.h>

#include <cmath>

#include "dicke/baths.hpp"

using namespace dicke;
using namespace dicke::baths;
using qops::Axis;
using qops::pauli;

namespace {

double rate_of(const std::vector<qops::LindbladChannel>& chans, Axis axis) {
  for (const auto& c : chans) {
    if (qops::max_abs_diff(c.op, pauli(axis)) == 0.0) return c.rate;
  }
  return -1.0;
}

}  // namespace

TEST_CASE("bath validation") {
  CHECK_NOTHROW(validate(Dephasing{0.0, 0.5}));
  CHECK_THROWS_AS(validate(Dephasing{-0.1, -0.5}), Error);
  CHECK_THROWS_AS(validate(Dephasing{0.1, -0.6}), Error);
  CHECK_THROWS_AS(validate(Thermal{0.0, 0.3}), Error);
  CHECK_THROWS_AS(validate(Thermal{0.1, -0.3}), Error);
  CHECK_THROWS_AS(validate(Generalized{0.0, 0.3}), Error);
  CHECK_THROWS_AS(validate(Generalized{0.2, 1.01}), Error);
  CHECK_THROWS_AS(validate(Generalized{0.2, -0.01}), Error);
  CHECK_NOTHROW(validate(Generalized{0.2, 1.0}));
}

TEST_CASE("thermal channels") {
  SUBCASE("zero temperature") {
    const auto ch = channels_of(Thermal{0.3, 0.0}, 1.0);
    CHECK(rate_of(ch, Axis::Minus) == 0.3);
    CHECK(rate_of(ch, Axis::Plus) == 0.0);
  }
  SUBCASE("n_T = 1") {
    const double wz = 0.8;
    const auto ch = channels_of(Thermal{0.3, wz / std::log(2.0)}, wz);
    CHECK(bose_occupation(wz, wz / std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rate_of(ch, Axis::Minus) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(rate_of(ch, Axis::Plus) == doctest::Approx(0.3).epsilon(1e-14));
  }
  CHECK_THROWS_AS(channels_of(Thermal{0.3, 0.5}, 0.0), Error);
}

TEST_CASE("generalized and dephasing channels") {
  const auto g0 = channels_of(Generalized{0.25, 0.0}, 1.0);
  REQUIRE(g0.size() == 1);
  CHECK(qops::max_abs_diff(g0[0].op, pauli(Axis::Minus)) == 0.0);
  CHECK(g0[0].rate == 0.25);

  const auto g = channels_of(Generalized{0.25, 0.4}, 1.0);
  REQUIRE(g.size() == 1);
  CHECK(qops::max_abs_diff(g[0].op, pauli(Axis::Minus) + 0.4 * pauli(Axis::Plus)) < 1e-16);

  const auto d = channels_of(Dephasing{0.7, -0.5}, 1.0);
  REQUIRE(d.size() == 1);
  CHECK(qops::max_abs_diff(d[0].op, pauli(Axis::Z)) == 0.0);
  CHECK(d[0].rate == 0.7);

  CHECK(spin_model(Dephasing{0.7, -0.2}, 1.0).initial_sz == -0.2);
  CHECK_FALSE(spin_model(Thermal{0.7, 0.2}, 1.0).initial_sz.has_value());
}

TEST_CASE("effective rates") {
  CHECK(effective_rate(Dephasing{0.3, -0.5}, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(effective_rate(Generalized{0.5, 1.0}, 1.0) == 0.0);
  CHECK(effective_rate(Thermal{0.2, 0.0}, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(effective_rate(Thermal{0.2, 1e-3}, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(effective_rate(Thermal{0.2, 0.5}, 1.0) ==
        doctest::Approx(0.2 / std::tanh(1.0)).epsilon(1e-14));

  const auto r = transverse_rates(Generalized{0.4, 0.3}, 1.0);
  CHECK(r.x == doctest::Approx(0.4 * 0.49).epsilon(1e-15));
  CHECK(r.y == doctest::Approx(0.4 * 1.69).epsilon(1e-15));
  CHECK(effective_rate(Generalized{0.4, 0.3}, 1.0) == doctest::Approx(0.4 * 0.91).epsilon(1e-15));

  CHECK_THROWS_AS(transverse_rates(Custom{{{pauli(Axis::Minus), 0.1}}, {}}, 1.0), Error);
}

TEST_CASE("steady polarization") {
  CHECK(steady_sz(Generalized{0.2, 1.0}, 1.0) == 0.0);
  CHECK(steady_sz(Generalized{0.2, 0.0}, 1.0) == -0.5);
  CHECK(steady_sz(Generalized{0.2, 0.5}, 1.0) == doctest::Approx(-0.5 * 0.75 / 1.25));
  CHECK(std::abs(steady_sz(Thermal{0.1, 1e6}, 1.0)) < 1e-6);
  CHECK(steady_sz(Thermal{0.1, 0.5}, 1.0) == doctest::Approx(-0.5 * std::tanh(1.0)).epsilon(1e-15));
  CHECK(steady_sz(Dephasing{0.1, -0.37}, 1.0) == -0.37);

  // custom: numerical null vector of an amplitude-damping channel
  const Custom amp{{{pauli(Axis::Minus), 0.3}, {pauli(Axis::Plus), 0.1}}, {}};
  CHECK(steady_sz(amp, 1.0) == doctest::Approx(-0.5 * 0.2 / 0.4).epsilon(1e-12));
}

TEST_CASE("closed-form critical coupling") {
  const CavityParams bare{1.0, 0.0};
  CHECK(closed_form_gc(Dephasing{0.0, -0.5}, 1.0, bare).g_c() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(closed_form_gc(Dephasing{0.5, -0.5}, 1.0, bare).g_c() ==
        doctest::Approx(0.5 * std::sqrt(1.25)).epsilon(1e-15));

  const auto none = closed_form_gc(Dephasing{0.2, 0.0}, 1.0, bare);
  CHECK_FALSE(none.has_transition());
  CHECK(none.reason() == critical::NoTransitionReason::Unpolarized);

  const auto inverted = closed_form_gc(Dephasing{0.2, 0.3}, 1.0, bare);
  CHECK(inverted.reason() == critical::NoTransitionReason::WrongSignPolarization);

  for (GcMode mode : {GcMode::SelfConsistent, GcMode::PaperLiteral}) {
    const auto t1 = closed_form_gc(Generalized{0.2, 1.0}, 1.0, bare, mode);
    CHECK_FALSE(t1.has_transition());
    CHECK(t1.reason() == critical::NoTransitionReason::Unpolarized);
  }

  // thermal at T = 0, kappa = omega0 = omega_z = 1: (1/2) sqrt((1 + 0.01) / 1 * 2)
  CHECK(closed_form_gc(Thermal{0.1, 0.0}, 1.0, {1.0, 1.0}).g_c() ==
        doctest::Approx(0.5 * std::sqrt(1.01 * 2.0)).epsilon(1e-14));
}

TEST_CASE("self-consistent formula") {
  const CavityParams cav{1.3, 0.4};
  const double cav_factor = (1.3 * 1.3 + 0.4 * 0.4) / 1.3;
  for (const BathSpec& b : {BathSpec{Dephasing{0.4, -0.3}}, BathSpec{Thermal{0.2, 0.6}},
                            BathSpec{Generalized{0.5, 0.35}}}) {
    const double wz = 0.9;
    const double ge = effective_rate(b, wz);
    const double sz = steady_sz(b, wz);
    const double expect = 0.5 * std::sqrt((wz * wz + ge * ge) / (-2.0 * sz * wz) * cav_factor);
    CHECK(closed_form_gc(b, wz, cav).g_c() == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("modes differ only for the generalized bath") {
  const CavityParams cav{1.0, 0.3};
  for (const BathSpec& b : {BathSpec{Dephasing{0.4, -0.3}}, BathSpec{Thermal{0.2, 0.6}},
                            BathSpec{Thermal{0.5, 0.0}}}) {
    const double a = closed_form_gc(b, 1.1, cav, GcMode::SelfConsistent).g_c();
    const double p = closed_form_gc(b, 1.1, cav, GcMode::PaperLiteral).g_c();
    CHECK(a == doctest::Approx(p).epsilon(1e-14));
  }
  const BathSpec gen = Generalized{0.5, 0.3};
  const double a = closed_form_gc(gen, 1.0, cav, GcMode::SelfConsistent).g_c();
  const double p = closed_form_gc(gen, 1.0, cav, GcMode::PaperLiteral).g_c();
  CHECK(std::abs(a - p) / a > 1e-3);
  // the printed denominator term
  const double expect_p = 0.5 * std::sqrt(1.09 * (1.0 + 0.25 * 0.49) / 0.91 * 1.09);
  CHECK(p == doctest::Approx(expect_p).epsilon(1e-14));
  // both agree at t = 0
  const BathSpec gen0 = Generalized{0.5, 0.0};
  CHECK(closed_form_gc(gen0, 1.0, cav, GcMode::SelfConsistent).g_c() ==
        doctest::Approx(closed_form_gc(gen0, 1.0, cav, GcMode::PaperLiteral).g_c()).epsilon(1e-15));
}

TEST_CASE("fully polarized limit of the generalized bath") {
  const CavityParams cav{1.0, 0.2};
  for (double gt : {0.1, 0.5, 1.3}) {
    const double wz = 1.2;
    const double ratio = closed_form_gc(Generalized{gt, 0.0}, wz, cav).g_c() / critical::polarized_gc(wz, cav);
    CHECK(ratio == doctest::Approx(std::sqrt(1.0 + gt * gt / (wz * wz))).epsilon(1e-14));
  }
}

TEST_CASE("thermal equilibrium limit") {
  const double wz = 1.0, w0 = 0.8;
  for (double temp : {0.1, 0.4, 1.0, 3.0}) {
    const double gc = closed_form_gc(Thermal{1e-9, temp}, wz, {w0, 0.0}).g_c();
    CHECK(std::tanh(wz / (2.0 * temp)) ==
          doctest::Approx(wz * w0 / (4.0 * gc * gc)).epsilon(1e-10));
  }
}

TEST_CASE("thermal g_c rises with temperature") {
  double prev = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double temp = 0.05 + 0.1 * k;
    const double gc = closed_form_gc(Thermal{0.2, temp}, 1.0, {1.0, 0.3}).g_c();
    CHECK(gc > prev);
    prev = gc;
  }
}

TEST_CASE("mode names") {
  CHECK(parse_mode("paper-literal") == GcMode::PaperLiteral);
  CHECK(parse_mode("self-consistent") == GcMode::SelfConsistent);
  CHECK(std::string(to_string(GcMode::PaperLiteral)) == "paper-literal");
  CHECK_THROWS_AS(parse_mode("literal"), Error);
}

TEST_CASE("bath text form") {
  SUBCASE("round trip") {
    for (const BathSpec& b : {BathSpec{Dephasing{0.3, -0.5}}, BathSpec{Thermal{0.1, 0.5}},
                              BathSpec{Generalized{0.2, 0.4}}}) {
      const auto text = format_bath(b);
      CHECK(format_bath(parse_bath(text)) == text);
    }
    CHECK(format_bath(Dephasing{0.3, -0.5}) == "dephasing(gamma=0.3, sz=-0.5)");
  }
  SUBCASE("accepted spellings") {
    const auto b = parse_bath("  thermal( T = 0.5 ,gamma=1e-1 ) ");
    REQUIRE(std::holds_alternative<Thermal>(b));
    CHECK(std::get<Thermal>(b).gamma_T == 0.1);
    CHECK(std::get<Thermal>(b).temperature == 0.5);
  }
  SUBCASE("diagnostics carry a column") {
    auto column_of = [](std::string_view text) {
      try {
        parse_bath(text);
      } catch (const ParseError& e) {
        return e.column();
      }
      return -1;
    };
    CHECK(column_of("thermal(gamma=0.1, T=0.5") == 25);
    CHECK(column_of("thermal(gamma=0.1, T=x)") == 22);
    CHECK(column_of("thermal(gamma=0.1, T=0.5, T=0.2)") == 27);
    CHECK(column_of("thermal(gamma=0.1, q=0.5)") == 20);
    CHECK(column_of("laser(gamma=0.1)") == 1);
    CHECK(column_of("dephasing(gamma=0.1, sz=-0.5) x") == 31);
    CHECK(column_of("generalized(gamma=0.1, t=1.5)") == 1);
    CHECK(column_of("dephasing(gamma=0.1)") == 1);
  }
}
