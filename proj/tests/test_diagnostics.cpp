#include "aniso/diagnostics.hpp"
#include "aniso/presets.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace aniso;

namespace {

constexpr double kPi = std::numbers::pi;
const Profile kSine = [](double x, double) { return std::sin(2 * kPi * x); };

PeriodicGrid grid1(int n) { return PeriodicGrid({1.0}, {n}); }

SchemeConfig scheme(double t_end, double every) {
  SchemeConfig s;
  s.t_end = t_end;
  s.output_every = every;
  return s;
}

Trajectory hand_built(const std::vector<double>& energies, const std::vector<double>& l1) {
  Trajectory t;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    DiagnosticsRow r;
    r.t = static_cast<double>(i);
    r.l2_energy = energies[i];
    r.l1_to_mean = l1[i];
    r.linf = 1.0;
    if (i > 0) r.dissipation_budget = 0.5 * (energies[i - 1] - energies[i]);
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace

TEST_CASE("field measures") {
  const PeriodicGrid g4 = grid1(4);
  CHECK(mean(CellField{{1, 2, 3, 4}, 0.0}, g4) == 2.5);
  CHECK(mean(CellField{{0.3, 0.3, 0.3, 0.3}, 0.0}, g4) == doctest::Approx(0.3));
  CHECK(l1_to_constant(CellField{{0.3, 0.3, 0.3, 0.3}, 0.0}, g4, 0.3) == 0.0);
  CHECK(l2_energy(CellField{{0, 0, 0, 0}, 0.0}, g4) == 0.0);
  CHECK(linf(CellField{{1, -5, 3, 4}, 0.0}) == 5.0);

  const PeriodicGrid g2({1.0}, {4});
  CHECK(l1_to_constant(CellField{{1, -1, 1, -1}, 0.0}, g2, 0.0) == 1.0);

  const PeriodicGrid torus({2.0, 3.0}, {4, 6});
  CellField c{std::vector<double>(24, -1.5), 0.0};
  CHECK(l2_energy(c, torus) == doctest::Approx(2.25 * 6.0));

  const PeriodicGrid fine = grid1(4096);
  const CellField s = init_field(fine, kSine);
  CHECK(std::abs(mean(s, fine)) <= 1e-15);
  CHECK(std::abs(l1_to_constant(s, fine, 0.0) - 2.0 / kPi) < 1e-3);
  CHECK(std::abs(l2_energy(s, fine) - 0.5) < 1e-3);
}

TEST_CASE("pairwise_sum is exact on small integers") {
  std::vector<double> v(1000);
  for (int i = 0; i < 1000; ++i) v[i] = i;
  CHECK(pairwise_sum(v.data(), v.size()) == 499500.0);
  CHECK(pairwise_sum(v.data(), 0) == 0.0);
}

TEST_CASE("parabolic_dissipation") {
  const PeriodicGrid g = grid1(512);
  const CellField s = init_field(g, kSine);
  CHECK(parabolic_dissipation(make_preset("heat"), s, g) == doctest::Approx(2 * kPi * kPi).epsilon(0.02));
  CHECK(parabolic_dissipation(make_preset("burgers"), s, g) == 0.0);
  CHECK(parabolic_dissipation(make_preset("linear-advection"), s, g) == 0.0);
  CellField c{std::vector<double>(512, 0.4), 0.0};
  CHECK(parabolic_dissipation(make_preset("porous-medium"), c, g) == 0.0);
  CHECK(parabolic_dissipation(make_preset("porous-medium"), s, g) > 0.0);

  const PeriodicGrid g2({1.0, 1.0}, {32, 32});
  const CellField s2 = init_field(g2, [](double x, double y) { return std::sin(2 * kPi * x) * std::cos(2 * kPi * y); });
  CHECK(parabolic_dissipation(make_preset("anisotropic-2d"), s2, g2) >= 0.0);
}

TEST_CASE("audit of constant data") {
  const Trajectory t = run(make_preset("burgers"), grid1(32), [](double, double) { return 0.5; }, scheme(1.0, 0.25));
  const AuditReport r = audit(t);
  CHECK(r.passed());
  CHECK(r.max_principle_violation == 0.0);
  CHECK(r.energy_monotonicity_violation <= 0.0);
  CHECK(r.contraction_violation == 0.0);
  CHECK(r.mean_drift == 0.0);
  CHECK(r.budget_violations == 0);
  CHECK(r.decay_achieved);
  CHECK(r.decay_time == 0.0);
}

TEST_CASE("audit of a burgers run") {
  const Trajectory t = run(make_preset("burgers"), grid1(256), kSine, scheme(10.0, 0.1));
  const AuditReport r = audit(t);
  CHECK(r.passed());
  CHECK(r.decay_achieved);
  CHECK(r.max_principle_violation <= 1e-10);
  CHECK(r.energy_monotonicity_violation <= 1e-12);
  CHECK(r.mean_drift <= 1e-12);
  CHECK(r.budget_telescoping_error <= 1e-12);
  CHECK(r.total_budget <= r.global_budget_bound);
  CHECK(r.total_budget > 0.0);
}

TEST_CASE("audit flags constructed violations") {
  const AuditReport up = audit(hand_built({0.5, 0.4, 0.45}, {0.6, 0.5, 0.4}));
  CHECK(up.energy_monotonicity_violation == doctest::Approx(0.05));
  CHECK_FALSE(up.passed());

  const AuditReport grow = audit(hand_built({0.5, 0.4, 0.3}, {0.6, 0.5, 0.55}));
  CHECK(grow.contraction_violation == doctest::Approx(0.05));
  CHECK_FALSE(grow.passed());

  Trajectory over = hand_built({0.5, 0.4}, {0.6, 0.5});
  over.rows[1].dissipation_resolved = 0.06;
  const AuditReport ro = audit(over);
  CHECK(ro.budget_violations == 1);
  CHECK_FALSE(ro.passed());

  Trajectory hot = hand_built({0.5, 0.4}, {0.6, 0.5});
  hot.rows[1].linf = 1.5;
  CHECK(audit(hot).max_principle_violation == doctest::Approx(0.5));

  Trajectory drift = hand_built({0.5, 0.4}, {0.6, 0.5});
  drift.rows[1].mean = 1e-9;
  CHECK_FALSE(audit(drift).passed());

  CHECK_THROWS_AS(audit(hand_built({0.5}, {0.6})), std::invalid_argument);
}

TEST_CASE("dissipation budget invariants on every preset") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const ModelSpec m = make_preset(name);
    const PeriodicGrid g = m.dimension == 1 ? grid1(64) : PeriodicGrid({1.0, 1.0}, {16, 16});
    const Profile p = m.dimension == 1
        ? kSine
        : Profile([](double x, double y) { return std::sin(2 * kPi * x) * std::sin(2 * kPi * y); });
    const Trajectory t = run(m, g, p, scheme(0.3, 0.05));
    double cumulative = 0.0;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      CHECK(t.rows[i].dissipation_budget >= -1e-15);
      CHECK(t.rows[i].dissipation_resolved >= 0.0);
      cumulative += t.rows[i].dissipation_budget;
    }
    CHECK(std::abs(cumulative - 0.5 * (t.rows.front().l2_energy - t.rows.back().l2_energy)) < 1e-12);
    const AuditReport r = audit(t);
    CHECK(r.passed());
  }
}

TEST_CASE("decay_summary") {
  const Trajectory flat = run(make_preset("heat"), grid1(16), [](double, double) { return 1.0; }, scheme(1.0, 0.5));
  const DecaySummary c = decay_summary(flat);
  for (const auto& t : c.times) CHECK(t == 0.0);

  const Trajectory b = run(make_preset("burgers"), grid1(256), kSine, scheme(10.0, 0.1));
  const DecaySummary s = decay_summary(b);
  REQUIRE(s.times.size() == 4);
  REQUIRE(s.times[2].has_value());
  CHECK(*s.times[2] <= 10.0);
  // time-to-theta is non-increasing in theta
  for (std::size_t i = 1; i < s.times.size(); ++i) {
    if (s.times[i]) {
      REQUIRE(s.times[i - 1]);
      CHECK(*s.times[i - 1] <= *s.times[i]);
    }
  }
  REQUIRE(s.tail_slope.has_value());
  CHECK(*s.tail_slope < -0.5);
  CHECK(s.tail_points > 10);

  const DecaySummary none = decay_summary(Trajectory{});
  CHECK(none.times.size() == 4);
  CHECK_FALSE(none.times[0].has_value());
}

TEST_CASE("linear advection decays only by numerical viscosity") {
  // the time to lose half of the l1 distance roughly doubles with N
  auto half_time = [](int n) {
    const Trajectory t = run(make_preset("linear-advection"), grid1(n), kSine, scheme(12.0, 0.05));
    const auto s = decay_summary(t, {0.5});
    return s.times[0];
  };
  const auto t32 = half_time(32), t64 = half_time(64);
  REQUIRE(t32.has_value());
  REQUIRE(t64.has_value());
  CHECK(*t64 / *t32 > 1.7);
  CHECK(*t64 / *t32 < 2.3);
}

TEST_CASE("richardson") {
  // first order sequence 1 + h
  auto [o1, e1] = richardson({1.5, 1.25, 1.125}, 2.0);
  CHECK(o1 == doctest::Approx(1.0));
  CHECK(e1 == doctest::Approx(1.0));
  auto [o2, e2] = richardson({1.16, 1.04, 1.01}, 2.0);
  CHECK(o2 == doctest::Approx(2.0));
  CHECK(e2 == doctest::Approx(1.0));
  auto [o3, e3] = richardson({1.0, 2.0}, 2.0);
  CHECK(o3 == 1.0);
  CHECK(e3 == 3.0);
  // oscillating sequence falls back to order 1
  CHECK(richardson({1.0, 2.0, 1.5}, 2.0).first == 1.0);
  CHECK_THROWS(richardson({1.0}, 2.0));
  CHECK_THROWS(richardson({1.0, 2.0}, 1.0));
}

TEST_CASE("refinement study: heat") {
  const auto table = refinement_study(make_preset("heat"), kSine, scheme(0.05, 0.05),
                                      {grid1(128), grid1(256), grid1(512)}, {0.05});
  REQUIRE(table.l1_to_mean.size() == 3);
  const double exact = oracle::heat_sine_l1(0.05);
  for (const auto& row : table.l1_to_mean) CHECK(std::abs(row[0] - exact) < 1e-3);
  CHECK(std::abs(table.extrapolated[0] - exact) < 1e-3);
}

TEST_CASE("refinement study: linear advection and burgers") {
  const double initial = 2.0 / kPi;
  const auto lin = refinement_study(make_preset("linear-advection"), kSine, scheme(1.0, 0.5),
                                    {grid1(128), grid1(256), grid1(512)}, {1.0});
  CHECK(initial - lin.extrapolated[0] < 1e-2);
  CHECK(lin.initial_l1[2] == doctest::Approx(initial).epsilon(1e-4));

  const auto bur = refinement_study(make_preset("burgers"), kSine, scheme(2.0, 0.5),
                                    {grid1(128), grid1(256), grid1(512)}, {2.0});
  CHECK(bur.extrapolated[0] < 0.5 * initial);
  CHECK_THROWS(refinement_study(make_preset("heat"), kSine, scheme(0.1, 0.1), {grid1(64)}, {0.1}));
}
