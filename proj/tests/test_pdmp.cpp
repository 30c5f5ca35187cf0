#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mutsel/ctmc.hpp"
#include "mutsel/errors.hpp"
#include "mutsel/flow.hpp"
#include "mutsel/model.hpp"
#include "mutsel/pdmp.hpp"
#include "mutsel/rng.hpp"
#include "mutsel/stats.hpp"
#include "oracles.hpp"

using mutsel::ModelParams;
using mutsel::PdmpOutcome;
using mutsel::PdmpPath;

namespace {
const ModelParams kRef = mutsel::validate_params(1.0, 0.3, 0.2);
}

TEST_CASE("jump hazards at reference points") {
  const double ybar = mutsel::equilibria(kRef).y_bar;
  CHECK(mutsel::total_hazard(kRef, ybar) ==
        doctest::Approx(0.85440037453175312).epsilon(1e-13));
  CHECK(mutsel::hazard_to_zero(kRef, 0.5) == doctest::Approx(0.24).epsilon(1e-15));
  CHECK(mutsel::hazard_to_one(kRef, 0.5) == doctest::Approx(0.06).epsilon(1e-15));
}

TEST_CASE("a hazard with a zero mutation share is identically zero") {
  const ModelParams no_beneficial = mutsel::validate_params(1.0, 0.5, 0.0);
  CHECK(mutsel::hazard_to_one(no_beneficial, 1.0 - 1e-15) == 0.0);
  const ModelParams no_deleterious = mutsel::validate_params(1.0, 0.5, 1.0);
  CHECK(mutsel::hazard_to_zero(no_deleterious, 1e-15) == 0.0);
  // ... so near that boundary the total is exactly the surviving component.
  CHECK(mutsel::total_hazard(no_deleterious, 1e-15) ==
        mutsel::hazard_to_one(no_deleterious, 1e-15));
  CHECK(mutsel::total_hazard(no_beneficial, 1.0 - 1e-15) ==
        mutsel::hazard_to_zero(no_beneficial, 1.0 - 1e-15));
}

TEST_CASE("cumulative hazard") {
  SUBCASE("boundaries and the empty interval integrate to zero") {
    CHECK(mutsel::cumulative_hazard(kRef, 0.0, 5.0) == 0.0);
    CHECK(mutsel::cumulative_hazard(kRef, 1.0, 5.0) == 0.0);
    CHECK(mutsel::cumulative_hazard(kRef, 0.5, 0.0) == 0.0);
  }
  SUBCASE("matches a brute-force midpoint integral along the flow") {
    for (double y0 : {0.2, 0.6}) {
      const double mine = mutsel::cumulative_hazard(kRef, y0, 2.0);
      const double brute = oracle::hazard_integral_midpoint(1.0, 0.3, 0.2, y0, 2.0);
      CAPTURE(y0);
      CHECK(std::fabs(mine - brute) < 1e-6);
    }
  }
  SUBCASE("is additive along the flow") {
    const double whole = mutsel::cumulative_hazard(kRef, 0.8, 3.0);
    const double first = mutsel::cumulative_hazard(kRef, 0.8, 1.2);
    const double rest = mutsel::cumulative_hazard(kRef, mutsel::flow(kRef, 0.8, 1.2), 1.8);
    CHECK(whole == doctest::Approx(first + rest).epsilon(1e-8));
  }
  SUBCASE("is increasing in time") {
    CHECK(mutsel::cumulative_hazard(kRef, 0.5, 1.0) < mutsel::cumulative_hazard(kRef, 0.5, 2.0));
  }
}

TEST_CASE("default horizon formula") {
  const mutsel::Equilibria eq = mutsel::equilibria(kRef);
  const double relax = kRef.s * (*eq.y_star - eq.y_bar);
  CHECK(mutsel::default_pdmp_horizon(kRef) ==
        doctest::Approx(40.0 / relax + 20.0 / mutsel::total_hazard(kRef, eq.y_bar))
            .epsilon(1e-12));
  CHECK(mutsel::default_pdmp_horizon(mutsel::validate_params(1.0, 0.5, 0.0)) == 120.0);
  CHECK(mutsel::default_pdmp_horizon(mutsel::validate_params(0.0, 0.5, 0.3)) ==
        doctest::Approx(120.0).epsilon(1e-12));
}

TEST_CASE("boundary starts are absorbed immediately") {
  const PdmpPath at_zero = mutsel::simulate_pdmp(kRef, 0.0, 5.0, 1);
  CHECK(at_zero.terminal.kind == PdmpOutcome::AbsorbedZero);
  CHECK(at_zero.terminal.value == 0.0);
  CHECK(at_zero.jumps.empty());
  const PdmpPath at_one = mutsel::simulate_pdmp(kRef, 1.0, 5.0, 1);
  CHECK(at_one.terminal.kind == PdmpOutcome::AbsorbedOne);
  CHECK(at_one.terminal.value == 0.0);
}

TEST_CASE("paths are deterministic in the seed and jump at most once") {
  const PdmpPath a = mutsel::simulate_pdmp(kRef, 0.5, 4.0, 77);
  const PdmpPath b = mutsel::simulate_pdmp(kRef, 0.5, 4.0, 77);
  CHECK(a.terminal.kind == b.terminal.kind);
  CHECK(a.terminal.value == b.terminal.value);
  REQUIRE(a.jumps.size() == b.jumps.size());

  for (int i = 0; i < 200; ++i) {
    const PdmpPath path = mutsel::simulate_pdmp(kRef, 0.4, 2.0, mutsel::substream_seed(201, i));
    REQUIRE(path.jumps.size() <= 1);
    if (path.jumps.size() == 1) {
      CHECK(path.terminal.value == path.jumps[0].t);
      if (path.jumps[0].target == 1)
        CHECK(path.terminal.kind == PdmpOutcome::AbsorbedOne);
      else
        CHECK(path.terminal.kind == PdmpOutcome::AbsorbedZero);
      CHECK(path.jumps[0].t <= 2.0);
    } else {
      CHECK(path.terminal.kind == PdmpOutcome::RunningAtHorizon);
      CHECK(path.terminal.value ==
            doctest::Approx(mutsel::flow(kRef, 0.4, 2.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("without beneficial mutations every jump lands at zero") {
  const ModelParams p = mutsel::validate_params(1.0, 0.5, 0.0);
  int jumped = 0;
  for (int i = 0; i < 300; ++i) {
    const PdmpPath path = mutsel::simulate_pdmp(p, 0.7, 5.0, mutsel::substream_seed(203, i));
    CHECK(path.terminal.kind != PdmpOutcome::AbsorbedOne);
    if (!path.jumps.empty()) {
      ++jumped;
      CHECK(path.jumps[0].target == 0);
    }
  }
  CHECK(jumped > 0);
}

TEST_CASE("the accumulated hazard at the jump time is a unit exponential") {
  // This is the defining property of the inversion sampler, checked through
  // the independent cumulative integral rather than the sampler's own state.
  const double horizon = mutsel::default_pdmp_horizon(kRef);
  std::vector<double> lambdas;
  lambdas.reserve(1000);
  for (int i = 0; i < 1000; ++i) {
    const PdmpPath path = mutsel::simulate_pdmp(kRef, 0.5, horizon, mutsel::substream_seed(209, i));
    if (path.jumps.empty()) continue;  // probability ~ exp(-20), effectively never
    lambdas.push_back(mutsel::cumulative_hazard(kRef, 0.5, path.jumps[0].t));
  }
  REQUIRE(lambdas.size() > 990);
  const double d = mutsel::ks_statistic_exponential(lambdas, 1.0);
  CHECK(mutsel::ks_p_value(d, lambdas.size()) > 1e-3);
}

TEST_CASE("hazards stay bounded along trajectories") {
  // The flow is monotone between y0 and the stable root, the to-zero hazard
  // decreases in y and the to-one hazard increases, so the path-wise maximum
  // must not exceed the envelope at the range endpoints.
  const double ybar = mutsel::equilibria(kRef).y_bar;
  for (double y0 : {0.1, 0.5, 0.9}) {
    const double lo = std::min(y0, ybar);
    const double hi = std::max(y0, ybar);
    const double envelope = mutsel::hazard_to_zero(kRef, lo) + mutsel::hazard_to_one(kRef, hi);
    for (int i = 0; i < 50; ++i) {
      const PdmpPath path =
          mutsel::simulate_pdmp(kRef, y0, 10.0, mutsel::substream_seed(211, i));
      CAPTURE(y0);
      CHECK(path.max_hazard <= envelope * (1.0 + 1e-9));
      CHECK(std::isfinite(path.max_hazard));
    }
  }
}

TEST_CASE("absorption estimator") {
  SUBCASE("matches the closed-form limit at the reference parameters") {
    const auto est =
        mutsel::estimate_pdmp_absorb_one(kRef, 0.5, 20000, mutsel::default_pdmp_horizon(kRef), 213);
    CHECK(std::fabs(est.mean - 0.066874707397067878) < 4.0 * est.std_error);
    CHECK(est.std_error < 0.005);
  }
  SUBCASE("is gated to the two-sided jump regime") {
    CHECK_THROWS_AS(
        mutsel::estimate_pdmp_absorb_one(mutsel::validate_params(1.0, 3.0, 0.0), 0.5, 1000, 10.0, 1),
        mutsel::WrongRegime);
    CHECK_THROWS_AS(
        mutsel::estimate_pdmp_absorb_one(mutsel::validate_params(1.0, 3.0, 1.0), 0.5, 1000, 10.0, 1),
        mutsel::WrongRegime);
  }
  SUBCASE("refuses to guess when the horizon leaves paths running") {
    CHECK_THROWS_AS(mutsel::estimate_pdmp_absorb_one(kRef, 0.5, 1000, 1e-3, 1),
                    mutsel::IndeterminateFraction);
  }
}

TEST_CASE("moment estimator") {
  SUBCASE("time zero is exact") {
    const auto est = mutsel::estimate_pdmp_moment(kRef, 0.6, 2, 0.0, 200, 1);
    CHECK(est.mean == doctest::Approx(0.36).epsilon(1e-15));
    CHECK(est.std_error == 0.0);
  }
  SUBCASE("agrees with the line-count functional at finite time") {
    const auto pdmp_side = mutsel::estimate_pdmp_moment(kRef, 0.6, 2, 1.0, 20000, 217);
    const auto l_side = mutsel::sample_L_functional(kRef, 0.6, 2, 1.0, 20000, 219);
    const double se = std::sqrt(pdmp_side.std_error * pdmp_side.std_error +
                                l_side.std_error * l_side.std_error);
    CHECK(std::fabs(pdmp_side.mean - l_side.mean) < 4.0 * se);
  }
  CHECK_THROWS_AS(mutsel::estimate_pdmp_moment(kRef, 0.6, 0, 1.0, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(mutsel::estimate_pdmp_moment(kRef, 1.5, 1, 1.0, 100, 1), std::invalid_argument);
}
