#include <doctest.h>

#include <stdexcept>

#include "dofalign/core.hpp"

using namespace dofalign;

TEST_SUITE("core") {

TEST_CASE("config validation enforces the antenna bounds") {
  CHECK_THROWS_AS(SystemConfig(0, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(SystemConfig(1, 1, 65, 1), std::invalid_argument);
  CHECK_NOTHROW(SystemConfig(64, 64, 64, 64));
}

TEST_CASE("classification of the reference scenarios") {
  const SystemConfig cfg(1, 2, 3, 3);

  CHECK(classify(cfg, {Channel::Zic, Csit::Absent, 2}) ==
        CaseLabel{GoverningResult::Thm2C1, ReconfigurableSide::Tx1});
  CHECK(classify(cfg, {Channel::Zic, Csit::Present, {}}) ==
        CaseLabel{GoverningResult::Thm1ZicCsit, ReconfigurableSide::None});
  CHECK(classify(SystemConfig(3, 4, 1, 2), {Channel::Fic, Csit::Absent, 2}) ==
        CaseLabel{GoverningResult::Thm3C2, ReconfigurableSide::Tx2});
  CHECK(classify(cfg, {Channel::Fic, Csit::Absent, 2}) ==
        CaseLabel{GoverningResult::Thm3C1, ReconfigurableSide::Tx1});

  // K = M1 is the no-switching baseline, also the default.
  CHECK(classify(cfg, {Channel::Zic, Csit::Absent, 1}).result ==
        GoverningResult::IidNoSwitching);
  CHECK(classify(cfg, {Channel::Zic, Csit::Absent, {}}).result ==
        GoverningResult::IidNoSwitching);

  // Strictly between M1 and N1: the limited-modes case.
  CHECK(classify(SystemConfig(1, 3, 4, 4), {Channel::Zic, Csit::Absent, 2}) ==
        CaseLabel{GoverningResult::Thm4LimitedModes, ReconfigurableSide::Tx1});
  CHECK(classify(SystemConfig(4, 5, 1, 3), {Channel::Fic, Csit::Absent, 2}) ==
        CaseLabel{GoverningResult::Thm4LimitedModes, ReconfigurableSide::Tx2});

  // Shapes where switching cannot help.
  CHECK(classify(SystemConfig(2, 2, 2, 2), {Channel::Zic, Csit::Absent, 2}) ==
        CaseLabel{GoverningResult::Thm2C2, ReconfigurableSide::None});
  CHECK(classify(SystemConfig(2, 2, 2, 2), {Channel::Fic, Csit::Absent, 2}) ==
        CaseLabel{GoverningResult::Thm3C3, ReconfigurableSide::None});
}

TEST_CASE("mode counts below the reconfigurable side's antennas are rejected") {
  CHECK_THROWS_AS(
      classify(SystemConfig(2, 3, 4, 4), {Channel::Zic, Csit::Absent, 1}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      classify(SystemConfig(4, 5, 2, 3), {Channel::Fic, Csit::Absent, 1}),
      std::invalid_argument);
  // CSIT scenarios ignore the mode count entirely.
  CHECK_NOTHROW(classify(SystemConfig(2, 3, 4, 4),
                         {Channel::Zic, Csit::Present, 1}));
}

TEST_CASE("classify is total and stable over the small grid") {
  for (int m1 = 1; m1 <= 6; ++m1) {
    for (int n1 = 1; n1 <= 6; ++n1) {
      for (int m2 = 1; m2 <= 6; ++m2) {
        for (int n2 = 1; n2 <= 6; ++n2) {
          const SystemConfig cfg(m1, n1, m2, n2);
          for (Channel ch : {Channel::Zic, Channel::Fic}) {
            CHECK_NOTHROW(classify(cfg, {ch, Csit::Present, {}}));
            const Scenario no_csit{ch, Csit::Absent,
                                   std::max({m1, n1, m2, n2})};
            const CaseLabel a = classify(cfg, no_csit);
            const CaseLabel b = classify(cfg, no_csit);
            CHECK(a == b);
          }
        }
      }
    }
  }
}

TEST_CASE("min-antenna reduction") {
  CHECK(reduce_min_antennas(SystemConfig(1, 2, 3, 4)) ==
        SystemConfig(1, 2, 3, 3));
  CHECK(reduce_min_antennas(SystemConfig(1, 2, 3, 3)) ==
        SystemConfig(1, 2, 3, 3));
  CHECK(reduce_min_antennas(SystemConfig(2, 5, 7, 4)) ==
        SystemConfig(2, 5, 4, 4));

  for (int m2 = 1; m2 <= 6; ++m2) {
    for (int n2 = 1; n2 <= 6; ++n2) {
      const SystemConfig cfg(3, 3, m2, n2);
      CHECK(reduce_min_antennas(reduce_min_antennas(cfg)) ==
            reduce_min_antennas(cfg));
    }
  }
}

}  // TEST_SUITE
