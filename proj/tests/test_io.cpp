#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "qca/io.hpp"
#include "test_support.hpp"

using namespace qca;

namespace {

ConfigError::Kind error_kind(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.kind();
  }
  FAIL("expected a ConfigError");
  return ConfigError::Kind::Syntax;
}

int error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

ProbabilityMatrix single(double p) {
  ProbabilityMatrix m(1);
  m.append({p});
  return m;
}

}  // namespace

TEST_CASE("parse_config reads a three-cell config") {
  const QcaConfig c = parse_config("cells=3\nrule=right\neval=h_s_then_cn\nsteps=50\ninitial=32");
  CHECK(c.n_cells == 3);
  CHECK(c.rule == NeighborhoodRule::RightNeighbor);
  CHECK(c.boundary == BoundaryCondition::ConstantZero);
  CHECK(c.evaluation == EvaluationSpec::hadamard_s_then_cn());
  CHECK(c.n_steps == 50);
  CHECK(c.initial_index == 32);
  CHECK(c.record == RecordMode::PerStep);
}

TEST_CASE("parse_config defaults and comments") {
  const QcaConfig c = parse_config("# minimal\n\ncells=1\n  rule = right \nsteps=0\ninitial=0\n");
  CHECK(c.n_cells == 1);
  CHECK(c.boundary == BoundaryCondition::ConstantZero);
  CHECK(c.evaluation == EvaluationSpec::hadamard_both());
  CHECK(c.record == RecordMode::PerStep);

  const QcaConfig d = parse_config(
      "cells=2\nrule=both\nboundary=cyclic\neval=identity\nsteps=3\ninitial=5\nrecord=phase\n");
  CHECK(d.rule == NeighborhoodRule::BothNeighbors);
  CHECK(d.boundary == BoundaryCondition::Cyclic);
  CHECK(d.evaluation == EvaluationSpec::identity());
  CHECK(d.record == RecordMode::PerPhase);
}

TEST_CASE("parse_config error categories") {
  using K = ConfigError::Kind;
  CHECK(error_kind("cells=2\ninitial=99\nrule=right\nsteps=1\n") == K::Range);
  CHECK(error_line("cells=2\ninitial=99\nrule=right\nsteps=1\n") == 2);
  CHECK(error_kind("cells=13\nrule=right\nsteps=1\ninitial=0\n") == K::Range);
  CHECK(error_kind("cells=0\nrule=right\nsteps=1\ninitial=0\n") == K::Range);
  CHECK(error_kind("cells=2\nrule=right\nsteps=-1\ninitial=0\n") == K::Range);
  CHECK(error_kind("cells=2\nrule=right\nsteps=1\ninitial=-3\n") == K::Range);

  CHECK(error_kind("cells=2\nrule=up\nsteps=1\ninitial=0\n") == K::Syntax);
  CHECK(error_line("cells=2\nrule=up\nsteps=1\ninitial=0\n") == 2);
  CHECK(error_kind("cells=2\nrule=right\ncolor=red\nsteps=1\ninitial=0\n") == K::Syntax);
  CHECK(error_line("cells=2\nrule=right\ncolor=red\nsteps=1\ninitial=0\n") == 3);
  CHECK(error_kind("cells=2\nrule right\nsteps=1\ninitial=0\n") == K::Syntax);
  CHECK(error_kind("cells=two\nrule=right\nsteps=1\ninitial=0\n") == K::Syntax);
  CHECK(error_kind("cells=2\ncells=3\nrule=right\nsteps=1\ninitial=0\n") == K::Syntax);
  CHECK(error_kind("cells=2\nrule=right\ninitial=0\n") == K::Syntax);
  CHECK(error_line("cells=2\nrule=right\ninitial=0\n") == 0);
  CHECK(error_kind("cells=2\nrule=right\nsteps=1\ninitial=0\nrecord=always\n") == K::Syntax);
  CHECK(error_kind("cells=2\nrule=right\nsteps=1\ninitial=0\neval=custom:1,0,0\n") == K::Syntax);
  CHECK(error_kind("cells=2\nrule=right\nsteps=1\ninitial=0\n"
                   "eval=custom:1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,x\n") == K::Syntax);
  CHECK(error_kind("cells=2\nrule=right\nsteps=1\ninitial=0\n"
                   "eval=custom:1,1,0,0,0,1,0,0,0,0,1,0,0,0,0,1\n") == K::NonUnitary);
}

TEST_CASE("custom evaluation matrices") {
  const QcaConfig c = parse_config(
      "cells=1\nrule=right\nsteps=1\ninitial=0\n"
      "eval=custom:0+1i,0,0,0, 0,1,0,0, 0,0,0,-0-1i, 0,0,1,0\n");
  REQUIRE(c.evaluation.kind == EvaluationKind::Custom);
  CHECK((*c.evaluation.custom)(0, 0) == Complex{0.0, 1.0});
  CHECK((*c.evaluation.custom)(2, 3) == Complex{0.0, -1.0});
}

TEST_CASE("complex number text") {
  CHECK(parse_complex("1") == Complex{1.0, 0.0});
  CHECK(parse_complex("-2.5i") == Complex{0.0, -2.5});
  CHECK(parse_complex("0.5+0.25i") == Complex{0.5, 0.25});
  CHECK(parse_complex("1e-3-4e2i") == Complex{1e-3, -4e2});
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+i"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+-2i"), std::invalid_argument);
  CHECK(format_complex({0.5, -0.25}) == "0.5-0.25i");
  CHECK(format_complex({1.0, 0.0}) == "1+0i");

  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto re = std::bit_cast<double>(bits(rng));
    const auto im = std::bit_cast<double>(bits(rng));
    if (!std::isfinite(re) || !std::isfinite(im)) continue;
    const Complex back = parse_complex(format_complex({re, im}));
    CHECK(std::bit_cast<std::uint64_t>(back.real()) == std::bit_cast<std::uint64_t>(re));
    CHECK(std::bit_cast<std::uint64_t>(back.imag()) == std::bit_cast<std::uint64_t>(im));
  }
}

TEST_CASE("config text round-trips") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    QcaConfig c = testing::random_config(12, rng);
    c.n_steps = trial * 37;
    c.record = trial % 2 ? RecordMode::PerPhase : RecordMode::PerStep;
    const std::string text = format_config(c);
    const QcaConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(format_config(back) == text);
  }
}

TEST_CASE("render_pgm") {
  CHECK(render_pgm(single(1.0)) == "P2\n1 1\n255\n0\n");
  CHECK(render_pgm(single(0.0)) == "P2\n1 1\n255\n255\n");
  CHECK(render_pgm(single(0.5)) == "P2\n1 1\n255\n128\n");

  // 255 * (1 - p) < 0.5 exactly when p > 1 - 1/510.
  const double edge = 1.0 - 1.0 / 510.0;
  CHECK(render_pgm(single(std::nextafter(edge, 2.0))) == "P2\n1 1\n255\n0\n");
  CHECK(render_pgm(single(edge - 1e-9)) == "P2\n1 1\n255\n1\n");
  CHECK(render_pgm(single(1.0 + 1e-15)) == "P2\n1 1\n255\n0\n");

  ProbabilityMatrix wide(2);
  for (int t = 0; t < 100; ++t) wide.append({t % 2 ? 1.0 : 0.0, t % 2 ? 0.0 : 1.0});
  const std::string pgm = render_pgm(wide);
  CHECK(pgm.starts_with("P2\n100 2\n255\n"));
  std::size_t start = 0, longest = 0, lines = 0;
  for (std::size_t i = 0; i < pgm.size(); ++i)
    if (pgm[i] == '\n') {
      longest = std::max(longest, i - start);
      start = i + 1;
      ++lines;
    }
  CHECK(longest <= 70);
  CHECK(lines > 5);
}

TEST_CASE("write_csv") {
  CHECK(write_csv(single(1.0)) == "state,t0\n0,1\n");

  ProbabilityMatrix delta(4);
  delta.append({0, 0, 1, 0});
  CHECK(write_csv(delta) == "state,t0\n0,0\n1,0\n2,1\n3,0\n");

  QcaConfig c = parse_config("cells=3\nrule=right\neval=h_s_then_cn\nsteps=50\ninitial=32");
  const ProbabilityMatrix m = evolve(c);
  const ProbabilityMatrix back = parse_csv(write_csv(m));
  CHECK(back == m);
  CHECK(write_csv(back) == write_csv(m));

  CHECK_THROWS_AS(parse_csv("state,t1\n0,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("state,t0\n1,1\n"), std::invalid_argument);
}

TEST_CASE("gate scripts") {
  const GateScriptFile walkthrough = parse_gate_script("qubits=2\ninitial=2\nH q1\nCN q1 q0\n");
  CHECK(walkthrough.n_qubits == 2);
  CHECK(walkthrough.initial_index == 2);
  REQUIRE(walkthrough.steps.size() == 2);
  CHECK(walkthrough.steps[0] == std::vector<GateOp>{hadamard(1)});
  CHECK(walkthrough.steps[1] == std::vector<GateOp>{cnot(1, 0)});

  const GateScriptFile cells = parse_gate_script(
      "cells=3\ninitial=32\n# interaction\nCN s0 c1; CN s1 c2\nH s0; H s1 ; H s2\nCCN s0 s2 c1\nX c0\n");
  CHECK(cells.n_qubits == 6);
  REQUIRE(cells.steps.size() == 4);
  CHECK(cells.steps[0] == std::vector<GateOp>{cnot(1, 2), cnot(3, 4)});
  CHECK(cells.steps[1].size() == 3);
  CHECK(cells.steps[2] == std::vector<GateOp>{toffoli(1, 5, 2)});
  CHECK(cells.steps[3] == std::vector<GateOp>{pauli_x(0)});

  CHECK(parse_gate_script("cells=1\ninitial=0\n").steps.empty());

  using K = ConfigError::Kind;
  const auto kind = [](std::string_view text) {
    try {
      parse_gate_script(text);
    } catch (const ConfigError& e) {
      return e.kind();
    }
    FAIL("expected a ConfigError");
    return K::Syntax;
  };
  CHECK(kind("qubits=2\ninitial=2\nH q2\n") == K::Range);
  CHECK(kind("cells=1\ninitial=0\nH s1\n") == K::Range);
  CHECK(kind("qubits=2\ninitial=4\nH q0\n") == K::Range);
  CHECK(kind("qubits=2\ninitial=0\nH s0\n") == K::Syntax);
  CHECK(kind("qubits=2\ninitial=0\nY q0\n") == K::Syntax);
  CHECK(kind("qubits=2\ninitial=0\nCN q0\n") == K::Syntax);
  CHECK(kind("qubits=2\ninitial=0\nCN q0 q0\n") == K::Syntax);
  CHECK(kind("qubits=2\ninitial=0\nH q0\ninitial=1\n") == K::Syntax);
  CHECK(kind("qubits=2\ncells=1\ninitial=0\nH q0\n") == K::Syntax);
  CHECK(kind("qubits=2\nH q0\n") == K::Syntax);
}

TEST_CASE("operator CSV") {
  const std::string csv = write_operator_csv(embed_gate(cnot(1, 0), 2));
  CHECK(csv ==
        "1+0i,0+0i,0+0i,0+0i\n"
        "0+0i,1+0i,0+0i,0+0i\n"
        "0+0i,0+0i,0+0i,1+0i\n"
        "0+0i,0+0i,1+0i,0+0i\n");
}
