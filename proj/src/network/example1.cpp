#include "entrolab/network/example1.hpp"

#include <array>

namespace entrolab::network {
namespace {

const std::vector<std::string> kPairs{"00", "01", "10", "11"};
const std::vector<std::string> kBits{"0", "1"};

std::uint32_t pair_symbol(int x, int y) { return static_cast<std::uint32_t>(2 * x + y); }

AuxFunction bit_of(const std::string& source, int position) {
  AuxFunction f;
  f.of = {source};
  for (const auto& s : kPairs) f.table[s] = std::string(1, s[static_cast<std::size_t>(position)]);
  return f;
}

AuxConstraint row(const std::string& text) { return parse_aux_constraint(text); }

}  // namespace

NetworkProblem example1_problem() {
  NetworkProblem p;
  p.name = "example1";
  p.nodes = {"1", "2", "3", "4", "5"};
  p.edges = {
      {"U1", "1", "2", std::nullopt, false}, {"U2", "1", "3", std::nullopt, false},
      {"U3", "1", "4", std::nullopt, false}, {"U4", "1", "5", std::nullopt, false},
      {"R3", "2", "3", std::nullopt, true},  {"R4", "2", "4", std::nullopt, true},
      {"R5", "2", "5", std::nullopt, true},
  };
  p.sources = {{"Y1", "1", {"3"}}, {"Y2", "1", {"4"}}, {"Y3", "1", {"5"}}};
  std::vector<Outcome> outcomes;
  for (int b = 0; b < 8; ++b) {
    const int b0 = b >> 2 & 1, b1 = b >> 1 & 1, b2 = b & 1;
    outcomes.push_back({{pair_symbol(b0, b1), pair_symbol(b0, b2), pair_symbol(b1, b2)}, Rational(1, 8)});
  }
  p.model.distribution =
      JointDistribution({{"Y1", kPairs}, {"Y2", kPairs}, {"Y3", kPairs}}, std::move(outcomes));
  return p;
}

JointDistribution example1_witness_distribution() {
  std::vector<Variable> vars{{"Y1", kPairs}, {"Y2", kPairs}, {"Y3", kPairs}, {"U1", kBits}, {"U2", kBits},
                             {"U3", kBits},  {"U4", kBits},  {"R3", kBits}, {"R4", kBits}, {"R5", kBits}};
  std::vector<Outcome> outcomes;
  for (int b = 0; b < 8; ++b) {
    const int b0 = b >> 2 & 1, b1 = b >> 1 & 1, b2 = b & 1;
    const auto u = [](int v) { return static_cast<std::uint32_t>(v); };
    outcomes.push_back({{pair_symbol(b0, b1), pair_symbol(b0, b2), pair_symbol(b0, b1 ^ b2), u(b0), u(b1), u(b2),
                         u(b1 ^ b2), u(b0), u(b0), u(b0)},
                        Rational(1, 8)});
  }
  return JointDistribution(std::move(vars), std::move(outcomes));
}

AuxSpec example1_aux_functional() {
  AuxSpec spec;
  spec.variables = {{"Z0", bit_of("Y1", 0)}, {"Z1", bit_of("Y1", 1)}, {"Z2", bit_of("Y2", 1)}};
  spec.fixing = AuxFixing::All;
  return spec;
}

AuxSpec example1_aux_z0() {
  AuxSpec spec;
  spec.variables = {{"Z0", bit_of("Y1", 0)}};
  spec.fixing = AuxFixing::All;
  return spec;
}

AuxSpec example1_aux_selected() {
  AuxSpec spec;
  spec.variables = {{"Z0", std::nullopt}, {"Z1", std::nullopt}, {"Z2", std::nullopt}};
  spec.fixing = AuxFixing::None;
  const std::array<std::string, 3> z{"Z0", "Z1", "Z2"};
  for (int a = 1; a < 8; ++a) {
    std::string names;
    int size = 0;
    for (int i = 0; i < 3; ++i) {
      if ((a >> i & 1) == 0) continue;
      names += (names.empty() ? "" : ",") + z[static_cast<std::size_t>(i)];
      ++size;
    }
    spec.constraints.push_back(row("1*h{" + names + "} = " + std::to_string(size)));
  }
  spec.constraints.push_back(row("1*h{Y1,Z0,Z1} -1*h{Z0,Z1} = 0"));
  spec.constraints.push_back(row("1*h{Y2,Z0,Z2} -1*h{Z0,Z2} = 0"));
  spec.constraints.push_back(row("1*h{Y3,Z1,Z2} -1*h{Z1,Z2} = 0"));
  spec.constraints.push_back(row("1*h{Z0,Z1} -1*h{Y1} = 0"));
  spec.constraints.push_back(row("1*h{Z0,Z2} -1*h{Y2} = 0"));
  spec.constraints.push_back(row("1*h{Z1,Z2} -1*h{Y3} = 0"));
  return spec;
}

}  // namespace entrolab::network
