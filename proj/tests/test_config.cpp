#include <doctest.h>

#include <string>

#include "qboots/config.hpp"
#include "qboots/resources.hpp"

using namespace qboots;
using namespace qboots::config;

TEST_CASE("defaults validate and dump/parse is a fixed point") {
  ExperimentConfig c;
  validate_config(c);
  std::string text = dump_config(c);
  ExperimentConfig back = parse_config(text);
  CHECK(dump_config(back) == text);
}

TEST_CASE("presets validate; overrides apply after the preset line") {
  for (const std::string& name : preset_names()) validate_config(preset_config(name));
  ExperimentConfig c = parse_config("preset = pir-toy\ndb_size = 16\n");
  CHECK(c.preset == "pir-toy");
  CHECK(c.db_size == 16);
  CHECK(c.word_bits == 4);
}

TEST_CASE("comments, blanks, and whitespace are tolerated") {
  ExperimentConfig c = parse_config("# header\n\n  shots = 7  # trailing\n\tseed=9\n");
  CHECK(c.shots == 7);
  CHECK(c.seed == 9);
}

TEST_CASE("malformed input is rejected with context") {
  CHECK_THROWS(parse_config("nonsense\n"));
  CHECK_THROWS(parse_config("unknown_key = 3\n"));
  CHECK_THROWS(parse_config("preset = missing\n"));
  CHECK_THROWS(parse_config("shots = many\n"));
  CHECK_THROWS(parse_config("use_socket = maybe\n"));
  CHECK_THROWS(load_config("/tmp/qboots-no-such-config.cfg"));
}

TEST_CASE("validation rejects out-of-contract values") {
  auto broken = [](auto&& mutate) {
    ExperimentConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS(validate_config(broken([](ExperimentConfig& c) { c.strategy = "magic"; })));
  CHECK_THROWS(validate_config(broken([](ExperimentConfig& c) { c.function = "cosine"; })));
  CHECK_THROWS(validate_config(broken([](ExperimentConfig& c) { c.db_size = 5; })));
  CHECK_THROWS(validate_config(broken([](ExperimentConfig& c) { c.word_bits = 0; })));
  CHECK_THROWS(validate_config(broken([](ExperimentConfig& c) { c.paillier_N = 77; })));
  CHECK_THROWS(validate_config(broken([](ExperimentConfig& c) { c.shots = 0; })));
  CHECK_THROWS(validate_config(broken([](ExperimentConfig& c) { c.nstar_rule = "always"; })));
}

TEST_CASE("noise budget guard names the recombination bound") {
  ExperimentConfig c;
  c.mhe.beta_acc = 1e18;
  try {
    validate_config(c);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("beta_acc") != std::string::npos);
    CHECK(msg.find("budget") != std::string::npos);
  }
}

TEST_CASE("scale-separation rules for the amplitude modulus") {
  ExperimentConfig c;  // N* = 2^20, L' = 16, n = 16: ratio 4096
  double margin = 0.0;
  CHECK(nstar_separated(c, &margin));
  CHECK(margin == doctest::Approx(4096.0));

  c.nstar_rule = "absolute";
  CHECK(nstar_separated(c, &margin));
  CHECK(margin == doctest::Approx(16.0));

  c.rot.N_star = 1 << 10;
  CHECK_FALSE(nstar_separated(c, nullptr));
  c.nstar_rule = "ratio";
  CHECK_FALSE(nstar_separated(c, nullptr));  // 1024 / (16*16) = 4 < 16
}

TEST_CASE("resource arithmetic reproduces the published tallies") {
  CHECK(resources::lwe_cnot_qubits(1024, 31) == 1047583);
  CHECK(resources::paillier_cnot_qubits(4096) == 12288);
  CHECK(resources::paillier_cnot_qubits(3072) == 9216);
  resources::PaillierCountNote note = resources::paillier_cnot_note(4096);
  CHECK(note.matches_4096);
  CHECK(note.count_at_3072 == 9216);
  CHECK_FALSE(resources::paillier_cnot_note(3072).matches_4096);
}

TEST_CASE("conditional-rotation tally itemization") {
  resources::CrotCostModel m = resources::crot_cost_model(4, 16, 20, 4, 128);
  CHECK(m.item1 == 16 * 20);
  CHECK(m.item2 == 3 * 16 * 20);
  CHECK(m.item3 == 128 * 128);
  CHECK(m.item4 == 2 * 15 * 4);
  CHECK(m.simulable_total() == m.item1 + m.item2 + m.item4);
  CHECK(m.total() == m.simulable_total() + m.item3);
  // Wide output registers make the lookup term symbolic, not enumerable.
  CHECK(resources::crot_cost_model(64, 16, 20, 4, 128).item4 == 0);
}
