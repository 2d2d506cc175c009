#include "qboots/qsim/circuit.hpp"

#include <sstream>
#include <stdexcept>

namespace qboots::qsim {

std::string gate_name(GateId id) {
  switch (id) {
    case GateId::X: return "X";
    case GateId::Y: return "Y";
    case GateId::Z: return "Z";
    case GateId::H: return "H";
    case GateId::P: return "P";
    case GateId::T: return "T";
    case GateId::CNOT: return "CNOT";
    case GateId::TOFFOLI: return "TOFFOLI";
    case GateId::CSWAP: return "CSWAP";
    case GateId::R: return "R";
    case GateId::CR: return "CR";
  }
  return "?";
}

static std::size_t arity(GateId id) {
  switch (id) {
    case GateId::CNOT:
    case GateId::CR: return 2;
    case GateId::TOFFOLI:
    case GateId::CSWAP: return 3;
    default: return 1;
  }
}

void Circuit::add(GateId id, std::vector<u32> targets) {
  if (targets.size() != arity(id)) throw std::invalid_argument("Circuit: wrong target count");
  for (u32 t : targets)
    if (t >= layout.size()) throw std::invalid_argument("Circuit: target out of layout");
  gates.push_back(Gate{id, std::move(targets), 0.0, false});
}

void Circuit::add(GateId id, std::vector<u32> targets, double param) {
  add(id, std::move(targets));
  gates.back().param = param;
  gates.back().has_param = true;
}

std::size_t Circuit::count(GateId id) const {
  std::size_t c = 0;
  for (const auto& g : gates)
    if (g.id == id) ++c;
  return c;
}

std::size_t Circuit::depth() const {
  std::vector<std::size_t> busy_until(layout.size(), 0);
  std::size_t depth = 0;
  for (const auto& g : gates) {
    std::size_t layer = 0;
    for (u32 t : g.targets) layer = std::max(layer, busy_until[t]);
    ++layer;
    for (u32 t : g.targets) busy_until[t] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

void Circuit::apply(QuantumState& state) const {
  for (const auto& g : gates) {
    const auto& t = g.targets;
    switch (g.id) {
      case GateId::X: state.x(t[0]); break;
      case GateId::Y: state.y(t[0]); break;
      case GateId::Z: state.z(t[0]); break;
      case GateId::H: state.h(t[0]); break;
      case GateId::P: state.p(t[0]); break;
      case GateId::T: state.t(t[0]); break;
      case GateId::CNOT: state.cnot(t[0], t[1]); break;
      case GateId::TOFFOLI: state.toffoli(t[0], t[1], t[2]); break;
      case GateId::CSWAP: state.cswap(t[0], t[1], t[2]); break;
      case GateId::R: state.r_alpha(t[0], g.param); break;
      case GateId::CR: state.cr_alpha(t[0], t[1], g.param); break;
    }
  }
}

std::string Circuit::dump() const {
  std::ostringstream os;
  for (const auto& g : gates) {
    os << gate_name(g.id) << ' ';
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      if (i) os << ',';
      os << g.targets[i];
    }
    if (g.has_param) os << ' ' << g.param;
    os << '\n';
  }
  return os.str();
}

// Multi-controlled X via a Toffoli ladder over scratch qubits.
static void mcx(Circuit& c, const std::vector<u32>& controls, u32 target,
                const std::vector<u32>& anc) {
  std::size_t k = controls.size();
  if (k == 0) { c.add(GateId::X, {target}); return; }
  if (k == 1) { c.add(GateId::CNOT, {controls[0], target}); return; }
  if (k == 2) { c.add(GateId::TOFFOLI, {controls[0], controls[1], target}); return; }
  if (anc.size() < k - 1) throw std::invalid_argument("mcx: not enough ancillas");
  c.add(GateId::TOFFOLI, {controls[0], controls[1], anc[0]});
  for (std::size_t i = 2; i < k; ++i)
    c.add(GateId::TOFFOLI, {controls[i], anc[i - 2], anc[i - 1]});
  c.add(GateId::CNOT, {anc[k - 2], target});
  for (std::size_t i = k; i-- > 2;)
    c.add(GateId::TOFFOLI, {controls[i], anc[i - 2], anc[i - 1]});
  c.add(GateId::TOFFOLI, {controls[0], controls[1], anc[0]});
}

Circuit build_qram_circuit(const std::vector<u64>& db, u32 word_bits, u32 memory_budget,
                           QramLayout* out_layout) {
  if (memory_budget < 1) throw std::invalid_argument("build_qram_circuit: M >= 1 required");
  if (db.empty() || !is_power_of_two(db.size()))
    throw std::invalid_argument("build_qram_circuit: |db| must be a power of two");
  if (word_bits < 1 || word_bits > 63)
    throw std::invalid_argument("build_qram_circuit: word width outside [1, 63]");
  for (u64 w : db)
    if ((w >> word_bits) != 0)
      throw std::invalid_argument("build_qram_circuit: word exceeds width");

  u32 N = static_cast<u32>(db.size());
  u32 l = static_cast<u32>(log2_exact(N));
  u32 M = 1;
  while (M * 2 <= std::min(memory_budget, N)) M *= 2;
  u32 lb = static_cast<u32>(log2_exact(M));  // low (in-block) index bits
  u32 hb = l - lb;                           // high (block-select) index bits
  u32 copy_controls = hb + 1;
  u32 anc = copy_controls >= 3 ? copy_controls - 1 : 0;

  QramLayout ql;
  ql.index_bits = l;
  ql.word_bits = word_bits;
  ql.cells = M;
  ql.ancillas = anc;

  Circuit c;
  u32 slot = 0;
  for (u32 i = 0; i < l; ++i, ++slot) {
    c.layout.slots.push_back({"i" + std::to_string(i), 2});
    ql.index_slots.push_back(slot);
  }
  for (u32 i = 0; i < word_bits; ++i, ++slot) {
    c.layout.slots.push_back({"d" + std::to_string(i), 2});
    ql.data_slots.push_back(slot);
  }
  for (u32 i = 0; i < M * word_bits; ++i, ++slot) {
    c.layout.slots.push_back({"m" + std::to_string(i), 2});
    ql.cell_slots.push_back(slot);
  }
  for (u32 i = 0; i < anc; ++i, ++slot) {
    c.layout.slots.push_back({"a" + std::to_string(i), 2});
    ql.anc_slots.push_back(slot);
  }
  auto cell_bit = [&](u32 cell, u32 bit) { return ql.cell_slots[cell * word_bits + bit]; };

  for (u32 block = 0; block < N / M; ++block) {
    auto load = [&] {
      for (u32 cell = 0; cell < M; ++cell) {
        u64 word = db[std::size_t(block) * M + cell];
        for (u32 j = 0; j < word_bits; ++j)
          if ((word >> (word_bits - 1 - j)) & 1) c.add(GateId::X, {cell_bit(cell, j)});
      }
    };
    auto route = [&](bool reverse) {
      for (u32 tt = 0; tt < lb; ++tt) {
        u32 t = reverse ? lb - 1 - tt : tt;
        u32 ctrl = ql.index_slots[l - 1 - t];  // low index bit t
        for (u32 i = 0; i < M; i += (2u << t))
          for (u32 j = 0; j < word_bits; ++j) {
            c.add(GateId::CSWAP, {ctrl, cell_bit(i, j), cell_bit(i + (1u << t), j)});
            ++ql.cswap_count;
          }
      }
    };
    load();
    route(false);
    // Flip block-select bits so the copy controls test for the 1 pattern.
    std::vector<u32> highs(ql.index_slots.begin(), ql.index_slots.begin() + hb);
    for (u32 h = 0; h < hb; ++h)
      if (((block >> (hb - 1 - h)) & 1) == 0) c.add(GateId::X, {highs[h]});
    for (u32 j = 0; j < word_bits; ++j) {
      std::vector<u32> controls = highs;
      controls.push_back(cell_bit(0, j));
      mcx(c, controls, ql.data_slots[j], ql.anc_slots);
    }
    for (u32 h = 0; h < hb; ++h)
      if (((block >> (hb - 1 - h)) & 1) == 0) c.add(GateId::X, {highs[h]});
    route(true);
    load();  // X is self-inverse: unload
  }
  if (out_layout) *out_layout = ql;
  return c;
}

}  // namespace qboots::qsim
