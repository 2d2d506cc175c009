#ifndef QBOOTS_QSIM_CIRCUIT_HPP
#define QBOOTS_QSIM_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qboots/qsim/state.hpp"

namespace qboots::qsim {

enum class GateId { X, Y, Z, H, P, T, CNOT, TOFFOLI, CSWAP, R, CR };

struct Gate {
  GateId id;
  std::vector<u32> targets;  // controls first, target last
  double param = 0.0;        // rotation angle fraction for R/CR
  bool has_param = false;
};

std::string gate_name(GateId id);

struct Circuit {
  RegisterLayout layout;
  std::vector<Gate> gates;

  void add(GateId id, std::vector<u32> targets);
  void add(GateId id, std::vector<u32> targets, double param);
  std::size_t gate_count() const { return gates.size(); }
  std::size_t count(GateId id) const;
  /// Greedy layering: gates touching disjoint slots share a layer.
  std::size_t depth() const;
  void apply(QuantumState& state) const;
  /// One gate per line: `GATE target[,target...] [param]`.
  std::string dump() const;
};

/// Slot bookkeeping for a QRAM circuit on the canonical layout
/// [index bits | data bits | memory-cell bits | ancilla bits].
struct QramLayout {
  u32 index_bits = 0;   // l = log2 N
  u32 word_bits = 0;    // data word width
  u32 cells = 0;        // memory cells actually allocated
  u32 ancillas = 0;     // Toffoli-ladder scratch qubits
  std::vector<u32> index_slots;
  std::vector<u32> data_slots;
  std::vector<u32> cell_slots;  // cells * word_bits, cell-major
  std::vector<u32> anc_slots;
  std::size_t cswap_count = 0;  // routing cSWAPs in the built circuit
};

/// |i>|0> -> |i>|DB_i> with a memory budget of M cells: blocks of M entries
/// are loaded into a cSWAP routing tree selected by the low index bits, then
/// copied out under the high index bits. M = 1 degenerates to one
/// multi-controlled write per entry, M = N to a single routed tree.
Circuit build_qram_circuit(const std::vector<u64>& db, u32 word_bits, u32 memory_budget,
                           QramLayout* out_layout = nullptr);

}  // namespace qboots::qsim

#endif
