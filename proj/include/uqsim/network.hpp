#pragma once

// Networks of qubits with an integer-time gate schedule and optional
// closed-timelike-curve identifications.

#include <array>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uqsim/gates.hpp"

namespace uqsim {

// Gates starting at integer time `time`; each runs for its own duration.
struct ScheduleSlot {
  int time = 0;
  std::vector<GateSpec> gates;
};

// The young qubit's descriptors at time T must equal the old qubit's at 0.
struct CtcPair {
  std::string young;
  std::string old;
};

struct CtcSpec {
  std::vector<CtcPair> pairs;
  double T = 1.0;
};

struct NetworkState {
  std::vector<std::string> order;  // declaration order
  TripleMap qubits;                // descriptors at `time`
  HeisenbergState state;
  std::size_t hilbert_dim = 0;
  std::vector<ScheduleSlot> schedule;
  std::optional<CtcSpec> ctc;
  double time = 0.0;

  const DescriptorTriple& qubit(std::string_view id) const;
};

// Latest gate end time (0 for an empty schedule).
double schedule_end(const NetworkState& net);

struct QubitPreset {
  enum class Kind { pauli, tensor_slot, copy_of, explicit_matrices, hilbert_creation_slot };
  Kind kind = Kind::pauli;
  std::string id;
  std::size_t slot = 0;  // tensor_slot: factor index, leftmost is 0
  std::size_t of = 1;    // tensor_slot: number of factors
  std::string source;    // copy_of
  std::array<QNumber, 3> matrices;  // explicit_matrices
  int role = 1;                     // hilbert_creation_slot: 1..4
  std::optional<Eigen::Matrix3d> rotation;  // applied after construction
};

struct StateSpec {
  enum class Kind { all_z, sharp_z, amplitudes };
  Kind kind = Kind::all_z;
  std::vector<std::string> sharp_z;
  Eigen::VectorXcd amplitudes;
};

struct NetworkSpec {
  std::vector<QubitPreset> qubits;
  StateSpec state;
  std::vector<ScheduleSlot> schedule;
  std::optional<CtcSpec> ctc;
};

// sigma_k in factor `slot` of an n-fold tensor product of 2x2 factors.
DescriptorTriple tensor_slot_triple(std::size_t slot, std::size_t n, std::string label = {});
// The four-qubit two-factor representation used by the Hilbert-space creation protocol.
DescriptorTriple hilbert_creation_triple(int role, std::string label = {});

DescriptorTriple make_preset(const QubitPreset& p, const TripleMap& earlier);

struct BuildOptions {
  bool dry_run = true;  // apply every slot once, checking each gate on the descriptors it will see
  EvolveOptions evolve{.path = EvolvePath::automatic};
};

// Checks the triples, state, schedule shape, and (with dry_run) every gate.
// Throws ValidationError / DimensionError with the offending item named.
NetworkState assemble_network(std::vector<DescriptorTriple> triples, HeisenbergState state,
                              std::vector<ScheduleSlot> schedule, std::optional<CtcSpec> ctc,
                              const BuildOptions& options = {});

NetworkState build_network(const NetworkSpec& spec, const BuildOptions& options = {});

// Slot ordering, participant existence and disjointness, CTC pair shape.
void check_schedule_shape(const NetworkState& net);

// Dry run of the whole schedule; failures name the slot and gate.
std::vector<std::string> validate_schedule(const NetworkState& net, const EvolveOptions& options);

// Copy with one qubit's current descriptors replaced (state unchanged).
NetworkState with_qubit(NetworkState net, const std::string& id, DescriptorTriple triple);

struct Snapshot {
  double time = 0.0;
  TripleMap qubits;
};

struct RunOptions {
  EvolveOptions evolve{.path = EvolvePath::automatic};
  double t1 = std::numeric_limits<double>::infinity();  // clipped to the schedule end
  double sample_dt = 0.0;                               // extra snapshots every sample_dt
};

struct RunResult {
  NetworkState final;
  std::vector<Snapshot> snapshots;  // start, every integer time, every sample time, end
  bool closed_form = true;          // every segment used the closed form
};

RunResult run_schedule(const NetworkState& net, const RunOptions& options = {});

struct QubitReport {
  std::string id;
  std::array<double, 3> expectation{};
  std::array<bool, 3> sharp{};
  std::optional<Attribute> attribute;
  double pauli_residual = 0.0;
};

struct PairReport {
  std::string a, b;
  PairClass cls = PairClass::general;
};

struct NetworkReport {
  double time = 0.0;
  std::vector<QubitReport> qubits;
  std::vector<PairReport> pairs;
  std::size_t algebra_dim = 0;
  std::size_t hermitian_dim = 0;
  HilbertDimension hilbert;
};

struct ReportOptions {
  double tolerance = tol::evolved;
  double rank_tol = tol::rank_evolved;
};

NetworkReport report(const NetworkState& net, const ReportOptions& options = {});

// Columns: time,qubit,axis,expectation,sharp
void write_csv(std::ostream& os, const std::vector<Snapshot>& snapshots, const NetworkState& net,
               double tolerance = tol::evolved);

}  // namespace uqsim
