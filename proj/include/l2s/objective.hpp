#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "l2s/space.hpp"

namespace l2s {

enum class Direction { maximize, minimize };

std::string_view to_string(Direction direction) noexcept;

/// True when `candidate` is strictly better than `reference` in `direction`.
inline bool improves(Direction direction, double candidate, double reference) noexcept {
  return direction == Direction::maximize ? candidate > reference : candidate < reference;
}

/// Expensive black-box objective over a discrete space.
///
/// All instance randomness is drawn when the instance is built, so evaluate() is a
/// pure function of the structure. evaluate() rejects structures the space does not
/// accept; this is the single choke point through which every expensive evaluation
/// passes, which is what makes constraint safety checkable.
class Objective {
 public:
  /// best_known() only enumerates spaces up to this many structures.
  static constexpr std::uint64_t kBestKnownLimit = std::uint64_t{1} << 20;

  virtual ~Objective() = default;
  Objective(const Objective&) = delete;
  Objective& operator=(const Objective&) = delete;

  const std::string& name() const noexcept { return name_; }
  const DiscreteSpace& space() const noexcept { return space_; }
  Direction direction() const noexcept { return direction_; }
  const Neighborhood& neighborhood() const noexcept { return neighborhood_; }
  /// Instance descriptor: every constant that defines the instance.
  const std::map<std::string, std::string>& parameters() const noexcept { return parameters_; }

  double evaluate(const Structure& x) const {
    space_.require_valid(x);
    return evaluate_valid(x);
  }

  /// Exhaustive optimum when the space has at most kBestKnownLimit structures.
  std::optional<double> best_known() const;
  /// A structure attaining best_known(), when present.
  std::optional<Structure> best_known_structure() const;

 protected:
  Objective(std::string name, DiscreteSpace space, Direction direction, Neighborhood neighborhood,
            std::map<std::string, std::string> parameters)
      : name_(std::move(name)),
        space_(std::move(space)),
        direction_(direction),
        neighborhood_(std::move(neighborhood)),
        parameters_(std::move(parameters)) {}

  virtual double evaluate_valid(const Structure& x) const = 0;

 private:
  void compute_best_known() const;

  std::string name_;
  DiscreteSpace space_;
  Direction direction_;
  Neighborhood neighborhood_;
  std::map<std::string, std::string> parameters_;

  mutable std::once_flag best_once_;
  mutable std::optional<std::pair<Structure, double>> best_;
};

// ---------------------------------------------------------------------------
// Low-autocorrelation binary sequences

/// Sidelobe energy E(S) of a +-1 sequence.
std::int64_t labs_energy(std::span<const std::int8_t> sequence);

/// n^2 / E(S). Throws PreconditionError when E(S) = 0 (n < 2).
double merit_factor(std::span<const std::int8_t> sequence);

/// Index 0 maps to +1, index 1 to -1.
std::vector<std::int8_t> to_spins(const Structure& x);

struct LabsInstance {
  std::size_t length = 13;
};

/// Maximises the merit factor of a length-n sequence.
class LabsObjective final : public Objective {
 public:
  explicit LabsObjective(LabsInstance instance);
  const LabsInstance& instance() const noexcept { return instance_; }

 private:
  double evaluate_valid(const Structure& x) const override;
  LabsInstance instance_;
};

// ---------------------------------------------------------------------------
// Contamination control

struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;
};

struct ContaminationParams {
  std::size_t stages = 25;
  std::size_t samples = 100;
  double penalty = 1.0;
  double reg = 1e-4;
  double limit = 0.1;
  double cost = 1.0;
  BetaParams initial{1.0, 30.0};
  BetaParams spread{1.0, 17.0 / 3.0};
  BetaParams decay{1.0, 7.0 / 3.0};
  std::uint64_t seed = 0;
};

/// Frozen Monte-Carlo instance. Rate matrices are samples x stages, row-major.
struct ContaminationInstance {
  std::size_t stages = 0;
  std::size_t samples = 0;
  std::vector<double> cost;
  std::vector<double> limit;
  std::vector<double> decay_rates;
  std::vector<double> spread_rates;
  std::vector<double> initial_fraction;
  double penalty = 1.0;
  double reg = 0.0;

  double decay(std::size_t sample, std::size_t stage) const {
    return decay_rates[sample * stages + stage];
  }
  double spread(std::size_t sample, std::size_t stage) const {
    return spread_rates[sample * stages + stage];
  }
};

ContaminationInstance make_contamination_instance(const ContaminationParams& params);

/// Prevention cost + (rho/T) * limit violations + lambda * |x|_1 over the frozen sample paths.
double contamination_objective(const ContaminationInstance& instance, const Structure& x);

class ContaminationObjective final : public Objective {
 public:
  explicit ContaminationObjective(const ContaminationParams& params);
  const ContaminationInstance& instance() const noexcept { return instance_; }

 private:
  double evaluate_valid(const Structure& x) const override;
  ContaminationInstance instance_;
};

// ---------------------------------------------------------------------------
// Zero-field Ising sparsification

struct IsingParams {
  std::size_t rows = 4;
  std::size_t cols = 4;
  double coupling_min = 0.05;
  double coupling_max = 5.0;
  double reg = 1e-2;
  std::uint64_t seed = 0;
};

struct IsingInstance {
  static constexpr std::size_t kMaxNodes = 20;

  std::size_t nodes = 0;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> edges;
  std::vector<double> couplings;
  /// E_p[z_i z_j] per edge.
  std::vector<double> moments;
  double log_partition_p = 0.0;
  double reg = 0.0;
};

/// log sum_z exp(sum_e J_e z_a z_b) by enumeration of all 2^nodes spin states.
double ising_log_partition(std::size_t nodes,
                           std::span<const std::pair<std::uint8_t, std::uint8_t>> edges,
                           std::span<const double> couplings);

/// E_p[z_a z_b] for every edge, by the same enumeration.
std::vector<double> ising_moments(std::size_t nodes,
                                  std::span<const std::pair<std::uint8_t, std::uint8_t>> edges,
                                  std::span<const double> couplings);

/// rows x cols open grid with random-sign couplings, |J| uniform in [min, max].
IsingInstance make_grid_ising(const IsingParams& params);

/// D_KL(p || q_x), where q_x keeps the couplings of the selected edges.
double ising_kl(const IsingInstance& instance, const Structure& x);

/// D_KL(p || q_x) + lambda * |x|_1.
double ising_objective(const IsingInstance& instance, const Structure& x);

class IsingObjective final : public Objective {
 public:
  explicit IsingObjective(const IsingParams& params);
  const IsingInstance& instance() const noexcept { return instance_; }

 private:
  double evaluate_valid(const Structure& x) const override;
  IsingInstance instance_;
};

// ---------------------------------------------------------------------------
// Synthetic cardinality-constrained benchmark

struct SyntheticParams {
  std::size_t dims = 24;
  std::size_t values = 3;
  std::size_t triples = 72;
  std::uint64_t seed = 0;
};

/// Random pseudo-Boolean polynomial over one-hot value indicators with unary, pairwise
/// and third-order terms. Valid structures hold exactly dims/values copies of each value.
class SyntheticConstrainedObjective final : public Objective {
 public:
  explicit SyntheticConstrainedObjective(const SyntheticParams& params);

  struct Triple {
    std::size_t var[3];
    Structure::value_type value[3];
    double weight;
  };

 private:
  double evaluate_valid(const Structure& x) const override;

  std::size_t dims_;
  std::size_t values_;
  std::vector<double> unary_;     // dims x values
  std::vector<double> pairwise_;  // (dims x values) x (dims x values), upper triangle used
  std::vector<Triple> triples_;
};

}  // namespace l2s
