#include "l2s/objective.hpp"

namespace l2s {

std::string_view to_string(Direction direction) noexcept {
  return direction == Direction::maximize ? "maximize" : "minimize";
}

void Objective::compute_best_known() const {
  const auto product = space_.product_size();
  if (!product || *product > kBestKnownLimit) return;
  std::optional<std::pair<Structure, double>> best;
  space_.for_each_valid([&](const Structure& x) {
    const double value = evaluate_valid(x);
    if (!best || improves(direction_, value, best->second)) best.emplace(x, value);
  });
  best_ = std::move(best);
}

std::optional<double> Objective::best_known() const {
  std::call_once(best_once_, [this] { compute_best_known(); });
  if (!best_) return std::nullopt;
  return best_->second;
}

std::optional<Structure> Objective::best_known_structure() const {
  std::call_once(best_once_, [this] { compute_best_known(); });
  if (!best_) return std::nullopt;
  return best_->first;
}

}  // namespace l2s
