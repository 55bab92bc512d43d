#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace voisel {

/// One way of observing an item: pay `cost`, receive the item's true value
/// plus zero-mean Gaussian noise with variance `noise_variance`.
struct MeasurementType {
    double cost = 0.0;
    double noise_variance = 0.0;
};

/// Utility of an item's (scalar) value. Either the identity or a scaled,
/// shifted tanh: u(z) = tanh(scale * (z - shift)).
struct UtilityFn {
    enum class Kind { identity, tanh_scaled };
    Kind kind = Kind::identity;
    double scale = 1.0;
    double shift = 0.0;

    double operator()(double z) const;

    static UtilityFn identity() { return {}; }
    static UtilityFn tanh_scaled(double scale, double shift) {
        return {Kind::tanh_scaled, scale, shift};
    }
};

struct GridShape {
    int rows = 0;
    int cols = 0;
    int count() const { return rows * cols; }
};

struct Item {
    std::size_t index = 0;
    double x = 0.0;
    double y = 0.0;
};

/// A measurement candidate: apply measurement type `type_index` to item
/// `item_index`.
struct Candidate {
    std::size_t type_index = 0;
    std::size_t item_index = 0;
};

/// A measurement-selection problem instance. `true_values` drive the
/// simulator and final scoring only; selection logic works purely off the
/// Gaussian belief.
struct Problem {
    std::vector<Item> items;
    std::vector<double> true_values;
    std::vector<MeasurementType> measurement_types;
    UtilityFn utility;
    double budget = 0.0;
    GridShape grid_shape;
    double grid_step = 1.0;
    double dependency_variance = 1.0;  // neighbor coupling (sigma_w^2)
    double anchor_variance = 1.0;      // proper-prior anchor (sigma_0^2)
    double anchor_mean = 0.0;

    std::size_t item_count() const { return items.size(); }
    double true_value(std::size_t i) const { return true_values[i]; }

    /// All (type, item) pairs, type-major.
    std::vector<Candidate> candidates() const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

}  // namespace voisel
