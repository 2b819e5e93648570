/*******************************************************************************
 * Dense square matrix indexed by capped degree classes 1..k_cap.
 *
 * @file:   class_matrix.h
 ******************************************************************************/
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bfspart/graph.h"

namespace bfspart {

class ClassMatrix {
public:
  ClassMatrix() = default;
  explicit ClassMatrix(const VertexId k_cap, const double value = 0.0)
      : _k_cap(k_cap),
        _data(static_cast<std::size_t>(k_cap) * k_cap, value) {}

  [[nodiscard]] VertexId k_cap() const { return _k_cap; }

  // Degree classes are 1-based.
  double &operator()(const VertexId k, const VertexId k2) {
    return _data[static_cast<std::size_t>(k - 1) * _k_cap + (k2 - 1)];
  }
  double operator()(const VertexId k, const VertexId k2) const {
    return _data[static_cast<std::size_t>(k - 1) * _k_cap + (k2 - 1)];
  }

  /// Row-major storage, row k-1 holds class k.
  [[nodiscard]] std::span<const double> data() const { return _data; }
  [[nodiscard]] std::span<double> data() { return _data; }

  [[nodiscard]] double sum() const;
  [[nodiscard]] double max() const;
  [[nodiscard]] bool is_symmetric() const;

private:
  VertexId _k_cap = 0;
  std::vector<double> _data;
};

} // namespace bfspart
