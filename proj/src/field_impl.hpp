#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "twistparity/numberfield.hpp"

namespace twistparity {

struct Field::Impl {
  FieldKind kind = FieldKind::Rational;
  i64 m = 0;
  i64 disc = 1;
  i64 t = 0;  // ω² = tω − n
  i64 n = 0;
  int class_number = 1;
  std::vector<Element> unit_classes;
  std::vector<Element> unit_generators;
  std::optional<Element> fundamental_unit;

  mutable std::mutex mutex;
  mutable std::map<i64, std::vector<Place>> places;
  mutable std::map<std::pair<i64, int>, std::shared_ptr<const LocalField>> completions;
};

}  // namespace twistparity
